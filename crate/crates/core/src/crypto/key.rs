use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::CryptoError;
use crate::cluster::ExchangeMatrix;

/// `k0` marks the cluster position holding the message; `seq` is the
/// mutation sequence `k_1..k_t`. `k0` itself is not applied as a mutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SecretKey {
    pub k0: usize,
    pub seq: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeyViolation {
    /// `position` is `None` for `k0`, otherwise an index into `seq`.
    IndexOutOfRange { position: Option<usize>, value: usize, rank: usize },
    RepeatedConsecutive { position: usize, value: usize },
    HideIndexAbsent { k0: usize },
    NoAdjacentBeforeHide { k0: usize },
}

impl KeyViolation {
    pub fn code(&self) -> &'static str {
        match self {
            KeyViolation::IndexOutOfRange { .. } => "index-out-of-range",
            KeyViolation::RepeatedConsecutive { .. } => "repeated-consecutive",
            KeyViolation::HideIndexAbsent { .. } => "k0-absent",
            KeyViolation::NoAdjacentBeforeHide { .. } => "no-adjacent-before-k0",
        }
    }
}

impl fmt::Display for KeyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KeyViolation::IndexOutOfRange { position: None, value, rank } => {
                write!(f, "k0 = {value} is not a vertex of a rank-{rank} diagram")
            }
            KeyViolation::IndexOutOfRange { position: Some(i), value, rank } => {
                write!(f, "seq[{i}] = {value} is not a vertex of a rank-{rank} diagram")
            }
            KeyViolation::RepeatedConsecutive { position, value } => {
                write!(f, "seq[{}] and seq[{position}] are both {value}", position - 1)
            }
            KeyViolation::HideIndexAbsent { k0 } => write!(f, "k0 = {k0} never occurs in the sequence"),
            KeyViolation::NoAdjacentBeforeHide { k0 } => {
                write!(f, "no vertex adjacent to {k0} is mutated before the first mutation at {k0}")
            }
        }
    }
}

impl SecretKey {
    pub fn new(k0: usize, seq: Vec<usize>) -> Self {
        SecretKey { k0, seq }
    }

    /// `[k0, k_1, ..., k_t]`.
    pub fn from_flat(flat: &[usize]) -> Option<Self> {
        let (&k0, seq) = flat.split_first()?;
        Some(SecretKey { k0, seq: seq.to_vec() })
    }

    pub fn to_flat(&self) -> Vec<usize> {
        std::iter::once(self.k0).chain(self.seq.iter().copied()).collect()
    }

    /// Sequence applied when decrypting.
    pub fn reversed_seq(&self) -> Vec<usize> {
        self.seq.iter().rev().copied().collect()
    }

    /// Every violated constraint; empty means the key is usable with `b`.
    pub fn violations(&self, b: &ExchangeMatrix) -> Vec<KeyViolation> {
        let rank = b.rank();
        let mut out = Vec::new();
        if self.k0 >= rank {
            out.push(KeyViolation::IndexOutOfRange { position: None, value: self.k0, rank });
        }
        for (i, &k) in self.seq.iter().enumerate() {
            if k >= rank {
                out.push(KeyViolation::IndexOutOfRange { position: Some(i), value: k, rank });
            }
        }
        for i in 1..self.seq.len() {
            if self.seq[i] == self.seq[i - 1] {
                out.push(KeyViolation::RepeatedConsecutive { position: i, value: self.seq[i] });
            }
        }
        match self.seq.iter().position(|&k| k == self.k0) {
            None => out.push(KeyViolation::HideIndexAbsent { k0: self.k0 }),
            Some(first) if self.k0 < rank => {
                let adjacent = self.seq[..first].iter().any(|&k| k < rank && b.get(self.k0, k) != 0);
                if !adjacent {
                    out.push(KeyViolation::NoAdjacentBeforeHide { k0: self.k0 });
                }
            }
            Some(_) => {}
        }
        out
    }

    pub fn validate(&self, b: &ExchangeMatrix) -> Result<(), CryptoError> {
        let v = self.violations(b);
        if v.is_empty() {
            Ok(())
        } else {
            Err(CryptoError::InvalidKey(v))
        }
    }
}

impl fmt::Display for SecretKey {
    /// `{k0,k1,...,kt}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_flat().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

const KEYGEN_ATTEMPTS: usize = 1_000_000;

/// Uniform over valid keys with `seq` of length `t`, by rejection sampling.
pub fn keygen<R: Rng>(rng: &mut R, b: &ExchangeMatrix, t: usize) -> Result<SecretKey, CryptoError> {
    let n = b.rank();
    if t < 2 {
        return Err(CryptoError::Infeasible(format!(
            "a key needs at least 2 mutations (one adjacent to k0, then k0), got {t}"
        )));
    }
    if !(0..n).any(|k| b.neighbors(k).next().is_some()) {
        return Err(CryptoError::Infeasible("the diagram has no edges".into()));
    }
    for _ in 0..KEYGEN_ATTEMPTS {
        let k0 = rng.gen_range(0..n);
        let mut seq = Vec::with_capacity(t);
        for i in 0..t {
            // uniform over the n - 1 vertices different from the previous one
            let k = if i == 0 {
                rng.gen_range(0..n)
            } else {
                let prev = seq[i - 1];
                let x = rng.gen_range(0..n - 1);
                if x >= prev {
                    x + 1
                } else {
                    x
                }
            };
            seq.push(k);
        }
        let key = SecretKey { k0, seq };
        if key.violations(b).is_empty() {
            return Ok(key);
        }
    }
    Err(CryptoError::Infeasible(format!("no valid key of length {t} found")))
}
