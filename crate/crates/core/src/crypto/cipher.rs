use num_bigint::BigUint;
use num_traits::Zero;

use super::{Alphabet, CryptoError, SecretKey};
use crate::cluster::{ClusterError, DynkinSpec, ExchangeMatrix, NumericSeed};
use crate::fields::{FieldElement, FieldParams};
use crate::symbolic::{linear_form, SymbolicSeed};

/// Field, diagram and letter table shared by both parties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemParams {
    field: FieldParams,
    diagram: DynkinSpec,
    matrix: ExchangeMatrix,
    alphabet: Alphabet,
}

/// Values and exchange matrix sent over the wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiphertextSeed {
    pub values: Vec<FieldElement>,
    pub matrix: ExchangeMatrix,
}

/// A decrypted message: its integer and, when in table range, its letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub value: BigUint,
    pub letter: Option<char>,
}

impl SystemParams {
    pub fn new(field: FieldParams, diagram: DynkinSpec) -> Result<Self, CryptoError> {
        if diagram.rank != field.r() {
            return Err(CryptoError::ParamsMismatch(format!(
                "diagram {} has rank {} but the field has degree r = {}",
                diagram,
                diagram.rank,
                field.r()
            )));
        }
        let alphabet = Alphabet::default();
        if field.order() < BigUint::from(alphabet.size()) {
            return Err(CryptoError::ParamsMismatch(format!(
                "p^r = {} is smaller than the alphabet ({} letters)",
                field.order(),
                alphabet.size()
            )));
        }
        let matrix = diagram.exchange_matrix()?;
        Ok(SystemParams { field, diagram, matrix, alphabet })
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn diagram(&self) -> &DynkinSpec {
        &self.diagram
    }

    pub fn initial_matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.field.r()
    }

    /// `(α^0, ..., α^{r-1})`.
    pub fn base_point(&self) -> Vec<FieldElement> {
        (0..self.rank()).map(|i| self.field.alpha_pow(i)).collect()
    }

    pub fn encode_letter(&self, c: char) -> Result<FieldElement, CryptoError> {
        let n = self.alphabet.number_of(c).ok_or(CryptoError::UnknownSymbol(c))?;
        self.encode_number(&BigUint::from(n))
    }

    /// Base-p digits of `n`, ascending; `0 < n < p^r`.
    pub fn encode_number(&self, n: &BigUint) -> Result<FieldElement, CryptoError> {
        if n.is_zero() {
            return Err(CryptoError::ZeroMessage);
        }
        Ok(self.field.int_to_element(n)?)
    }

    pub fn decode(&self, m: &FieldElement) -> Result<Decoded, CryptoError> {
        if m.is_zero() {
            return Err(CryptoError::ZeroMessage);
        }
        let value = self.field.element_to_int(m);
        let letter = u64::try_from(&value).ok().and_then(|n| self.alphabet.letter_of(n));
        Ok(Decoded { value, letter })
    }

    fn initial_seed(&self, k0: usize, m: &FieldElement) -> NumericSeed {
        let mut values = self.base_point();
        values[k0] = m.clone();
        NumericSeed::new(values, self.matrix.clone()).expect("rank matches")
    }

    fn check_message(&self, m: &FieldElement) -> Result<(), CryptoError> {
        self.field.check(m)?;
        if m.is_zero() {
            return Err(CryptoError::ZeroMessage);
        }
        Ok(())
    }

    /// Fast path: numeric mutation from `v_i = α^i` (i ≠ k0), `v_{k0} = m`.
    /// Fails if any value divided by or produced along the way is zero, so
    /// every ciphertext returned decrypts.
    pub fn encrypt(&self, key: &SecretKey, m: &FieldElement) -> Result<CiphertextSeed, CryptoError> {
        key.validate(&self.matrix)?;
        self.check_message(m)?;
        let mut seed = self.initial_seed(key.k0, m);
        for (step, &k) in key.seq.iter().enumerate() {
            seed = seed.mutate(&self.field, k).map_err(|e| match e {
                ClusterError::DivisionByZero { vertex, .. } => CryptoError::EncryptionFailed { step, vertex },
                other => other.into(),
            })?;
            // a vanishing new value would make the reverse step divide by zero
            if seed.values()[k].is_zero() {
                return Err(CryptoError::EncryptionFailed { step, vertex: k });
            }
        }
        let (values, matrix) = seed.into_parts();
        Ok(CiphertextSeed { values, matrix })
    }

    /// Reference path: mutate symbolically, substitute `x_{k0} -> Σ a_i x_i`,
    /// evaluate at `x_i = α^i`.
    pub fn encrypt_reference(&self, key: &SecretKey, m: &FieldElement) -> Result<CiphertextSeed, CryptoError> {
        key.validate(&self.matrix)?;
        self.check_message(m)?;
        let p = self.field.p();
        let mutated = SymbolicSeed::initial(self.matrix.clone(), p).apply_sequence(&key.seq)?;
        let replaced = mutated.substitute(key.k0, &linear_form(p, m.coords()))?;
        let values = replaced.evaluate(&self.field, &self.base_point())?;
        Ok(CiphertextSeed { values, matrix: replaced.matrix().clone() })
    }

    /// Applies the reversed sequence, checks that every position other than
    /// `k0` returned to `α^i` and the matrix to the initial one, and returns
    /// the element at `k0`.
    pub fn decrypt(&self, key: &SecretKey, ct: &CiphertextSeed) -> Result<FieldElement, CryptoError> {
        key.validate(&self.matrix)?;
        self.check_ciphertext(ct)?;
        let seed = NumericSeed::new(ct.values.clone(), ct.matrix.clone())?;
        let seed = seed.apply_sequence(&self.field, &key.reversed_seq()).map_err(|e| match e {
            ClusterError::DivisionByZero { vertex, step } => CryptoError::DecryptionFailed { step, vertex },
            other => other.into(),
        })?;
        let (values, matrix) = seed.into_parts();
        if matrix != self.matrix {
            return Err(CryptoError::CorruptOrWrongKey("exchange matrix did not return to the initial one".into()));
        }
        for (i, v) in values.iter().enumerate() {
            if i != key.k0 && *v != self.field.alpha_pow(i) {
                return Err(CryptoError::CorruptOrWrongKey(format!("position {i} is not alpha^{i}")));
            }
        }
        let m = values[key.k0].clone();
        if m.is_zero() {
            return Err(CryptoError::CorruptOrWrongKey("recovered message is zero".into()));
        }
        Ok(m)
    }

    pub fn check_ciphertext(&self, ct: &CiphertextSeed) -> Result<(), CryptoError> {
        let r = self.rank();
        if ct.values.len() != r || ct.matrix.rank() != r {
            return Err(CryptoError::ParamsMismatch(format!(
                "ciphertext has {} values and a rank-{} matrix; expected rank {r}",
                ct.values.len(),
                ct.matrix.rank()
            )));
        }
        for v in &ct.values {
            self.field.check(v)?;
        }
        Ok(())
    }

    /// One ciphertext per letter; whitespace is skipped.
    pub fn encrypt_text(&self, key: &SecretKey, text: &str) -> Result<Vec<CiphertextSeed>, CryptoError> {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| self.encrypt(key, &self.encode_letter(c)?))
            .collect()
    }
}
