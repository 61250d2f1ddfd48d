//! Dense univariate polynomials over Z_p, coefficients in ascending degree.
//!
//! A polynomial is a trimmed `Vec<u64>`: no trailing zero coefficients, and the
//! zero polynomial is the empty vector.

use super::zp::{add_mod, fp_inv, mul_mod, sub_mod};
use super::FieldError;

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            sub_mod(x, y, p)
        })
        .collect();
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = fp_inv(b[db], p).expect("leading coefficient is a unit mod p");
    let mut rem = trim(a.to_vec());
    let Some(da) = degree(&rem) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; da - db + 1];
    for i in (db..=da).rev() {
        let c = rem.get(i).copied().unwrap_or(0);
        if c == 0 {
            continue;
        }
        let q = mul_mod(c, lead_inv, p);
        quot[i - db] = q;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let idx = i - db + j;
            rem[idx] = sub_mod(rem[idx], mul_mod(q, bj, p), p);
        }
    }
    (trim(quot), trim(rem))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = fp_inv(a[d], p).expect("nonzero leading coefficient");
            trim(a.iter().map(|&c| mul_mod(c, inv, p)).collect())
        }
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Inverse of `a` modulo `m` using the extended Euclidean algorithm.
pub fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Result<Vec<u64>, FieldError> {
    let (mut old_r, mut r) = (rem(a, m, p), trim(m.to_vec()));
    if old_r.is_empty() {
        return Err(FieldError::NonInvertible);
    }
    let (mut old_s, mut s): (Vec<u64>, Vec<u64>) = (vec![1], Vec::new());
    while !r.is_empty() {
        let (q, new_r) = divrem(&old_r, &r, p);
        let new_s = sub(&old_s, &mul(&q, &s, p), p);
        old_r = std::mem::replace(&mut r, new_r);
        old_s = std::mem::replace(&mut s, new_s);
    }
    if degree(&old_r) != Some(0) {
        return Err(FieldError::NonInvertible);
    }
    let scale = fp_inv(old_r[0], p)?;
    Ok(trim(old_s.iter().map(|&c| mul_mod(c, scale, p)).collect()))
}

fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

/// `base^(p^k) mod m`, by k successive p-th powers.
fn frobenius_iter(base: &[u64], k: usize, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(base, m, p);
    for _ in 0..k {
        let mut result = vec![1u64];
        let mut sq = acc.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &sq, m, p);
            }
            sq = mulmod(&sq, &sq, m, p);
            e >>= 1;
        }
        acc = result;
    }
    acc
}

/// Candidate count above which trial division gives way to Rabin's test.
pub const TRIAL_DIVISION_LIMIT: u128 = 1 << 21;

/// Irreducibility over Z_p.
///
/// For small fields this is trial division by every monic polynomial of degree
/// at most deg(f)/2, which costs O(p^(deg f / 2)) divisions. When that count
/// exceeds [`TRIAL_DIVISION_LIMIT`] Rabin's test is used instead.
pub fn is_irreducible(f: &[u64], p: u64) -> Result<bool, FieldError> {
    let f = trim(f.iter().map(|&c| c % p).collect());
    let n = match degree(&f) {
        None | Some(0) => return Err(FieldError::InvalidDegree),
        Some(n) => n,
    };
    let f = monic(&f, p);
    if n == 1 {
        return Ok(true);
    }
    let candidates: u128 = (1..=n / 2)
        .map(|d| (p as u128).saturating_pow(d as u32))
        .fold(0u128, |a, b| a.saturating_add(b));
    if candidates <= TRIAL_DIVISION_LIMIT {
        Ok(is_irreducible_trial(&f, p))
    } else {
        Ok(is_irreducible_rabin(&f, p))
    }
}

pub(crate) fn is_irreducible_trial(f: &[u64], p: u64) -> bool {
    let n = degree(f).unwrap_or(0);
    for d in 1..=n / 2 {
        // enumerate the lower d coefficients of x^d + ... as a base-p counter
        let mut low = vec![0u64; d];
        loop {
            let mut g = low.clone();
            g.push(1);
            if rem(f, &g, p).is_empty() {
                return false;
            }
            let mut i = 0;
            while i < d {
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

pub(crate) fn is_irreducible_rabin(f: &[u64], p: u64) -> bool {
    let n = degree(f).unwrap_or(0);
    let x = vec![0u64, 1];
    if frobenius_iter(&x, n, f, p) != rem(&x, f, p) {
        return false;
    }
    let mut m = n;
    let mut prime_divisors = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            prime_divisors.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        prime_divisors.push(m);
    }
    prime_divisors.into_iter().all(|q| {
        let h = frobenius_iter(&x, n / q, f, p);
        let h = sub(&h, &x, p);
        degree(&gcd(f, &h, p)) == Some(0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&[1, 0, 1, 0, 0, 1], 2).unwrap());
        assert!(is_irreducible(&[46, 0, 1, 1, 0, 74, 0, 1], 101).unwrap());
        assert!(!is_irreducible(&[1, 0, 1], 2).unwrap());
        assert!(matches!(is_irreducible(&[3], 5), Err(FieldError::InvalidDegree)));
        assert!(matches!(is_irreducible(&[], 5), Err(FieldError::InvalidDegree)));
    }

    #[test]
    fn trial_and_rabin_agree() {
        for p in [2u64, 3, 5] {
            for deg in 2..=5usize {
                let total = p.pow(deg as u32);
                for idx in 0..total {
                    let mut f: Vec<u64> = (0..deg).map(|i| (idx / p.pow(i as u32)) % p).collect();
                    f.push(1);
                    assert_eq!(
                        is_irreducible_trial(&f, p),
                        is_irreducible_rabin(&f, p),
                        "p={p} f={f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree n over F_p: (1/n) sum_{d|n} mu(d) p^(n/d)
        let expected = [(2u64, 5usize, 6usize), (3, 4, 18), (5, 3, 40)];
        for (p, n, count) in expected {
            let total = p.pow(n as u32);
            let found = (0..total)
                .filter(|idx| {
                    let mut f: Vec<u64> = (0..n).map(|i| (idx / p.pow(i as u32)) % p).collect();
                    f.push(1);
                    is_irreducible(&f, p).unwrap()
                })
                .count();
            assert_eq!(found, count, "p={p} n={n}");
        }
    }

    #[test]
    fn inverse_mod_polynomial() {
        let f = [1u64, 0, 1, 0, 0, 1];
        let inv = inv_mod(&[0, 1], &f, 2).unwrap();
        assert_eq!(inv, vec![0, 1, 0, 0, 1]);
        assert!(inv_mod(&[], &f, 2).is_err());
    }
}
