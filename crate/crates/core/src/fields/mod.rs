//! Exact arithmetic in Z_p and GF(p^r) = Z_p[x]/(f).
//!
//! Elements of GF(p^r) are coordinate vectors `(a_0, ..., a_{r-1})` in the
//! basis `1, α, ..., α^(r-1)` where α is a root of `f`. The canonical integer
//! of an element is `Σ a_i p^i`.

mod upoly;
mod zp;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use upoly::{is_irreducible, TRIAL_DIVISION_LIMIT};
pub use zp::{add_mod, fp_inv, is_prime, mul_mod, neg_mod, pow_mod, sub_mod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("element is not invertible")]
    NonInvertible,
    #[error("polynomial must have degree at least 1")]
    InvalidDegree,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial must be monic")]
    NotMonic,
    #[error("modulus polynomial is reducible over Z_{0}")]
    NotIrreducible(u64),
    #[error("coefficient {value} is not reduced modulo {p}")]
    CoefficientOutOfRange { value: u64, p: u64 },
    #[error("modulus polynomial has {got} coefficients, expected r + 1 = {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("element has {got} coordinates, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("integer {0} is outside [0, p^r)")]
    OutOfRange(String),
    #[error("no irreducible polynomial of degree {r} over Z_{p} found")]
    NoIrreducible { p: u64, r: usize },
}

/// Description of GF(p^r): prime `p`, degree `r`, monic irreducible `f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldParams", into = "RawFieldParams")]
pub struct FieldParams {
    p: u64,
    r: usize,
    f: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawFieldParams {
    p: u64,
    r: usize,
    f: Vec<u64>,
}

impl TryFrom<RawFieldParams> for FieldParams {
    type Error = FieldError;

    fn try_from(raw: RawFieldParams) -> Result<Self, Self::Error> {
        FieldParams::new(raw.p, raw.r, raw.f)
    }
}

impl From<FieldParams> for RawFieldParams {
    fn from(fp: FieldParams) -> Self {
        RawFieldParams { p: fp.p, r: fp.r, f: fp.f }
    }
}

impl FieldParams {
    /// Validates primality of `p` and irreducibility of the monic `f` of degree `r`.
    pub fn new(p: u64, r: usize, f: Vec<u64>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if r == 0 {
            return Err(FieldError::InvalidDegree);
        }
        if f.len() != r + 1 {
            return Err(FieldError::DegreeMismatch { expected: r + 1, got: f.len() });
        }
        if let Some(&value) = f.iter().find(|&&c| c >= p) {
            return Err(FieldError::CoefficientOutOfRange { value, p });
        }
        if f[r] != 1 {
            return Err(FieldError::NotMonic);
        }
        if !is_irreducible(&f, p)? {
            return Err(FieldError::NotIrreducible(p));
        }
        Ok(FieldParams { p, r, f })
    }

    /// Z_p viewed as GF(p^1) with modulus `x`.
    pub fn prime_field(p: u64) -> Result<Self, FieldError> {
        FieldParams::new(p, 1, vec![0, 1])
    }

    /// First monic irreducible of degree `r` in counting order of the lower
    /// coefficients (constant term varies fastest).
    pub fn find_irreducible(p: u64, r: usize) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if r == 0 {
            return Err(FieldError::InvalidDegree);
        }
        if r == 1 {
            return FieldParams::new(p, 1, vec![0, 1]);
        }
        let mut low = vec![0u64; r];
        loop {
            let mut i = 0;
            while i < r {
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
            if i == r {
                return Err(FieldError::NoIrreducible { p, r });
            }
            if low[0] == 0 {
                continue;
            }
            let mut f = low.clone();
            f.push(1);
            if is_irreducible(&f, p)? {
                return Ok(FieldParams { p, r, f });
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Coefficients of the modulus, ascending degree, length r + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.f
    }

    /// Field order q = p^r.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.r as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.r])
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> FieldElement {
        let mut v = vec![0; self.r];
        v[0] = c % self.p;
        FieldElement(v)
    }

    /// The root α of `f`; for r = 1 this is the root of the linear modulus.
    pub fn alpha(&self) -> FieldElement {
        if self.r == 1 {
            return self.constant(neg_mod(self.f[0], self.p));
        }
        let mut v = vec![0; self.r];
        v[1] = 1;
        FieldElement(v)
    }

    pub fn alpha_pow(&self, i: usize) -> FieldElement {
        if i < self.r && self.r > 1 {
            let mut v = vec![0; self.r];
            v[i] = 1;
            return FieldElement(v);
        }
        self.pow(&self.alpha(), &BigUint::from(i))
    }

    /// Builds an element from coordinates, checking length and reduction.
    pub fn element(&self, coords: Vec<u64>) -> Result<FieldElement, FieldError> {
        if coords.len() != self.r {
            return Err(FieldError::WrongLength { expected: self.r, got: coords.len() });
        }
        if let Some(&value) = coords.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::CoefficientOutOfRange { value, p: self.p });
        }
        Ok(FieldElement(coords))
    }

    pub fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if a.0.len() != self.r {
            return Err(FieldError::WrongLength { expected: self.r, got: a.0.len() });
        }
        if let Some(&value) = a.0.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::CoefficientOutOfRange { value, p: self.p });
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| add_mod(x, y, self.p)).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| sub_mod(x, y, self.p)).collect())
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|&x| neg_mod(x, self.p)).collect())
    }

    pub fn scale(&self, a: &FieldElement, c: u64) -> FieldElement {
        let c = c % self.p;
        FieldElement(a.0.iter().map(|&x| mul_mod(x, c, self.p)).collect())
    }

    /// Product in GF(p^r): schoolbook multiply, then fold α^r = -(f_0 + ... + f_{r-1}α^{r-1}).
    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let (p, r) = (self.p, self.r);
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
        for d in (r..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &fi) in self.f[..r].iter().enumerate() {
                let idx = d - r + i;
                prod[idx] = sub_mod(prod[idx], mul_mod(c, fi, p), p);
            }
        }
        prod.truncate(r);
        FieldElement(prod)
    }

    /// Multiplicative inverse by extended Euclid on polynomials modulo `f`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        let inv = upoly::inv_mod(&a.0, &self.f, self.p)?;
        let mut coords = inv;
        coords.resize(self.r, 0);
        Ok(FieldElement(coords))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, exp: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &FieldElement, exp: u64) -> FieldElement {
        self.pow(a, &BigUint::from(exp))
    }

    /// Canonical integer `Σ a_i p^i`.
    pub fn element_to_int(&self, a: &FieldElement) -> BigUint {
        a.0.iter()
            .rev()
            .fold(BigUint::zero(), |acc, &c| acc * self.p + c)
    }

    pub fn int_to_element(&self, n: &BigUint) -> Result<FieldElement, FieldError> {
        if *n >= self.order() {
            return Err(FieldError::OutOfRange(n.to_string()));
        }
        let mut rest = n.clone();
        let coords = (0..self.r)
            .map(|_| {
                let digit = (&rest % self.p).to_u64().expect("digit below p");
                rest /= self.p;
                digit
            })
            .collect();
        Ok(FieldElement(coords))
    }

    /// Parses a decimal integer and maps it into the field.
    pub fn decimal_to_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let n = s
            .trim()
            .parse::<BigUint>()
            .map_err(|_| FieldError::OutOfRange(s.to_string()))?;
        self.int_to_element(&n)
    }
}

impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod ", self.p, self.r)?;
        let mut first = true;
        for (i, &c) in self.f.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Coordinates `(a_0, ..., a_{r-1})` of an element of GF(p^r), each in `[0, p)`.
///
/// Serializes as a plain digit array in ascending powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(Vec<u64>);

impl FieldElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Digit string a_0 a_1 ... as printed for binary fields, e.g. `01100`.
    pub fn digit_string(&self) -> String {
        self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(
            if self.0.iter().all(|&c| c < 10) { "" } else { "," },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf32() -> FieldParams {
        FieldParams::new(2, 5, vec![1, 0, 1, 0, 0, 1]).unwrap()
    }

    fn gf101_7() -> FieldParams {
        FieldParams::new(101, 7, vec![46, 0, 1, 1, 0, 74, 0, 1]).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldParams::new(4, 1, vec![0, 1]), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldParams::new(2, 2, vec![1, 0, 1]), Err(FieldError::NotIrreducible(2)));
        assert_eq!(FieldParams::new(3, 2, vec![1, 0, 2]), Err(FieldError::NotMonic));
        assert!(matches!(
            FieldParams::new(3, 2, vec![1, 0, 5]),
            Err(FieldError::CoefficientOutOfRange { .. })
        ));
        assert!(matches!(
            FieldParams::new(3, 3, vec![1, 0, 1]),
            Err(FieldError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn mul_examples() {
        let f = gf32();
        assert_eq!(f.mul(&f.alpha_pow(4), &f.alpha()).coords(), &[1, 0, 1, 0, 0]);
        assert_eq!(f.mul(&f.alpha(), &f.alpha()).coords(), &[0, 0, 1, 0, 0]);
        let g = gf101_7();
        assert_eq!(g.mul(&g.alpha_pow(6), &g.alpha()).coords(), &[55, 0, 100, 100, 0, 27, 0]);
    }

    #[test]
    fn inverse_examples() {
        let f = gf32();
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        assert_eq!(f.inv(&f.alpha()).unwrap().coords(), &[0, 1, 0, 0, 1]);
        // (1 + α) / (α + α^2) = α + α^4
        let num = f.element(vec![1, 1, 0, 0, 0]).unwrap();
        let den = f.element(vec![0, 1, 1, 0, 0]).unwrap();
        let q = f.mul(&f.inv(&den).unwrap(), &num);
        assert_eq!(q.coords(), &[0, 1, 0, 0, 1]);
        assert_eq!(f.inv(&f.zero()), Err(FieldError::NonInvertible));
    }

    #[test]
    fn integer_codec_examples() {
        let g = gf101_7();
        let m = g.element(vec![42, 82, 3, 0, 0, 0, 0]).unwrap();
        assert_eq!(g.element_to_int(&m), BigUint::from(38927u32));
        assert_eq!(g.element_to_int(&g.alpha_pow(5)).to_string(), "10510100501");
        let f = gf32();
        assert_eq!(f.element_to_int(&f.element(vec![1, 1, 0, 1, 0]).unwrap()), BigUint::from(11u32));
        assert!(matches!(f.int_to_element(&BigUint::from(32u32)), Err(FieldError::OutOfRange(_))));
        assert_eq!(f.int_to_element(&BigUint::from(31u32)).unwrap().coords(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn finds_irreducibles() {
        let f = FieldParams::find_irreducible(2, 5).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1, 0, 0, 1]);
        for (p, r) in [(3u64, 4usize), (7, 2), (101, 3), (13, 8)] {
            let f = FieldParams::find_irreducible(p, r).unwrap();
            assert_eq!(f.r(), r);
        }
    }

    #[test]
    fn frobenius_fixes_every_element_small_field() {
        let f = gf32();
        let q = f.order();
        for n in 0u32..32 {
            let a = f.int_to_element(&BigUint::from(n)).unwrap();
            assert_eq!(f.pow(&a, &q), a);
        }
    }

    #[test]
    fn serde_shapes() {
        let f = gf32();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"p":2,"r":5,"f":[1,0,1,0,0,1]}"#);
        assert_eq!(serde_json::from_str::<FieldParams>(&s).unwrap(), f);
        assert!(serde_json::from_str::<FieldParams>(r#"{"p":2,"r":2,"f":[1,0,1]}"#).is_err());
        let e = f.alpha_pow(3);
        assert_eq!(serde_json::to_string(&e).unwrap(), "[0,0,0,1,0]");
    }

    fn arb_params() -> impl Strategy<Value = FieldParams> {
        prop_oneof![
            Just(gf32()),
            Just(gf101_7()),
            Just(FieldParams::find_irreducible(3, 4).unwrap()),
            Just(FieldParams::find_irreducible(13, 3).unwrap()),
            Just(FieldParams::prime_field((1 << 61) - 1).unwrap()),
        ]
    }

    fn arb_triple() -> impl Strategy<Value = (FieldParams, FieldElement, FieldElement, FieldElement)> {
        arb_params().prop_flat_map(|f| {
            let p = f.p();
            let r = f.r();
            let coords = proptest::collection::vec(0..p, r);
            (Just(f), coords.clone(), coords.clone(), coords).prop_map(|(f, a, b, c)| {
                let (a, b, c) = (f.element(a).unwrap(), f.element(b).unwrap(), f.element(c).unwrap());
                (f, a, b, c)
            })
        })
    }

    proptest! {
        #[test]
        fn field_axioms((f, a, b, c) in arb_triple()) {
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
            if !a.is_zero() {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }

        #[test]
        fn integer_codec_roundtrip((f, a, _b, _c) in arb_triple()) {
            let n = f.element_to_int(&a);
            prop_assert!(n < f.order());
            prop_assert_eq!(f.int_to_element(&n).unwrap(), a);
        }

        #[test]
        fn frobenius_identity((f, a, _b, _c) in arb_triple()) {
            prop_assert_eq!(f.pow(&a, &f.order()), a);
        }
    }
}
