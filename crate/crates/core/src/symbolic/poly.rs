use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::SymbolicError;
use crate::fields::{add_mod, fp_inv, mul_mod, neg_mod, pow_mod, sub_mod, FieldElement, FieldParams};

/// Exponent vector. Ordered graded-lexicographically with `x0` the highest
/// variable: total degree first, then the exponent of `x0`, then `x1`, ...
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming [`Monomial::divides`].
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Values that polynomials over Z_p can be evaluated in.
pub trait Evaluator {
    type Elem: Clone + PartialEq;

    fn characteristic(&self) -> u64;
    fn coefficient(&self, c: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

impl Evaluator for FieldParams {
    type Elem = FieldElement;

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn coefficient(&self, c: u64) -> FieldElement {
        self.constant(c)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldParams::add(self, a, b)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldParams::mul(self, a, b)
    }

    fn pow(&self, a: &FieldElement, e: u32) -> FieldElement {
        self.pow_u64(a, e as u64)
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        FieldParams::inv(self, a).ok()
    }
}

/// Sparse polynomial over Z_p in `nvars` variables. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    modulus: u64,
    terms: BTreeMap<Monomial, u64>,
}

impl Polynomial {
    pub fn zero(nvars: usize, modulus: u64) -> Self {
        Polynomial { nvars, modulus, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, modulus: u64, c: u64) -> Self {
        Self::term(nvars, modulus, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize, modulus: u64) -> Self {
        Self::constant(nvars, modulus, 1)
    }

    pub fn var(nvars: usize, modulus: u64, i: usize) -> Self {
        Self::term(nvars, modulus, Monomial::var(nvars, i), 1)
    }

    pub fn term(nvars: usize, modulus: u64, m: Monomial, c: u64) -> Self {
        assert_eq!(m.0.len(), nvars, "monomial arity");
        let mut terms = BTreeMap::new();
        let c = c % modulus;
        if c != 0 {
            terms.insert(m, c);
        }
        Polynomial { nvars, modulus, terms }
    }

    /// Linear form `Σ c_i x_i`.
    pub fn linear(modulus: u64, coeffs: &[u64]) -> Self {
        let n = coeffs.len();
        let mut p = Polynomial::zero(n, modulus);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c % modulus);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// A single term (nonzero).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_term(&self) -> u64 {
        self.terms.get(&Monomial::one(self.nvars)).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn leading(&self) -> Option<(&Monomial, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn same_ring(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        assert_eq!(self.modulus, other.modulus, "coefficient ring mismatch");
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let p = self.modulus;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = add_mod(*o.get(), c, p);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let c = c % self.modulus;
        if c == 0 {
            return Polynomial::zero(self.nvars, self.modulus);
        }
        let terms = self.terms.iter().map(|(m, &v)| (m.clone(), mul_mod(v, c, self.modulus))).collect();
        Polynomial { nvars: self.nvars, modulus: self.modulus, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self.terms.iter().map(|(t, &c)| (t.mul(m), c)).collect();
        Polynomial { nvars: self.nvars, modulus: self.modulus, terms }
    }

    /// Divides every term by `m`, which must divide each of them.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self.terms.iter().map(|(t, &c)| (m.quotient_of(t), c)).collect();
        Polynomial { nvars: self.nvars, modulus: self.modulus, terms }
    }

    /// Largest monomial dividing every term (the zero polynomial gives 1).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars, self.modulus);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales to leading coefficient 1; returns the polynomial and the old
    /// leading coefficient. Zero stays zero.
    pub fn monic(&self) -> (Polynomial, u64) {
        match self.leading() {
            None => (self.clone(), 1),
            Some((_, lc)) => {
                let inv = fp_inv(lc, self.modulus).expect("nonzero coefficient");
                (self.scale(inv), lc)
            }
        }
    }

    /// Exact quotient `self / d`; fails unless `d` divides `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial, SymbolicError> {
        self.same_ring(d);
        let (lm_d, lc_d) = d.leading().ok_or(SymbolicError::DivisionByZero)?;
        let lm_d = lm_d.clone();
        let inv = fp_inv(lc_d, self.modulus).expect("nonzero coefficient");
        let p = self.modulus;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars, p);
        while let Some((lm_r, lc_r)) = rem.leading() {
            if !lm_d.divides(lm_r) {
                return Err(SymbolicError::NotDivisible);
            }
            let m = lm_d.quotient_of(lm_r);
            let c = mul_mod(lc_r, inv, p);
            for (t, &v) in &d.terms {
                rem.add_term(t.mul(&m), neg_mod(mul_mod(v, c, p), p));
            }
            quot.add_term(m, c);
        }
        Ok(quot)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Coefficients with respect to `x_v`: entry `i` multiplies `x_v^i` and is
    /// free of `x_v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Polynomial> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Polynomial::zero(self.nvars, self.modulus); d + 1];
        for (m, &c) in &self.terms {
            let e = m.0[v] as usize;
            let mut stripped = m.clone();
            stripped.0[v] = 0;
            out[e].terms.insert(stripped, c);
        }
        out
    }

    /// Replaces `x_v` by `replacement` in one pass (Horner in `x_v`).
    pub fn substitute(&self, v: usize, replacement: &Polynomial) -> Polynomial {
        self.same_ring(replacement);
        let coeffs = self.coefficients_in(v);
        let mut acc = Polynomial::zero(self.nvars, self.modulus);
        for c in coeffs.iter().rev() {
            acc = &(&acc * replacement) + c;
        }
        acc
    }

    /// `Σ c_e N^e D^(deg - e)` for `x_v -> N / D`, where `deg` is the degree in `x_v`.
    pub(crate) fn homogenized_substitute(&self, v: usize, num: &Polynomial, den: &Polynomial) -> Polynomial {
        let coeffs = self.coefficients_in(v);
        let deg = coeffs.len() - 1;
        let mut num_pows = vec![Polynomial::one(self.nvars, self.modulus)];
        let mut den_pows = vec![Polynomial::one(self.nvars, self.modulus)];
        for i in 1..=deg {
            num_pows.push(&num_pows[i - 1] * num);
            den_pows.push(&den_pows[i - 1] * den);
        }
        let mut acc = Polynomial::zero(self.nvars, self.modulus);
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&(c * &num_pows[e]) * &den_pows[deg - e]);
        }
        acc
    }

    pub fn evaluate<E: Evaluator>(&self, ev: &E, point: &[E::Elem]) -> Result<E::Elem, SymbolicError> {
        if point.len() != self.nvars {
            return Err(SymbolicError::ArityMismatch { expected: self.nvars, got: point.len() });
        }
        if ev.characteristic() != self.modulus {
            return Err(SymbolicError::CharacteristicMismatch {
                polynomial: self.modulus,
                field: ev.characteristic(),
            });
        }
        let mut acc = ev.coefficient(0);
        for (m, &c) in &self.terms {
            let mut t = ev.coefficient(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = ev.mul(&t, &ev.pow(&point[i], e));
                }
            }
            acc = ev.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Evaluation over Z_p itself.
    pub fn evaluate_mod(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars);
        let p = self.modulus;
        self.terms.iter().fold(0, |acc, (m, &c)| {
            let t = m.0.iter().enumerate().fold(c, |t, (i, &e)| {
                if e == 0 {
                    t
                } else {
                    mul_mod(t, pow_mod(point[i], e as u64, p), p)
                }
            });
            add_mod(acc, t, p)
        })
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), sub_mod(0, c, self.modulus));
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, &c)| (m.clone(), neg_mod(c, self.modulus))).collect();
        Polynomial { nvars: self.nvars, modulus: self.modulus, terms }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.same_ring(rhs);
        let p = self.modulus;
        let mut out = Polynomial::zero(self.nvars, p);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                out.add_term(a.mul(b), mul_mod(ca, cb, p));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Leading term first, joined by ` + `, e.g. `2*x0*x2^3 + x1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, &c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{i}")),
                    _ => factors.push(format!("x{i}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, p: u64, i: usize) -> Polynomial {
        Polynomial::var(n, p, i)
    }

    #[test]
    fn term_order_is_graded_lex() {
        let a = Monomial::new(vec![1, 0, 0]);
        let b = Monomial::new(vec![0, 1, 0]);
        let c = Monomial::new(vec![0, 0, 2]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::new(vec![1, 1, 0]) > Monomial::new(vec![0, 2, 0]));
    }

    #[test]
    fn frobenius_square_over_z2() {
        let one = Polynomial::one(1, 2);
        let s = &x(1, 2, 0) + &one;
        let sq = &s * &s;
        assert_eq!(sq, &(&x(1, 2, 0) * &x(1, 2, 0)) + &one);
    }

    #[test]
    fn add_zero_is_identity() {
        let a = &x(2, 7, 0) + &Polynomial::constant(2, 7, 3);
        assert_eq!(&a + &Polynomial::zero(2, 7), a);
    }

    #[test]
    fn exact_division() {
        let (x0, x1) = (x(2, 5, 0), x(2, 5, 1));
        let num = &(&x0 * &x0) - &(&x1 * &x1);
        let den = &x0 + &x1;
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q, &x0 + &x1.scale(4));
        assert_eq!(q.to_string(), "x0 + 4*x1");
        assert_eq!((&x0 + &Polynomial::one(2, 5)).exact_div(&x1), Err(SymbolicError::NotDivisible));
    }

    #[test]
    fn rendering() {
        let (x0, x1, x2) = (x(3, 7, 0), x(3, 7, 1), x(3, 7, 2));
        let p = &(&(&x0 * &x2) + &x1) + &Polynomial::constant(3, 7, 1);
        assert_eq!(p.to_string(), "x0*x2 + x1 + 1");
        let q = (&x1 * &x1).scale(3);
        assert_eq!(q.to_string(), "3*x1^2");
        assert_eq!(Polynomial::zero(3, 7).to_string(), "0");
    }

    #[test]
    fn substitution_horner() {
        let (x0, x1, x2) = (x(3, 2, 0), x(3, 2, 1), x(3, 2, 2));
        let p = &(&x0 * &x2) + &Polynomial::one(3, 2);
        let s = p.substitute(0, &(&x1 + &x2));
        assert_eq!(s, &(&(&x1 * &x2) + &(&x2 * &x2)) + &Polynomial::one(3, 2));
    }
}
