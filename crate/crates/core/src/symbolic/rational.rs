use std::fmt;

use super::gcd::gcd;
use super::poly::{Evaluator, Polynomial};
use super::SymbolicError;
use crate::fields::fp_inv;

/// `num / den` over Z_p. Kept with common monomial content cancelled and a
/// monic denominator; full GCD reduction is [`RationalFunction::reduce`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, SymbolicError> {
        if den.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        assert_eq!(num.modulus(), den.modulus(), "coefficient ring mismatch");
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            let one = Polynomial::one(den.nvars(), den.modulus());
            return RationalFunction { num, den: one };
        }
        let common = num.monomial_content().gcd(&den.monomial_content());
        let (num, den) = if common.is_one() {
            (num, den)
        } else {
            (num.div_monomial(&common), den.div_monomial(&common))
        };
        let (den, lc) = den.monic();
        let inv = fp_inv(lc, den.modulus()).expect("nonzero coefficient");
        RationalFunction { num: num.scale(inv), den }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let one = Polynomial::one(p.nvars(), p.modulus());
        RationalFunction { num: p, den: one }
    }

    pub fn var(nvars: usize, modulus: u64, i: usize) -> Self {
        Self::from_polynomial(Polynomial::var(nvars, modulus, i))
    }

    pub fn constant(nvars: usize, modulus: u64, c: u64) -> Self {
        Self::from_polynomial(Polynomial::constant(nvars, modulus, c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn modulus(&self) -> u64 {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return Self::normalized(&self.num + &other.num, self.den.clone());
        }
        if self.den.is_monomial() && other.den.is_monomial() {
            // monic monomial denominators: bring both over their lcm
            let (a, _) = self.den.leading().expect("nonzero");
            let (b, _) = other.den.leading().expect("nonzero");
            let l = a.lcm(b);
            let num = &self.num.mul_monomial(&a.quotient_of(&l)) + &other.num.mul_monomial(&b.quotient_of(&l));
            return Self::normalized(num, Polynomial::term(self.nvars(), self.modulus(), l, 1));
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::normalized(num, &self.den * &other.den)
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn inv(&self) -> Result<RationalFunction, SymbolicError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction, SymbolicError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Divides numerator and denominator by their GCD.
    pub fn reduce(&self) -> RationalFunction {
        if self.den.is_one() || self.num.is_zero() {
            return self.clone();
        }
        let g = gcd(&self.num, &self.den);
        if g.is_one() {
            return self.clone();
        }
        let num = self.num.exact_div(&g).expect("gcd divides");
        let den = self.den.exact_div(&g).expect("gcd divides");
        Self::normalized(num, den)
    }

    /// Cancels the non-monomial part of the denominator by exact division when
    /// it divides the numerator, and only otherwise falls back to [`reduce`](Self::reduce).
    pub(crate) fn simplify(&self) -> RationalFunction {
        if self.den.is_monomial() || self.num.is_zero() {
            return self.clone();
        }
        let m = self.den.monomial_content();
        let rest = self.den.div_monomial(&m);
        match self.num.exact_div(&rest) {
            Ok(q) => Self::normalized(q, Polynomial::term(self.nvars(), self.modulus(), m, 1)),
            Err(_) => self.reduce(),
        }
    }

    /// Equality as functions, by cross-multiplication.
    pub fn same_function(&self, other: &RationalFunction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Replaces `x_var` by `replacement` in a single pass. With `N`, `D` of
    /// degrees `dn`, `dd` in `x_var` and replacement `a/b`, the result is
    /// `N~ b^dd / (D~ b^dn)` with the common power of `b` cancelled, where
    /// `N~`, `D~` are the homogenized substitutions.
    pub fn substitute(&self, var: usize, replacement: &RationalFunction) -> Result<RationalFunction, SymbolicError> {
        if replacement.nvars() != self.nvars() {
            return Err(SymbolicError::ArityMismatch { expected: self.nvars(), got: replacement.nvars() });
        }
        if var >= self.nvars() {
            return Err(SymbolicError::ArityMismatch { expected: self.nvars(), got: var + 1 });
        }
        let (a, b) = (&replacement.num, &replacement.den);
        let dn = self.num.degree_in(var);
        let dd = self.den.degree_in(var);
        let common = dn.min(dd);
        let num = &self.num.homogenized_substitute(var, a, b) * &b.pow(dd - common);
        let den = &self.den.homogenized_substitute(var, a, b) * &b.pow(dn - common);
        if den.is_zero() {
            return Err(SymbolicError::DegenerateSubstitution);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn evaluate<E: Evaluator>(&self, ev: &E, point: &[E::Elem]) -> Result<E::Elem, SymbolicError> {
        let d = self.den.evaluate(ev, point)?;
        let inv = ev.inv(&d).ok_or(SymbolicError::DenominatorVanishes)?;
        let n = self.num.evaluate(ev, point)?;
        Ok(ev.mul(&n, &inv))
    }

    /// Exponents of the monomial denominator; an initial variable `x_i`
    /// reports `-e_i`.
    pub fn denominator_vector(&self) -> Result<Vec<i64>, SymbolicError> {
        let n = self.nvars();
        if self.den.is_one() && self.num.is_monomial() {
            let (m, c) = self.num.leading().expect("nonzero");
            if c == 1 && m.degree() == 1 {
                let i = m.exponents().iter().position(|&e| e == 1).expect("degree one");
                let mut v = vec![0; n];
                v[i] = -1;
                return Ok(v);
            }
        }
        if !self.den.is_monomial() {
            return Err(SymbolicError::NotClusterShaped);
        }
        let (m, _) = self.den.leading().expect("nonzero");
        Ok(m.exponents().iter().map(|&e| e as i64).collect())
    }

    /// Parses the rendering grammar: integers, `x<i>`, `^`, `*`, `/`, `+`, `-`
    /// and parentheses. Juxtaposition also multiplies.
    pub fn parse(s: &str, nvars: usize, modulus: u64) -> Result<RationalFunction, SymbolicError> {
        let mut parser = Parser { src: s.as_bytes(), pos: 0, nvars, modulus };
        let rf = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(rf)
    }
}

impl Polynomial {
    pub fn parse(s: &str, nvars: usize, modulus: u64) -> Result<Polynomial, SymbolicError> {
        let rf = RationalFunction::parse(s, nvars, modulus)?.reduce();
        if !rf.den.is_one() {
            return Err(SymbolicError::Parse { position: 0, message: "not a polynomial".into() });
        }
        Ok(rf.num)
    }
}

impl fmt::Display for RationalFunction {
    /// `(x0*x2 + 1)/x1` style: parentheses only around multi-term parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Polynomial| if p.num_terms() > 1 { format!("({p})") } else { p.to_string() };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    modulus: u64,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> SymbolicError {
        SymbolicError::Parse { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalFunction, SymbolicError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, SymbolicError> {
        let mut acc = self.unary()?;
        // juxtaposition (`2x1`, `x0x2`, `(..)(..)`) multiplies
        while let Some(c @ (b'*' | b'/' | b'x' | b'(')) = self.peek() {
            let at = self.pos;
            if c == b'*' || c == b'/' {
                self.pos += 1;
            }
            let rhs = self.unary()?;
            acc = if c != b'/' {
                acc.mul(&rhs)
            } else {
                acc.div(&rhs).map_err(|_| SymbolicError::Parse { position: at, message: "division by zero".into() })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction, SymbolicError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u128, SymbolicError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse::<u128>()
            .map_err(|_| SymbolicError::Parse { position: start, message: "number too large".into() })
    }

    fn atom(&mut self) -> Result<RationalFunction, SymbolicError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                let i = self.integer()? as usize;
                if i >= self.nvars {
                    return Err(SymbolicError::Parse {
                        position: at,
                        message: format!("variable x{i} out of range for {} variables", self.nvars),
                    });
                }
                Ok(RationalFunction::var(self.nvars, self.modulus, i))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()? % self.modulus as u128;
                Ok(RationalFunction::constant(self.nvars, self.modulus, v as u64))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldParams;
    use num_bigint::BigUint;

    fn rf(s: &str, n: usize, p: u64) -> RationalFunction {
        RationalFunction::parse(s, n, p).unwrap()
    }

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["(x0*x2 + 1)/x1", "(x1*x2 + x2^2 + 1)/x1", "(x1 + 1)/(x1 + x2)", "x0 + 4*x1", "x2", "0", "3"] {
            assert_eq!(rf(s, 3, 5).to_string(), s);
        }
        assert!(matches!(
            RationalFunction::parse("x0 + y", 3, 5),
            Err(SymbolicError::Parse { position: 5, .. })
        ));
        assert!(matches!(RationalFunction::parse("x3", 3, 5), Err(SymbolicError::Parse { .. })));
        assert!(matches!(RationalFunction::parse("(x0", 3, 5), Err(SymbolicError::Parse { .. })));
    }

    #[test]
    fn juxtaposition_multiplies() {
        assert_eq!(rf("(x1^2+x0x2+2x1+1)/(x0x1x2)", 3, 7), rf("(x1^2 + x0*x2 + 2*x1 + 1)/(x0*x1*x2)", 3, 7));
        assert_eq!(rf("(x0 + 1)(x1 + 1)", 2, 7), rf("x0*x1 + x0 + x1 + 1", 2, 7));
        assert!(matches!(RationalFunction::parse("x1 2", 3, 5), Err(SymbolicError::Parse { .. })));
    }

    #[test]
    fn substitution_examples() {
        let lin = rf("x1 + x2", 5, 2);
        let a = rf("(x0*x2 + 1)/x1", 5, 2).substitute(0, &lin).unwrap();
        assert_eq!(a.to_string(), "(x1*x2 + x2^2 + 1)/x1");
        let b = rf("(x1 + 1)/x0", 5, 2).substitute(0, &lin).unwrap();
        assert_eq!(b.to_string(), "(x1 + 1)/(x1 + x2)");
        let c = rf("(x0*x2 + 1)/x1", 5, 2);
        assert_eq!(c.substitute(0, &rf("x0", 5, 2)).unwrap(), c);
    }

    #[test]
    fn degenerate_substitution() {
        let a = rf("1/(x0 + x1)", 2, 2);
        assert_eq!(a.substitute(0, &rf("x1", 2, 2)), Err(SymbolicError::DegenerateSubstitution));
    }

    #[test]
    fn evaluation_examples() {
        let f = FieldParams::new(2, 5, vec![1, 0, 1, 0, 0, 1]).unwrap();
        let point: Vec<_> = (0..5).map(|i| f.alpha_pow(i)).collect();
        let v = rf("(x1 + 1)/(x1 + x2)", 5, 2).evaluate(&f, &point).unwrap();
        assert_eq!(f.element_to_int(&v), BigUint::from(18u32));
        let w = rf("(x2*x4 + x3 + 1)/(x3*x4)", 5, 2).evaluate(&f, &point).unwrap();
        assert_eq!(f.element_to_int(&w), BigUint::from(7u32));

        let z2 = FieldParams::prime_field(2).unwrap();
        let pt = [z2.one(), z2.one()];
        assert_eq!(rf("1/(x0 + x1)", 2, 2).evaluate(&z2, &pt), Err(SymbolicError::DenominatorVanishes));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(rf("(x0*x1 + x1)/x1", 2, 5).to_string(), "x0 + 1");
        let a = rf("((x0 + 1)*(x1 + 1))/(x1 + 1)", 2, 5);
        assert_eq!(a.reduce().to_string(), "x0 + 1");
        let b = rf("(x0*x2 + 1)/x1", 3, 5);
        assert_eq!(b.reduce(), b);
    }

    #[test]
    fn denominator_vectors() {
        assert_eq!(rf("(x0*x2 + x1 + 1)/(x0*x1)", 3, 7).denominator_vector().unwrap(), vec![1, 1, 0]);
        assert_eq!(rf("x2", 3, 7).denominator_vector().unwrap(), vec![0, 0, -1]);
        assert_eq!(rf("(x1 + 1)/x2", 3, 7).reduce().denominator_vector().unwrap(), vec![0, 0, 1]);
        assert_eq!(rf("1/(x1 + 1)", 3, 7).denominator_vector(), Err(SymbolicError::NotClusterShaped));
    }
}
