//! Multivariate GCD over Z_p: recursive primitive PRS, one variable at a time.

use super::poly::Polynomial;

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic().0;
    }
    if b.is_zero() {
        return a.monic().0;
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.nvars(), a.modulus());
    }
    // cheap special case: a monomial divisor
    if a.is_monomial() || b.is_monomial() {
        let m = a.monomial_content().gcd(&b.monomial_content());
        return Polynomial::term(a.nvars(), a.modulus(), m, 1);
    }
    let v = (0..a.nvars())
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .expect("non-constant input");
    match (a.degree_in(v), b.degree_in(v)) {
        (0, _) => gcd(a, &content_in(b, v)),
        (_, 0) => gcd(&content_in(a, v), b),
        _ => {
            let ca = content_in(a, v);
            let cb = content_in(b, v);
            let pa = a.exact_div(&ca).expect("content divides");
            let pb = b.exact_div(&cb).expect("content divides");
            let c = gcd(&ca, &cb);
            let g = primitive_prs(pa, pb, v);
            (&c * &g).monic().0
        }
    }
}

/// GCD of the coefficients with respect to `x_v`.
pub(crate) fn content_in(a: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero(a.nvars(), a.modulus());
    for c in a.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part(a: &Polynomial, v: usize) -> Polynomial {
    a.exact_div(&content_in(a, v)).expect("content divides")
}

fn primitive_prs(f: Polynomial, g: Polynomial, v: usize) -> Polynomial {
    let (mut f, mut g) = if f.degree_in(v) >= g.degree_in(v) { (f, g) } else { (g, f) };
    loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            return primitive_part(&g, v);
        }
        if r.degree_in(v) == 0 {
            return Polynomial::one(f.nvars(), f.modulus());
        }
        f = g;
        g = primitive_part(&r, v);
    }
}

fn pseudo_rem(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let dg = g.degree_in(v);
    let lcg = g.coefficients_in(v).pop().expect("nonzero");
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lcr = r.coefficients_in(v).pop().expect("nonzero");
        let mut shift = super::poly::Monomial::one(f.nvars()).exponents().to_vec();
        shift[v] = dr - dg;
        let shifted = g.mul_monomial(&super::poly::Monomial::new(shift));
        r = &(&r * &lcg) - &(&lcr * &shifted);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, p: u64, i: usize) -> Polynomial {
        Polynomial::var(n, p, i)
    }

    #[test]
    fn common_factor_found() {
        let p = 5;
        let one = Polynomial::one(3, p);
        let f1 = &x(3, p, 0) + &one;
        let f2 = &x(3, p, 1) + &one;
        let f3 = &(&x(3, p, 0) * &x(3, p, 2)) + &x(3, p, 1);
        let a = &f1 * &f2;
        let b = &f2 * &f3;
        assert_eq!(gcd(&a, &b), f2);
        assert_eq!(gcd(&a, &f3), one);
    }

    #[test]
    fn gcd_with_powers_and_scalars() {
        let p = 7;
        let one = Polynomial::one(2, p);
        let f = &(&x(2, p, 0) * &x(2, p, 1)) + &one;
        let a = f.pow(2).scale(3);
        let b = (&f * &(&x(2, p, 0) + &one)).scale(5);
        assert_eq!(gcd(&a, &b), f);
        assert_eq!(gcd(&a, &Polynomial::zero(2, p)), f.pow(2));
    }

    #[test]
    fn monomial_gcd() {
        let p = 3;
        let a = &(&x(2, p, 0) * &x(2, p, 1)) + &(&x(2, p, 0) * &x(2, p, 0));
        assert_eq!(gcd(&a, &x(2, p, 0)), x(2, p, 0));
        assert_eq!(gcd(&a, &x(2, p, 1)), Polynomial::one(2, p));
    }
}
