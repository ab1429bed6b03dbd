//! Multivariate gcd over the rationals: modular images first, primitive remainder sequences as a fallback.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use super::modp::{certainly_coprime, modular_gcd};
use super::poly::MultiPoly;

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(n);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m: Vec<u16> = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let one = BigRational::one();
    let a1 = strip_monomial(a, &ma);
    let b1 = strip_monomial(b, &mb);
    let g = gcd_nomono(a1, b1);
    g.mul_term(&m, &one).monic()
}

fn strip_monomial(p: &MultiPoly, m: &[u16]) -> MultiPoly {
    if m.iter().all(|&e| e == 0) {
        return p.clone();
    }
    MultiPoly::from_terms(
        p.nvars(),
        p.terms().iter().map(|(e, c)| (e.iter().zip(m).map(|(x, y)| x - y).collect(), c.clone())),
    )
}

fn gcd_nomono(mut a: MultiPoly, mut b: MultiPoly) -> MultiPoly {
    let n = a.nvars();
    loop {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return MultiPoly::one(n);
        }
        let ua = a.vars_used();
        let ub = b.vars_used();
        // A variable present in only one argument cannot divide the gcd,
        // so replace that argument by its content with respect to the variable.
        if let Some(v) = (0..n).find(|&v| ua[v] && !ub[v]) {
            a = content(&a, v);
            continue;
        }
        if let Some(v) = (0..n).find(|&v| ub[v] && !ua[v]) {
            b = content(&b, v);
            continue;
        }
        break;
    }
    if a.terms().len() < b.terms().len() || (a.terms().len() == b.terms().len() && a.total_degree() < b.total_degree())
    {
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(_q) = a.div_exact(&b) {
        return b.monic();
    }
    if certainly_coprime(&a, &b) {
        return MultiPoly::one(n);
    }
    if let Some(g) = modular_gcd(&a, &b) {
        return g;
    }
    let ua = a.vars_used();
    let v = (0..n)
        .filter(|&v| ua[v])
        .min_by_key(|&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .expect("non-constant polynomial uses a variable");
    let ca = content(&a, v);
    let cb = content(&b, v);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    c.mul(&g).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content(p: &MultiPoly, v: usize) -> MultiPoly {
    let parts = p.as_univariate(v);
    let mut it = parts.into_values();
    let mut g = match it.next() {
        Some(c) => c,
        None => return MultiPoly::zero(p.nvars()),
    };
    for c in it {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &c);
    }
    if g.is_constant() {
        MultiPoly::one(p.nvars())
    } else {
        g.monic()
    }
}

fn primitive_part(p: &MultiPoly, v: usize) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

fn lead_in(parts: &BTreeMap<u16, MultiPoly>) -> (u16, MultiPoly) {
    let (d, c) = parts.iter().next_back().expect("nonzero");
    (*d, c.clone())
}

fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize) -> MultiPoly {
    let n = a.nvars();
    let bparts = b.as_univariate(v);
    let (db, lb) = lead_in(&bparts);
    let mut r = a.clone();
    let one = BigRational::one();
    loop {
        if r.is_zero() {
            return r;
        }
        let rparts = r.as_univariate(v);
        let (dr, lr) = lead_in(&rparts);
        if dr < db {
            return r;
        }
        let mut shift = vec![0u16; n];
        shift[v] = dr - db;
        r = r.mul(&lb).sub(&b.mul(&lr).mul_term(&shift, &one));
    }
}

fn primitive_prs(a: MultiPoly, b: MultiPoly, v: usize) -> MultiPoly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    while !b.is_zero() {
        if b.degree_in(v) == 0 {
            return MultiPoly::one(a.nvars());
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = primitive_part(&r, v);
    }
    primitive_part(&a, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let n = 3;
        let (a, b, c) = (x(n, 0), x(n, 1), x(n, 2));
        let common = a.mul(&b).sub(&c.pow(2)).add(&MultiPoly::from_int(n, 3));
        let f = common.mul(&a.add(&c));
        let g = common.mul(&b.sub(&a).pow(2));
        assert_eq!(gcd(&f, &g), common.monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let n = 2;
        let f = x(n, 0).pow(2).add(&x(n, 1));
        let g = x(n, 0).sub(&x(n, 1).pow(3));
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        let n = 2;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let common = x(n, 0).scale(&half).add(&x(n, 1));
        let f = common.mul(&x(n, 0)).scale(&BigRational::from_integer(BigInt::from(6)));
        let g = common.mul(&x(n, 1).add(&MultiPoly::one(n)));
        assert_eq!(gcd(&f, &g), common.monic());
    }

    #[test]
    fn gcd_monomial_parts() {
        let n = 2;
        let f = x(n, 0).pow(3).mul(&x(n, 1));
        let g = x(n, 0).mul(&x(n, 1).pow(2));
        assert_eq!(gcd(&f, &g), x(n, 0).mul(&x(n, 1)));
    }
}
