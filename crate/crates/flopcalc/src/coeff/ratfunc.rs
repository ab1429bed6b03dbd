use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::MultiPoly;
use super::CoeffError;

/// Quotient of two polynomials in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc { num: MultiPoly::zero(nvars), den: MultiPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        RatFunc { num: MultiPoly::one(nvars), den: MultiPoly::one(nvars) }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(nvars, c))
    }

    pub fn from_rational(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RatFunc { num: p, den: MultiPoly::one(n) }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, i))
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: MultiPoly, den: MultiPoly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        if let Some(c) = den.constant_value() {
            return RatFunc { num: num.scale(&c.recip()), den: MultiPoly::one(n) };
        }
        let (num, den) = match num.div_exact(&den) {
            Some(q) => (q, MultiPoly::one(n)),
            None => {
                let g = gcd(&num, &den);
                if g.is_one() {
                    (num, den)
                } else {
                    (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
                }
            }
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&MultiPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let rhs_num = if negate { other.num.neg() } else { other.num.clone() };
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.add(&rhs_num), den: self.den.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RatFunc { num: rhs_num, den: other.den.clone() };
        }
        if self.den == other.den {
            return Self::normalize(self.num.add(&rhs_num), self.den.clone());
        }
        if other.den.is_one() {
            return RatFunc { num: self.num.add(&rhs_num.mul(&self.den)), den: self.den.clone() };
        }
        if self.den.is_one() {
            return RatFunc { num: self.num.mul(&other.den).add(&rhs_num), den: other.den.clone() };
        }
        let g = gcd(&self.den, &other.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&rhs_num.mul(&d1));
        let den = d1.mul(&other.den);
        Self::normalize(num, den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.mul(&other.num), den: self.den.clone() };
        }
        let (n1, d2) = cancel(&self.num, &other.den);
        let (n2, d1) = cancel(&other.num, &self.den);
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let lc = self.num.leading_coeff();
        let inv = lc.recip();
        if let Some(c) = self.num.constant_value() {
            return Ok(RatFunc { num: self.den.scale(&c.recip()), den: MultiPoly::one(self.nvars()) });
        }
        Ok(RatFunc { num: self.den.scale(&inv), den: self.num.scale(&inv) })
    }

    pub fn div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        RatFunc { num: self.num.pow(n), den: self.den.pow(n) }
    }

    /// Substitutes every variable by a rational function in a common target ring.
    pub fn substitute(&self, images: &[RatFunc]) -> Result<RatFunc, CoeffError> {
        let num = substitute_poly(&self.num, images)?;
        let den = substitute_poly(&self.den, images)?;
        num.div(&den)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> RatDisplay<'a> {
        RatDisplay { f: self, names }
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, CoeffError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }
}

fn cancel(num: &MultiPoly, den: &MultiPoly) -> (MultiPoly, MultiPoly) {
    if den.is_one() || num.is_constant() {
        return (num.clone(), den.clone());
    }
    let g = gcd(num, den);
    if g.is_one() {
        (num.clone(), den.clone())
    } else {
        (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
    }
}

/// Substitutes into a polynomial, with images possibly rational.
pub fn substitute_poly(p: &MultiPoly, images: &[RatFunc]) -> Result<RatFunc, CoeffError> {
    if images.len() != p.nvars() {
        return Err(CoeffError::ArityMismatch { expected: p.nvars(), found: images.len() });
    }
    let target = images.first().map(|f| f.nvars()).unwrap_or(0);
    if images.iter().all(|f| f.is_polynomial()) {
        let polys: Vec<MultiPoly> = images.iter().map(|f| f.num.clone()).collect();
        return Ok(RatFunc::from_poly(p.substitute(&polys)?));
    }
    let mut acc = RatFunc::zero(target);
    for (e, c) in p.terms() {
        let mut term = RatFunc::from_rational(target, c.clone());
        for (k, &x) in e.iter().enumerate() {
            if x > 0 {
                term = term.mul(&images[k].pow(x as u32));
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

pub struct RatDisplay<'a> {
    f: &'a RatFunc,
    names: &'a [String],
}

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.den.is_one() {
            return write!(fm, "{}", self.f.num.display(self.names));
        }
        let wrap = |p: &MultiPoly| {
            if p.terms().len() == 1 && p.leading_coeff().is_one() {
                p.display(self.names).to_string()
            } else {
                format!("({})", p.display(self.names))
            }
        };
        write!(fm, "{}/{}", wrap(&self.f.num), wrap(&self.f.den))
    }
}

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_quotient_recovers_numerator() {
        let n = 2;
        let t = MultiPoly::var(n, 0);
        let d = MultiPoly::var(n, 1);
        let num = RatFunc::from_poly(t.pow(2).sub(&d));
        let tt = RatFunc::from_poly(t.clone());
        let q = num.div(&tt).unwrap();
        assert!(!q.is_polynomial());
        assert_eq!(q.mul(&tt), num);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = RatFunc::zero(1);
        assert_eq!(RatFunc::one(1).div(&z), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn cancellation_in_sums() {
        let n = 1;
        let t = RatFunc::var(n, 0);
        let a = RatFunc::one(n).div(&t).unwrap();
        let b = t.sub(&RatFunc::one(n)).div(&t).unwrap();
        assert_eq!(a.add(&b), RatFunc::one(n));
    }
}
