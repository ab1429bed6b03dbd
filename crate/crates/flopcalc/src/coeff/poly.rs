use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use super::CoeffError;

/// Exponent vector. Every polynomial in one computation shares the same length.
pub type Exps = Vec<u16>;

/// Graded-lex comparison: total degree first, then lexicographic on exponents.
pub fn cmp_grlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Owned exponent vector ordered by graded-lex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Exps);

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_grlex(&self.0, &other.0)
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted in decreasing graded-lex order with no zero coefficients,
/// so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Exps, BigRational)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MultiPoly { nvars, terms: vec![(vec![0; nvars], c)] }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly { nvars, terms: vec![(e, BigRational::one())] }
    }

    pub fn monomial(exps: Exps, c: BigRational) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        MultiPoly { nvars, terms: vec![(exps, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exps, BigRational)>) -> Self {
        let mut map: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            debug_assert_eq!(e.len(), nvars);
            let slot = map.entry(Mono(e)).or_insert_with(BigRational::zero);
            *slot += c;
        }
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.0, c))
            .collect();
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exps, BigRational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Exps, BigRational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Exps, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    /// Weighted degree using the supplied per-variable grading.
    pub fn weighted_degree(&self, grading: &[u32]) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().zip(grading).map(|(&x, &w)| x as u32 * w).sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var] > 0)
    }

    pub fn vars_used(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars];
        for (e, _) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    used[i] = true;
                }
            }
        }
        used
    }

    pub fn coeff_of(&self, exps: &[u16]) -> BigRational {
        self.terms
            .binary_search_by(|(e, _)| cmp_grlex(exps, e))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn neg(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial with exponent vector `m` and coefficient `c`.
    pub fn mul_term(&self, m: &[u16], c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), x * c))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match cmp_grlex(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MultiPoly { nvars: self.nvars, terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        Self::sum_of_products(self.nvars, [(self, other)])
    }

    /// Σ a·b over the given pairs, accumulated in one pass.
    pub fn sum_of_products<'a>(nvars: usize, pairs: impl IntoIterator<Item = (&'a MultiPoly, &'a MultiPoly)>) -> Self {
        let mut map: FxHashMap<Exps, BigRational> = FxHashMap::default();
        let mut buf: Exps = vec![0; nvars];
        for (a, b) in pairs {
            debug_assert!(a.nvars == nvars && b.nvars == nvars);
            for (ea, ca) in &a.terms {
                for (eb, cb) in &b.terms {
                    for k in 0..nvars {
                        buf[k] = ea[k] + eb[k];
                    }
                    let prod = ca * cb;
                    match map.get_mut(&buf) {
                        Some(slot) => *slot += prod,
                        None => {
                            map.insert(buf.clone(), prod);
                        }
                    }
                }
            }
        }
        let mut terms: Vec<(Exps, BigRational)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| cmp_grlex(&b.0, &a.0));
        MultiPoly { nvars, terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.terms[0].clone();
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let mut q = Vec::with_capacity(self.nvars);
                for k in 0..self.nvars {
                    if e[k] < dm[k] {
                        return None;
                    }
                    q.push(e[k] - dm[k]);
                }
                out.push((q, c / &dc));
            }
            return Some(MultiPoly { nvars: self.nvars, terms: out });
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        let inv = dc.recip();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let mut q = Vec::with_capacity(self.nvars);
            for k in 0..self.nvars {
                if rm[k] < dm[k] {
                    return None;
                }
                q.push(rm[k] - dm[k]);
            }
            let qc = &rc * &inv;
            rem = rem.sub(&d.mul_term(&q, &qc));
            quot.push((q, qc));
        }
        Some(MultiPoly { nvars: self.nvars, terms: quot })
    }

    /// Scales so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Exps {
        let mut m = match self.terms.first() {
            None => return vec![0; self.nvars],
            Some((e, _)) => e.clone(),
        };
        for (e, _) in &self.terms[1..] {
            for k in 0..self.nvars {
                m[k] = m[k].min(e[k]);
            }
        }
        m
    }

    /// Splits into coefficients of powers of `var`; the coefficients no longer use `var`.
    pub fn as_univariate(&self, var: usize) -> BTreeMap<u16, MultiPoly> {
        let mut parts: BTreeMap<u16, Vec<(Exps, BigRational)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let d = f[var];
            f[var] = 0;
            parts.entry(d).or_default().push((f, c.clone()));
        }
        parts
            .into_iter()
            .map(|(d, ts)| {
                // Removing one variable's exponent can reorder terms, so re-sort.
                let mut ts = ts;
                ts.sort_by(|a, b| cmp_grlex(&b.0, &a.0));
                (d, MultiPoly { nvars: self.nvars, terms: ts })
            })
            .collect()
    }

    pub fn from_univariate(nvars: usize, var: usize, parts: &BTreeMap<u16, MultiPoly>) -> Self {
        let mut acc = Self::zero(nvars);
        for (&d, p) in parts {
            let mut m = vec![0; nvars];
            m[var] = d;
            acc = acc.add(&p.mul_term(&m, &BigRational::one()));
        }
        acc
    }

    /// Simultaneous substitution of every variable by the corresponding image.
    /// All images must share one target variable count.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly, CoeffError> {
        if images.len() != self.nvars {
            return Err(CoeffError::ArityMismatch { expected: self.nvars, found: images.len() });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if images.iter().any(|p| p.nvars != target) {
            return Err(CoeffError::ArityMismatch { expected: target, found: 0 });
        }
        let mut cache: Vec<Vec<MultiPoly>> = vec![Vec::new(); self.nvars];
        let mut acc = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let powers = &mut cache[k];
                if powers.is_empty() {
                    powers.push(MultiPoly::one(target));
                }
                while powers.len() <= x as usize {
                    let next = powers.last().unwrap().mul(&images[k]);
                    powers.push(next);
                }
                term = term.mul(&powers[x as usize]);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    t *= num_traits::pow(point[k].clone(), x as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-embeds into a ring with `nvars` variables, sending variable i to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        MultiPoly::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                let mut f = vec![0; nvars];
                for (k, &x) in e.iter().enumerate() {
                    f[map[k]] += x;
                }
                (f, c.clone())
            }),
        )
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub(crate) fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a MultiPoly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if !a.is_one() || is_const {
                factors.push(fmt_rational(&a));
            }
            for (k, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(self.names[k].clone()),
                    _ => factors.push(format!("{}^{}", self.names[k], x)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn product_of_monomials() {
        let t = MultiPoly::var(3, 0);
        let u = MultiPoly::var(3, 1);
        let w = MultiPoly::var(3, 2);
        let lhs = t.mul(&u).mul(&t.mul(&w));
        assert_eq!(lhs, MultiPoly::monomial(vec![2, 1, 1], q(1, 1)));
    }

    #[test]
    fn exact_division_roundtrip() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let a = x.add(&y).pow(3);
        let b = x.sub(&y.scale(&q(2, 3)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(prod.add(&MultiPoly::one(2)).div_exact(&b).is_none());
    }

    #[test]
    fn univariate_split_roundtrip() {
        let x = MultiPoly::var(3, 0);
        let y = MultiPoly::var(3, 1);
        let z = MultiPoly::var(3, 2);
        let p = x.mul(&y).add(&z.pow(2).mul(&y)).sub(&x.pow(3));
        let parts = p.as_univariate(1);
        assert_eq!(MultiPoly::from_univariate(3, 1, &parts), p);
    }
}
