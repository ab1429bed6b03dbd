//! Exact multivariate polynomials and rational functions over the rationals.

mod gcd;
mod modp;
pub mod parse;
mod poly;
mod ratfunc;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use gcd::{content, gcd};
pub use parse::{parse_expr, ExprBuilder, Origin};
pub use poly::{cmp_grlex, Exps, MultiPoly};
pub use ratfunc::{rat, substitute_poly, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown parameter '{0}'")]
    UnknownName(String),
    #[error("elementary symmetric index {k} out of range for {n} inputs")]
    SymmetricIndex { k: usize, n: usize },
    #[error("not a polynomial: {0}")]
    NotPolynomial(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Ordered set of named commuting parameters with a grading per parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamRing {
    names: Vec<String>,
    grading: Vec<u32>,
}

impl ParamRing {
    /// Ring with every parameter in degree 2.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let grading = vec![2; names.len()];
        ParamRing { names, grading }
    }

    pub fn with_grading<S: AsRef<str>>(names: &[S], grading: &[u32]) -> Self {
        assert_eq!(names.len(), grading.len());
        let mut r = Self::new(names);
        r.grading = grading.to_vec();
        r
    }

    pub fn empty() -> Self {
        ParamRing { names: Vec::new(), grading: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grading(&self) -> &[u32] {
        &self.grading
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<MultiPoly, CoeffError> {
        let i = self.index(name).ok_or_else(|| CoeffError::UnknownName(name.to_string()))?;
        Ok(MultiPoly::var(self.len(), i))
    }

    /// Ring extended by further names, appended at the end.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S], grading: u32) -> ParamRing {
        let mut r = self.clone();
        for s in extra {
            r.names.push(s.as_ref().to_string());
            r.grading.push(grading);
        }
        r
    }

    pub fn parse_ratfunc(&self, text: &str) -> Result<RatFunc, ParseError> {
        let mut b = RatBuilder { ring: self };
        parse_expr(text, Origin::default(), &mut b)
    }

    pub fn parse_poly(&self, text: &str) -> Result<MultiPoly, ParseError> {
        let f = self.parse_ratfunc(text)?;
        match f.as_polynomial() {
            Some(p) => Ok(p.clone()),
            None => Err(ParseError { line: 1, col: 1, message: "expression is not a polynomial".into() }),
        }
    }

    pub fn show_poly(&self, p: &MultiPoly) -> String {
        p.display(&self.names).to_string()
    }

    pub fn show(&self, f: &RatFunc) -> String {
        f.display(&self.names).to_string()
    }

    /// Embeds a polynomial of `from` into `self`, matching variables by name.
    pub fn embed(&self, from: &ParamRing, p: &MultiPoly) -> Result<MultiPoly, CoeffError> {
        let map = from
            .names
            .iter()
            .map(|n| self.index(n).ok_or_else(|| CoeffError::UnknownName(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(p.remap(self.len(), &map))
    }

    pub fn embed_ratfunc(&self, from: &ParamRing, f: &RatFunc) -> Result<RatFunc, CoeffError> {
        let num = self.embed(from, f.numer())?;
        let den = self.embed(from, f.denom())?;
        RatFunc::new(num, den)
    }
}

impl fmt::Display for ParamRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

struct RatBuilder<'a> {
    ring: &'a ParamRing,
}

impl ExprBuilder for RatBuilder<'_> {
    type Value = RatFunc;

    fn number(&mut self, n: BigInt) -> Result<RatFunc, String> {
        Ok(RatFunc::from_rational(self.ring.len(), BigRational::from_integer(n)))
    }

    fn ident(&mut self, name: &str) -> Result<RatFunc, String> {
        self.ring.var(name).map(RatFunc::from_poly).map_err(|e| e.to_string())
    }

    fn add(&mut self, a: RatFunc, b: RatFunc) -> Result<RatFunc, String> {
        Ok(a.add(&b))
    }

    fn sub(&mut self, a: RatFunc, b: RatFunc) -> Result<RatFunc, String> {
        Ok(a.sub(&b))
    }

    fn mul(&mut self, a: RatFunc, b: RatFunc) -> Result<RatFunc, String> {
        Ok(a.mul(&b))
    }

    fn div(&mut self, a: RatFunc, b: RatFunc) -> Result<RatFunc, String> {
        a.div(&b).map_err(|e| e.to_string())
    }

    fn neg(&mut self, a: RatFunc) -> Result<RatFunc, String> {
        Ok(a.neg())
    }

    fn pow(&mut self, a: RatFunc, n: u32) -> Result<RatFunc, String> {
        Ok(a.pow(n))
    }
}

/// Simultaneous substitution by name. Names of `from` absent from `map` are kept
/// and must exist in `to`.
pub fn substitute(
    p: &MultiPoly,
    from: &ParamRing,
    map: &BTreeMap<String, MultiPoly>,
    to: &ParamRing,
) -> Result<MultiPoly, CoeffError> {
    let images = images_for(from, map, to)?;
    p.substitute(&images)
}

pub(crate) fn images_for(
    from: &ParamRing,
    map: &BTreeMap<String, MultiPoly>,
    to: &ParamRing,
) -> Result<Vec<MultiPoly>, CoeffError> {
    from.names
        .iter()
        .map(|n| match map.get(n) {
            Some(img) if img.nvars() == to.len() => Ok(img.clone()),
            Some(img) => Err(CoeffError::ArityMismatch { expected: to.len(), found: img.nvars() }),
            None => to.var(n),
        })
        .collect()
}

/// σ_k of the inputs.
pub fn elementary_symmetric(k: usize, vars: &[MultiPoly]) -> Result<MultiPoly, CoeffError> {
    if k == 0 || k > vars.len() {
        return Err(CoeffError::SymmetricIndex { k, n: vars.len() });
    }
    let n = vars[0].nvars();
    let mut e = vec![MultiPoly::zero(n); k + 1];
    e[0] = MultiPoly::one(n);
    for x in vars {
        for j in (1..=k).rev() {
            e[j] = e[j].add(&x.mul(&e[j - 1]));
        }
    }
    Ok(e.swap_remove(k))
}
