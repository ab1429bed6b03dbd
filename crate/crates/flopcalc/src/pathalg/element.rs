use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;

use super::quiver::{compose, MonomialOrder, Path, Quiver};
use super::PathAlgError;
use crate::coeff::{ParamRing, RatFunc};

/// A path algebra over a parameter ring: the ambient space of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathSpace {
    pub quiver: Quiver,
    pub params: ParamRing,
}

impl PathSpace {
    pub fn new(quiver: Quiver, params: ParamRing) -> Arc<Self> {
        Arc::new(PathSpace { quiver, params })
    }
}

/// Finite linear combination of paths with rational-function coefficients.
#[derive(Clone, Debug)]
pub struct Element {
    space: Arc<PathSpace>,
    terms: BTreeMap<Path, RatFunc>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.terms == other.terms
    }
}

impl Eq for Element {}

pub(crate) fn same_space(a: &Arc<PathSpace>, b: &Arc<PathSpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Element {
    pub fn zero(space: &Arc<PathSpace>) -> Self {
        Element { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn from_path(space: &Arc<PathSpace>, p: Path) -> Self {
        Self::term(space, p, RatFunc::one(space.params.len()))
    }

    pub fn term(space: &Arc<PathSpace>, p: Path, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        Element { space: space.clone(), terms }
    }

    pub fn idempotent(space: &Arc<PathSpace>, v: usize) -> Self {
        Self::from_path(space, space.quiver.idempotent(v))
    }

    pub fn arrow(space: &Arc<PathSpace>, i: usize) -> Self {
        Self::from_path(space, space.quiver.arrow_path(i))
    }

    /// Arrow by name; panics if undeclared.
    pub fn named(space: &Arc<PathSpace>, name: &str) -> Self {
        let i = space.quiver.arrow_index(name).unwrap_or_else(|| panic!("no arrow '{name}'"));
        Self::arrow(space, i)
    }

    /// The unit Σ e_v scaled by `c`.
    pub fn scalar(space: &Arc<PathSpace>, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for v in 0..space.quiver.vertices().len() {
                terms.insert(space.quiver.idempotent(v), c.clone());
            }
        }
        Element { space: space.clone(), terms }
    }

    pub fn one(space: &Arc<PathSpace>) -> Self {
        Self::scalar(space, RatFunc::one(space.params.len()))
    }

    pub fn from_terms(space: &Arc<PathSpace>, terms: impl IntoIterator<Item = (Path, RatFunc)>) -> Self {
        let mut e = Self::zero(space);
        for (p, c) in terms {
            e.add_term(p, &c);
        }
        e
    }

    pub fn space(&self) -> &Arc<PathSpace> {
        &self.space
    }

    pub fn quiver(&self) -> &Quiver {
        &self.space.quiver
    }

    pub fn params(&self) -> &ParamRing {
        &self.space.params
    }

    pub fn terms(&self) -> &BTreeMap<Path, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Path) -> RatFunc {
        self.terms.get(p).cloned().unwrap_or_else(|| RatFunc::zero(self.space.params.len()))
    }

    pub fn add_term(&mut self, p: Path, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(slot) => {
                let s = slot.add(c);
                if s.is_zero() {
                    self.terms.remove(&p);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(p, c.clone());
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), PathAlgError> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(PathAlgError::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PathAlgError> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PathAlgError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Element { space: self.space.clone(), terms: self.terms.iter().map(|(p, c)| (p.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(&self.space);
        }
        Element { space: self.space.clone(), terms: self.terms.iter().map(|(p, x)| (p.clone(), x.mul(c))).collect() }
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        self.scale(&RatFunc::from_rational(self.space.params.len(), c.clone()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PathAlgError> {
        self.check(other)?;
        let mut out = Self::zero(&self.space);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = compose(p, q) {
                    out.add_term(pq, &a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self, PathAlgError> {
        let mut acc = Self::one(&self.space);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Largest word degree among the terms (0 for the zero element).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|p| self.space.quiver.degree(p)).max().unwrap_or(0)
    }

    /// Common `(source, target)` of all terms, if there is one.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source, first.target);
        if it.all(|p| (p.source, p.target) == ends) {
            Some(ends)
        } else {
            None
        }
    }

    pub fn is_endpoint_homogeneous(&self) -> bool {
        self.is_zero() || self.endpoints().is_some()
    }

    /// Terms sorted by decreasing order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Path, &RatFunc)> {
        let q = &self.space.quiver;
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(q, b.0, a.0));
        v
    }

    /// Leading path and its coefficient under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Path, &RatFunc)> {
        let q = &self.space.quiver;
        self.terms.iter().max_by(|a, b| order.compare(q, a.0, b.0))
    }

    /// Same terms, reinterpreted in an equal space (e.g. after a round trip).
    pub fn rebase(&self, space: &Arc<PathSpace>) -> Result<Self, PathAlgError> {
        if !same_space(&self.space, space) {
            return Err(PathAlgError::AlgebraMismatch);
        }
        Ok(Element { space: space.clone(), terms: self.terms.clone() })
    }

    pub fn show(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let q = &self.space.quiver;
        let names = self.space.params.names();
        let mut out = String::new();
        for (i, (p, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let path = q.show_path(p);
            let term = format_term(c, names, &path);
            if i == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        out
    }
}

fn format_term(c: &RatFunc, names: &[String], path: &str) -> String {
    if c.is_one() {
        return path.to_string();
    }
    if let Some(p) = c.as_polynomial() {
        if p.neg().is_one() {
            return format!("-{path}");
        }
        if p.terms().len() == 1 {
            return format!("{}*{path}", p.display(names));
        }
        return format!("({})*{path}", p.display(names));
    }
    format!("({})*{path}", c.display(names))
}

/// Compares two elements by their sorted term lists; used for deterministic output.
pub fn cmp_elements(order: &MonomialOrder, a: &Element, b: &Element) -> Ordering {
    let q = &a.space.quiver;
    let la = a.leading(order).map(|x| x.0.clone());
    let lb = b.leading(order).map(|x| x.0.clone());
    match (la, lb) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => order.compare(q, &x, &y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> Arc<PathSpace> {
        let q = Quiver::new(
            &["0", "4"],
            &[("a", "0", "4", 1), ("A", "4", "0", 1), ("b", "4", "4", 1), ("c", "4", "4", 1)],
        )
        .unwrap();
        PathSpace::new(q, ParamRing::new(&["t"]))
    }

    #[test]
    fn noncommutative_expansion() {
        let s = space();
        let b = Element::named(&s, "b");
        let c = Element::named(&s, "c");
        let lhs = b.add(&c).unwrap().mul(&b.sub(&c).unwrap()).unwrap();
        let bb = b.mul(&b).unwrap();
        let bc = b.mul(&c).unwrap();
        let cb = c.mul(&b).unwrap();
        let cc = c.mul(&c).unwrap();
        let rhs = bb.sub(&bc).unwrap().add(&cb).unwrap().sub(&cc).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_acts_as_identity() {
        let s = space();
        let x = Element::named(&s, "a").mul(&Element::named(&s, "b")).unwrap();
        let one = Element::one(&s);
        assert_eq!(one.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&one).unwrap(), x);
    }

    #[test]
    fn cancellation() {
        let s = space();
        let t = RatFunc::var(1, 0);
        let e = Element::idempotent(&s, 1).scale(&t);
        assert!(e.sub(&e).unwrap().is_zero());
    }

    #[test]
    fn mismatched_spaces_rejected() {
        let s = space();
        let other = PathSpace::new(Quiver::new(&["0"], &[]).unwrap(), ParamRing::empty());
        let x = Element::idempotent(&s, 0);
        let y = Element::idempotent(&other, 0);
        assert_eq!(x.add(&y), Err(PathAlgError::AlgebraMismatch));
    }
}
