use std::collections::BTreeMap;

use crate::coeff::RatFunc;
use crate::pathalg::{Element, Path};

type Vector = BTreeMap<Path, RatFunc>;

struct Pivot {
    at: Path,
    vec: Vector,
    /// The pivot vector as a combination of the input columns.
    combo: BTreeMap<usize, RatFunc>,
}

/// Incremental column echelon form over ℚ(params) for expressing elements in a span.
pub(crate) struct SpanSolver {
    nparams: usize,
    columns: usize,
    pivots: Vec<Pivot>,
}

fn sub_scaled<K: Ord + Clone>(dst: &mut BTreeMap<K, RatFunc>, c: &RatFunc, src: &BTreeMap<K, RatFunc>) {
    for (k, v) in src {
        let d = v.mul(c);
        match dst.get_mut(k) {
            Some(x) => {
                *x = x.sub(&d);
                if x.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                dst.insert(k.clone(), d.neg());
            }
        }
    }
}

impl SpanSolver {
    pub fn new(nparams: usize) -> Self {
        SpanSolver { nparams, columns: 0, pivots: Vec::new() }
    }

    fn reduce(&self, v: &mut Vector, combo: &mut BTreeMap<usize, RatFunc>) {
        for p in &self.pivots {
            if let Some(c) = v.get(&p.at).cloned() {
                sub_scaled(v, &c, &p.vec);
                sub_scaled(combo, &c, &p.combo);
            }
        }
    }

    /// Adds a column; returns false (and ignores it) if it is already in the span.
    pub fn push(&mut self, col: &Element) -> bool {
        let k = self.columns;
        self.columns += 1;
        let mut v: Vector = col.terms().clone();
        let mut combo = BTreeMap::from([(k, RatFunc::one(self.nparams))]);
        self.reduce(&mut v, &mut combo);
        if v.is_empty() {
            return false;
        }
        // constant pivots keep the fractions small
        let at = v
            .iter()
            .find(|(_, c)| c.constant_value().is_some())
            .or_else(|| v.iter().next())
            .map(|(p, _)| p.clone())
            .expect("nonempty");
        let inv = v[&at].inv().expect("nonzero pivot");
        for x in v.values_mut() {
            *x = x.mul(&inv);
        }
        for x in combo.values_mut() {
            *x = x.mul(&inv);
        }
        self.pivots.push(Pivot { at, vec: v, combo });
        true
    }

    /// Coefficients c with Σ c_k col_k = target, or `None` when target is outside the span.
    pub fn solve(&self, target: &Element) -> Option<Vec<RatFunc>> {
        let mut v: Vector = target.terms().clone();
        let mut combo: BTreeMap<usize, RatFunc> = BTreeMap::new();
        self.reduce(&mut v, &mut combo);
        if !v.is_empty() {
            return None;
        }
        let mut out = vec![RatFunc::zero(self.nparams); self.columns];
        for (k, c) in combo {
            out[k] = c.neg();
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathalg::parse_presentation;

    #[test]
    fn solves_in_span() {
        let alg = parse_presentation("params: s\nvertices: 0\narrows: x: 0 -> 0, y: 0 -> 0\n").unwrap();
        let cols = [alg.element("x + y"), alg.element("x - s*y"), alg.element("2*x + (1 - s)*y")];
        let mut s = SpanSolver::new(1);
        assert!(s.push(&cols[0]));
        assert!(s.push(&cols[1]));
        assert!(!s.push(&cols[2]));
        let target = alg.element("3*x + y");
        let c = s.solve(&target).unwrap();
        let mut acc = Element::zero(alg.space());
        for (k, col) in cols.iter().enumerate() {
            acc = acc.add(&col.scale(&c[k])).unwrap();
        }
        assert_eq!(acc.terms(), target.terms());
        assert!(s.solve(&alg.element("x*y")).is_none());
    }
}
