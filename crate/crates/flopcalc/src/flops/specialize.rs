use std::fmt::Write as _;

use super::FlopsError;
use crate::coeff::{ParamRing, ParseError, RatFunc};
use crate::pathalg::{AlgebraPresentation, Homomorphism, PathSpace};

/// Substitution of the parameters of one ring by polynomials in a new ring.
///
/// Text form: a `params:` line, an optional `grading:` line, then `name = expr` lines.
/// Parameters without a line map to the parameter of the same name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMap {
    pub target: ParamRing,
    pub images: Vec<(String, String)>,
}

fn perr(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, col: 1, message: message.into() }
}

impl ParamMap {
    pub fn identity(ring: &ParamRing) -> Self {
        ParamMap { target: ring.clone(), images: Vec::new() }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut names: Option<Vec<String>> = None;
        let mut grading: Vec<(String, u32)> = Vec::new();
        let mut images = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("params:") {
                names = Some(rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
            } else if let Some(rest) = line.strip_prefix("grading:") {
                for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let (n, d) = item.split_once('=').ok_or_else(|| perr(i + 1, "expected name=degree"))?;
                    let d = d.trim().parse().map_err(|_| perr(i + 1, format!("bad degree '{}'", d.trim())))?;
                    grading.push((n.trim().to_string(), d));
                }
            } else if let Some((lhs, rhs)) = line.split_once('=') {
                images.push((lhs.trim().to_string(), rhs.trim().to_string()));
            } else {
                return Err(perr(i + 1, format!("expected 'name = expr', found '{line}'")));
            }
        }
        let names = names.ok_or_else(|| perr(1, "missing 'params:' line"))?;
        let mut g = vec![2u32; names.len()];
        for (n, d) in grading {
            let k = names.iter().position(|m| *m == n).ok_or_else(|| perr(1, format!("grading for undeclared '{n}'")))?;
            g[k] = d;
        }
        let target = ParamRing::with_grading(&names, &g);
        for (k, (_, rhs)) in images.iter().enumerate() {
            target.parse_ratfunc(rhs).map_err(|e| ParseError { line: e.line + k, ..e })?;
        }
        Ok(ParamMap { target, images })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("params: {}\n", self.target.names().join(", "));
        if self.target.grading().iter().any(|&d| d != 2) {
            let g: Vec<String> = self.target.names().iter().zip(self.target.grading()).map(|(n, d)| format!("{n}={d}")).collect();
            writeln!(s, "grading: {}", g.join(", ")).unwrap();
        }
        for (k, v) in &self.images {
            writeln!(s, "{k} = {v}").unwrap();
        }
        s
    }

    /// Image of every parameter of `source`, in order.
    pub fn images_for(&self, source: &ParamRing) -> Result<Vec<RatFunc>, FlopsError> {
        for (k, _) in &self.images {
            if source.index(k).is_none() {
                return Err(FlopsError::UnknownName(k.clone()));
            }
        }
        source
            .names()
            .iter()
            .map(|n| match self.images.iter().find(|(k, _)| k == n) {
                Some((_, v)) => Ok(self.target.parse_ratfunc(v)?),
                None => Ok(RatFunc::from_poly(self.target.var(n)?)),
            })
            .collect()
    }
}

/// Pushes every relation through the parameter substitution; relations that become zero are dropped.
pub fn specialize(alg: &AlgebraPresentation, map: &ParamMap) -> Result<AlgebraPresentation, FlopsError> {
    let images = map.images_for(alg.params())?;
    let space = PathSpace::new(alg.quiver().clone(), map.target.clone());
    let h = Homomorphism::coefficient_map(alg.space(), &space, images);
    let mut rels = Vec::new();
    for r in &alg.relations {
        let img = h.apply(r)?;
        if !img.is_zero() {
            rels.push(img);
        }
    }
    Ok(AlgebraPresentation::new(alg.name.clone(), space, rels, Some(alg.order.clone()))?)
}
