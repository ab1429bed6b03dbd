use std::collections::BTreeMap;
use std::fmt;

use super::matrix::Matrix;
use super::FlopsError;
use crate::coeff::{substitute_poly, MultiPoly, ParamRing, ParseError, RatFunc};
use crate::pathalg::{AlgebraPresentation, Element, Path};

/// Matrices for the arrows of a quiver over a commutative ring.
///
/// Text form:
///
/// ```text
/// ring: x, y, t
/// eliminate:        (optional) var = poly ; …
/// params:           (optional) algebra parameter = poly ; …
/// dims: 0 = 1, 4 = 2
/// a = [1, 0]
/// A = [t; y]
/// ```
///
/// Rows are separated by `;` and entries by `,`. The matrix of an arrow `v -> w`
/// is dim(v) × dim(w), and a path evaluates to the product of its matrices in order.
/// Eliminated variables are substituted everywhere, and algebra parameters not
/// listed under `params:` are the ring variables of the same name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub ring: ParamRing,
    pub eliminations: Vec<(String, MultiPoly)>,
    pub param_images: Vec<(String, MultiPoly)>,
    pub dims: Vec<(String, usize)>,
    pub matrices: Vec<(String, Matrix)>,
}

fn perr(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, col: 1, message: message.into() }
}

fn relined(line: usize, e: ParseError) -> ParseError {
    ParseError { line, ..e }
}

fn assignments(ring: &ParamRing, line: usize, body: &str) -> Result<Vec<(String, MultiPoly)>, ParseError> {
    body.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (lhs, rhs) = item.split_once('=').ok_or_else(|| perr(line, format!("expected 'name = poly' in '{item}'")))?;
            Ok((lhs.trim().to_string(), ring.parse_poly(rhs.trim()).map_err(|e| relined(line, e))?))
        })
        .collect()
}

impl Representation {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        // (keyword, first line, joined body)
        let mut sections: Vec<(String, usize, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let key = ["ring:", "eliminate:", "params:", "dims:"].into_iter().find(|k| line.starts_with(k));
            match key {
                Some(k) => sections.push((k.trim_end_matches(':').to_string(), i + 1, line[k.len()..].to_string())),
                None if line.contains('[') => sections.push(("matrix".into(), i + 1, line.to_string())),
                None => match sections.last_mut() {
                    Some((k, _, body)) if k != "matrix" => {
                        body.push(' ');
                        body.push_str(line);
                    }
                    _ => return Err(perr(i + 1, format!("unexpected line '{line}'"))),
                },
            }
        }
        let (_, _, ring_body) = sections.iter().find(|s| s.0 == "ring").ok_or_else(|| perr(1, "missing 'ring:' line"))?;
        let names: Vec<&str> = ring_body.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        let ring = ParamRing::new(&names);
        let mut rep = Representation { ring: ring.clone(), eliminations: vec![], param_images: vec![], dims: vec![], matrices: vec![] };
        for (k, line, body) in &sections {
            match k.as_str() {
                "ring" => {}
                "eliminate" => rep.eliminations.extend(assignments(&ring, *line, body)?),
                "params" => rep.param_images.extend(assignments(&ring, *line, body)?),
                "dims" => {
                    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        let (v, d) = item.split_once('=').ok_or_else(|| perr(*line, "expected 'vertex = dim'"))?;
                        let d = d.trim().parse().map_err(|_| perr(*line, format!("bad dimension '{}'", d.trim())))?;
                        rep.dims.push((v.trim().to_string(), d));
                    }
                }
                _ => {
                    let (name, m) = body.split_once('=').ok_or_else(|| perr(*line, "expected 'arrow = [ … ]'"))?;
                    let inner = m.trim().strip_prefix('[').and_then(|s| s.strip_suffix(']')).ok_or_else(|| perr(*line, "matrix must be bracketed"))?;
                    let rows: Vec<Vec<&str>> = inner.split(';').map(|r| r.split(',').map(str::trim).collect()).collect();
                    if rows.iter().any(|r| r.len() != rows[0].len()) {
                        return Err(perr(*line, format!("ragged matrix for '{}'", name.trim())));
                    }
                    let m = Matrix::parse(&ring, &rows).map_err(|e| relined(*line, e))?;
                    rep.matrices.push((name.trim().to_string(), m));
                }
            }
        }
        for (v, _) in &rep.eliminations {
            if ring.index(v).is_none() {
                return Err(perr(1, format!("eliminated variable '{v}' is not in the ring")));
            }
        }
        Ok(rep)
    }

    fn elimination_images(&self) -> Vec<MultiPoly> {
        let n = self.ring.len();
        (0..n)
            .map(|i| {
                let name = &self.ring.names()[i];
                self.eliminations.iter().find(|(v, _)| v == name).map_or_else(|| MultiPoly::var(n, i), |(_, p)| p.clone())
            })
            .collect()
    }

    /// Substitutes the eliminated variables.
    pub fn reduce(&self, p: &MultiPoly) -> Result<MultiPoly, FlopsError> {
        if self.eliminations.is_empty() {
            return Ok(p.clone());
        }
        Ok(p.substitute(&self.elimination_images())?)
    }

    fn dim_of(&self, alg: &AlgebraPresentation, v: usize) -> Result<usize, FlopsError> {
        let name = &alg.quiver().vertices()[v];
        self.dims.iter().find(|(n, _)| n == name).map(|(_, d)| *d).ok_or_else(|| FlopsError::Shape(format!("no dimension for vertex {name}")))
    }

    /// Arrow matrices after elimination, checked against the quiver.
    fn arrow_matrices(&self, alg: &AlgebraPresentation) -> Result<Vec<Matrix>, FlopsError> {
        let q = alg.quiver();
        let mut out = Vec::new();
        for a in q.arrows() {
            let (_, m) = self.matrices.iter().find(|(n, _)| *n == a.name).ok_or_else(|| FlopsError::Shape(format!("no matrix for arrow {}", a.name)))?;
            let want = (self.dim_of(alg, a.source)?, self.dim_of(alg, a.target)?);
            if (m.rows, m.cols) != want {
                return Err(FlopsError::Shape(format!("arrow {} is {}×{}, expected {}×{}", a.name, m.rows, m.cols, want.0, want.1)));
            }
            out.push(m.try_map(|p| self.reduce(p))?);
        }
        Ok(out)
    }

    /// Images of the algebra parameters as ring elements.
    fn coefficient_images(&self, alg: &AlgebraPresentation) -> Result<Vec<RatFunc>, FlopsError> {
        alg.params()
            .names()
            .iter()
            .map(|n| {
                let p = match self.param_images.iter().find(|(k, _)| k == n) {
                    Some((_, p)) => p.clone(),
                    None => self.ring.var(n).map_err(|_| FlopsError::UnknownName(n.clone()))?,
                };
                Ok(RatFunc::from_poly(self.reduce(&p)?))
            })
            .collect()
    }

    /// The matrix of an element, over the ring with eliminated variables substituted.
    pub fn evaluate(&self, alg: &AlgebraPresentation, e: &Element) -> Result<Matrix, FlopsError> {
        let mats = self.arrow_matrices(alg)?;
        let coeffs = self.coefficient_images(alg)?;
        self.evaluate_with(alg, &mats, &coeffs, e)
    }

    fn evaluate_with(&self, alg: &AlgebraPresentation, mats: &[Matrix], coeffs: &[RatFunc], e: &Element) -> Result<Matrix, FlopsError> {
        let n = self.ring.len();
        let (s, t) = e.endpoints().ok_or_else(|| FlopsError::Shape("element is not endpoint-homogeneous".into()))?;
        let mut acc = Matrix::zero(n, self.dim_of(alg, s)?, self.dim_of(alg, t)?);
        let mut cache: BTreeMap<&Path, Matrix> = BTreeMap::new();
        for (p, c) in e.terms() {
            let m = match cache.get(p) {
                Some(m) => m.clone(),
                None => {
                    let mut m = Matrix::identity(n, self.dim_of(alg, p.source)?);
                    for &a in &p.arrows {
                        m = m.mul(&mats[a as usize]);
                    }
                    cache.insert(p, m.clone());
                    m
                }
            };
            let c = if alg.params().is_empty() {
                RatFunc::from_rational(n, c.constant_value().expect("no parameters"))
            } else {
                substitute_poly(c.numer(), coeffs)?.div(&substitute_poly(c.denom(), coeffs)?)?
            };
            let c = c.as_polynomial().ok_or(FlopsError::NotPolynomial)?.clone();
            acc = acc.add(&m.map(|x| x.mul(&c)));
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub index: usize,
    pub relation: String,
    pub passed: bool,
    pub residual: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationReport {
    pub checks: Vec<RelationCheck>,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for RepresentationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} relation {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.index + 1, c.relation)?;
            if !c.passed {
                let rows: Vec<String> = c.residual.iter().map(|r| r.join(", ")).collect();
                write!(f, "  residual [{}]", rows.join("; "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Evaluates every relation on the matrices; passes when each is the zero matrix.
pub fn verify_representation(alg: &AlgebraPresentation, rep: &Representation) -> Result<RepresentationReport, FlopsError> {
    let mats = rep.arrow_matrices(alg)?;
    let coeffs = rep.coefficient_images(alg)?;
    let mut checks = Vec::new();
    for (i, r) in alg.relations.iter().enumerate() {
        let m = rep.evaluate_with(alg, &mats, &coeffs, r)?;
        checks.push(RelationCheck { index: i, relation: r.show(&alg.order), passed: m.is_zero(), residual: m.show_rows(&rep.ring) });
    }
    Ok(RepresentationReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{preprojective, universal_flopping_algebra, DynkinDiagram, DynkinType};

    #[test]
    fn a1_rank_one() {
        let e = universal_flopping_algebra(1).unwrap();
        // a0 A0 − A1 a1 = t e0 and a1 A1 − A0 a0 = −t e1
        let rep = Representation::parse("ring: t\ndims: 0 = 1, 1 = 1\na0 = [1]\nA0 = [t]\na1 = [0]\nA1 = [0]\n").unwrap();
        assert!(verify_representation(&e.presentation, &rep).unwrap().passed());
        let bad = Representation::parse("ring: t\ndims: 0 = 1, 1 = 1\na0 = [1]\nA0 = [1]\na1 = [0]\nA1 = [0]\n").unwrap();
        assert!(!verify_representation(&e.presentation, &bad).unwrap().passed());
    }

    #[test]
    fn zero_matrices_on_d4() {
        let alg = preprojective(&DynkinDiagram::new(DynkinType::D4));
        let mut text = String::from("ring: s\ndims: ");
        let dims: Vec<String> = alg.quiver().vertices().iter().map(|v| format!("{v} = 1")).collect();
        text.push_str(&dims.join(", "));
        text.push('\n');
        for a in alg.quiver().arrows() {
            text.push_str(&format!("{} = [0]\n", a.name));
        }
        let rep = Representation::parse(&text).unwrap();
        assert!(verify_representation(&alg, &rep).unwrap().passed());
    }

    #[test]
    fn shape_mismatch_reported() {
        let e = universal_flopping_algebra(1).unwrap();
        let rep = Representation::parse("ring: t\ndims: 0 = 1, 1 = 1\na0 = [1, 0]\nA0 = [t]\na1 = [0]\nA1 = [0]\n").unwrap();
        assert!(matches!(verify_representation(&e.presentation, &rep), Err(FlopsError::Shape(_))));
    }
}
