//! Contraction algebras A/Ae₀A, their dimensions and Gopakumar–Vafa invariants.

use std::fmt;

use thiserror::Error;

use crate::ncgb::{dimension, local_dimension, Dimension, GbError};
use crate::pathalg::{AlgebraPresentation, Element, MonomialOrder, Path, PathAlgError, PathSpace, Quiver, QuiverError};

/// Longest nil length tried by the complete-local dimension.
pub const LOCAL_MAX_LENGTH: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("no vertex '{0}'")]
    BadVertex(String),
    #[error("{what} did not stabilise; the quotient may be infinite-dimensional or only finite after completion")]
    Infinite { what: &'static str },
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    PathAlg(#[from] PathAlgError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// How a dimension was counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimensionMode {
    /// Normal words of the graded quotient.
    Graded,
    /// Stable value of dim F/(I + m^N), the completion at the arrow ideal.
    Local,
}

impl fmt::Display for DimensionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimensionMode::Graded => "graded",
            DimensionMode::Local => "local",
        })
    }
}

/// Deletes `vertex`, every arrow touching it, and every path through it.
pub fn contraction_presentation(alg: &AlgebraPresentation, vertex: usize) -> Result<AlgebraPresentation, ContractionError> {
    let q = alg.quiver();
    let v = q.vertices().get(vertex).ok_or_else(|| ContractionError::BadVertex(vertex.to_string()))?;
    contract_vertices(alg, &[v.as_str()])
}

/// [`contraction_presentation`] for a set of vertex ids; ids not in the quiver are ignored.
pub fn contract_vertices(alg: &AlgebraPresentation, vertices: &[&str]) -> Result<AlgebraPresentation, ContractionError> {
    let q = alg.quiver();
    let gone: Vec<bool> = q.vertices().iter().map(|v| vertices.contains(&v.as_str())).collect();
    let mut nq = Quiver::new::<&str>(&[], &[])?;
    let mut vmap = vec![None; q.vertices().len()];
    for (i, v) in q.vertices().iter().enumerate() {
        if !gone[i] {
            vmap[i] = Some(nq.add_vertex(v)?);
        }
    }
    let mut amap = vec![None; q.arrows().len()];
    for (i, a) in q.arrows().iter().enumerate() {
        if !gone[a.source] && !gone[a.target] {
            let (s, t) = (&q.vertices()[a.source], &q.vertices()[a.target]);
            amap[i] = Some(nq.add_arrow(&a.name, s, t, a.degree)? as u32);
        }
    }
    let space = PathSpace::new(nq, alg.params().clone());
    let mut rels = Vec::new();
    for r in &alg.relations {
        let mut e = Element::zero(&space);
        for (p, c) in r.terms() {
            let arrows: Option<Vec<u32>> = p.arrows.iter().map(|&a| amap[a as usize]).collect();
            let (Some(arrows), Some(s), Some(t)) = (arrows, vmap[p.source], vmap[p.target]) else {
                continue;
            };
            e.add_term(Path { source: s, target: t, arrows }, c);
        }
        if !e.is_zero() {
            rels.push(e);
        }
    }
    let precedence = alg.order.precedence().iter().filter_map(|&a| amap[a].map(|i| i as usize)).collect();
    let name = alg.name.as_ref().map(|n| if n.ends_with("-contraction") { n.clone() } else { format!("{n}-contraction") });
    Ok(AlgebraPresentation::new(name, space, rels, Some(MonomialOrder::new(precedence)))?)
}

/// Adds commutators of loops at each vertex and kills arrows between distinct vertices.
pub fn abelianization(alg: &AlgebraPresentation) -> Result<AlgebraPresentation, ContractionError> {
    let q = alg.quiver();
    let space = alg.space();
    let mut rels = alg.relations.clone();
    for (i, a) in q.arrows().iter().enumerate() {
        if a.source != a.target {
            rels.push(Element::arrow(space, i));
            continue;
        }
        for (j, b) in q.arrows().iter().enumerate().skip(i + 1) {
            if b.source == a.source && b.target == a.source {
                let (x, y) = (Element::arrow(space, i), Element::arrow(space, j));
                rels.push(x.mul(&y)?.sub(&y.mul(&x)?)?);
            }
        }
    }
    Ok(alg.with_relations(rels)?)
}

/// Dimension of a finite-dimensional algebra: graded when every relation is homogeneous,
/// otherwise at the completion.
pub fn algebra_dimension(alg: &AlgebraPresentation, budget: u64) -> Result<(usize, DimensionMode), ContractionError> {
    let (d, mode) = if alg.is_homogeneous() {
        (dimension(alg, budget)?, DimensionMode::Graded)
    } else {
        (local_dimension(alg, LOCAL_MAX_LENGTH, budget)?, DimensionMode::Local)
    };
    match d {
        Dimension::Finite(n) => Ok((n, mode)),
        Dimension::Infinite => Err(ContractionError::Infinite { what: "dimension" }),
    }
}

/// `(dim, dim_ab, mode)` of A/Ae₀A.
pub fn contraction_dims(alg: &AlgebraPresentation, vertex: usize, budget: u64) -> Result<(usize, usize, DimensionMode), ContractionError> {
    let con = contraction_presentation(alg, vertex)?;
    let (dim, mode) = algebra_dimension(&con, budget)?;
    let (dim_ab, _) = algebra_dimension(&abelianization(&con)?, budget)?;
    Ok((dim, dim_ab, mode))
}

/// Tuples (n₁, …, n₆) with n₁ = dim_ab and Σ nᵢ i² = dim, restricted by the length when given.
pub fn gv_invariants(dim: u64, dim_ab: u64, length: Option<u8>) -> Vec<[u64; 6]> {
    let mut out = Vec::new();
    if dim_ab > dim {
        return out;
    }
    let top = length.map_or(6, |l| l.clamp(1, 6) as usize);
    let mut n = [0u64; 6];
    n[0] = dim_ab;
    fn rec(i: usize, top: usize, rest: u64, n: &mut [u64; 6], out: &mut Vec<[u64; 6]>) {
        if i > top {
            if rest == 0 {
                out.push(*n);
            }
            return;
        }
        let w = (i * i) as u64;
        for k in 0..=rest / w {
            n[i - 1] = k;
            rec(i + 1, top, rest - k * w, n, out);
        }
        n[i - 1] = 0;
    }
    rec(2, top, dim - dim_ab, &mut n, &mut out);
    if let Some(l) = length {
        out.retain(|t| t[l as usize - 1] > 0);
    }
    out
}

#[derive(Clone, Debug)]
pub struct ContractionReport {
    pub presentation: AlgebraPresentation,
    pub dim: usize,
    pub dim_ab: usize,
    pub mode: DimensionMode,
    pub gv_solutions: Vec<[u64; 6]>,
    pub declared_length: Option<u8>,
}

pub fn contraction_report(
    alg: &AlgebraPresentation,
    vertex: usize,
    length: Option<u8>,
    budget: u64,
) -> Result<ContractionReport, ContractionError> {
    let presentation = contraction_presentation(alg, vertex)?;
    let (dim, mode) = algebra_dimension(&presentation, budget)?;
    let (dim_ab, _) = algebra_dimension(&abelianization(&presentation)?, budget)?;
    let gv_solutions = gv_invariants(dim as u64, dim_ab as u64, length);
    Ok(ContractionReport { presentation, dim, dim_ab, mode, gv_solutions, declared_length: length })
}

impl fmt::Display for ContractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim = {} ({})", self.dim, self.mode)?;
        writeln!(f, "dim_ab = {}", self.dim_ab)?;
        if self.gv_solutions.is_empty() {
            writeln!(f, "GV: no solutions")?;
        }
        for t in &self.gv_solutions {
            let last = t.iter().rposition(|&x| x > 0).map_or(1, |i| i + 1);
            let shown: Vec<String> = t[..last].iter().map(u64::to_string).collect();
            writeln!(f, "GV: ({})", shown.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::examples;
    use crate::ncgb::DEFAULT_BUDGET;
    use crate::pathalg::parse_presentation;

    #[test]
    fn gv_examples() {
        assert_eq!(gv_invariants(9, 5, Some(2)), vec![[5, 1, 0, 0, 0, 0]]);
        assert_eq!(gv_invariants(27, 6, Some(3)), vec![[6, 3, 1, 0, 0, 0]]);
        assert_eq!(gv_invariants(1, 1, Some(1)), vec![[1, 0, 0, 0, 0, 0]]);
        assert!(gv_invariants(3, 5, None).is_empty());
    }

    #[test]
    fn gv_unrestricted_lists_all() {
        // 9 − 5 = 4 = 1·4 only
        assert_eq!(gv_invariants(9, 5, None), vec![[5, 1, 0, 0, 0, 0]]);
        assert_eq!(gv_invariants(17, 1, None).len(), 2);
    }

    #[test]
    fn laufer_contraction() {
        let alg = examples::by_name("laufer").unwrap();
        let con = contraction_presentation(&alg, 0).unwrap();
        assert_eq!(con.quiver().arrows().len(), 2);
        let r = contraction_report(&alg, 0, Some(2), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.dim, r.dim_ab, r.mode), (9, 5, DimensionMode::Graded));
        assert_eq!(r.gv_solutions, vec![[5, 1, 0, 0, 0, 0]]);
    }

    #[test]
    fn single_arrow_quiver() {
        let alg = parse_presentation("vertices: 0, 1\narrows: a: 0 -> 1\n").unwrap();
        let con = contraction_presentation(&alg, 0).unwrap();
        assert_eq!(con.quiver().vertices(), ["1"]);
        assert!(con.quiver().arrows().is_empty() && con.relations.is_empty());
        assert_eq!(algebra_dimension(&con, DEFAULT_BUDGET).unwrap().0, 1);
    }

    #[test]
    fn dual_numbers_already_commutative() {
        let alg = parse_presentation("vertices: 0, 1\narrows: a: 0 -> 1, x: 1 -> 1\nrelations: x^2\n").unwrap();
        let (d, ab, _) = contraction_dims(&alg, 0, DEFAULT_BUDGET).unwrap();
        assert_eq!((d, ab), (2, 2));
    }

    #[test]
    fn contraction_is_idempotent() {
        let alg = examples::by_name("length3-nccr").unwrap();
        let once = contract_vertices(&alg, &["0"]).unwrap();
        let twice = contract_vertices(&once, &["0"]).unwrap();
        assert_eq!(once, twice);
        assert_eq!(once, contraction_presentation(&alg, 0).unwrap());
    }
}
