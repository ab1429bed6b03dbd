use std::fmt;

use num_rational::BigRational;

use super::CatalogError;
use crate::coeff::{MultiPoly, ParamRing};
use crate::pathalg::{parse_presentation, AlgebraPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A1,
    D4,
    E6,
    E7,
    E8,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DynkinType::A1 => "A1",
            DynkinType::D4 => "D4",
            DynkinType::E6 => "E6",
            DynkinType::E7 => "E7",
            DynkinType::E8 => "E8",
        };
        f.write_str(s)
    }
}

/// Extended Dynkin diagram with vertex 0 the extending vertex.
///
/// Each edge carries an orientation `a_i: i -> j` pointing towards the
/// branch vertex; the doubled quiver adds `A_i: j -> i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub kind: DynkinType,
    /// Dual Coxeter labels, indexed by vertex.
    pub labels: Vec<u32>,
    /// `(i, j)` for the arrow `a_i: i -> j`.
    pub arrows: Vec<(usize, usize)>,
}

impl DynkinDiagram {
    pub fn new(kind: DynkinType) -> Self {
        let (labels, arrows): (Vec<u32>, Vec<(usize, usize)>) = match kind {
            DynkinType::A1 => (vec![1, 1], vec![(0, 1), (1, 0)]),
            DynkinType::D4 => (vec![1, 1, 1, 1, 2], vec![(0, 4), (1, 4), (2, 4), (3, 4)]),
            DynkinType::E6 => (vec![1, 2, 1, 2, 1, 2, 3], vec![(0, 1), (1, 6), (2, 3), (3, 6), (4, 5), (5, 6)]),
            DynkinType::E7 => (
                vec![1, 2, 3, 2, 1, 2, 3, 4],
                vec![(0, 1), (1, 2), (2, 7), (3, 7), (4, 5), (5, 6), (6, 7)],
            ),
            DynkinType::E8 => (
                vec![1, 2, 3, 4, 5, 3, 2, 4, 6],
                vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 8), (5, 8), (6, 7), (7, 8)],
            ),
        };
        DynkinDiagram { kind, labels, arrows }
    }

    pub fn all() -> Vec<DynkinDiagram> {
        use DynkinType::*;
        [A1, D4, E6, E7, E8].into_iter().map(Self::new).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of edges joining `i` and `j` in the unoriented diagram.
    pub fn edges_between(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|&&(s, t)| (s, t) == (i, j) || (s, t) == (j, i)).count()
    }

    /// The ring ℍ_Γ = ℚ[t_1, …, t_n]; t_0 is eliminated.
    pub fn param_ring(&self) -> ParamRing {
        let names: Vec<String> = (1..self.vertex_count()).map(|i| format!("t{i}")).collect();
        ParamRing::new(&names)
    }

    /// t_i in ℍ_Γ, with t_0 = −Σ_{i≥1} ω_i t_i.
    pub fn t(&self, i: usize) -> MultiPoly {
        let n = self.vertex_count() - 1;
        if i > 0 {
            return MultiPoly::var(n, i - 1);
        }
        let mut acc = MultiPoly::zero(n);
        for j in 1..=n {
            acc = acc.sub(&MultiPoly::var(n, j - 1).scale(&BigRational::from_integer(self.labels[j].into())));
        }
        acc
    }

    /// Σ ω_i t_i with t_0 kept symbolic is identically zero once t_0 is eliminated.
    pub fn weighted_sum(&self) -> MultiPoly {
        let n = self.vertex_count() - 1;
        let mut acc = MultiPoly::zero(n);
        for (i, &w) in self.labels.iter().enumerate() {
            acc = acc.add(&self.t(i).scale(&BigRational::from_integer(w.into())));
        }
        acc
    }

    /// Image of each generator t_j (j ≥ 1) under s_i.
    pub fn reflection_images(&self, i: usize) -> Result<Vec<MultiPoly>, CatalogError> {
        let n = self.vertex_count();
        if i == 0 || i >= n {
            return Err(CatalogError::BadReflection { vertex: i, diagram: self.kind });
        }
        Ok((1..n)
            .map(|j| {
                if j == i {
                    self.t(j).neg()
                } else {
                    let k = self.edges_between(i, j) as i64;
                    self.t(j).add(&self.t(i).scale(&BigRational::from_integer(k.into())))
                }
            })
            .collect())
    }

    fn relations_text(&self, deformed: bool) -> String {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for v in 0..n {
            let mut terms = Vec::new();
            for (i, &(s, t)) in self.arrows.iter().enumerate() {
                if s == v {
                    terms.push(format!("+ a{i}*A{i}"));
                }
                if t == v {
                    terms.push(format!("- A{i}*a{i}"));
                }
            }
            if deformed {
                let tv = self.t(v);
                let shown = self.param_ring().show_poly(&tv);
                terms.push(format!("- ({shown})*e{v}"));
            }
            let joined = terms.join(" ");
            out.push(joined.trim_start_matches("+ ").to_string());
        }
        out.join(" ;\n  ")
    }

    fn presentation(&self, deformed: bool) -> AlgebraPresentation {
        let n = self.vertex_count();
        let vertices: Vec<String> = (0..n).map(|v| v.to_string()).collect();
        let mut arrows: Vec<String> = self.arrows.iter().enumerate().map(|(i, (s, t))| format!("a{i}: {s} -> {t}")).collect();
        arrows.extend(self.arrows.iter().enumerate().map(|(i, (s, t))| format!("A{i}: {t} -> {s}")));
        let params = if deformed { self.param_ring().names().join(", ") } else { String::new() };
        let prefix = if deformed { "deformed preprojective" } else { "preprojective" };
        let text = format!(
            "name: {prefix} {}\nparams: {params}\nvertices: {}\narrows: {}\nrelations:\n  {}\n",
            self.kind,
            vertices.join(", "),
            arrows.join(", "),
            self.relations_text(deformed)
        );
        parse_presentation(&text).expect("generated preprojective presentation parses")
    }
}

/// Apply the simple reflection s_i to a polynomial over ℍ_Γ.
pub fn apply_simple_reflection(d: &DynkinDiagram, i: usize, p: &MultiPoly) -> Result<MultiPoly, CatalogError> {
    let images = d.reflection_images(i)?;
    Ok(p.substitute(&images)?)
}

/// Doubled quiver of the extended diagram with Σ[a, a*] = 0 split per vertex.
pub fn preprojective(d: &DynkinDiagram) -> AlgebraPresentation {
    d.presentation(false)
}

/// Σ[a, a*] = Σ t_i e_i over ℍ_Γ.
pub fn deformed_preprojective(d: &DynkinDiagram) -> AlgebraPresentation {
    d.presentation(true)
}

/// A coloured diagram Γ_C: one black vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub diagram: DynkinDiagram,
    pub black_vertex: usize,
}

impl Coloring {
    /// The coloured diagram of the given length.
    pub fn for_length(l: u8) -> Result<Self, CatalogError> {
        let (kind, black) = match l {
            1 => (DynkinType::A1, 1),
            2 => (DynkinType::D4, 4),
            3 => (DynkinType::E6, 6),
            4 => (DynkinType::E7, 7),
            5 => (DynkinType::E8, 4),
            6 => (DynkinType::E8, 8),
            _ => return Err(CatalogError::BadLength(l)),
        };
        Ok(Coloring { diagram: DynkinDiagram::new(kind), black_vertex: black })
    }

    /// Length of the flop: the label of the black vertex.
    pub fn length(&self) -> u32 {
        self.diagram.labels[self.black_vertex]
    }

    /// Generators of W_C: the white non-extending vertices.
    pub fn weyl_generators(&self) -> Vec<usize> {
        (1..self.diagram.vertex_count()).filter(|&i| i != self.black_vertex).collect()
    }
}
