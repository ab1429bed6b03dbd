use std::fmt;

use num_rational::BigRational;

use super::hypersurface::nf;
use super::FlopsError;
use crate::coeff::RatFunc;
use crate::ncgb::{nil_groebner, truncated_groebner};
use crate::pathalg::{AlgebraPresentation, Element, Homomorphism, Path};

/// Cyclic derivative ∂_a w: each occurrence of `a` is rotated to the front and removed.
pub fn cyclic_derivative(w: &Element, arrow: usize) -> Result<Element, FlopsError> {
    let q = w.quiver();
    let arr = q.arrow(arrow);
    let mut out = Element::zero(w.space());
    for (p, c) in w.terms() {
        if p.is_idempotent() {
            continue;
        }
        if !p.is_cycle() {
            return Err(FlopsError::NonCyclic(q.show_path(p)));
        }
        for (k, &x) in p.arrows.iter().enumerate() {
            if x as usize != arrow {
                continue;
            }
            let mut arrows = p.arrows[k + 1..].to_vec();
            arrows.extend_from_slice(&p.arrows[..k]);
            out.add_term(Path { source: arr.target, target: arr.source, arrows }, c);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperpotentialCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperpotentialReport {
    pub derivatives: Vec<(String, String)>,
    pub checks: Vec<SuperpotentialCheck>,
    /// Set when membership was tested modulo paths of this length.
    pub nil_length: Option<usize>,
}

impl SuperpotentialReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuperpotentialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.nil_length {
            writeln!(f, "local check modulo paths of length {n}")?;
        }
        for (a, d) in &self.derivatives {
            writeln!(f, "d/d{a} = {d}")?;
        }
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Rescales arrows, `a ↦ s·a`; arrows not listed are fixed.
pub fn rescale_arrows(w: &Element, scaling: &[(String, BigRational)]) -> Result<Element, FlopsError> {
    let space = w.space();
    let q = w.quiver();
    let np = space.params.len();
    let mut arrow_images: Vec<Element> = (0..q.arrows().len()).map(|i| Element::arrow(space, i)).collect();
    for (name, s) in scaling {
        let i = q.arrow_index(name).ok_or_else(|| FlopsError::UnknownName(name.clone()))?;
        arrow_images[i] = arrow_images[i].scale_rational(s);
    }
    let h = Homomorphism {
        target: space.clone(),
        vertex_map: (0..q.vertices().len()).map(Some).collect(),
        arrow_images,
        coeff_images: (0..np).map(|i| RatFunc::var(np, i)).collect(),
    };
    Ok(h.apply(w)?)
}

/// Checks that the cyclic derivatives of Φ lie in the relation ideal, and that they generate it.
///
/// Membership is tested by normal forms at the given truncation degree. When the relations
/// are not homogeneous the ideals are compared in the completion instead: `degree` is then
/// a path length N and both inclusions are checked modulo paths of length N.
pub fn verify_superpotential(
    alg: &AlgebraPresentation,
    phi: &Element,
    gb_degree: u32,
    scaling: &[(String, BigRational)],
    budget: u64,
) -> Result<SuperpotentialReport, FlopsError> {
    let q = alg.quiver();
    let phi = rescale_arrows(&phi.rebase(alg.space())?, scaling)?;
    let mut derivs = Vec::new();
    let mut shown = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        let d = cyclic_derivative(&phi, i)?;
        shown.push((a.name.clone(), if d.is_zero() { "0".into() } else { d.show(&alg.order) }));
        derivs.push((a.name.clone(), d));
    }
    let mut checks = Vec::new();
    let nil_length = (!alg.is_homogeneous()).then_some(gb_degree as usize);
    let degree = gb_degree.max(alg.max_relation_degree());
    let basis = |a: &AlgebraPresentation| match nil_length {
        Some(n) => nil_groebner(a, &a.order, n, budget),
        None => truncated_groebner(a, &a.order, degree.max(a.max_relation_degree()), budget),
    };
    let gb = basis(alg)?;
    for (name, d) in &derivs {
        let r = nf(&gb, d)?;
        checks.push(SuperpotentialCheck {
            name: format!("d/d{name} in relation ideal"),
            passed: r.is_zero(),
            detail: if r.is_zero() { "normal form 0".into() } else { format!("normal form {}", r.show(&alg.order)) },
        });
    }
    let gens: Vec<Element> = derivs.iter().map(|(_, d)| d.clone()).filter(|d| !d.is_zero()).collect();
    let dalg = alg.with_relations(gens)?;
    let dgb = basis(&dalg)?;
    for (k, r) in alg.relations.iter().enumerate() {
        let n = nf(&dgb, r)?;
        checks.push(SuperpotentialCheck {
            name: format!("relation {} in derivative ideal", k + 1),
            passed: n.is_zero(),
            detail: if n.is_zero() { r.show(&alg.order) } else { format!("normal form {}", n.show(&alg.order)) },
        });
    }
    Ok(SuperpotentialReport { derivatives: shown, checks, nil_length })
}
