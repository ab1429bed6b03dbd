use num_bigint::BigInt;
use num_rational::BigRational;

use super::linsolve::SpanSolver;
use super::FlopsError;
use crate::catalog::FlopCatalogEntry;
use crate::coeff::{MultiPoly, ParamRing, RatFunc};
use crate::ncgb::{truncated_groebner, GbError, GroebnerBasis, DEFAULT_BUDGET};
use crate::pathalg::{AlgebraPresentation, Element, Path};

/// Which loops at vertex 0 generate the centre, and which paths generate the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlopData {
    pub xyz: [Path; 3],
    pub names: [String; 3],
    /// Index of the generator the equation is quadratic in.
    pub quadratic: usize,
    pub module_generators: Vec<Path>,
}

impl FlopData {
    pub fn from_entry(e: &FlopCatalogEntry) -> Self {
        FlopData {
            xyz: e.xyz.clone(),
            names: ["x", "y", "z"].map(String::from),
            quadratic: e.quadratic,
            module_generators: e.module_generators.clone(),
        }
    }

    /// Generator indices ordered as (quadratic, other, other).
    pub fn roles(&self) -> [usize; 3] {
        let q = self.quadratic;
        let rest: Vec<usize> = (0..3).filter(|&i| i != q).collect();
        [q, rest[0], rest[1]]
    }
}

/// f = x² − g in the ring `[x, u1, u2, params…]`, where x = q − P/2 and q² = P q + Q in the centre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    pub ring: ParamRing,
    pub equation: MultiPoly,
    pub g: MultiPoly,
    pub p: MultiPoly,
    pub q: MultiPoly,
    pub gb_degree: u32,
}

impl Hypersurface {
    pub fn variables(&self) -> &[String] {
        self.ring.names()
    }

    pub fn show(&self) -> String {
        self.ring.show_poly(&self.equation)
    }

    /// The equation with its first variable read as the raw generator q, i.e. x ↦ q − P/2.
    pub fn raw_equation(&self) -> MultiPoly {
        let n = self.ring.len();
        let mut images: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(n, i)).collect();
        images[0] = MultiPoly::var(n, 0).sub(&self.p.scale(&rational(1, 2)));
        self.equation.substitute(&images).expect("images share the ring")
    }
}

pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The hypersurface ring: completed variable, the other two generators, then the parameters.
pub(crate) fn hypersurface_ring(alg: &AlgebraPresentation, data: &FlopData) -> ParamRing {
    let [q, u1, u2] = data.roles();
    let mut names = vec![data.names[q].clone(), data.names[u1].clone(), data.names[u2].clone()];
    names.extend(alg.params().names().iter().cloned());
    let mut grading: Vec<u32> = [q, u1, u2].iter().map(|&i| alg.quiver().degree(&data.xyz[i])).collect();
    grading.extend(alg.params().grading().iter().copied());
    ParamRing::with_grading(&names, &grading)
}

/// Parameter coefficient as a polynomial in the hypersurface ring.
pub(crate) fn lift_coeff(c: &RatFunc, ring_len: usize) -> Result<MultiPoly, FlopsError> {
    let p = c.as_polynomial().ok_or(FlopsError::NotPolynomial)?;
    let map: Vec<usize> = (0..p.nvars()).map(|i| i + 3).collect();
    Ok(p.remap(ring_len, &map))
}

/// `u1^i u2^j q^e` as a path at vertex 0.
pub(crate) fn loop_word(gens: &[&Path; 3], exps: [u32; 3]) -> Path {
    let mut arrows = Vec::new();
    for (g, &e) in gens.iter().zip(&exps) {
        for _ in 0..e {
            arrows.extend_from_slice(&g.arrows);
        }
    }
    Path { source: gens[0].source, target: gens[0].source, arrows }
}

/// All exponent pairs (i, j) with i·d1 + j·d2 ≤ bound.
pub(crate) fn monomials_upto(d1: u32, d2: u32, bound: i64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    if bound < 0 {
        return out;
    }
    let mut i = 0u32;
    while (i * d1) as i64 <= bound {
        let mut j = 0u32;
        while (i * d1 + j * d2) as i64 <= bound {
            out.push((i, j));
            j += 1;
        }
        i += 1;
    }
    out
}

pub(crate) fn nf(gb: &GroebnerBasis, e: &Element) -> Result<Element, FlopsError> {
    gb.normal_form(e).map_err(|err| match err {
        GbError::DegreeExceeded { degree, .. } => FlopsError::Truncation { needed: degree, have: gb.truncation_degree() },
        other => FlopsError::Gb(other),
    })
}

pub(crate) fn nf_path(gb: &GroebnerBasis, p: &Path) -> Result<Element, FlopsError> {
    nf(gb, &Element::from_path(gb.algebra().space(), p.clone()))
}

/// Hypersurface of a catalog entry at the given truncation.
pub fn hypersurface(entry: &FlopCatalogEntry, gb_degree: u32) -> Result<Hypersurface, FlopsError> {
    hypersurface_with(&entry.presentation, &FlopData::from_entry(entry), gb_degree, DEFAULT_BUDGET)
}

pub fn hypersurface_with(alg: &AlgebraPresentation, data: &FlopData, gb_degree: u32, budget: u64) -> Result<Hypersurface, FlopsError> {
    let gb = truncated_groebner(alg, &alg.order, gb_degree, budget)?;
    hypersurface_from_gb(&gb, data)
}

/// Solves NF(q²) = Σ c_m NF(m) over the monomials m = u1^i u2^j q^ε of degree ≤ deg q².
pub fn hypersurface_from_gb(gb: &GroebnerBasis, data: &FlopData) -> Result<Hypersurface, FlopsError> {
    let alg = gb.algebra();
    let q_ = alg.quiver();
    let ring = hypersurface_ring(alg, data);
    let n = ring.len();
    let [qi, u1i, u2i] = data.roles();
    let gens = [&data.xyz[u1i], &data.xyz[u2i], &data.xyz[qi]];
    let (d1, d2, dq) = (q_.degree(gens[0]), q_.degree(gens[1]), q_.degree(gens[2]));
    let top = 2 * dq;

    let mut cols = Vec::new();
    let mut solver = SpanSolver::new(alg.params().len());
    for e in 0..=1u32 {
        for (i, j) in monomials_upto(d1, d2, top as i64 - (e * dq) as i64) {
            let w = loop_word(&gens, [i, j, e]);
            let v = nf_path(gb, &w)?;
            if !solver.push(&v) {
                return Err(FlopsError::RankDeficient(format!(
                    "{}^{i} {}^{j} {}^{e} is dependent on lower monomials",
                    data.names[u1i], data.names[u2i], data.names[qi]
                )));
            }
            cols.push([i, j, e]);
        }
    }
    let target = nf_path(gb, &loop_word(&gens, [0, 0, 2]))?;
    let coeffs = solver.solve(&target).ok_or_else(|| FlopsError::NotQuadratic {
        detail: format!("NF({}²) is not in the span of the candidate monomials", data.names[qi]),
        have: gb.truncation_degree(),
    })?;

    let mut p = MultiPoly::zero(n);
    let mut q = MultiPoly::zero(n);
    for (c, [i, j, e]) in coeffs.iter().zip(&cols) {
        if c.is_zero() {
            continue;
        }
        let mut exps = vec![0u16; n];
        exps[1] = *i as u16;
        exps[2] = *j as u16;
        let m = MultiPoly::monomial(exps, rational(1, 1)).mul(&lift_coeff(c, n)?);
        if *e == 1 {
            p = p.add(&m);
        } else {
            q = q.add(&m);
        }
    }
    let g = q.add(&p.mul(&p).scale(&rational(1, 4)));
    let x = MultiPoly::var(n, 0);
    let equation = x.mul(&x).sub(&g);
    Ok(Hypersurface { ring, equation, g, p, q, gb_degree: gb.truncation_degree() })
}

/// Cross-check: adjoin the two linear generators as parameters and read NF(q²) on {q, 1}.
pub fn hypersurface_adjoined(alg: &AlgebraPresentation, data: &FlopData, gb_degree: u32, budget: u64) -> Result<Hypersurface, FlopsError> {
    let [qi, u1i, u2i] = data.roles();
    let q_ = alg.quiver();
    let extra = [format!("{}_", data.names[u1i]), format!("{}_", data.names[u2i])];
    let params = alg.params().extended(&extra, 2);
    let space = crate::pathalg::PathSpace::new(q_.clone(), params.clone());
    let np = params.len();
    let mut rels = Vec::new();
    for r in &alg.relations {
        let mut e = Element::zero(&space);
        for (p, c) in r.terms() {
            e.add_term(p.clone(), &params.embed_ratfunc(alg.params(), c)?);
        }
        rels.push(e);
    }
    for (k, &gi) in [u1i, u2i].iter().enumerate() {
        let v = Element::term(&space, q_.idempotent(data.xyz[gi].source), RatFunc::var(np, np - 2 + k));
        rels.push(Element::from_path(&space, data.xyz[gi].clone()).sub(&v)?);
    }
    let ext = AlgebraPresentation::new(alg.name.clone(), space.clone(), rels, Some(alg.order.clone()))?;
    let gb = truncated_groebner(&ext, &ext.order, gb_degree, budget)?;
    let qpath = &data.xyz[qi];
    let nq = nf_path(&gb, qpath)?;
    let one = nf(&gb, &Element::idempotent(&space, qpath.source))?;
    let mut solver = SpanSolver::new(np);
    if !solver.push(&nq) || !solver.push(&one) {
        return Err(FlopsError::RankDeficient("q is a scalar in the adjoined algebra".into()));
    }
    let sq = nf(&gb, &Element::from_path(&space, qpath.clone()).pow(2)?)?;
    let c = solver.solve(&sq).ok_or_else(|| FlopsError::NotQuadratic {
        detail: "NF(q²) is not supported on {q, 1}".into(),
        have: gb.truncation_degree(),
    })?;
    let ring = hypersurface_ring(alg, data);
    let n = ring.len();
    // params of ext are [alg params…, u1, u2]; ring is [x, u1, u2, alg params…]
    let mut map: Vec<usize> = (0..np - 2).map(|i| i + 3).collect();
    map.extend([1, 2]);
    let lift = |f: &RatFunc| -> Result<MultiPoly, FlopsError> {
        Ok(f.as_polynomial().ok_or(FlopsError::NotPolynomial)?.remap(n, &map))
    };
    let p = lift(&c[0])?;
    let q = lift(&c[1])?;
    let g = q.add(&p.mul(&p).scale(&rational(1, 4)));
    let x = MultiPoly::var(n, 0);
    Ok(Hypersurface { ring, equation: x.mul(&x).sub(&g), g, p, q, gb_degree })
}

/// Builds an element of e₀Ae₀ from a polynomial in the two linear generators and the parameters.
pub(crate) fn central_element(alg: &AlgebraPresentation, data: &FlopData, p: &MultiPoly) -> Result<Element, FlopsError> {
    let [_, u1i, u2i] = data.roles();
    let space = alg.space();
    let np = alg.params().len();
    let v = data.xyz[u1i].source;
    let mut out = Element::zero(space);
    for (e, c) in p.terms() {
        if e[0] != 0 {
            return Err(FlopsError::Shape("polynomial involves the completed variable".into()));
        }
        let mut arrows = Vec::new();
        for _ in 0..e[1] {
            arrows.extend_from_slice(&data.xyz[u1i].arrows);
        }
        for _ in 0..e[2] {
            arrows.extend_from_slice(&data.xyz[u2i].arrows);
        }
        let pexps: Vec<u16> = e[3..].to_vec();
        let coeff = RatFunc::from_poly(MultiPoly::monomial(pexps, c.clone()));
        debug_assert_eq!(coeff.nvars(), np);
        out.add_term(Path { source: v, target: v, arrows }, &coeff);
    }
    Ok(out)
}
