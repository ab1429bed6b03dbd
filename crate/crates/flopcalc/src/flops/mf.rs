use super::hypersurface::{central_element, hypersurface_from_gb, nf, lift_coeff, monomials_upto, nf_path, rational, FlopData, Hypersurface};
use super::linsolve::SpanSolver;
use super::matrix::Matrix;
use super::FlopsError;
use crate::catalog::FlopCatalogEntry;
use crate::coeff::{MultiPoly, ParamRing};
use crate::ncgb::{truncated_groebner, GroebnerBasis, DEFAULT_BUDGET};
use crate::pathalg::{compose, Element, Path};

/// `x·g_i = Σ C_ij g_j` with C² = g·I, so (xI − C)(xI + C) = f·I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    pub hypersurface: Hypersurface,
    pub c: Matrix,
    pub generators: Vec<Path>,
}

impl MatrixFactorization {
    pub fn ring(&self) -> &ParamRing {
        &self.hypersurface.ring
    }

    pub fn g(&self) -> &MultiPoly {
        &self.hypersurface.g
    }

    pub fn size(&self) -> usize {
        self.c.rows
    }

    /// C² − g·I, which is zero for a valid factorisation.
    pub fn residual(&self) -> Matrix {
        self.c.mul(&self.c).sub(&Matrix::scalar(self.size(), self.g()))
    }

    /// xI + C over the hypersurface ring.
    pub fn x_plus_c(&self) -> Matrix {
        let x = MultiPoly::var(self.ring().len(), 0);
        Matrix::scalar(self.size(), &x).add(&self.c)
    }

    /// Checks (xI − C)(xI + C) = f·I.
    pub fn check_factorization(&self) -> bool {
        let x = MultiPoly::var(self.ring().len(), 0);
        let minus = Matrix::scalar(self.size(), &x).sub(&self.c);
        minus.mul(&self.x_plus_c()) == Matrix::scalar(self.size(), &self.hypersurface.equation)
    }
}

pub fn matrix_factorization(entry: &FlopCatalogEntry, gb_degree: u32) -> Result<MatrixFactorization, FlopsError> {
    let gb = truncated_groebner(&entry.presentation, &entry.presentation.order, gb_degree, DEFAULT_BUDGET)?;
    matrix_factorization_from_gb(&gb, &FlopData::from_entry(entry))
}

pub fn matrix_factorization_from_gb(gb: &GroebnerBasis, data: &FlopData) -> Result<MatrixFactorization, FlopsError> {
    let hyp = hypersurface_from_gb(gb, data)?;
    let alg = gb.algebra();
    let space = alg.space();
    let q_ = alg.quiver();
    let [qi, u1i, u2i] = data.roles();
    let (d1, d2, dq) = (q_.degree(&data.xyz[u1i]), q_.degree(&data.xyz[u2i]), q_.degree(&data.xyz[qi]));
    let n = hyp.ring.len();
    let gens = &data.module_generators;
    let k = gens.len();
    let top = dq + gens.iter().map(|g| q_.degree(g)).max().unwrap_or(0);

    let half_p = hyp.p.scale(&rational(-1, 2));
    let x = Element::from_path(space, data.xyz[qi].clone()).add(&central_element(alg, data, &half_p)?)?;

    let mut solver = SpanSolver::new(alg.params().len());
    let mut cols: Vec<(usize, u32, u32)> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        for (a, b) in monomials_upto(d1, d2, top as i64 - q_.degree(g) as i64) {
            let mut arrows = Vec::new();
            (0..a).for_each(|_| arrows.extend_from_slice(&data.xyz[u1i].arrows));
            (0..b).for_each(|_| arrows.extend_from_slice(&data.xyz[u2i].arrows));
            let m = Path { source: g.source, target: g.source, arrows };
            let w = compose(&m, g).ok_or_else(|| FlopsError::Shape("generator does not start at the centre vertex".into()))?;
            solver.push(&nf_path(gb, &w)?);
            cols.push((j, a, b));
        }
    }

    let mut c = Matrix::zero(n, k, k);
    for (i, g) in gens.iter().enumerate() {
        let xg = x.mul(&Element::from_path(space, g.clone()))?;
        let target = nf(gb, &xg)?;
        let coeffs = solver.solve(&target).ok_or_else(|| FlopsError::SupportViolation {
            index: i,
            detail: format!("normal form has {} terms outside the generator span", target.terms().len()),
        })?;
        for (coef, &(j, a, b)) in coeffs.iter().zip(&cols) {
            if coef.is_zero() {
                continue;
            }
            let mut exps = vec![0u16; n];
            exps[1] = a as u16;
            exps[2] = b as u16;
            let term = MultiPoly::monomial(exps, rational(1, 1)).mul(&lift_coeff(coef, n)?);
            let entry = c.get(i, j).add(&term);
            c.set(i, j, entry);
        }
    }

    let mf = MatrixFactorization { hypersurface: hyp, c, generators: gens.clone() };
    let res = mf.residual();
    if !res.is_zero() {
        let rows: Vec<String> = res.show_rows(mf.ring()).into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
        return Err(FlopsError::MfIdentity(rows.join("; ")));
    }
    Ok(mf)
}
