//! Hypersurface equations, matrix factorisations, specialisation, superpotentials and representations.

mod hypersurface;
mod linsolve;
mod matrix;
mod mf;
mod representation;
mod specialize;
mod superpotential;

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::coeff::{CoeffError, ParseError};
use crate::ncgb::GbError;
use crate::pathalg::PathAlgError;

pub use hypersurface::{hypersurface, hypersurface_adjoined, hypersurface_from_gb, hypersurface_with, FlopData, Hypersurface};
pub use matrix::Matrix;
pub use mf::{matrix_factorization, matrix_factorization_from_gb, MatrixFactorization};
pub use representation::{verify_representation, RelationCheck, Representation, RepresentationReport};
pub use specialize::{specialize, ParamMap};
pub use superpotential::{cyclic_derivative, verify_superpotential, SuperpotentialCheck, SuperpotentialReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlopsError {
    #[error("truncation degree {have} is too small: an element of degree {needed} needs a normal form")]
    Truncation { needed: u32, have: u32 },
    #[error("{detail} (truncation degree {have}; try a larger degree)")]
    NotQuadratic { detail: String, have: u32 },
    #[error("centre generators are not independent: {0}")]
    RankDeficient(String),
    #[error("a coefficient is a rational function, not a polynomial")]
    NotPolynomial,
    #[error("generator {index}: x·g is not in the span of the generators: {detail}")]
    SupportViolation { index: usize, detail: String },
    #[error("C² ≠ g·I; residual rows: {0}")]
    MfIdentity(String),
    #[error("term {0} is not a cycle")]
    NonCyclic(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    PathAlg(#[from] PathAlgError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}
