//! Quivers, vertex-typed paths and elements of path algebras over a parameter ring.

mod element;
mod presentation;
mod quiver;

use thiserror::Error;

use crate::coeff::CoeffError;

pub use element::{cmp_elements, Element, PathSpace};
pub use presentation::{parse_element, parse_presentation, AlgebraPresentation, Homomorphism};
pub use quiver::{compose, Arrow, MonomialOrder, Path, Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathAlgError {
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("relation {index} is not endpoint-homogeneous: {relation}")]
    Inhomogeneous { index: usize, relation: String },
    #[error("monomial order does not list every arrow exactly once")]
    BadOrder,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}
