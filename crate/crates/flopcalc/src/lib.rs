//! Noncommutative computer algebra for quivers with relations.

pub mod coeff;
pub mod pathalg;
pub mod ncgb;
pub mod catalog;
pub mod flops;
pub mod contraction;
