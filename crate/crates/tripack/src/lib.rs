//! Enumeration and certification of compact disc packings with three radii.
//!
//! A packing of the plane by discs of radii 1 > r > s is compact when its
//! contact graph is a triangulation.  This crate recomputes, from first
//! principles, the finitely many pairs (r, s) that admit such a packing:
//! it enumerates the combinatorially possible coronas, derives the exact
//! polynomial equation each corona imposes on (r, s), solves the resulting
//! systems with certified algebraic arithmetic, and assembles the catalogue
//! of admissible pairs together with verifiable periodic witnesses.

pub mod coronas;
pub mod equations;
pub mod pipeline;
pub mod solver;
pub mod witness;

use thiserror::Error;

/// Errors shared across the enumeration and certification stages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A corona vector admits no circular word.
    #[error("unrealizable vector: {0}")]
    Unrealizable(String),
    /// A polynomial system degenerated into a continuum of solutions.
    #[error("continuum of solutions: {0}")]
    Continuum(String),
    #[error(transparent)]
    Num(#[from] exactnum::NumError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
