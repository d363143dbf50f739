//! Exact arithmetic kernel: arbitrary-precision dyadic numbers, outward-rounded
//! interval arithmetic with rigorous transcendental enclosures, integer
//! polynomials in one and two variables, modular arithmetic, real root
//! isolation, and real algebraic numbers with exact sign determination.

pub mod algreal;
pub mod bpoly;
pub mod dyadic;
pub mod factor;
pub mod interval;
pub mod isolate;
pub mod modp;
pub mod upoly;

pub use algreal::AlgebraicReal;
pub use bpoly::{BivarPoly, Var};
pub use dyadic::Dyadic;
pub use interval::RatInterval;
pub use upoly::UnivarPoly;

/// Errors surfaced by the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumError {
    /// Operation undefined for the given input (division by zero interval,
    /// arccos of a box disjoint from [-1,1], resultant of two constants, ...).
    InvalidDomain(String),
    /// A parser rejected malformed text.
    Parse(String),
    /// An algorithm hit a structural degeneracy it cannot resolve.
    Degenerate(String),
}

impl std::fmt::Display for NumError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NumError::InvalidDomain(s) => write!(f, "invalid domain: {s}"),
            NumError::Parse(s) => write!(f, "parse error: {s}"),
            NumError::Degenerate(s) => write!(f, "degenerate input: {s}"),
        }
    }
}

impl std::error::Error for NumError {}
