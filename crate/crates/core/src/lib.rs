//! Exact construction and counting of point configurations with many
//! triples determining a fixed angle theta, for any theta whose tangent is
//! algebraic.
//!
//! Arithmetic happens in Z[alpha] where `tan(theta) = alpha / b`; the
//! plane is modelled as complex numbers with both parts in Z[alpha], so
//! every predicate is decided exactly.

// Error carries exact rationals for diagnostics; it is never on a hot path.
#![allow(clippy::result_large_err)]

pub mod algebraic;
pub mod cli;
pub mod construction;
pub mod counting;
pub mod directions;
pub mod error;
pub mod grids;
pub mod io;
pub mod planar;

pub use algebraic::{AlgebraicContext, AlgebraicInt, ContextOptions, IntPoly, Sign};
pub use error::{Error, Result};
pub use planar::{AngleMatch, PlanePoint, PlaneVector};
