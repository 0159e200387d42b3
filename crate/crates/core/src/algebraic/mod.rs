//! Exact arithmetic in Z[alpha].
//!
//! Elements are coordinate vectors over the power basis `1, alpha, ...,
//! alpha^(d-1)`. Ring operations reduce by the monic minimal polynomial of
//! alpha; signs are decided by evaluating over a rational enclosure of alpha
//! that is refined by exact bisection until the value's sign is settled.

mod context;
mod element;
mod poly;

pub use context::{AlgebraicContext, ContextOptions};
pub use element::AlgebraicInt;
pub use poly::{normalize_tangent, IntPoly, NormalizedTangent};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

/// Sign of an exact real quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: &BigInt) -> Sign {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    /// Ordering of the signed quantity relative to zero.
    pub fn as_ordering(self) -> Ordering {
        self.as_i8().cmp(&0)
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}
