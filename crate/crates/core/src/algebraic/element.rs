use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};

/// An element `a_0 + a_1 alpha + ... + a_(d-1) alpha^(d-1)` of Z[alpha].
///
/// The coordinate vector is unique because the power basis is linearly
/// independent when the minimal polynomial is irreducible; equality and
/// zero tests are therefore coordinate-wise. The derived order is the
/// lexicographic order on coordinates, not the order of real values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraicInt {
    coeffs: Vec<BigInt>,
}

impl AlgebraicInt {
    pub fn zero(degree: usize) -> Self {
        AlgebraicInt {
            coeffs: vec![BigInt::zero(); degree],
        }
    }

    /// The rational integer `c` embedded in Z[alpha].
    pub fn integer(degree: usize, c: BigInt) -> Self {
        let mut x = Self::zero(degree);
        x.coeffs[0] = c;
        x
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "an element needs at least one coordinate"
        );
        AlgebraicInt { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `max_k |a_k|`; the element lies in K_t iff this is at most `t`.
    pub fn infinity_norm(&self) -> BigUint {
        self.coeffs
            .iter()
            .map(|c| c.magnitude())
            .max()
            .cloned()
            .unwrap_or_default()
    }

    pub fn in_box(&self, t: &BigUint) -> bool {
        self.coeffs.iter().all(|c| c.magnitude() <= t)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        AlgebraicInt {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "degree mismatch in Z[alpha] arithmetic"
        );
        AlgebraicInt {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Display for AlgebraicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

// Operators panic on degree mismatch; use the `try_` forms at trust
// boundaries.
impl Add for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn add(self, rhs: &AlgebraicInt) -> AlgebraicInt {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn sub(self, rhs: &AlgebraicInt) -> AlgebraicInt {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Add for AlgebraicInt {
    type Output = AlgebraicInt;
    fn add(mut self, rhs: AlgebraicInt) -> AlgebraicInt {
        assert_eq!(
            self.degree(),
            rhs.degree(),
            "degree mismatch in Z[alpha] arithmetic"
        );
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for AlgebraicInt {
    type Output = AlgebraicInt;
    fn sub(mut self, rhs: AlgebraicInt) -> AlgebraicInt {
        assert_eq!(
            self.degree(),
            rhs.degree(),
            "degree mismatch in Z[alpha] arithmetic"
        );
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl Neg for &AlgebraicInt {
    type Output = AlgebraicInt;
    fn neg(self) -> AlgebraicInt {
        AlgebraicInt {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for AlgebraicInt {
    type Output = AlgebraicInt;
    fn neg(mut self) -> AlgebraicInt {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}
