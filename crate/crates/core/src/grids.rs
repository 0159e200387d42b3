//! Generators for the coefficient boxes K_t and the grids G_t = K_t + i K_t.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::algebraic::{AlgebraicContext, AlgebraicInt, Sign};
use crate::error::{Error, Result};
use crate::planar::PlanePoint;

/// Largest grid any generator will materialize.
pub const DEFAULT_GRID_LIMIT: u64 = 100_000_000;

/// Radius `t` of K_t / G_t over a context.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec<'a> {
    pub ctx: &'a AlgebraicContext,
    pub t: u64,
}

impl<'a> GridSpec<'a> {
    pub fn new(ctx: &'a AlgebraicContext, t: u64) -> Self {
        GridSpec { ctx, t }
    }

    pub fn k_len(&self) -> BigUint {
        k_cardinality(self.ctx.degree(), self.t)
    }

    pub fn g_len(&self) -> BigUint {
        g_cardinality(self.ctx.degree(), self.t)
    }

    pub fn k(&self) -> Result<Vec<AlgebraicInt>> {
        gen_k(self.ctx, self.t)
    }

    pub fn g(&self) -> Result<Vec<PlanePoint>> {
        gen_g(self.ctx, self.t)
    }
}

/// `(2t+1)^d`.
pub fn k_cardinality(d: usize, t: u64) -> BigUint {
    num_traits::pow(BigUint::from(2 * t + 1), d)
}

/// `(2t+1)^(2d)`.
pub fn g_cardinality(d: usize, t: u64) -> BigUint {
    num_traits::pow(BigUint::from(2 * t + 1), 2 * d)
}

fn guard(size: BigUint, limit: u64) -> Result<usize> {
    match size.to_u64() {
        Some(n) if n <= limit => Ok(n as usize),
        _ => Err(Error::GridTooLarge { size, limit }),
    }
}

pub fn gen_k(ctx: &AlgebraicContext, t: u64) -> Result<Vec<AlgebraicInt>> {
    gen_k_limited(ctx, t, DEFAULT_GRID_LIMIT)
}

/// All coordinate vectors with entries in `[-t, t]`, in lexicographic order.
pub fn gen_k_limited(ctx: &AlgebraicContext, t: u64, limit: u64) -> Result<Vec<AlgebraicInt>> {
    let d = ctx.degree();
    let n = guard(k_cardinality(d, t), limit)?;
    let side = 2 * t as i128 + 1;
    let t = t as i128;
    let mut out = Vec::with_capacity(n);
    let mut digits = vec![-t; d];
    for _ in 0..n {
        out.push(AlgebraicInt::from_coeffs(
            digits.iter().map(|&a| BigInt::from(a)).collect(),
        ));
        // Odometer with the last coordinate fastest.
        for a in digits.iter_mut().rev() {
            *a += 1;
            if *a - (-t) < side {
                break;
            }
            *a = -t;
        }
    }
    Ok(out)
}

pub fn gen_g(ctx: &AlgebraicContext, t: u64) -> Result<Vec<PlanePoint>> {
    gen_g_limited(ctx, t, DEFAULT_GRID_LIMIT)
}

/// Cartesian product `K_t x K_t`, lexicographic in (re, im).
pub fn gen_g_limited(ctx: &AlgebraicContext, t: u64, limit: u64) -> Result<Vec<PlanePoint>> {
    guard(g_cardinality(ctx.degree(), t), limit)?;
    let k = gen_k_limited(ctx, t, limit)?;
    let mut out = Vec::with_capacity(k.len() * k.len());
    for re in &k {
        for im in &k {
            out.push(PlanePoint::new(re.clone(), im.clone()));
        }
    }
    Ok(out)
}

/// Elements of K_t with positive real value, in lexicographic coordinate
/// order. Exactly `((2t+1)^d - 1) / 2` of them, since `x -> -x` pairs the
/// nonzero elements.
pub fn positive_k(ctx: &AlgebraicContext, t: u64) -> Result<Vec<AlgebraicInt>> {
    Ok(gen_k(ctx, t)?
        .into_iter()
        .filter(|x| ctx.sign(x) == Sign::Positive)
        .collect())
}

/// `((2t+1)^d - 1) / 2`.
pub fn positive_k_cardinality(d: usize, t: u64) -> BigUint {
    (k_cardinality(d, t) - 1u32) >> 1
}
