//! Direction census and selection of the direction families T_k.

use std::cmp::Ordering;

use num_traits::ToPrimitive;

use crate::algebraic::{AlgebraicContext, Sign};
use crate::error::{ensure_invariant, Error, Result};
use crate::grids::{self, DEFAULT_GRID_LIMIT};
use crate::planar::{cross, PlaneVector};

/// Which half-turn a nonzero vector's argument falls in: `[0, pi)` or
/// `[pi, 2 pi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum HalfTurn {
    Upper,
    Lower,
}

pub(crate) fn half_turn(ctx: &AlgebraicContext, v: &PlaneVector) -> HalfTurn {
    match ctx.sign(&v.im) {
        Sign::Positive => HalfTurn::Upper,
        Sign::Negative => HalfTurn::Lower,
        Sign::Zero => {
            if ctx.sign(&v.re) == Sign::Positive {
                HalfTurn::Upper
            } else {
                HalfTurn::Lower
            }
        }
    }
}

/// Counterclockwise order of two vectors known to lie in the same half-turn.
pub(crate) fn cmp_within_half(
    ctx: &AlgebraicContext,
    u: &PlaneVector,
    v: &PlaneVector,
) -> Ordering {
    // cross(u, v) > 0 puts v counterclockwise of u.
    ctx.sign(&cross(ctx, u, v)).as_ordering().reverse()
}

/// A nonzero vector with its half-turn cached, ordered by argument in
/// `[0, 2 pi)`.
#[derive(Clone, Debug)]
pub(crate) struct Ray {
    pub v: PlaneVector,
    pub half: HalfTurn,
}

impl Ray {
    pub fn new(ctx: &AlgebraicContext, v: PlaneVector) -> Ray {
        let half = half_turn(ctx, &v);
        Ray { v, half }
    }

    pub fn cmp(&self, ctx: &AlgebraicContext, other: &Ray) -> Ordering {
        self.half
            .cmp(&other.half)
            .then_with(|| cmp_within_half(ctx, &self.v, &other.v))
    }
}

/// Total preorder of nonzero vectors by argument in `[0, 2 pi)`; `Equal`
/// exactly when both lie on the same ray.
pub fn direction_order(
    ctx: &AlgebraicContext,
    u: &PlaneVector,
    v: &PlaneVector,
) -> Result<Ordering> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(half_turn(ctx, u)
        .cmp(&half_turn(ctx, v))
        .then_with(|| cmp_within_half(ctx, u, v)))
}

/// Representative of the direction of `v` modulo pi, in the upper half-turn.
pub fn mod_pi_key(ctx: &AlgebraicContext, v: &PlaneVector) -> PlaneVector {
    match half_turn(ctx, v) {
        HalfTurn::Upper => v.clone(),
        HalfTurn::Lower => -v,
    }
}

fn count_sorted_classes(ctx: &AlgebraicContext, mut keys: Vec<PlaneVector>) -> usize {
    keys.sort_by(|a, b| cmp_within_half(ctx, a, b));
    if keys.is_empty() {
        return 0;
    }
    1 + keys
        .windows(2)
        .filter(|w| cmp_within_half(ctx, &w[0], &w[1]) != Ordering::Equal)
        .count()
}

/// Number of distinct directions modulo pi among all pairwise differences.
pub fn count_distinct_directions(ctx: &AlgebraicContext, points: &[PlaneVector]) -> Result<usize> {
    let mut keys = Vec::with_capacity(points.len() * points.len().saturating_sub(1) / 2);
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let d = q.try_sub(p)?;
            if !d.is_zero() {
                keys.push(mod_pi_key(ctx, &d));
            }
        }
    }
    if keys.is_empty() {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: points.len(),
        });
    }
    Ok(count_sorted_classes(ctx, keys))
}

/// Direction representatives T_1 .. T_t.
#[derive(Clone, Debug)]
pub struct DirectionFamily {
    pub t: u64,
    /// `families[k - 1]` is T_k.
    pub families: Vec<Vec<PlaneVector>>,
    /// `census[k - 1]`: distinct directions modulo pi among the nonzero
    /// elements of G_2k.
    pub census: Vec<usize>,
}

impl DirectionFamily {
    pub fn family(&self, k: u64) -> &[PlaneVector] {
        &self.families[(k - 1) as usize]
    }

    pub fn all(&self) -> impl Iterator<Item = &PlaneVector> {
        self.families.iter().flatten()
    }
}

/// `(2k)^(2d) - (2(k-1))^(2d)`.
pub fn quota(d: usize, k: u64) -> u64 {
    let p = |x: u64| x.pow(2 * d as u32);
    p(2 * k) - p(2 * (k - 1))
}

/// Picks T_k for `k = 1..=t` by scanning the nonzero elements of G_2k in
/// lexicographic order and admitting each element whose direction modulo pi
/// is new across all families so far, until the quota is met.
pub fn select_t(ctx: &AlgebraicContext, t: u64) -> Result<DirectionFamily> {
    select_t_limited(ctx, t, DEFAULT_GRID_LIMIT)
}

pub fn select_t_limited(ctx: &AlgebraicContext, t: u64, limit: u64) -> Result<DirectionFamily> {
    if t == 0 {
        return Err(Error::Parse("select_t needs t >= 1".into()));
    }
    let d = ctx.degree();
    // Total admitted count is (2t)^(2d); reject before doing any work.
    let total = grids::g_cardinality(d, t).to_u64().unwrap_or(u64::MAX);
    if total > limit {
        return Err(Error::GridTooLarge {
            size: grids::g_cardinality(d, t),
            limit,
        });
    }
    let mut admitted: Vec<PlaneVector> = Vec::new();
    let mut families = Vec::with_capacity(t as usize);
    let mut census = Vec::with_capacity(t as usize);
    for k in 1..=t {
        let want = quota(d, k) as usize;
        let grid = grids::gen_g_limited(ctx, 2 * k, limit)?;
        let mut family = Vec::with_capacity(want);
        let mut keys = Vec::with_capacity(grid.len());
        for v in grid.into_iter().filter(|v| !v.is_zero()) {
            let key = mod_pi_key(ctx, &v);
            if family.len() < want {
                if let Err(pos) =
                    admitted.binary_search_by(|probe| cmp_within_half(ctx, probe, &key))
                {
                    admitted.insert(pos, key.clone());
                    family.push(v);
                }
            }
            keys.push(key);
        }
        census.push(count_sorted_classes(ctx, keys));
        ensure_invariant!(
            family.len() == want,
            "T_{k} reached only {} of {want} directions in G_{}; the direction count guarantee failed",
            family.len(),
            2 * k
        );
        families.push(family);
    }
    Ok(DirectionFamily {
        t,
        families,
        census,
    })
}
