//! The triple family `(z, z + l1 v, z + (b + i alpha) l2 v)` and its point set.
//!
//! For `1 <= k <= t`, `z` ranges over G_t, `v` over T_k and `l1, l2` over
//! the positive elements of K_floor(t/k). Every triple determines theta at
//! `z`, all triples are distinct, and all points lie in G_R with
//! `R = (1 + 2 m C2^2) t`, `m` the grid norm of `b + i alpha`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::algebraic::{AlgebraicContext, AlgebraicInt};
use crate::directions::{self, DirectionFamily};
use crate::error::{ensure_invariant, Error, Result};
use crate::grids::{self, DEFAULT_GRID_LIMIT};
use crate::planar::{self, AngleMatch, PlanePoint};

pub const DEFAULT_TRIPLE_BUDGET: u64 = 10_000_000;

/// Number of apexes handed to the worker pool at once.
const Z_BATCH: usize = 256;

#[derive(Clone, Copy, Debug)]
pub struct GenerateOptions {
    pub triple_budget: u64,
    pub grid_limit: u64,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            triple_budget: DEFAULT_TRIPLE_BUDGET,
            grid_limit: DEFAULT_GRID_LIMIT,
        }
    }
}

/// Where a triple came from: indices into `grid`, `directions.family(k)`
/// and `positives[k - 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Provenance {
    pub k: u32,
    pub z: u32,
    pub v: u32,
    pub lambda1: u32,
    pub lambda2: u32,
}

#[derive(Clone, Debug)]
pub struct TripleFamily {
    pub t: u64,
    /// Sorted, deduplicated union of all triple members.
    pub points: Vec<PlanePoint>,
    /// `[apex, p1, p2]` indices into `points`, sorted.
    pub triples: Vec<[u32; 3]>,
    /// Aligned with `triples`.
    pub provenance: Vec<Provenance>,
    /// G_t, the apex range.
    pub grid: Vec<PlanePoint>,
    pub directions: DirectionFamily,
    /// `positives[k - 1]` is the positive part of K_floor(t/k).
    pub positives: Vec<Vec<AlgebraicInt>>,
}

impl TripleFamily {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triple(&self, i: usize) -> [&PlanePoint; 3] {
        self.triples[i].map(|j| &self.points[j as usize])
    }

    /// `(k, z, v, lambda1, lambda2)` for triple `i`.
    pub fn provenance_values(
        &self,
        i: usize,
    ) -> (u64, &PlanePoint, &PlanePoint, &AlgebraicInt, &AlgebraicInt) {
        let p = self.provenance[i];
        let pos = &self.positives[p.k as usize - 1];
        (
            p.k as u64,
            &self.grid[p.z as usize],
            &self.directions.family(p.k as u64)[p.v as usize],
            &pos[p.lambda1 as usize],
            &pos[p.lambda2 as usize],
        )
    }
}

/// Grid norm of `b + i alpha`: `max(|b|, |alpha|_inf)`.
pub fn theta_vector_norm(ctx: &AlgebraicContext) -> BigUint {
    ctx.b().magnitude().clone().max(ctx.alpha().infinity_norm())
}

/// `(1 + 2 m C2^2) t`, the radius of the grid containing every point.
pub fn containment_radius(ctx: &AlgebraicContext, t: u64) -> BigUint {
    let c2 = ctx.c2().magnitude();
    (BigUint::from(1u8) + BigUint::from(2u8) * theta_vector_norm(ctx) * c2 * c2) * t
}

/// Exact number of triples `generate` emits:
/// `|G_t| * sum_k |T_k| * P_k^2` with `P_k = |positive K_floor(t/k)|`.
pub fn expected_count(ctx: &AlgebraicContext, t: u64) -> BigUint {
    let d = ctx.degree();
    let per_apex: BigUint = (1..=t)
        .map(|k| {
            let p = grids::positive_k_cardinality(d, t / k);
            quota_big(d, k) * &p * &p
        })
        .sum();
    grids::g_cardinality(d, t) * per_apex
}

fn quota_big(d: usize, k: u64) -> BigUint {
    let p = |x: u64| num_traits::pow(BigUint::from(x), 2 * d);
    p(2 * k) - p(2 * (k - 1))
}

/// `t^(4d) ln t`.
pub fn growth_lower_bound(d: usize, t: u64) -> f64 {
    (t as f64).powi(4 * d as i32) * (t as f64).ln()
}

/// `n^2 / (2d C3^2 2^(4d)) * ln(n / (2^(2d) C3))`, the count guaranteed for
/// `n` points once `t` is sized by [`size_for_n`].
pub fn scaling_lower_bound(d: usize, c3: &BigUint, n: &BigUint) -> f64 {
    let n = n.to_f64().unwrap_or(f64::INFINITY);
    let c3 = c3.to_f64().unwrap_or(f64::INFINITY);
    let two_d = 2.0 * d as f64;
    n * n / (two_d * c3 * c3 * 2f64.powf(2.0 * two_d)) * (n / (2f64.powf(two_d) * c3)).ln()
}

/// The unique `t >= 1` with `C3 t^(2d) < n <= C3 (t+1)^(2d)`.
pub fn size_for_n(ctx: &AlgebraicContext, n: &BigUint) -> Result<u64> {
    let c3 = ctx.c3();
    if n <= c3 {
        return Err(Error::NoValidSize {
            n: n.clone(),
            c3: c3.clone(),
        });
    }
    let e = 2 * ctx.degree();
    let below = |t: u64| c3 * num_traits::pow(BigUint::from(t), e) < *n;
    let mut hi = 2u64;
    while below(hi) {
        hi = hi
            .checked_mul(2)
            .ok_or_else(|| Error::Parse("n is too large".into()))?;
    }
    // below(lo) holds, below(hi) fails.
    let mut lo = 1u64;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

pub fn generate(ctx: &AlgebraicContext, t: u64) -> Result<TripleFamily> {
    generate_with(ctx, t, GenerateOptions::default())
}

struct Offset {
    k: u32,
    v: u32,
    lambda1: u32,
    lambda2: u32,
    first: PlanePoint,
    second: PlanePoint,
}

pub fn generate_with(
    ctx: &AlgebraicContext,
    t: u64,
    opts: GenerateOptions,
) -> Result<TripleFamily> {
    if t == 0 {
        return Err(Error::Parse("the construction needs t >= 1".into()));
    }
    let expected = expected_count(ctx, t);
    if expected > BigUint::from(opts.triple_budget) {
        return Err(Error::BudgetExceeded {
            expected,
            budget: opts.triple_budget,
        });
    }
    let grid = grids::gen_g_limited(ctx, t, opts.grid_limit)?;
    let dirs = directions::select_t_limited(ctx, t, opts.grid_limit)?;
    let positives = (1..=t)
        .map(|k| grids::positive_k(ctx, t / k))
        .collect::<Result<Vec<_>>>()?;

    // l v and (b + i alpha) l v do not depend on z.
    let mut offsets = Vec::new();
    for k in 1..=t {
        let pos = &positives[k as usize - 1];
        for (vi, v) in dirs.family(k).iter().enumerate() {
            let scaled: Vec<PlanePoint> = pos.iter().map(|l| v.scale(ctx, l)).collect();
            let rotated: Vec<PlanePoint> = scaled
                .iter()
                .map(|s| planar::rotate_theta(ctx, s))
                .collect::<Result<_>>()?;
            for (i1, s1) in scaled.iter().enumerate() {
                for (i2, r2) in rotated.iter().enumerate() {
                    offsets.push(Offset {
                        k: k as u32,
                        v: vi as u32,
                        lambda1: i1 as u32,
                        lambda2: i2 as u32,
                        first: s1.clone(),
                        second: r2.clone(),
                    });
                }
            }
        }
    }

    let mut index: HashMap<PlanePoint, u32> = HashMap::new();
    let mut intern = |p: PlanePoint| -> u32 {
        let next = index.len() as u32;
        *index.entry(p).or_insert(next)
    };
    let mut raw: Vec<([u32; 3], Provenance)> = Vec::with_capacity(expected.to_usize().unwrap_or(0));

    for (batch_no, batch) in grid.chunks(Z_BATCH).enumerate() {
        let produced: Vec<Vec<(PlanePoint, PlanePoint, PlanePoint, Provenance)>> = batch
            .par_iter()
            .enumerate()
            .map(|(i, z)| {
                let zi = (batch_no * Z_BATCH + i) as u32;
                offsets
                    .iter()
                    .map(|o| {
                        let p1 = z + &o.first;
                        let p2 = z + &o.second;
                        let m = planar::angle_at(ctx, z, &p1, &p2)?;
                        ensure_invariant!(
                            m == AngleMatch::ThetaPlus,
                            "triple ({z}; {p1}; {p2}) is {m}, not theta_plus"
                        );
                        let prov = Provenance {
                            k: o.k,
                            z: zi,
                            v: o.v,
                            lambda1: o.lambda1,
                            lambda2: o.lambda2,
                        };
                        Ok((z.clone(), p1, p2, prov))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for (apex, p1, p2, prov) in produced.into_iter().flatten() {
            raw.push(([intern(apex), intern(p1), intern(p2)], prov));
        }
    }

    let mut points: Vec<(PlanePoint, u32)> = index.into_iter().collect();
    points.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let mut remap = vec![0u32; points.len()];
    for (new, (_, old)) in points.iter().enumerate() {
        remap[*old as usize] = new as u32;
    }
    let points: Vec<PlanePoint> = points.into_iter().map(|(p, _)| p).collect();
    for (tri, _) in raw.iter_mut() {
        *tri = tri.map(|i| remap[i as usize]);
    }
    raw.sort_unstable();

    ensure_invariant!(
        raw.windows(2).all(|w| w[0].0 != w[1].0),
        "two parameter choices produced the same triple"
    );
    let radius = containment_radius(ctx, t);
    if let Some(p) = points.iter().find(|p| !p.in_grid(&radius)) {
        return Err(Error::Invariant(format!(
            "point {p} lies outside G_{radius}"
        )));
    }
    ensure_invariant!(
        BigUint::from(raw.len()) == expected,
        "generated {} triples, expected {expected}",
        raw.len()
    );
    let bound = growth_lower_bound(ctx.degree(), t);
    ensure_invariant!(
        (raw.len() as f64).total_cmp(&bound).is_ge(),
        "{} triples fall below t^(4d) ln t = {bound}",
        raw.len()
    );

    let (triples, provenance) = raw.into_iter().unzip();
    Ok(TripleFamily {
        t,
        points,
        triples,
        provenance,
        grid,
        directions: dirs,
        positives,
    })
}
