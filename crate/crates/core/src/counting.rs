//! Exact counts of theta-triples: an apex together with an unordered pair
//! of other points seen from it at angle theta.

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::algebraic::AlgebraicContext;
use crate::construction::{self, GenerateOptions};
use crate::directions::Ray;
use crate::error::{ensure_invariant, Error, Result};
use crate::grids;
use crate::planar::{self, AngleMatch, PlanePoint};

pub const DEFAULT_BRUTE_LIMIT: usize = 800;
pub const DEFAULT_FAST_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Fast,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::Fast => "fast",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "fast" => Ok(Method::Fast),
            _ => Err(Error::Parse(format!("unknown counting method {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CountReport {
    pub total: BigUint,
    /// Count at each apex, in input order.
    pub per_apex: Option<Vec<u64>>,
    pub method: Method,
    pub elapsed: Duration,
}

impl CountReport {
    fn from_per_apex(per_apex: Vec<u64>, method: Method, started: Instant) -> Self {
        CountReport {
            total: per_apex.iter().map(|&c| BigUint::from(c)).sum(),
            per_apex: Some(per_apex),
            method,
            elapsed: started.elapsed(),
        }
    }
}

fn check_points(ctx: &AlgebraicContext, points: &[PlanePoint]) -> Result<()> {
    for p in points {
        ctx.check(&p.re)?;
        ctx.check(&p.im)?;
    }
    let mut sorted: Vec<&PlanePoint> = points.iter().collect();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoints);
    }
    Ok(())
}

fn differences(points: &[PlanePoint], apex: usize) -> Vec<PlanePoint> {
    let p = &points[apex];
    points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != apex)
        .map(|(_, q)| q - p)
        .collect()
}

pub fn count(ctx: &AlgebraicContext, points: &[PlanePoint], method: Method) -> Result<CountReport> {
    match method {
        Method::Brute => count_brute(ctx, points),
        Method::Fast => count_fast(ctx, points),
    }
}

pub fn count_brute(ctx: &AlgebraicContext, points: &[PlanePoint]) -> Result<CountReport> {
    count_brute_limited(ctx, points, DEFAULT_BRUTE_LIMIT)
}

/// Tests every apex against every unordered pair with the angle predicate.
pub fn count_brute_limited(
    ctx: &AlgebraicContext,
    points: &[PlanePoint],
    limit: usize,
) -> Result<CountReport> {
    let started = Instant::now();
    if points.len() > limit {
        return Err(Error::PointLimitExceeded {
            n: points.len(),
            limit,
        });
    }
    check_points(ctx, points)?;
    let per_apex = (0..points.len())
        .into_par_iter()
        .map(|apex| {
            let diffs = differences(points, apex);
            let mut c = 0u64;
            for (i, u) in diffs.iter().enumerate() {
                for w in &diffs[i + 1..] {
                    if planar::angle_between(ctx, u, w) != AngleMatch::None {
                        c += 1;
                    }
                }
            }
            c
        })
        .collect();
    Ok(CountReport::from_per_apex(per_apex, Method::Brute, started))
}

/// Sorts the rays around each apex and looks up, for every ray, the ray
/// turned counterclockwise by theta. For theta in (0, pi) exactly one of the
/// two orientations relates any matching pair, so each pair is seen once.
pub fn count_fast(ctx: &AlgebraicContext, points: &[PlanePoint]) -> Result<CountReport> {
    let started = Instant::now();
    check_points(ctx, points)?;
    let per_apex = (0..points.len())
        .into_par_iter()
        .map(|apex| count_at_apex(ctx, differences(points, apex)))
        .collect();
    Ok(CountReport::from_per_apex(per_apex, Method::Fast, started))
}

fn count_at_apex(ctx: &AlgebraicContext, diffs: Vec<PlanePoint>) -> u64 {
    let mut rays: Vec<Ray> = diffs.into_iter().map(|v| Ray::new(ctx, v)).collect();
    rays.sort_by(|a, b| a.cmp(ctx, b));
    // (representative, multiplicity) per distinct ray
    let mut groups: Vec<(&Ray, u64)> = Vec::new();
    for r in &rays {
        match groups.last_mut() {
            Some((rep, m)) if rep.cmp(ctx, r) == Ordering::Equal => *m += 1,
            _ => groups.push((r, 1)),
        }
    }
    let mut c = 0u64;
    for (rep, m) in &groups {
        let target = Ray::new(ctx, planar::rotate_theta_unchecked(ctx, &rep.v));
        if let Ok(j) = groups.binary_search_by(|(probe, _)| probe.cmp(ctx, &target)) {
            c += m * groups[j].1;
        }
    }
    c
}

/// Point sets a sweep step can count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointSource {
    /// G_R with R the construction's containment radius.
    Grid,
    /// The deduplicated union of the construction's triples.
    Union,
    /// `Grid` for d = 1, `Union` otherwise.
    Auto,
}

impl FromStr for PointSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(PointSource::Grid),
            "union" => Ok(PointSource::Union),
            "auto" => Ok(PointSource::Auto),
            _ => Err(Error::Parse(format!("unknown point source {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub source: PointSource,
    /// Steps whose point set exceeds this size are skipped.
    pub fast_limit: usize,
    pub generate: GenerateOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            source: PointSource::Auto,
            fast_limit: DEFAULT_FAST_LIMIT,
            generate: GenerateOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub t: u64,
    pub n: Option<u64>,
    /// `None` when the step was skipped for budget reasons.
    pub triples: Option<BigUint>,
}

impl SweepRow {
    /// `n^2 ln n`.
    pub fn n2logn(&self) -> Option<f64> {
        self.n.map(|n| (n as f64) * (n as f64) * (n as f64).ln())
    }

    /// `triples / (n^2 ln n)`.
    pub fn ratio(&self) -> Option<f64> {
        let denom = self.n2logn()?;
        let triples = self.triples.as_ref()?.to_f64()?;
        (denom > 0.0).then(|| triples / denom)
    }
}

pub const SWEEP_HEADER: &str = "t,n,triples,n2logn,ratio";

/// Counts theta-triples with the fast counter on the point set built for
/// each `t`. Steps over budget become skipped rows.
pub fn sweep(
    ctx: &AlgebraicContext,
    ts: impl IntoIterator<Item = u64>,
    opts: &SweepOptions,
) -> Result<Vec<SweepRow>> {
    let source = match opts.source {
        PointSource::Auto if ctx.degree() == 1 => PointSource::Grid,
        PointSource::Auto => PointSource::Union,
        s => s,
    };
    let mut rows = Vec::new();
    for t in ts {
        let points = match source {
            PointSource::Grid => {
                let radius = construction::containment_radius(ctx, t);
                let size = radius
                    .to_u64()
                    .map(|r| grids::g_cardinality(ctx.degree(), r))
                    .and_then(|n| n.to_u64());
                match size {
                    Some(n) if n as usize <= opts.fast_limit => grids::gen_g_limited(
                        ctx,
                        radius.to_u64().unwrap_or(u64::MAX),
                        opts.generate.grid_limit,
                    )?,
                    n => {
                        log::warn!(
                            "t = {t}: grid of {n:?} points exceeds the counting limit, skipped"
                        );
                        rows.push(SweepRow {
                            t,
                            n,
                            triples: None,
                        });
                        continue;
                    }
                }
            }
            _ => match construction::generate_with(ctx, t, opts.generate) {
                Ok(fam) if fam.points.len() <= opts.fast_limit => fam.points,
                Ok(fam) => {
                    log::warn!(
                        "t = {t}: {} union points exceed the counting limit, skipped",
                        fam.points.len()
                    );
                    rows.push(SweepRow {
                        t,
                        n: Some(fam.points.len() as u64),
                        triples: None,
                    });
                    continue;
                }
                Err(e @ (Error::BudgetExceeded { .. } | Error::GridTooLarge { .. })) => {
                    log::warn!("t = {t}: {e}, skipped");
                    rows.push(SweepRow {
                        t,
                        n: None,
                        triples: None,
                    });
                    continue;
                }
                Err(e) => return Err(e),
            },
        };
        let report = count_fast(ctx, &points)?;
        log::info!(
            "t = {t}: n = {}, {} triples in {:?}",
            points.len(),
            report.total,
            report.elapsed
        );
        rows.push(SweepRow {
            t,
            n: Some(points.len() as u64),
            triples: Some(report.total),
        });
    }
    Ok(rows)
}

pub fn write_sweep_csv(rows: &[SweepRow], mut out: impl Write) -> Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        let n = r.n.map(|n| n.to_string()).unwrap_or_default();
        match (&r.triples, r.n2logn(), r.ratio()) {
            (Some(tr), Some(nl), Some(ratio)) => {
                writeln!(out, "{},{n},{tr},{nl:.6},{ratio:.9}", r.t)?
            }
            (Some(tr), _, _) => writeln!(out, "{},{n},{tr},,", r.t)?,
            (None, _, _) => writeln!(out, "{},{n},skipped,,", r.t)?,
        }
    }
    Ok(())
}

/// Brute and fast totals on the same input, which must agree.
pub fn count_both(
    ctx: &AlgebraicContext,
    points: &[PlanePoint],
    brute_limit: usize,
) -> Result<(CountReport, CountReport)> {
    let brute = count_brute_limited(ctx, points, brute_limit)?;
    let fast = count_fast(ctx, points)?;
    ensure_invariant!(
        brute.total == fast.total,
        "brute count {} differs from fast count {}",
        brute.total,
        fast.total
    );
    Ok((brute, fast))
}
