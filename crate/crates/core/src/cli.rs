//! The `angleforge` command-line tool.
//!
//! Exit codes: 0 on success, 1 for invalid input, 2 when a mathematical
//! invariant fails. Errors are reported on stderr as a JSON object.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use std::str::FromStr;

use crate::algebraic::{normalize_tangent, AlgebraicContext, ContextOptions, IntPoly};
use crate::construction::{self, GenerateOptions};
use crate::counting::{self, SweepOptions};
use crate::directions;
use crate::error::{Error, Result};
use crate::grids;
use crate::io::{self as fio, SCHEMA};
use crate::planar;

#[derive(Parser, Debug)]
#[command(
    name = "angleforge",
    version,
    about = "Exact repeated-angle constructions and counters"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for counting and generation [default: available cores]
    #[arg(long, global = true)]
    pub threads: Option<NonZeroUsize>,
    /// Increase log verbosity (repeatable)
    #[arg(short, long, action = ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rewrite tan(theta) as alpha/b with alpha a positive algebraic integer
    Normalize(NormalizeArgs),
    /// Build the triple family and its point set
    Construct(ConstructArgs),
    /// Count theta-triples in a point-set file
    Count(CountArgs),
    /// Check the distinct-direction lower bound on G_t
    VerifyUngar(UngarArgs),
    /// Count triples over a range of t and report triples / (n^2 ln n)
    Sweep(SweepArgs),
    /// Test whether the angle at P between Q and R equals theta
    AngleCheck(AngleCheckArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum D1Theta {
    /// theta = pi/4 (alpha = 1, b = 1)
    Pi4,
    /// theta = 3pi/4 (alpha = 1, b = -1)
    #[value(name = "3pi4")]
    ThreePi4,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// y - 1, b = 1 (theta = pi/4)
    Pi4,
    /// y^2 - 2, b = 1 (theta = arctan sqrt 2)
    Sqrt2,
    /// y^2 - 3, b = 3 (theta = pi/6)
    Pi6,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ContextArgs {
    /// Context JSON file as printed by `normalize`
    #[arg(long, conflicts_with_all = ["minpoly", "d1_theta", "preset"])]
    pub context: Option<PathBuf>,
    /// Monic minimal polynomial of alpha, constant term first: "q0,q1,...,1"
    #[arg(long, allow_hyphen_values = true, requires_all = ["b", "iso"], conflicts_with_all = ["d1_theta", "preset"])]
    pub minpoly: Option<String>,
    /// Integer b with tan(theta) = alpha / b
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Isolating interval for alpha: "lo,hi" (rationals like 7/5 or 1.4)
    #[arg(long)]
    pub iso: Option<String>,
    /// Degree-one angle preset
    #[arg(long = "d1-theta", value_enum, conflicts_with = "preset")]
    pub d1_theta: Option<D1Theta>,
    /// Named context preset
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Accept b = 0 (theta = pi/2)
    #[arg(long)]
    pub allow_right_angle: bool,
}

impl ContextArgs {
    fn options(&self) -> ContextOptions {
        ContextOptions {
            allow_right_angle: self.allow_right_angle,
        }
    }

    pub fn resolve(&self) -> Result<AlgebraicContext> {
        let opts = self.options();
        if let Some(path) = &self.context {
            return fio::read_context(BufReader::new(File::open(path)?), opts);
        }
        let preset = |q: &[i64], b: i64, lo: &str, hi: &str| -> Result<AlgebraicContext> {
            AlgebraicContext::with_options(
                IntPoly::from_i64s(q)?,
                BigInt::from(b),
                fio::parse_rational(lo)?,
                fio::parse_rational(hi)?,
                opts,
            )
        };
        match (self.d1_theta, self.preset) {
            (Some(D1Theta::Pi4), _) | (None, Some(Preset::Pi4)) => {
                return preset(&[-1, 1], 1, "1/2", "3/2")
            }
            (Some(D1Theta::ThreePi4), _) => return preset(&[-1, 1], -1, "1/2", "3/2"),
            (None, Some(Preset::Sqrt2)) => return preset(&[-2, 0, 1], 1, "1", "2"),
            (None, Some(Preset::Pi6)) => return preset(&[-3, 0, 1], 3, "1", "2"),
            (None, None) => {}
        }
        match (&self.minpoly, &self.b, &self.iso) {
            (Some(q), Some(b), Some(iso)) => {
                let (lo, hi) = parse_interval(iso)?;
                let b = BigInt::from_str(b.trim()).map_err(|_| Error::Parse(format!("not an integer: {b:?}")))?;
                AlgebraicContext::with_options(IntPoly::new(fio::parse_int_list(q)?)?, b, lo, hi, opts)
            }
            _ => Err(Error::Parse(
                "no context given: use --context, --preset, --d1-theta, or --minpoly with --b and --iso".into(),
            )),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Budgets {
    /// Largest point set the brute-force counter accepts
    #[arg(long, default_value_t = counting::DEFAULT_BRUTE_LIMIT, value_parser = positive_usize)]
    pub brute_limit: usize,
    /// Largest point set the fast counter accepts inside a sweep
    #[arg(long, default_value_t = counting::DEFAULT_FAST_LIMIT, value_parser = positive_usize)]
    pub fast_limit: usize,
    /// Largest number of triples the construction materializes
    #[arg(long, default_value_t = construction::DEFAULT_TRIPLE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub triple_budget: u64,
    /// Largest grid any generator materializes
    #[arg(long, default_value_t = grids::DEFAULT_GRID_LIMIT, value_parser = clap::value_parser!(u64).range(1..))]
    pub grid_limit: u64,
}

impl Budgets {
    fn generate(&self) -> GenerateOptions {
        GenerateOptions {
            triple_budget: self.triple_budget,
            grid_limit: self.grid_limit,
        }
    }
}

fn positive_usize(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug)]
pub struct NormalizeArgs {
    /// Integer polynomial with root tan(theta), constant term first: "p0,p1,...,pd"
    #[arg(long, allow_hyphen_values = true)]
    pub tanpoly: String,
    /// Interval isolating tan(theta): "lo,hi"
    #[arg(long, allow_hyphen_values = true)]
    pub interval: String,
    /// Write the context JSON here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub ctx: ContextArgs,
    #[command(flatten)]
    pub budgets: Budgets,
    /// Build parameter t
    #[arg(long, required_unless_present = "n", conflicts_with = "n", value_parser = clap::value_parser!(u64).range(1..))]
    pub t: Option<u64>,
    /// Target point count; t is the unique value with C3 t^(2d) < n <= C3 (t+1)^(2d)
    #[arg(long)]
    pub n: Option<String>,
    /// Report the expected triple count without generating
    #[arg(long)]
    pub dry_run: bool,
    /// Point-set JSON output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Triple index JSON output
    #[arg(long)]
    pub triples_out: Option<PathBuf>,
    /// Decimal CSV rendering of the points
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountMethod {
    Brute,
    Fast,
    Both,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Point-set JSON file
    #[arg(long)]
    pub input: PathBuf,
    /// Take theta from the file's context (the only supported source)
    #[arg(long, default_value_t = true)]
    pub theta_from_context: bool,
    #[arg(long, value_enum, default_value_t = CountMethod::Fast)]
    pub method: CountMethod,
    /// CSV output (default stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Accept b = 0 contexts
    #[arg(long)]
    pub allow_right_angle: bool,
    #[command(flatten)]
    pub budgets: Budgets,
}

#[derive(Args, Debug)]
pub struct UngarArgs {
    #[command(flatten)]
    pub ctx: ContextArgs,
    /// Single grid radius
    #[arg(long, conflicts_with = "t_max", required_unless_present = "t_max", value_parser = clap::value_parser!(u64).range(1..))]
    pub t: Option<u64>,
    /// Check every radius 1..=t_max
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub t_max: Option<u64>,
    #[arg(long, default_value_t = grids::DEFAULT_GRID_LIMIT)]
    pub grid_limit: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub ctx: ContextArgs,
    #[command(flatten)]
    pub budgets: Budgets,
    #[arg(long, default_value_t = 1)]
    pub t_min: u64,
    #[arg(long)]
    pub t_max: u64,
    /// Point set per step: containing grid, construction union, or auto
    #[arg(long, default_value = "auto")]
    pub points: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AngleCheckArgs {
    #[command(flatten)]
    pub ctx: ContextArgs,
    /// Apex, as "re0,re1,..;im0,im1,.." or a JSON point
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r: String,
}

fn parse_interval(s: &str) -> Result<(BigRational, BigRational)> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("interval {s:?} is not of the form lo,hi")))?;
    Ok((fio::parse_rational(lo)?, fio::parse_rational(hi)?))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn normalize(args: &NormalizeArgs) -> Result<()> {
    let p = IntPoly::new(fio::parse_int_list(&args.tanpoly)?)?;
    let (lo, hi) = parse_interval(&args.interval)?;
    let n = normalize_tangent(&p, &lo, &hi)?;
    let ctx = AlgebraicContext::new(n.minpoly, n.b, n.iso_lo, n.iso_hi)?;
    let mut out = output(args.out.as_deref())?;
    fio::write_context(&ctx, &mut out)?;
    out.flush()?;
    Ok(())
}

fn construct(args: &ConstructArgs) -> Result<()> {
    let ctx = args.ctx.resolve()?;
    let t = match (args.t, &args.n) {
        (Some(t), _) => t,
        (None, Some(n)) => {
            let n = BigUint::from_str(n.trim())
                .map_err(|_| Error::Parse(format!("not a count: {n:?}")))?;
            match construction::size_for_n(&ctx, &n) {
                Ok(t) => t,
                Err(e @ Error::NoValidSize { .. }) => {
                    log::warn!("{e}; falling back to t = 1");
                    1
                }
                Err(e) => return Err(e),
            }
        }
        (None, None) => unreachable!("clap requires --t or --n"),
    };
    let expected = construction::expected_count(&ctx, t);
    let mut summary = serde_json::json!({
        "schema": SCHEMA,
        "t": t.to_string(),
        "expected_triples": expected.to_string(),
        "containment_radius": construction::containment_radius(&ctx, t).to_string(),
        "growth_lower_bound": format!("{:.6}", construction::growth_lower_bound(ctx.degree(), t)),
    });
    if !args.dry_run {
        let family = construction::generate_with(&ctx, t, args.budgets.generate())?;
        summary["triples"] = family.len().to_string().into();
        summary["points"] = family.points.len().to_string().into();
        if let Some(path) = &args.out {
            let mut w = BufWriter::new(File::create(path)?);
            fio::write_point_set(&ctx, &family.points, &mut w)?;
            w.flush()?;
        }
        if let Some(path) = &args.triples_out {
            let mut w = BufWriter::new(File::create(path)?);
            fio::write_triples(&family, &mut w)?;
            w.flush()?;
        }
        if let Some(path) = &args.csv_out {
            let mut w = BufWriter::new(File::create(path)?);
            fio::write_points_csv(&ctx, &family.points, &mut w)?;
            w.flush()?;
        }
    }
    let mut out = output(None)?;
    serde_json::to_writer_pretty(&mut out, &summary)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn count(args: &CountArgs) -> Result<()> {
    let opts = ContextOptions {
        allow_right_angle: args.allow_right_angle,
    };
    let (ctx, points) = fio::read_point_set(BufReader::new(File::open(&args.input)?), opts)?;
    let mut out = output(args.out.as_deref())?;
    writeln!(out, "method,n,triples")?;
    let limit = args.budgets.brute_limit;
    let reports = match args.method {
        CountMethod::Brute => vec![counting::count_brute_limited(&ctx, &points, limit)?],
        CountMethod::Fast => vec![counting::count_fast(&ctx, &points)?],
        CountMethod::Both => {
            let (b, f) = counting::count_both(&ctx, &points, limit)?;
            vec![b, f]
        }
    };
    for r in reports {
        log::info!("{} counter: {:?}", r.method, r.elapsed);
        writeln!(out, "{},{},{}", r.method, points.len(), r.total)?;
    }
    out.flush()?;
    Ok(())
}

fn verify_ungar(args: &UngarArgs) -> Result<()> {
    let ctx = args.ctx.resolve()?;
    let ts: Vec<u64> = match (args.t, args.t_max) {
        (Some(t), _) => vec![t],
        (None, Some(m)) => (1..=m).collect(),
        (None, None) => unreachable!("clap requires --t or --t-max"),
    };
    let mut out = output(args.out.as_deref())?;
    writeln!(out, "t,n,distinct_directions,bound,status")?;
    let mut failed = Vec::new();
    for t in ts {
        let grid = grids::gen_g_limited(&ctx, t, args.grid_limit)?;
        let distinct = directions::count_distinct_directions(&ctx, &grid)?;
        let bound = grid.len() - 1;
        let pass = distinct >= bound;
        if !pass {
            failed.push(t);
        }
        writeln!(
            out,
            "{t},{},{distinct},{bound},{}",
            grid.len(),
            if pass { "pass" } else { "fail" }
        )?;
    }
    out.flush()?;
    if !failed.is_empty() {
        return Err(Error::Invariant(format!(
            "direction count below N - 1 for t in {failed:?}"
        )));
    }
    Ok(())
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let ctx = args.ctx.resolve()?;
    let opts = SweepOptions {
        source: args.points.parse()?,
        fast_limit: args.budgets.fast_limit,
        generate: args.budgets.generate(),
    };
    let rows = counting::sweep(&ctx, args.t_min.max(1)..=args.t_max, &opts)?;
    let mut out = output(args.out.as_deref())?;
    counting::write_sweep_csv(&rows, &mut out)?;
    out.flush()?;
    Ok(())
}

fn angle_check(args: &AngleCheckArgs) -> Result<()> {
    let ctx = args.ctx.resolve()?;
    let p = fio::parse_point(&ctx, &args.p)?;
    let q = fio::parse_point(&ctx, &args.q)?;
    let r = fio::parse_point(&ctx, &args.r)?;
    let m = planar::angle_at(&ctx, &p, &q, &r)?;
    let mut out = output(None)?;
    writeln!(out, "{m}")?;
    out.flush()?;
    Ok(())
}

fn dispatch(cfg: &RunConfig) -> Result<()> {
    match &cfg.command {
        Command::Normalize(a) => normalize(a),
        Command::Construct(a) => construct(a),
        Command::Count(a) => count(a),
        Command::VerifyUngar(a) => verify_ungar(a),
        Command::Sweep(a) => sweep(a),
        Command::AngleCheck(a) => angle_check(a),
    }
}

fn report(kind: &str, message: &str) {
    let err = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{err}");
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            report("usage", &e.to_string());
            return 1;
        }
    };
    let level = match cfg.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).try_init();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        pool = pool.num_threads(n.get());
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| dispatch(&cfg)),
        Err(e) => Err(Error::Parse(format!("cannot start worker threads: {e}"))),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let (kind, code) = classify(&e);
            report(kind, &e.to_string());
            code
        }
    }
}

fn classify(e: &Error) -> (&'static str, i32) {
    if e.is_invariant_violation() {
        ("invariant", 2)
    } else {
        ("input", 1)
    }
}
