//! JSON and CSV file formats. Integers travel as decimal strings so that
//! nothing is lost to floating-point JSON readers.

use std::io::{Read, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebraic::{AlgebraicContext, AlgebraicInt, ContextOptions, IntPoly};
use crate::construction::TripleFamily;
use crate::error::{Error, Result};
use crate::planar::PlanePoint;

pub const SCHEMA: &str = "angleforge/1";

/// Digits after the decimal point in CSV renderings.
pub const CSV_DIGITS: usize = 20;

/// Arbitrary-precision integer written as a decimal string; plain JSON
/// integers are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecInt(pub BigInt);

impl Serialize for DecInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for DecInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            I(i64),
            U(u64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => BigInt::from_str(s.trim())
                .map(DecInt)
                .map_err(|e| serde::de::Error::custom(format!("bad integer {s:?}: {e}"))),
            Raw::I(i) => Ok(DecInt(BigInt::from(i))),
            Raw::U(u) => Ok(DecInt(BigInt::from(u))),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<DecInt> {
    v.iter().cloned().map(DecInt).collect()
}

fn big(v: &[DecInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

/// Parses `p/q`, an integer, or a plain decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.contains('/') {
        let r = BigRational::from_str(s).map_err(|_| bad())?;
        return Ok(r);
    }
    match s.split_once('.') {
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((int, frac)) => {
            if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.starts_with('-');
            let int_part = match int.trim_start_matches(['-', '+']) {
                "" => BigInt::zero(),
                digits => BigInt::from_str(digits).map_err(|_| bad())?,
            };
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
            let mag = BigRational::new(int_part * &scale + frac_part, scale);
            Ok(if negative { -mag } else { mag })
        }
    }
}

/// Parses a comma-separated integer list.
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|x| {
            BigInt::from_str(x.trim())
                .map_err(|_| Error::Parse(format!("not an integer: {x:?} in {s:?}")))
        })
        .collect()
}

/// Truncated decimal expansion of `r` with `digits` fractional digits.
pub fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r.abs() * BigRational::from_integer(scale.clone())).to_integer();
    let (int, frac) = scaled.div_rem(&scale);
    let sign = if r.is_negative() && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    /// Coefficients from the constant term up to the leading 1.
    pub minpoly: Vec<DecInt>,
    pub b: DecInt,
    pub iso: [String; 2],
}

impl ContextJson {
    pub fn from_context(ctx: &AlgebraicContext) -> Self {
        let (lo, hi) = ctx.iso();
        ContextJson {
            schema: None,
            minpoly: ints(ctx.minpoly().coeffs()),
            b: DecInt(ctx.b().clone()),
            iso: [lo.to_string(), hi.to_string()],
        }
    }

    pub fn to_context(&self, opts: ContextOptions) -> Result<AlgebraicContext> {
        let q = IntPoly::new(big(&self.minpoly))?;
        AlgebraicContext::with_options(
            q,
            self.b.0.clone(),
            parse_rational(&self.iso[0])?,
            parse_rational(&self.iso[1])?,
            opts,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub re: Vec<DecInt>,
    pub im: Vec<DecInt>,
}

impl PointJson {
    pub fn from_point(p: &PlanePoint) -> Self {
        PointJson {
            re: ints(p.re.coeffs()),
            im: ints(p.im.coeffs()),
        }
    }

    pub fn to_point(&self, ctx: &AlgebraicContext) -> Result<PlanePoint> {
        Ok(PlanePoint::new(
            ctx.element(big(&self.re))?,
            ctx.element(big(&self.im))?,
        ))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointSetFile {
    pub schema: String,
    pub context: ContextJson,
    pub points: Vec<PointJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriplesFile {
    pub schema: String,
    pub t: DecInt,
    pub count: DecInt,
    /// `[apex, p1, p2]` indices into the companion point list.
    pub triples: Vec<[u32; 3]>,
}

fn check_schema(found: &str) -> Result<()> {
    if found != SCHEMA {
        return Err(Error::Parse(format!(
            "unsupported schema {found:?}, expected {SCHEMA:?}"
        )));
    }
    Ok(())
}

pub fn write_context(ctx: &AlgebraicContext, mut out: impl Write) -> Result<()> {
    let mut json = ContextJson::from_context(ctx);
    json.schema = Some(SCHEMA.to_string());
    serde_json::to_writer_pretty(&mut out, &json)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_context(input: impl Read, opts: ContextOptions) -> Result<AlgebraicContext> {
    let json: ContextJson = serde_json::from_reader(input)?;
    if let Some(s) = &json.schema {
        check_schema(s)?;
    }
    json.to_context(opts)
}

pub fn write_point_set(
    ctx: &AlgebraicContext,
    points: &[PlanePoint],
    mut out: impl Write,
) -> Result<()> {
    let file = PointSetFile {
        schema: SCHEMA.to_string(),
        context: ContextJson::from_context(ctx),
        points: points.iter().map(PointJson::from_point).collect(),
    };
    serde_json::to_writer_pretty(&mut out, &file)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_point_set(
    input: impl Read,
    opts: ContextOptions,
) -> Result<(AlgebraicContext, Vec<PlanePoint>)> {
    let file: PointSetFile = serde_json::from_reader(input)?;
    check_schema(&file.schema)?;
    let ctx = file.context.to_context(opts)?;
    let points = file
        .points
        .iter()
        .map(|p| p.to_point(&ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok((ctx, points))
}

pub fn write_triples(family: &TripleFamily, mut out: impl Write) -> Result<()> {
    let file = TriplesFile {
        schema: SCHEMA.to_string(),
        t: DecInt(BigInt::from(family.t)),
        count: DecInt(BigInt::from(family.len())),
        triples: family.triples.clone(),
    };
    serde_json::to_writer(&mut out, &file)?;
    writeln!(out)?;
    Ok(())
}

pub fn read_triples(input: impl Read) -> Result<TriplesFile> {
    let file: TriplesFile = serde_json::from_reader(input)?;
    check_schema(&file.schema)?;
    Ok(file)
}

/// Two columns `x,y` with decimal approximations of each coordinate.
pub fn write_points_csv(
    ctx: &AlgebraicContext,
    points: &[PlanePoint],
    mut out: impl Write,
) -> Result<()> {
    writeln!(out, "x,y")?;
    let fmt = |x: &AlgebraicInt| rational_to_decimal(&ctx.approx(x), CSV_DIGITS);
    for p in points {
        writeln!(out, "{},{}", fmt(&p.re), fmt(&p.im))?;
    }
    Ok(())
}

/// Compact point syntax `re0,re1,...;im0,im1,...`, or a JSON point object.
pub fn parse_point(ctx: &AlgebraicContext, s: &str) -> Result<PlanePoint> {
    let s = s.trim();
    if s.starts_with('{') {
        let p: PointJson = serde_json::from_str(s)?;
        return p.to_point(ctx);
    }
    let (re, im) = s
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("point {s:?} is not of the form re;im")))?;
    Ok(PlanePoint::new(
        ctx.element(parse_int_list(re)?)?,
        ctx.element(parse_int_list(im)?)?,
    ))
}
