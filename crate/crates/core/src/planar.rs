//! The plane as complex numbers over Z[alpha], with exact predicates.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigUint;

use crate::algebraic::{AlgebraicContext, AlgebraicInt, Sign};
use crate::error::{Error, Result};

/// `re + i im` with both parts in Z[alpha]. Used for points and vectors
/// alike. The derived order is lexicographic on (re, im) coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint {
    pub re: AlgebraicInt,
    pub im: AlgebraicInt,
}

pub type PlaneVector = PlanePoint;

impl PlanePoint {
    pub fn new(re: AlgebraicInt, im: AlgebraicInt) -> Self {
        assert_eq!(
            re.degree(),
            im.degree(),
            "real and imaginary parts differ in degree"
        );
        PlanePoint { re, im }
    }

    pub fn zero(degree: usize) -> Self {
        PlanePoint {
            re: AlgebraicInt::zero(degree),
            im: AlgebraicInt::zero(degree),
        }
    }

    /// Shorthand for tests and fixtures: coordinate slices of equal length.
    pub fn from_i64s(re: &[i64], im: &[i64]) -> Self {
        Self::new(AlgebraicInt::from_i64s(re), AlgebraicInt::from_i64s(im))
    }

    pub fn degree(&self) -> usize {
        self.re.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `max(|re|_inf, |im|_inf)`; the point lies in G_t iff this is at most `t`.
    pub fn g_norm(&self) -> BigUint {
        self.re.infinity_norm().max(self.im.infinity_norm())
    }

    pub fn in_grid(&self, t: &BigUint) -> bool {
        self.re.in_box(t) && self.im.in_box(t)
    }

    pub fn conj(&self) -> Self {
        PlanePoint {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Real scalar multiple `lambda * self`.
    pub fn scale(&self, ctx: &AlgebraicContext, lambda: &AlgebraicInt) -> Self {
        PlanePoint {
            re: ctx.mul(lambda, &self.re),
            im: ctx.mul(lambda, &self.im),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(PlanePoint {
            re: self.re.try_add(&other.re)?,
            im: self.im.try_add(&other.im)?,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(PlanePoint {
            re: self.re.try_sub(&other.re)?,
            im: self.im.try_sub(&other.im)?,
        })
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}

impl Add for &PlanePoint {
    type Output = PlanePoint;
    fn add(self, rhs: &PlanePoint) -> PlanePoint {
        PlanePoint {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &PlanePoint {
    type Output = PlanePoint;
    fn sub(self, rhs: &PlanePoint) -> PlanePoint {
        PlanePoint {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Neg for &PlanePoint {
    type Output = PlanePoint;
    fn neg(self) -> PlanePoint {
        PlanePoint {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

/// Exact complex product.
pub fn c_mul(ctx: &AlgebraicContext, u: &PlanePoint, v: &PlanePoint) -> PlanePoint {
    PlanePoint {
        re: ctx.mul(&u.re, &v.re) - ctx.mul(&u.im, &v.im),
        im: ctx.mul(&u.re, &v.im) + ctx.mul(&u.im, &v.re),
    }
}

pub fn try_c_mul(ctx: &AlgebraicContext, u: &PlanePoint, v: &PlanePoint) -> Result<PlanePoint> {
    for x in [&u.re, &u.im, &v.re, &v.im] {
        ctx.check(x)?;
    }
    Ok(c_mul(ctx, u, v))
}

/// `b + i alpha`, the vector with argument theta.
pub fn theta_vector(ctx: &AlgebraicContext) -> PlanePoint {
    PlanePoint {
        re: ctx.integer(ctx.b().clone()),
        im: ctx.alpha().clone(),
    }
}

/// `v * (b + i alpha)`: `v` rotated counterclockwise by theta and scaled.
pub fn rotate_theta(ctx: &AlgebraicContext, v: &PlanePoint) -> Result<PlanePoint> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(rotate_theta_unchecked(ctx, v))
}

pub(crate) fn rotate_theta_unchecked(ctx: &AlgebraicContext, v: &PlanePoint) -> PlanePoint {
    let b = ctx.b();
    PlanePoint {
        re: v.re.scale(b) - ctx.mul_alpha(&v.im),
        im: ctx.mul_alpha(&v.re) + v.im.scale(b),
    }
}

/// `Im(conj(u) v) = u_re v_im - u_im v_re`.
pub fn cross(ctx: &AlgebraicContext, u: &PlanePoint, v: &PlanePoint) -> AlgebraicInt {
    ctx.mul(&u.re, &v.im) - ctx.mul(&u.im, &v.re)
}

/// `Re(conj(u) v) = u_re v_re + u_im v_im`.
pub fn dot(ctx: &AlgebraicContext, u: &PlanePoint, v: &PlanePoint) -> AlgebraicInt {
    ctx.mul(&u.re, &v.re) + ctx.mul(&u.im, &v.im)
}

/// Outcome of the theta-angle test at an apex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AngleMatch {
    /// The second ray is the first rotated counterclockwise by theta.
    ThetaPlus,
    /// The second ray is the first rotated clockwise by theta.
    ThetaMinus,
    None,
}

impl fmt::Display for AngleMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AngleMatch::ThetaPlus => "theta_plus",
            AngleMatch::ThetaMinus => "theta_minus",
            AngleMatch::None => "none",
        })
    }
}

/// Angle test between nonzero vectors `u` and `w`.
///
/// With `Z = w conj(u) = X + iY`, `arg Z = arg w - arg u`, and `b + i alpha`
/// has argument theta with alpha > 0. Hence `w` is `u` turned by `+theta`
/// iff `X alpha = Y b` with `Y > 0`, and by `-theta` iff `X alpha = -Y b`
/// with `Y < 0`.
pub fn angle_between(ctx: &AlgebraicContext, u: &PlaneVector, w: &PlaneVector) -> AngleMatch {
    let x = dot(ctx, u, w);
    let y = cross(ctx, u, w);
    if y.is_zero() {
        return AngleMatch::None;
    }
    let x_alpha = ctx.mul_alpha(&x);
    let y_b = y.scale(ctx.b());
    match ctx.sign(&y) {
        Sign::Positive if (&x_alpha - &y_b).is_zero() => AngleMatch::ThetaPlus,
        Sign::Negative if (&x_alpha + &y_b).is_zero() => AngleMatch::ThetaMinus,
        _ => AngleMatch::None,
    }
}

/// Whether the undirected angle at `p` between rays `pq` and `pr` is theta,
/// and with which orientation.
pub fn angle_at(
    ctx: &AlgebraicContext,
    p: &PlanePoint,
    q: &PlanePoint,
    r: &PlanePoint,
) -> Result<AngleMatch> {
    if p == q || p == r || q == r {
        return Err(Error::CoincidentPoints);
    }
    let u = q.try_sub(p)?;
    let w = r.try_sub(p)?;
    ctx.check(&u.re)?;
    Ok(angle_between(ctx, &u, &w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::IntPoly;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pi4() -> AlgebraicContext {
        AlgebraicContext::new(
            IntPoly::from_i64s(&[-1, 1]).unwrap(),
            BigInt::from(1),
            rat(1, 2),
            rat(3, 2),
        )
        .unwrap()
    }

    fn sqrt2() -> AlgebraicContext {
        AlgebraicContext::new(
            IntPoly::from_i64s(&[-2, 0, 1]).unwrap(),
            BigInt::from(1),
            rat(1, 1),
            rat(2, 1),
        )
        .unwrap()
    }

    fn p1(re: i64, im: i64) -> PlanePoint {
        PlanePoint::from_i64s(&[re], &[im])
    }

    fn p2(re: [i64; 2], im: [i64; 2]) -> PlanePoint {
        PlanePoint::from_i64s(&re, &im)
    }

    #[test]
    fn complex_arithmetic() {
        let c = pi4();
        assert_eq!(&p1(1, 0) + &p1(0, 1), p1(1, 1));
        assert!((&p1(4, -2) - &p1(4, -2)).is_zero());
        assert_eq!(p1(3, 2).conj(), p1(3, -2));
        assert_eq!(c_mul(&c, &p1(1, 1), &p1(1, 1)), p1(0, 2));
        assert_eq!(c_mul(&c, &p1(1, 1), &p1(1, 0)), p1(1, 1));
        let s = sqrt2();
        assert_eq!(
            c_mul(&s, &p2([0, 1], [1, 0]), &p2([0, 1], [-1, 0])),
            p2([3, 0], [0, 0])
        );
    }

    #[test]
    fn rotation_by_theta() {
        let c = pi4();
        assert_eq!(rotate_theta(&c, &p1(1, 0)).unwrap(), p1(1, 1));
        assert_eq!(rotate_theta(&c, &p1(0, 1)).unwrap(), p1(-1, 1));
        assert!(matches!(
            rotate_theta(&c, &p1(0, 0)),
            Err(Error::ZeroVector)
        ));
        let s = sqrt2();
        assert_eq!(
            rotate_theta(&s, &p2([1, 0], [0, 0])).unwrap(),
            p2([1, 0], [0, 1])
        );
        let v = p2([2, -1], [3, 5]);
        assert_eq!(
            rotate_theta(&s, &v).unwrap(),
            c_mul(&s, &v, &theta_vector(&s))
        );
    }

    #[test]
    fn cross_and_dot() {
        let c = pi4();
        assert_eq!(
            cross(&c, &p1(1, 0), &p1(0, 1)),
            AlgebraicInt::from_i64s(&[1])
        );
        assert!(cross(&c, &p1(1, 1), &p1(2, 2)).is_zero());
        assert_eq!(
            dot(&c, &p1(1, 0), &p1(-1, 0)),
            AlgebraicInt::from_i64s(&[-1])
        );
    }

    #[test]
    fn angle_examples_pi4() {
        let c = pi4();
        let o = p1(0, 0);
        assert_eq!(
            angle_at(&c, &o, &p1(1, 0), &p1(1, 1)).unwrap(),
            AngleMatch::ThetaPlus
        );
        assert_eq!(
            angle_at(&c, &o, &p1(1, 1), &p1(1, 0)).unwrap(),
            AngleMatch::ThetaMinus
        );
        assert_eq!(
            angle_at(&c, &o, &p1(1, 0), &p1(0, 1)).unwrap(),
            AngleMatch::None
        );
        // 135 degrees is not 45.
        assert_eq!(
            angle_at(&c, &o, &p1(1, 0), &p1(-1, 1)).unwrap(),
            AngleMatch::None
        );
        assert!(matches!(
            angle_at(&c, &o, &o, &p1(1, 1)),
            Err(Error::CoincidentPoints)
        ));
    }

    #[test]
    fn angle_example_sqrt2() {
        let s = sqrt2();
        let o = PlanePoint::zero(2);
        let q = p2([1, 0], [0, 0]);
        let r = p2([1, 0], [0, 1]);
        assert_eq!(angle_at(&s, &o, &q, &r).unwrap(), AngleMatch::ThetaPlus);
        assert_eq!(angle_at(&s, &o, &r, &q).unwrap(), AngleMatch::ThetaMinus);
        // Rotating by -theta gives 1 - i sqrt2, not theta_plus.
        assert_eq!(
            angle_at(&s, &o, &q, &p2([1, 0], [0, -1])).unwrap(),
            AngleMatch::ThetaMinus
        );
    }

    #[test]
    fn right_angle_mode() {
        use crate::algebraic::ContextOptions;
        let c = AlgebraicContext::with_options(
            IntPoly::from_i64s(&[-1, 1]).unwrap(),
            BigInt::from(0),
            rat(1, 2),
            rat(3, 2),
            ContextOptions {
                allow_right_angle: true,
            },
        )
        .unwrap();
        let o = p1(0, 0);
        assert_eq!(
            angle_at(&c, &o, &p1(1, 0), &p1(0, 3)).unwrap(),
            AngleMatch::ThetaPlus
        );
        assert_eq!(
            angle_at(&c, &o, &p1(0, 3), &p1(1, 0)).unwrap(),
            AngleMatch::ThetaMinus
        );
        assert_eq!(
            angle_at(&c, &o, &p1(1, 0), &p1(1, 1)).unwrap(),
            AngleMatch::None
        );
    }

    #[test]
    fn obtuse_angle() {
        // tan(theta) = -1: theta = 3pi/4 with b = -1, alpha = 1.
        let c = AlgebraicContext::new(
            IntPoly::from_i64s(&[-1, 1]).unwrap(),
            BigInt::from(-1),
            rat(1, 2),
            rat(3, 2),
        )
        .unwrap();
        let o = p1(0, 0);
        assert_eq!(
            angle_at(&c, &o, &p1(1, 0), &p1(-1, 1)).unwrap(),
            AngleMatch::ThetaPlus
        );
        assert_eq!(
            angle_at(&c, &o, &p1(1, 0), &p1(1, 1)).unwrap(),
            AngleMatch::None
        );
    }
}
