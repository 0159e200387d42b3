use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Sign;
use crate::error::{Error, Result};

/// Integer polynomial with coefficients listed from the constant term up to
/// the (nonzero) leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::DegreeTooSmall);
        }
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(IntPoly { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[self.degree()]
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Sign of `p(num / den)` for `den > 0`, computed exactly as the sign of
    /// the homogenized value `sum c_j num^j den^(deg - j)`.
    pub fn sign_at_scaled(&self, num: &BigInt, den: &BigInt) -> Sign {
        debug_assert!(den.is_positive());
        let mut acc = self.leading().clone();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev().skip(1) {
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
        Sign::of(&acc)
    }

    pub fn sign_at(&self, x: &BigRational) -> Sign {
        // BigRational keeps a positive denominator.
        self.sign_at_scaled(x.numer(), x.denom())
    }

    /// Integer roots of a monic polynomial, found by the rational root
    /// theorem. Returns `None` when the constant term is too large to
    /// enumerate its divisors cheaply.
    pub(crate) fn integer_roots(&self) -> Option<Vec<BigInt>> {
        debug_assert!(self.is_monic());
        let c0 = self.coeffs[0].abs();
        if c0.is_zero() {
            return Some(vec![BigInt::zero()]);
        }
        let limit = BigInt::from(1_000_000_000_000u64);
        if c0 > limit {
            return None;
        }
        let mut roots = Vec::new();
        let mut check = |r: BigInt| {
            for cand in [r.clone(), -r] {
                if self.sign_at_scaled(&cand, &BigInt::one()) == Sign::Zero
                    && !roots.contains(&cand)
                {
                    roots.push(cand);
                }
            }
        };
        let mut i = BigInt::one();
        while &i * &i <= c0 {
            if c0.is_multiple_of(&i) {
                check(i.clone());
                check(&c0 / &i);
            }
            i += 1;
        }
        roots.sort();
        Some(roots)
    }
}

/// Result of rewriting a tangent polynomial into monic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedTangent {
    /// Monic minimal polynomial of alpha.
    pub minpoly: IntPoly,
    /// Integer with tan(theta) = alpha / b.
    pub b: BigInt,
    /// Interval isolating alpha, strictly positive.
    pub iso_lo: BigRational,
    pub iso_hi: BigRational,
}

/// Rewrites `tan(theta)`, given as the root of `p` isolated by `[lo, hi]`,
/// as `alpha / b` with `alpha` a positive real algebraic integer.
///
/// With `L` the leading coefficient of `p`, `s = +-|L|` is chosen with the
/// sign of the root, `alpha = s * tan(theta)` and `b = s`. The monic
/// polynomial of `alpha` is `q(y) = (s^d / L) p(y / s)`.
pub fn normalize_tangent(
    p: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<NormalizedTangent> {
    if lo >= hi {
        return Err(Error::EmptyInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    let d = p.degree();
    let lead = p.leading().clone();

    if d == 1 {
        // p1 x + p0 = 0
        let root = BigRational::new(-p.coeffs[0].clone(), lead.clone());
        if &root < lo || &root > hi {
            return Err(Error::NoSignChange {
                lo: lo.clone(),
                hi: hi.clone(),
            });
        }
        if root.is_zero() {
            return Err(Error::ZeroTangent);
        }
        let s = if root.is_positive() {
            lead.abs()
        } else {
            -lead.abs()
        };
        let alpha = (&root * BigRational::from_integer(s.clone())).to_integer();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let alpha_r = BigRational::from_integer(alpha.clone());
        return Ok(NormalizedTangent {
            minpoly: IntPoly::new(vec![-alpha, BigInt::one()])?,
            b: s,
            iso_lo: &alpha_r - &half,
            iso_hi: alpha_r + half,
        });
    }

    let s_lo = p.sign_at(lo);
    let s_hi = p.sign_at(hi);
    if s_lo == Sign::Zero || s_hi == Sign::Zero {
        let r = if s_lo == Sign::Zero { lo } else { hi };
        return Err(Error::RationalRoot(r.clone()));
    }
    if s_lo == s_hi {
        return Err(Error::NoSignChange {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }

    // Move the bracket to one side of zero.
    let zero = BigRational::zero();
    let (mut a, mut z) = (lo.clone(), hi.clone());
    if a < zero && z > zero {
        match p.sign_at(&zero) {
            Sign::Zero => return Err(Error::ZeroTangent),
            s0 if s0 != s_lo => z = zero.clone(),
            _ => a = zero.clone(),
        }
    }
    let positive = a >= zero;
    let s = if positive { lead.abs() } else { -lead.abs() };

    let unit = &s / &lead; // +-1
    let mut q = Vec::with_capacity(d + 1);
    let mut s_pow = BigInt::one();
    let mut low_terms: Vec<BigInt> = Vec::with_capacity(d);
    // q_j = p_j s^(d-1-j) (s / L), built from the top down.
    for c in p.coeffs[..d].iter().rev() {
        low_terms.push(c * &s_pow * &unit);
        s_pow *= &s;
    }
    q.extend(low_terms.into_iter().rev());
    q.push(BigInt::one());
    let minpoly = IntPoly::new(q)?;

    let s_r = BigRational::from_integer(s.clone());
    let (mut iso_lo, mut iso_hi) = {
        let x = &a * &s_r;
        let y = &z * &s_r;
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    // Bisect away from a zero endpoint; alpha itself is nonzero.
    let lo_sign = minpoly.sign_at(&iso_lo);
    while iso_lo.is_zero() {
        let mid = (&iso_lo + &iso_hi) / BigRational::from_integer(BigInt::from(2));
        match minpoly.sign_at(&mid) {
            Sign::Zero => return Err(Error::RationalRoot(mid / &s_r)),
            sm if sm == lo_sign => iso_lo = mid,
            _ => iso_hi = mid,
        }
    }

    Ok(NormalizedTangent {
        minpoly,
        b: s,
        iso_lo,
        iso_hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rejects_degenerate_polynomials() {
        assert!(matches!(
            IntPoly::from_i64s(&[3]),
            Err(Error::DegreeTooSmall)
        ));
        assert!(matches!(
            IntPoly::from_i64s(&[1, 2, 0]),
            Err(Error::ZeroLeadingCoefficient)
        ));
    }

    #[test]
    fn sign_at_rational_points() {
        let p = IntPoly::from_i64s(&[-2, 0, 1]).unwrap();
        assert_eq!(p.sign_at(&rat(7, 5)), Sign::Negative); // 1.96 < 2
        assert_eq!(p.sign_at(&rat(3, 2)), Sign::Positive);
        assert_eq!(p.sign_at(&rat(-3, 2)), Sign::Positive);
        assert_eq!(
            IntPoly::from_i64s(&[-4, 0, 1]).unwrap().sign_at(&rat(2, 1)),
            Sign::Zero
        );
    }

    #[test]
    fn normalize_inverse_sqrt2() {
        let p = IntPoly::from_i64s(&[-1, 0, 2]).unwrap();
        let n = normalize_tangent(&p, &rat(7, 10), &rat(8, 10)).unwrap();
        assert_eq!(n.minpoly, IntPoly::from_i64s(&[-2, 0, 1]).unwrap());
        assert_eq!(n.b, BigInt::from(2));
        assert_eq!(n.iso_lo, rat(7, 5));
        assert_eq!(n.iso_hi, rat(8, 5));
    }

    #[test]
    fn normalize_monic_linear_is_fixed_point() {
        let p = IntPoly::from_i64s(&[-3, 1]).unwrap();
        let n = normalize_tangent(&p, &rat(2, 1), &rat(4, 1)).unwrap();
        assert_eq!(n.minpoly, p);
        assert_eq!(n.b, BigInt::from(1));
        assert!(n.iso_lo < rat(3, 1) && rat(3, 1) < n.iso_hi);
    }

    #[test]
    fn normalize_pi_over_six() {
        let p = IntPoly::from_i64s(&[-1, 0, 3]).unwrap();
        let n = normalize_tangent(&p, &rat(1, 2), &rat(3, 5)).unwrap();
        assert_eq!(n.minpoly, IntPoly::from_i64s(&[-3, 0, 1]).unwrap());
        assert_eq!(n.b, BigInt::from(3));
    }

    #[test]
    fn normalize_obtuse_gives_negative_b() {
        // tan(theta) = -sqrt(2)/2 from 2x^2 - 1 on [-1, 0) side.
        let p = IntPoly::from_i64s(&[-1, 0, 2]).unwrap();
        let n = normalize_tangent(&p, &rat(-8, 10), &rat(-7, 10)).unwrap();
        assert_eq!(n.minpoly, IntPoly::from_i64s(&[-2, 0, 1]).unwrap());
        assert_eq!(n.b, BigInt::from(-2));
        assert!(n.iso_lo.is_positive());
    }

    #[test]
    fn normalize_negative_leading_coefficient() {
        // -2x^2 + 1 has the same roots as 2x^2 - 1.
        let p = IntPoly::from_i64s(&[1, 0, -2]).unwrap();
        let n = normalize_tangent(&p, &rat(7, 10), &rat(8, 10)).unwrap();
        assert_eq!(n.minpoly, IntPoly::from_i64s(&[-2, 0, 1]).unwrap());
        assert_eq!(n.b, BigInt::from(2));
    }

    #[test]
    fn normalize_interval_straddling_zero() {
        // x^2 + x - 1, root (sqrt5 - 1)/2 ~ 0.618; other root ~ -1.618.
        let p = IntPoly::from_i64s(&[-1, 1, 1]).unwrap();
        let n = normalize_tangent(&p, &rat(-1, 2), &rat(1, 1)).unwrap();
        assert_eq!(n.b, BigInt::from(1));
        assert!(n.iso_lo.is_positive());
        assert_ne!(n.minpoly.sign_at(&n.iso_lo), n.minpoly.sign_at(&n.iso_hi));
    }

    #[test]
    fn normalize_errors() {
        let p = IntPoly::from_i64s(&[-1, 0, 2]).unwrap();
        assert!(matches!(
            normalize_tangent(&p, &rat(1, 1), &rat(2, 1)),
            Err(Error::NoSignChange { .. })
        ));
        assert!(matches!(
            normalize_tangent(&p, &rat(1, 1), &rat(1, 1)),
            Err(Error::EmptyInterval { .. })
        ));
        let x = IntPoly::from_i64s(&[0, 1]).unwrap();
        assert!(matches!(
            normalize_tangent(&x, &rat(-1, 1), &rat(1, 1)),
            Err(Error::ZeroTangent)
        ));
    }

    #[test]
    fn integer_roots_by_divisors() {
        let p = IntPoly::from_i64s(&[-6, 1, 1]).unwrap(); // (y+3)(y-2)
        assert_eq!(
            p.integer_roots().unwrap(),
            vec![BigInt::from(-3), BigInt::from(2)]
        );
        assert!(IntPoly::from_i64s(&[-2, 0, 1])
            .unwrap()
            .integer_roots()
            .unwrap()
            .is_empty());
    }
}
