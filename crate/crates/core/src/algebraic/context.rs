use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraicInt, IntPoly, Sign};
use crate::error::{Error, Result};

/// Number of bisection steps applied to the isolating interval when the
/// context is built. Signs that the cached enclosure cannot settle are
/// refined further on a local copy.
const CACHED_BISECTIONS: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ContextOptions {
    /// Accept `b = 0`, i.e. theta = pi/2.
    pub allow_right_angle: bool,
}

/// Rational bracket `[lo_num / den, hi_num / den]` around alpha.
#[derive(Clone, Debug)]
struct Bracket {
    lo_num: BigInt,
    hi_num: BigInt,
    den: BigInt,
    lo_sign: Sign,
    exact: bool,
}

impl Bracket {
    fn new(q: &IntPoly, lo: &BigRational, hi: &BigRational) -> Bracket {
        let den = lo.denom().lcm(hi.denom());
        let lo_num = lo.numer() * (&den / lo.denom());
        let hi_num = hi.numer() * (&den / hi.denom());
        let lo_sign = q.sign_at(lo);
        let mut b = Bracket {
            lo_num,
            hi_num,
            den,
            lo_sign,
            exact: false,
        };
        if lo_sign == Sign::Zero {
            b.hi_num = b.lo_num.clone();
            b.exact = true;
        } else if q.sign_at(hi) == Sign::Zero {
            b.lo_num = b.hi_num.clone();
            b.exact = true;
        }
        b
    }

    fn bisect(&mut self, q: &IntPoly) {
        if self.exact {
            return;
        }
        let mid = &self.lo_num + &self.hi_num;
        self.lo_num <<= 1u32;
        self.hi_num <<= 1u32;
        self.den <<= 1u32;
        match q.sign_at_scaled(&mid, &self.den) {
            Sign::Zero => {
                self.lo_num = mid.clone();
                self.hi_num = mid;
                self.exact = true;
            }
            s if s == self.lo_sign => self.lo_num = mid,
            _ => self.hi_num = mid,
        }
    }

    fn midpoint(&self) -> BigRational {
        BigRational::new(&self.lo_num + &self.hi_num, &self.den << 1u32)
    }
}

/// Powers of the bracket endpoints over a common denominator:
/// `lo_terms[j] = lo_num^j den^(d-1-j)`, likewise for `hi_terms`.
#[derive(Clone, Debug)]
struct Enclosure {
    lo_terms: Vec<BigInt>,
    hi_terms: Vec<BigInt>,
    exact: bool,
}

impl Enclosure {
    fn new(b: &Bracket, d: usize) -> Enclosure {
        let terms = |x: &BigInt| {
            let mut out = vec![BigInt::one(); d];
            let mut p = BigInt::one();
            for term in out.iter_mut() {
                *term = p.clone();
                p *= x;
            }
            let mut q = BigInt::one();
            for term in out.iter_mut().rev() {
                *term *= &q;
                q *= &b.den;
            }
            out
        };
        Enclosure {
            lo_terms: terms(&b.lo_num),
            hi_terms: terms(&b.hi_num),
            exact: b.exact,
        }
    }

    /// Interval evaluation of `sum a_j alpha^j`. The bracket is positive, so
    /// each `alpha^j` is increasing in alpha and the bounds pick endpoints
    /// by the sign of `a_j`.
    fn decide(&self, x: &AlgebraicInt) -> Option<Sign> {
        let mut lower = BigInt::zero();
        let mut upper = BigInt::zero();
        for ((a, lo), hi) in x.coeffs().iter().zip(&self.lo_terms).zip(&self.hi_terms) {
            if a.is_zero() {
                continue;
            }
            if a.is_positive() {
                lower += a * lo;
                upper += a * hi;
            } else {
                lower += a * hi;
                upper += a * lo;
            }
        }
        if lower.is_positive() {
            Some(Sign::Positive)
        } else if upper.is_negative() {
            Some(Sign::Negative)
        } else if self.exact {
            Some(Sign::of(&lower))
        } else {
            None
        }
    }
}

/// Arithmetic universe of the angle: alpha with its monic minimal
/// polynomial, the integer `b` with `tan(theta) = alpha / b`, an isolating
/// interval for alpha, and the growth constants
/// `C1 = 1 + max |c_j|`, `C2 = 2 d C1^(d-1)`, `C3 = (4|b| C2^2 + 3)^(2d)`.
///
/// Immutable after construction and shareable across threads.
#[derive(Clone, Debug)]
pub struct AlgebraicContext {
    minpoly: IntPoly,
    reduction: Vec<BigInt>,
    b: BigInt,
    iso_lo: BigRational,
    iso_hi: BigRational,
    c1: BigInt,
    c2: BigInt,
    c3: BigUint,
    alpha: AlgebraicInt,
    bracket: Bracket,
    enclosure: Enclosure,
}

impl AlgebraicContext {
    pub fn new(
        minpoly: IntPoly,
        b: BigInt,
        iso_lo: BigRational,
        iso_hi: BigRational,
    ) -> Result<Self> {
        Self::with_options(minpoly, b, iso_lo, iso_hi, ContextOptions::default())
    }

    pub fn with_options(
        minpoly: IntPoly,
        b: BigInt,
        iso_lo: BigRational,
        iso_hi: BigRational,
        opts: ContextOptions,
    ) -> Result<Self> {
        if !minpoly.is_monic() {
            return Err(Error::NotMonic(minpoly.leading().clone()));
        }
        if iso_lo >= iso_hi {
            return Err(Error::EmptyInterval {
                lo: iso_lo,
                hi: iso_hi,
            });
        }
        if !iso_lo.is_positive() {
            return Err(Error::NonPositiveInterval {
                lo: iso_lo,
                hi: iso_hi,
            });
        }
        let s_lo = minpoly.sign_at(&iso_lo);
        let s_hi = minpoly.sign_at(&iso_hi);
        if s_lo == s_hi {
            return Err(Error::NoSignChange {
                lo: iso_lo,
                hi: iso_hi,
            });
        }
        if b.is_zero() && !opts.allow_right_angle {
            return Err(Error::RightAngleDisabled);
        }

        let d = minpoly.degree();
        if d >= 2 {
            match minpoly.integer_roots() {
                Some(roots) if !roots.is_empty() => log::warn!(
                    "minimal polynomial has integer roots {roots:?}; it is reducible and zero tests are unsound"
                ),
                None => log::debug!("constant term too large for the rational-root check"),
                _ => {}
            }
        }

        let reduction: Vec<BigInt> = minpoly.coeffs()[..d].iter().map(|c| -c).collect();
        let c1 = BigInt::one() + reduction.iter().map(|c| c.abs()).max().unwrap_or_default();
        let c2 = BigInt::from(2 * d) * num_traits::pow(c1.clone(), d - 1);
        let base = (BigInt::from(4) * b.abs() * &c2 * &c2 + 3u32)
            .to_biguint()
            .expect("positive");
        let c3 = num_traits::pow(base, 2 * d);

        let alpha = if d == 1 {
            AlgebraicInt::from_coeffs(vec![reduction[0].clone()])
        } else {
            let mut a = AlgebraicInt::zero(d).into_coeffs();
            a[1] = BigInt::one();
            AlgebraicInt::from_coeffs(a)
        };

        let mut bracket = Bracket::new(&minpoly, &iso_lo, &iso_hi);
        if d >= 2 {
            for _ in 0..CACHED_BISECTIONS {
                bracket.bisect(&minpoly);
            }
        }
        let enclosure = Enclosure::new(&bracket, d);

        Ok(AlgebraicContext {
            minpoly,
            reduction,
            b,
            iso_lo,
            iso_hi,
            c1,
            c2,
            c3,
            alpha,
            bracket,
            enclosure,
        })
    }

    pub fn degree(&self) -> usize {
        self.reduction.len()
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    /// `c_0 .. c_(d-1)` with `alpha^d = sum c_j alpha^j`.
    pub fn reduction(&self) -> &[BigInt] {
        &self.reduction
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn iso(&self) -> (&BigRational, &BigRational) {
        (&self.iso_lo, &self.iso_hi)
    }

    pub fn c1(&self) -> &BigInt {
        &self.c1
    }

    pub fn c2(&self) -> &BigInt {
        &self.c2
    }

    pub fn c3(&self) -> &BigUint {
        &self.c3
    }

    /// Alpha as an element: `(0, 1, 0, ...)`, or the integer `c_0` when d = 1.
    pub fn alpha(&self) -> &AlgebraicInt {
        &self.alpha
    }

    pub fn zero(&self) -> AlgebraicInt {
        AlgebraicInt::zero(self.degree())
    }

    pub fn one(&self) -> AlgebraicInt {
        self.integer(BigInt::one())
    }

    pub fn integer(&self, c: BigInt) -> AlgebraicInt {
        AlgebraicInt::integer(self.degree(), c)
    }

    pub fn element(&self, coeffs: Vec<BigInt>) -> Result<AlgebraicInt> {
        if coeffs.len() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: coeffs.len(),
            });
        }
        Ok(AlgebraicInt::from_coeffs(coeffs))
    }

    pub fn check(&self, x: &AlgebraicInt) -> Result<()> {
        if x.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: x.degree(),
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, x: &AlgebraicInt, y: &AlgebraicInt) -> Result<AlgebraicInt> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Product reduced to the power basis with `alpha^d = sum c_j alpha^j`.
    ///
    /// Panics if either operand has the wrong degree.
    pub fn mul(&self, x: &AlgebraicInt, y: &AlgebraicInt) -> AlgebraicInt {
        let d = self.degree();
        assert!(
            x.degree() == d && y.degree() == d,
            "degree mismatch in Z[alpha] product"
        );
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in x.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs().iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        for k in (d..2 * d - 1).rev() {
            let top = std::mem::take(&mut prod[k]);
            if top.is_zero() {
                continue;
            }
            for (j, c) in self.reduction.iter().enumerate() {
                if !c.is_zero() {
                    prod[k - d + j] += &top * c;
                }
            }
        }
        prod.truncate(d);
        AlgebraicInt::from_coeffs(prod)
    }

    /// `alpha * x` by one shift and one reduction step.
    pub fn mul_alpha(&self, x: &AlgebraicInt) -> AlgebraicInt {
        let d = self.degree();
        assert_eq!(x.degree(), d, "degree mismatch in Z[alpha] product");
        let a = x.coeffs();
        if d == 1 {
            return AlgebraicInt::from_coeffs(vec![&a[0] * &self.reduction[0]]);
        }
        let top = &a[d - 1];
        let mut out = Vec::with_capacity(d);
        for j in 0..d {
            let mut c = if j == 0 {
                BigInt::zero()
            } else {
                a[j - 1].clone()
            };
            if !top.is_zero() && !self.reduction[j].is_zero() {
                c += top * &self.reduction[j];
            }
            out.push(c);
        }
        AlgebraicInt::from_coeffs(out)
    }

    /// Exact sign of the real number `x`.
    ///
    /// Zero is decided from the coordinates. Otherwise the value is bounded
    /// over a rational bracket of alpha, and the bracket is bisected until
    /// the bounds exclude zero.
    pub fn sign(&self, x: &AlgebraicInt) -> Sign {
        debug_assert_eq!(x.degree(), self.degree());
        if x.is_zero() {
            return Sign::Zero;
        }
        if self.degree() == 1 {
            return Sign::of(&x.coeffs()[0]);
        }
        if let Some(s) = self.enclosure.decide(x) {
            return s;
        }
        let mut bracket = self.bracket.clone();
        loop {
            bracket.bisect(&self.minpoly);
            if let Some(s) = Enclosure::new(&bracket, self.degree()).decide(x) {
                return s;
            }
        }
    }

    /// Rational approximation of alpha, within `2^-64` of the isolating
    /// interval's width.
    pub fn alpha_approx(&self) -> BigRational {
        self.bracket.midpoint()
    }

    /// Rational approximation of the real value of `x`.
    pub fn approx(&self, x: &AlgebraicInt) -> BigRational {
        let a = self.alpha_approx();
        let mut acc = BigRational::zero();
        let mut p = BigRational::one();
        if self.degree() == 1 {
            return BigRational::from_integer(x.coeffs()[0].clone());
        }
        for c in x.coeffs() {
            acc += &p * BigRational::from_integer(c.clone());
            p *= &a;
        }
        acc
    }
}
