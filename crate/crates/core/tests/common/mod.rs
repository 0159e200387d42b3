//! Reference implementations that share no code with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use angleforge::{AlgebraicContext, IntPoly};
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn ctx(q: &[i64], b: i64, lo: (i64, i64), hi: (i64, i64)) -> AlgebraicContext {
    AlgebraicContext::new(
        IntPoly::from_i64s(q).unwrap(),
        BigInt::from(b),
        BigRational::new(lo.0.into(), lo.1.into()),
        BigRational::new(hi.0.into(), hi.1.into()),
    )
    .unwrap()
}

/// theta = pi/4.
pub fn pi4() -> AlgebraicContext {
    ctx(&[-1, 1], 1, (1, 2), (3, 2))
}

/// theta = arctan sqrt 2.
pub fn sqrt2() -> AlgebraicContext {
    ctx(&[-2, 0, 1], 1, (1, 1), (2, 1))
}

/// theta = pi/6.
pub fn pi6() -> AlgebraicContext {
    ctx(&[-3, 0, 1], 3, (1, 1), (2, 1))
}

/// Sign of a + c sqrt(m) for m > 0 not a square, by squaring.
pub fn quadratic_sign(a: &BigInt, c: &BigInt, m: i64) -> i8 {
    let sa = sign(a);
    let sc = sign(c);
    if sa == sc || sc == 0 {
        return if sa != 0 { sa } else { sc };
    }
    if sa == 0 {
        return sc;
    }
    // Opposite signs: compare a^2 with m c^2.
    let lhs = a * a;
    let rhs = c * c * BigInt::from(m);
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sc,
        std::cmp::Ordering::Equal => 0,
    }
}

fn sign(x: &BigInt) -> i8 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Whether the undirected angle between integer vectors u and w is exactly
/// pi/4: positive dot product and 2 (u.w)^2 = |u|^2 |w|^2.
pub fn is_pi4(u: (i64, i64), w: (i64, i64)) -> bool {
    let dot = (u.0 * w.0 + u.1 * w.1) as i128;
    let nu = (u.0 * u.0 + u.1 * u.1) as i128;
    let nw = (w.0 * w.0 + w.1 * w.1) as i128;
    nu != 0 && nw != 0 && dot > 0 && 2 * dot * dot == nu * nw
}

/// Triples (apex, unordered pair) at angle pi/4, by triple loop.
pub fn count_pi4(points: &[(i64, i64)]) -> u64 {
    let mut total = 0;
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            for (k, r) in points.iter().enumerate().skip(j + 1) {
                if i == j || i == k {
                    continue;
                }
                if is_pi4((q.0 - p.0, q.1 - p.1), (r.0 - p.0, r.1 - p.1)) {
                    total += 1;
                }
            }
        }
    }
    total
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Distinct slopes among integer points, as reduced primitive vectors.
pub fn distinct_slopes(points: &[(i64, i64)]) -> usize {
    let mut seen = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let (mut dx, mut dy) = (q.0 - p.0, q.1 - p.1);
            let g = gcd(dx, dy);
            if g == 0 {
                continue;
            }
            dx /= g;
            dy /= g;
            if dx < 0 || (dx == 0 && dy < 0) {
                dx = -dx;
                dy = -dy;
            }
            seen.insert((dx, dy));
        }
    }
    seen.len()
}

/// Integer square grid [-t, t]^2.
pub fn square(t: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for x in -t..=t {
        for y in -t..=t {
            v.push((x, y));
        }
    }
    v
}

pub fn to_points(pts: &[(i64, i64)]) -> Vec<angleforge::PlanePoint> {
    pts.iter()
        .map(|&(x, y)| angleforge::PlanePoint::from_i64s(&[x], &[y]))
        .collect()
}

/// Size of the construction for degree d and parameter t:
/// |G_t| * sum_k quota_k * P_k^2 with P_k = ((2 floor(t/k) + 1)^d - 1) / 2.
pub fn construction_size(d: u32, t: u64) -> u128 {
    let grid = (2 * t as u128 + 1).pow(2 * d);
    let mut s = 0u128;
    for k in 1..=t {
        let quota = (2 * k as u128).pow(2 * d) - (2 * k as u128 - 2).pow(2 * d);
        let p = ((2 * (t / k) as u128 + 1).pow(d) - 1) / 2;
        s += quota * p * p;
    }
    grid * s
}
