//! Exact integer arithmetic helpers: extended gcd, canonical Bézout
//! solutions, and the full solution family of `a*x - b*y = c` for
//! coprime positive `a`, `b`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Remainder in `[0, |modulus|)` regardless of operand signs.
pub fn mod_euclid(a: &BigInt, modulus: &BigInt) -> BigInt {
    a.mod_floor(&modulus.abs())
}

/// Quotient paired with [`mod_euclid`], so that
/// `a == div_euclid(a, m) * m + mod_euclid(a, m)` exactly.
pub fn div_euclid(a: &BigInt, modulus: &BigInt) -> BigInt {
    (a - mod_euclid(a, modulus)) / modulus
}

/// Extended Euclidean algorithm.
///
/// Returns `(g, u, v)` with `g = gcd(a, b) >= 0` and `a*u + b*v = g`.
/// Rejects the all-zero input, where the gcd is undefined.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt, BigInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
    }
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    Ok((old_r, old_s, old_t))
}

/// Canonical particular solution of `a*x - b*y = 1` for coprime positive
/// `a`, `b`: the unique `x` in `[0, b)` with `a*x ≡ 1 (mod b)`, and the
/// `y` it forces. Fixing the least non-negative representative makes
/// every construction built on top of this deterministic.
pub fn bezout_unit(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "bezout_unit requires positive inputs, got {a} and {b}"
        )));
    }
    let (g, u, _) = ext_gcd(a, b)?;
    if !g.is_one() {
        return Err(Error::NotCoprime {
            a: a.clone(),
            b: b.clone(),
            gcd: g,
        });
    }
    let x = mod_euclid(&u, b);
    let y = (a * &x - BigInt::one()) / b; // exact because a*x ≡ 1 (mod b)
    Ok((x, y))
}

/// Full solution family of `a*x - b*y = c`: `x = x0 + x_stride*t`,
/// `y = y0 + y_stride*t` over every integer `t`, with `x_stride = b`
/// and `y_stride = a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralSolution {
    pub x0: BigInt,
    pub y0: BigInt,
    pub x_stride: BigInt,
    pub y_stride: BigInt,
}

impl GeneralSolution {
    /// The member of the family at parameter `t`.
    pub fn at(&self, t: &BigInt) -> (BigInt, BigInt) {
        (&self.x0 + &self.x_stride * t, &self.y0 + &self.y_stride * t)
    }
}

/// Solves `a*x - b*y = c` for coprime positive `a`, `b`, seeding the
/// family with `c` times the canonical unit solution.
pub fn solve_linear(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<GeneralSolution> {
    let (x_hat, y_hat) = bezout_unit(a, b)?;
    Ok(GeneralSolution {
        x0: c * &x_hat,
        y0: c * &y_hat,
        x_stride: b.clone(),
        y_stride: a.clone(),
    })
}
