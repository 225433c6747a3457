//! Ground truth by direct computation: a sieve of Eratosthenes,
//! next-prime search, trial-division factorization, and divisibility
//! scans. Everything the formula machinery produces is checked against
//! this module, so it stays deliberately simple and unconditional —
//! no probabilistic primality, no segmentation.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::wheel::PrimeBasis;
use crate::{enumerate::Window, DESK_CEILING};

/// Largest `limit` accepted by [`sieve`].
pub const SIEVE_CEILING: u64 = 1_000_000_000;

/// Largest `n` accepted by [`factorize`].
pub const TRIAL_DIVISION_CEILING: u64 = 1_000_000_000_000;

// Gaps between consecutive integers coprime to 30, starting from 7.
const WHEEL_INCREMENTS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

/// All primes `<= limit`, ascending.
pub fn sieve(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "sieve limit must be at least 2, got {limit}"
        )));
    }
    if limit > SIEVE_CEILING {
        return Err(Error::ResourceLimit(format!(
            "sieve limit {limit} exceeds ceiling {SIEVE_CEILING}"
        )));
    }
    let n = limit as usize;
    let mut composite = vec![0u64; n / 64 + 1];
    let is_set = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;
    let mut i = 2usize;
    while i * i <= n {
        if !is_set(&composite, i) {
            let mut j = i * i;
            while j <= n {
                composite[j / 64] |= 1 << (j % 64);
                j += i;
            }
        }
        i += 1;
    }
    Ok((2..=n)
        .filter(|&i| !is_set(&composite, i))
        .map(|i| i as u64)
        .collect())
}

/// Smallest prime strictly greater than `p`.
pub fn next_prime(p: u64) -> u64 {
    let mut candidate = p + 1;
    loop {
        if is_prime(candidate) {
            return candidate;
        }
        candidate += 1;
    }
}

/// Deterministic primality by trial division over the mod-30 wheel.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = 7u64;
    let mut gap = 0usize;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += WHEEL_INCREMENTS[gap];
        gap = (gap + 1) % WHEEL_INCREMENTS.len();
    }
    true
}

/// True when no basis prime divides `n`. Zero and negative inputs are
/// outside the member domain and report `false`.
pub fn coprime_to_basis(n: &BigInt, basis: &PrimeBasis) -> bool {
    if !n.is_positive() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return basis.primes().iter().all(|&p| small % p != 0);
    }
    basis.primes().iter().all(|&p| !(n % p).is_zero())
}

/// A complete factorization: strictly increasing primes with their
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMultiset {
    factors: Vec<(u64, u32)>,
}

impl FactorMultiset {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of prime factors counted with multiplicity.
    pub fn total_multiplicity(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Product of `prime^exponent` over all entries.
    pub fn reconstruct(&self) -> BigInt {
        let mut acc = BigInt::from(1u32);
        for &(p, e) in &self.factors {
            for _ in 0..e {
                acc *= p;
            }
        }
        acc
    }
}

/// Complete prime factorization of `n` by wheel trial division.
pub fn factorize(n: &BigInt) -> Result<FactorMultiset> {
    if n < &BigInt::from(2u32) {
        return Err(Error::InvalidArgument(format!(
            "factorize requires n >= 2, got {n}"
        )));
    }
    let mut rest = n.to_u64().filter(|&v| v <= TRIAL_DIVISION_CEILING).ok_or_else(|| {
        Error::ResourceLimit(format!(
            "{n} exceeds the trial-division ceiling {TRIAL_DIVISION_CEILING}"
        ))
    })?;

    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0u32;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    for p in [2u64, 3, 5] {
        push(p, &mut rest);
    }
    let mut d = 7u64;
    let mut gap = 0usize;
    while d * d <= rest {
        push(d, &mut rest);
        d += WHEEL_INCREMENTS[gap];
        gap = (gap + 1) % WHEEL_INCREMENTS.len();
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactorMultiset { factors })
}

/// Every natural number in `window` divisible by none of the basis
/// primes, ascending. The scan is pointwise divisibility testing — the
/// definitional counterpart of formula-driven window generation.
pub fn coprime_scan(basis: &PrimeBasis, window: &Window) -> Result<Vec<BigInt>> {
    let Some((lo, hi)) = window.effective_bounds() else {
        return Ok(Vec::new());
    };
    // Members are natural numbers; clamp the scan to n >= 1.
    let lo = lo.max(BigInt::from(1u32));
    if lo > hi {
        return Ok(Vec::new());
    }
    let width = (&hi - &lo + 1u32).to_u64().unwrap_or(u64::MAX);
    if width > DESK_CEILING {
        return Err(Error::ResourceLimit(format!(
            "scan width {width} exceeds ceiling {DESK_CEILING}"
        )));
    }
    let mut out = Vec::new();
    if let (Some(lo64), Some(hi64)) = (lo.to_u64(), hi.to_u64()) {
        for n in lo64..=hi64 {
            if basis.primes().iter().all(|&p| n % p != 0) {
                out.push(BigInt::from(n));
            }
        }
    } else {
        let mut n = lo;
        while n <= hi {
            if basis.primes().iter().all(|&p| !(&n % p).is_zero()) {
                out.push(n.clone());
            }
            n += 1u32;
        }
    }
    Ok(out)
}
