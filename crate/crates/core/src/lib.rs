//! Linear wheel formulas over prime bases.
//!
//! Given the first `r` primes, a single linear expression
//! `t*P + sum_j C_j*(h_j - 1) - 1` (with `P` the primorial and one
//! bounded offset `h_j` per odd basis prime) enumerates exactly the
//! integers divisible by none of the basis primes. Inside the window
//! `(p_r, p_{r+1}^2)` those integers are all prime, which turns the
//! formula into a prime generator with a checkable contract.
//!
//! The crate synthesizes the formula two independent ways (stepwise
//! elimination of the congruence system, and direct residue
//! reconstruction), enumerates its values per residue class over any
//! window, decomposes integers back into `(offsets, t)`, classifies
//! window contents by number of prime factors, and audits the
//! window-extension claims against a sieve oracle.
//!
//! ```
//! use primewheel::wheel::{synthesize_elimination, PrimeBasis};
//! use primewheel::enumerate::primes_by_formula;
//!
//! let basis = PrimeBasis::first(3).unwrap();
//! let (formula, trace) = synthesize_elimination(&basis);
//! assert_eq!(formula.to_string(), "30*t + 20*(h_2-1) + 24*(h_3-1) - 1");
//! assert!(trace.satisfies_system(&basis));
//!
//! let primes: Vec<i64> = primes_by_formula(&basis)
//!     .iter()
//!     .map(|p| i64::try_from(p).unwrap())
//!     .collect();
//! assert_eq!(primes, [7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
//! ```

pub mod classify;
pub mod cli;
pub mod enumerate;
mod error;
pub mod integers;
pub mod oracle;
pub mod wheel;

pub use error::{Error, Result};
pub use num_bigint::BigInt;

/// Default width ceiling for window scans, classifications, and audits.
pub const DESK_CEILING: u64 = 100_000_000;
