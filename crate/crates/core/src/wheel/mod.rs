//! The linear wheel formula over a prime basis.
//!
//! For the first `r` primes with primorial `P`, the formula
//!
//! ```text
//! value(offsets, t) = t*P + sum_j C_j * (h_j - 1) - 1
//! ```
//!
//! ranges, as `t` runs over the integers and each offset `h_j` over
//! `1..p_j`, exactly over the integers divisible by none of the basis
//! primes. Each coefficient `C_j` is the canonical residue in `[0, P)`
//! with `C_j ≡ -1 (mod p_j)` and `C_j ≡ 0` modulo every other basis
//! prime, so `value ≡ -h_j (mod p_j)` for all `j` (the first prime is
//! pinned to offset 1, making every value odd).
//!
//! Two independent constructions are provided: stepwise linear
//! elimination of the congruence system ([`synthesize_elimination`])
//! and direct residue reconstruction ([`synthesize_crt`]). They must
//! agree coefficient by coefficient.

mod synthesis;

pub use synthesis::{
    routes_agree, synthesize_crt, synthesize_elimination, AffineForm, BezoutLadder,
    EliminationStep, EliminationTrace,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::integers::mod_euclid;
use crate::oracle;

/// The ordered first `r` primes together with their primorial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeBasis {
    primes: Vec<u64>,
    primorial: BigInt,
}

impl PrimeBasis {
    /// The basis of the first `r` primes, `r >= 1`.
    pub fn first(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidBasis("a basis needs at least one prime".into()));
        }
        let mut primes = Vec::with_capacity(r);
        let mut p = 2u64;
        for _ in 0..r {
            primes.push(p);
            p = oracle::next_prime(p);
        }
        let primorial = primes.iter().product::<BigInt>();
        Ok(PrimeBasis { primes, primorial })
    }

    /// Validates that `primes` really are the first `r` primes in order.
    pub fn new(primes: Vec<u64>) -> Result<Self> {
        let expected = PrimeBasis::first(primes.len().max(1))?;
        if primes != expected.primes {
            return Err(Error::InvalidBasis(format!(
                "{primes:?} are not the first {} primes",
                primes.len()
            )));
        }
        Ok(expected)
    }

    pub fn r(&self) -> usize {
        self.primes.len()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn primorial(&self) -> &BigInt {
        &self.primorial
    }

    pub fn last_prime(&self) -> u64 {
        *self.primes.last().expect("basis is non-empty")
    }

    /// The `s` primes immediately following the basis.
    pub fn extension(&self, s: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(s);
        let mut p = self.last_prime();
        for _ in 0..s {
            p = oracle::next_prime(p);
            out.push(p);
        }
        out
    }

    /// Checks `offsets` against this basis: one entry per prime after
    /// the first, each within `1..=p_j - 1`.
    pub fn validate_offsets(&self, offsets: &OffsetTuple) -> Result<()> {
        if offsets.len() != self.r() - 1 {
            return Err(Error::InvalidOffsets(format!(
                "expected {} offsets for r = {}, got {}",
                self.r() - 1,
                self.r(),
                offsets.len()
            )));
        }
        for (idx, (&h, &p)) in offsets.offsets().iter().zip(&self.primes[1..]).enumerate() {
            if h == 0 || h >= p {
                return Err(Error::InvalidOffsets(format!(
                    "offset {} for prime {} (position {}) is outside 1..={}",
                    h,
                    p,
                    idx + 2,
                    p - 1
                )));
            }
        }
        Ok(())
    }
}

/// Offsets `(h_2, .., h_r)` selecting one residue class per basis prime
/// after the first; the first prime's offset is always 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OffsetTuple {
    offsets: Vec<u64>,
}

impl OffsetTuple {
    pub fn new(offsets: Vec<u64>) -> Self {
        OffsetTuple { offsets }
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// All valid tuples for `basis` in lexicographic order.
    pub fn all(basis: &PrimeBasis) -> OffsetTupleIter {
        OffsetTupleIter {
            limits: basis.primes()[1..].iter().map(|&p| p - 1).collect(),
            current: Some(vec![1; basis.r() - 1]),
        }
    }
}

/// Lexicographic walk over every offset tuple of a basis.
pub struct OffsetTupleIter {
    limits: Vec<u64>,
    current: Option<Vec<u64>>,
}

impl Iterator for OffsetTupleIter {
    type Item = OffsetTuple;

    fn next(&mut self) -> Option<OffsetTuple> {
        let current = self.current.take()?;
        let mut next = current.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                break; // wrapped past the most significant digit: done
            }
            pos -= 1;
            if next[pos] < self.limits[pos] {
                next[pos] += 1;
                self.current = Some(next);
                break;
            }
            next[pos] = 1;
        }
        Some(OffsetTuple::new(current))
    }
}

/// One congruence class `n ≡ -offset (mod modulus)` with
/// `1 <= offset < modulus`. Classes sharing a modulus but differing in
/// offset are disjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueClass {
    modulus: u64,
    offset: u64,
}

impl ResidueClass {
    pub fn new(modulus: u64, offset: u64) -> Result<Self> {
        if modulus < 2 || offset == 0 || offset >= modulus {
            return Err(Error::InvalidArgument(format!(
                "residue class needs 1 <= offset < modulus, got offset {offset} mod {modulus}"
            )));
        }
        Ok(ResidueClass { modulus, offset })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        ((n + self.offset) % self.modulus).is_zero()
    }
}

/// Outcome of decomposing an integer against a formula: either the
/// unique `(offsets, t)` pair that evaluates to it, or the basis prime
/// that divides it and keeps it out of the value set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Signature {
    Member { offsets: OffsetTuple, t: BigInt },
    Excluded { divisor: u64 },
}

/// Canonical linear formula for a prime basis. Immutable after
/// construction; values and coefficients satisfy the congruence pattern
/// described at the module level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelFormula {
    basis: PrimeBasis,
    coefficients: Vec<BigInt>, // index 0 holds C_2
    constant: BigInt,          // always -1
}

impl WheelFormula {
    /// Builds from raw (possibly non-canonical) coefficients, reducing
    /// each into `[0, P)` and checking the congruence pattern.
    pub(crate) fn from_raw(basis: PrimeBasis, raw: Vec<BigInt>) -> Self {
        let primorial = basis.primorial().clone();
        let coefficients: Vec<BigInt> = raw
            .iter()
            .map(|c| mod_euclid(c, &primorial))
            .collect();
        let formula = WheelFormula {
            basis,
            coefficients,
            constant: -BigInt::one(),
        };
        formula.assert_canonical();
        formula
    }

    fn assert_canonical(&self) {
        assert_eq!(self.coefficients.len(), self.basis.r() - 1);
        for (idx, c) in self.coefficients.iter().enumerate() {
            let own = self.basis.primes()[idx + 1];
            assert!(
                !c.is_negative() && c < self.basis.primorial(),
                "coefficient {c} out of canonical range"
            );
            assert!(
                ((c + 1u32) % own).is_zero(),
                "coefficient {c} is not -1 modulo {own}"
            );
            for (other_idx, &p) in self.basis.primes().iter().enumerate() {
                if other_idx != idx + 1 {
                    assert!((c % p).is_zero(), "coefficient {c} not divisible by {p}");
                }
            }
        }
    }

    pub fn basis(&self) -> &PrimeBasis {
        &self.basis
    }

    pub fn r(&self) -> usize {
        self.basis.r()
    }

    pub fn primorial(&self) -> &BigInt {
        self.basis.primorial()
    }

    /// Canonical coefficients `C_2, .., C_r` in order.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// The coefficient attached to offset `j`, for `j` in `2..=r`.
    pub fn coefficient(&self, j: usize) -> Option<&BigInt> {
        if (2..=self.r()).contains(&j) {
            Some(&self.coefficients[j - 2])
        } else {
            None
        }
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    /// `t*P + sum_j C_j*(h_j - 1) - 1` for validated offsets.
    pub fn evaluate(&self, offsets: &OffsetTuple, t: &BigInt) -> Result<BigInt> {
        self.basis.validate_offsets(offsets)?;
        let mut acc = t * self.basis.primorial() + &self.constant;
        for (c, &h) in self.coefficients.iter().zip(offsets.offsets()) {
            acc += c * (h - 1);
        }
        Ok(acc)
    }

    /// The residue classes a value with these offsets lies in, one per
    /// basis prime (the first prime always contributes offset 1).
    pub fn residue_classes(&self, offsets: &OffsetTuple) -> Result<Vec<ResidueClass>> {
        self.basis.validate_offsets(offsets)?;
        let mut classes = vec![ResidueClass::new(self.basis.primes()[0], 1)?];
        for (&p, &h) in self.basis.primes()[1..].iter().zip(offsets.offsets()) {
            classes.push(ResidueClass::new(p, h)?);
        }
        Ok(classes)
    }

    /// Decomposes `n >= 1` into the unique `(offsets, t)` with
    /// `evaluate(offsets, t) == n`, or reports the basis prime dividing
    /// it. Non-membership is a domain answer, not an error.
    pub fn residue_signature(&self, n: &BigInt) -> Result<Signature> {
        if !n.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "residue_signature requires n >= 1, got {n}"
            )));
        }
        let small = n.to_u64();
        let mut offsets = Vec::with_capacity(self.r() - 1);
        for (idx, &p) in self.basis.primes().iter().enumerate() {
            let rem = match small {
                Some(v) => v % p,
                None => (n % p).to_u64().expect("remainder fits u64"),
            };
            if rem == 0 {
                return Ok(Signature::Excluded { divisor: p });
            }
            if idx > 0 {
                offsets.push(p - rem); // (-n) mod p
            }
        }
        let mut sum = BigInt::zero();
        for (c, &h) in self.coefficients.iter().zip(&offsets) {
            sum += c * (h - 1);
        }
        let numerator = n - sum + 1u32;
        let (t, rem) = numerator.div_rem(self.basis.primorial());
        debug_assert!(rem.is_zero(), "signature division must be exact");
        Ok(Signature::Member {
            offsets: OffsetTuple::new(offsets),
            t,
        })
    }

    /// Serializes to the canonical JSON document, e.g.
    /// `{"r":3,"primes":[2,3,5],"primorial":"30","coefficients":{"2":"20","3":"24"},"constant":"-1"}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("formula serialization cannot fail")
    }

    /// Parses and fully validates a document produced by [`to_json`].
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FormulaDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("malformed formula document: {e}")))?;
        let basis = PrimeBasis::new(doc.primes)?;
        if basis.r() != doc.r {
            return Err(Error::InvalidArgument(format!(
                "document r = {} does not match {} primes",
                doc.r,
                basis.r()
            )));
        }
        if parse_decimal(&doc.primorial)? != *basis.primorial() {
            return Err(Error::InvalidArgument(format!(
                "primorial {} does not match basis",
                doc.primorial
            )));
        }
        if parse_decimal(&doc.constant)? != -BigInt::one() {
            return Err(Error::InvalidArgument(format!(
                "constant must be -1, got {}",
                doc.constant
            )));
        }
        let mut coefficients = Vec::with_capacity(basis.r() - 1);
        for j in 2..=basis.r() {
            let key = j.to_string();
            let text = doc.coefficients.get(&key).ok_or_else(|| {
                Error::InvalidArgument(format!("missing coefficient for offset {j}"))
            })?;
            coefficients.push(parse_decimal(text)?);
        }
        if doc.coefficients.len() != basis.r() - 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                basis.r() - 1,
                doc.coefficients.len()
            )));
        }
        for (idx, c) in coefficients.iter().enumerate() {
            if c.is_negative() || c >= basis.primorial() {
                return Err(Error::InvalidArgument(format!(
                    "coefficient {} for offset {} is not canonical",
                    c,
                    idx + 2
                )));
            }
        }
        let formula = WheelFormula::from_raw(basis, coefficients);
        Ok(formula)
    }
}

impl fmt::Display for WheelFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*t", self.basis.primorial())?;
        for (idx, c) in self.coefficients.iter().enumerate() {
            write!(f, " + {}*(h_{}-1)", c, idx + 2)?;
        }
        write!(f, " - 1")
    }
}

impl Serialize for WheelFormula {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut doc = serializer.serialize_struct("WheelFormula", 5)?;
        doc.serialize_field("r", &self.basis.r())?;
        doc.serialize_field("primes", self.basis.primes())?;
        doc.serialize_field("primorial", &self.basis.primorial().to_string())?;
        doc.serialize_field("coefficients", &CoefficientMap(&self.coefficients))?;
        doc.serialize_field("constant", &self.constant.to_string())?;
        doc.end()
    }
}

struct CoefficientMap<'a>(&'a [BigInt]);

impl Serialize for CoefficientMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (idx, c) in self.0.iter().enumerate() {
            map.serialize_entry(&(idx + 2).to_string(), &c.to_string())?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
struct FormulaDoc {
    r: usize,
    primes: Vec<u64>,
    primorial: String,
    coefficients: BTreeMap<String, String>,
    constant: String,
}

pub(crate) fn parse_decimal(text: &str) -> Result<BigInt> {
    text.parse::<BigInt>()
        .map_err(|_| Error::InvalidArgument(format!("not a decimal integer: {text:?}")))
}

/// True when the two coefficient lists agree entrywise modulo
/// `modulus`. A formula keeps its value set under any such rewrite, so
/// this is the comparator for alternative printed forms.
pub fn coefficients_congruent(a: &[BigInt], b: &[BigInt], modulus: &BigInt) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "coefficient lists have different lengths: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if modulus.is_zero() {
        return Err(Error::InvalidArgument("modulus must be non-zero".into()));
    }
    Ok(a.iter()
        .zip(b)
        .all(|(x, y)| mod_euclid(x, modulus) == mod_euclid(y, modulus)))
}
