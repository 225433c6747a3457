//! Almost-prime classification of formula values and empirical audits
//! of window-extension claims.
//!
//! A "k-th number" here is an integer with exactly `k` prime factors
//! counted with multiplicity (`Ω(n) = k`): primes are 1st numbers,
//! semiprimes 2nd, and so on. Multiplicity counting is what makes the
//! windows work out — `[q^2, q^3)` contains `q^2` itself, which has one
//! distinct prime but two with multiplicity.
//!
//! The audits are empirical: they report what a claim does on one
//! concrete instance, with explicit witnesses, and assert nothing
//! about its general truth.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::enumerate::{generate_window, Window, WindowDoc};
use crate::error::{Error, Result};
use crate::oracle;
use crate::wheel::{parse_decimal, synthesize_elimination, PrimeBasis};

/// Outcome of a claim check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not_applicable",
        }
    }

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "pass" => Ok(Verdict::Pass),
            "fail" => Ok(Verdict::Fail),
            "not_applicable" => Ok(Verdict::NotApplicable),
            other => Err(Error::InvalidArgument(format!("unknown verdict {other:?}"))),
        }
    }
}

/// Number of prime factors of `n >= 2` counted with multiplicity.
pub fn big_omega(n: &BigInt) -> Result<u32> {
    Ok(oracle::factorize(n)?.total_multiplicity())
}

/// One classified value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub value: BigInt,
    pub omega: u32,
}

/// Classification of every formula value in a window against the bound
/// `Ω(n) <= k`. Witnesses are exactly the violators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    r: usize,
    claim_bound: u32,
    window: Window,
    entries: Vec<ClassEntry>,
    verdict: Verdict,
    witnesses: Vec<BigInt>,
}

impl ClassReport {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn claim_bound(&self) -> u32 {
        self.claim_bound
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn entries(&self) -> &[ClassEntry] {
        &self.entries
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn witnesses(&self) -> &[BigInt] {
        &self.witnesses
    }

    pub fn to_json(&self) -> String {
        let doc = ClassReportDoc {
            r: self.r,
            k: self.claim_bound,
            window: WindowDoc::from_window(&self.window),
            count: self.entries.len(),
            verdict: self.verdict.as_str().to_string(),
            witnesses: self.witnesses.iter().map(|w| w.to_string()).collect(),
            entries: self
                .entries
                .iter()
                .map(|e| ClassEntryDoc {
                    value: e.value.to_string(),
                    omega: e.omega,
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ClassReportDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("malformed class report: {e}")))?;
        let entries = doc
            .entries
            .iter()
            .map(|e| {
                Ok(ClassEntry {
                    value: parse_decimal(&e.value)?,
                    omega: e.omega,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != doc.count {
            return Err(Error::InvalidArgument(format!(
                "entry count {} does not match recorded count {}",
                entries.len(),
                doc.count
            )));
        }
        Ok(ClassReport {
            r: doc.r,
            claim_bound: doc.k,
            window: doc.window.into_window()?,
            entries,
            verdict: Verdict::from_str(&doc.verdict)?,
            witnesses: doc
                .witnesses
                .iter()
                .map(|w| parse_decimal(w))
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ClassEntryDoc {
    value: String,
    omega: u32,
}

#[derive(Serialize, Deserialize)]
struct ClassReportDoc {
    r: usize,
    k: u32,
    window: WindowDoc,
    count: usize,
    verdict: String,
    witnesses: Vec<String>,
    entries: Vec<ClassEntryDoc>,
}

/// Audit of the window-extension claim: inside
/// `[p_{r+s}^k, p_{r+s}^{k+1})`, after setting aside the products of
/// `k+1` follower primes, every remaining formula value should have
/// `Ω <= k`, provided `p_{r+1} > 2^{(k+1)(s-1)}` (the margin Bertrand's
/// postulate needs). `s = 1` degenerates to plain window
/// classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimAudit {
    r: usize,
    k: u32,
    s: u32,
    precondition_holds: bool,
    range: Window,
    exclusions: Vec<BigInt>,
    verdict: Verdict,
    witnesses: Vec<BigInt>,
}

impl ClaimAudit {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn precondition_holds(&self) -> bool {
        self.precondition_holds
    }

    pub fn range(&self) -> &Window {
        &self.range
    }

    pub fn exclusions(&self) -> &[BigInt] {
        &self.exclusions
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn witnesses(&self) -> &[BigInt] {
        &self.witnesses
    }

    pub fn to_json(&self) -> String {
        let doc = ClaimAuditDoc {
            r: self.r,
            k: self.k,
            s: self.s,
            precondition_holds: self.precondition_holds,
            range: WindowDoc::from_window(&self.range),
            exclusions: self.exclusions.iter().map(|e| e.to_string()).collect(),
            verdict: self.verdict.as_str().to_string(),
            witnesses: self.witnesses.iter().map(|w| w.to_string()).collect(),
        };
        serde_json::to_string(&doc).expect("audit serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ClaimAuditDoc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("malformed claim audit: {e}")))?;
        Ok(ClaimAudit {
            r: doc.r,
            k: doc.k,
            s: doc.s,
            precondition_holds: doc.precondition_holds,
            range: doc.range.into_window()?,
            exclusions: doc
                .exclusions
                .iter()
                .map(|e| parse_decimal(e))
                .collect::<Result<Vec<_>>>()?,
            verdict: Verdict::from_str(&doc.verdict)?,
            witnesses: doc
                .witnesses
                .iter()
                .map(|w| parse_decimal(w))
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ClaimAuditDoc {
    r: usize,
    k: u32,
    s: u32,
    precondition_holds: bool,
    range: WindowDoc,
    exclusions: Vec<String>,
    verdict: String,
    witnesses: Vec<String>,
}

fn check_width(window: &Window, ceiling: u64) -> Result<()> {
    if window.width() > BigInt::from(ceiling) {
        return Err(Error::ResourceLimit(format!(
            "window {window} is wider than the ceiling {ceiling}"
        )));
    }
    Ok(())
}

/// Classifies every formula value in `[q^k, q^{k+1})`, `q` the first
/// prime past the basis, against the bound `Ω <= k`.
pub fn classify_window(basis: &PrimeBasis, k: u32, ceiling: u64) -> Result<ClassReport> {
    if basis.r() < 2 {
        return Err(Error::InvalidBasis(
            "classification needs a basis of at least two primes".into(),
        ));
    }
    if k < 1 {
        return Err(Error::InvalidArgument("claim bound k must be >= 1".into()));
    }
    let q = BigInt::from(oracle::next_prime(basis.last_prime()));
    let window = Window::left_closed(
        num_traits::pow(q.clone(), k as usize),
        num_traits::pow(q, k as usize + 1),
    )?;
    let report = classify_in(basis, k, window, &[], ceiling)?;
    Ok(report)
}

fn classify_in(
    basis: &PrimeBasis,
    k: u32,
    window: Window,
    exclusions: &[BigInt],
    ceiling: u64,
) -> Result<ClassReport> {
    check_width(&window, ceiling)?;
    let (formula, _) = synthesize_elimination(basis);
    let mut entries = Vec::new();
    let mut witnesses = Vec::new();
    for value in generate_window(&formula, &window) {
        if exclusions.binary_search(&value).is_ok() {
            continue;
        }
        let omega = big_omega(&value)?;
        if omega > k {
            witnesses.push(value.clone());
        }
        entries.push(ClassEntry { value, omega });
    }
    let verdict = if witnesses.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ClassReport {
        r: basis.r(),
        claim_bound: k,
        window,
        entries,
        verdict,
        witnesses,
    })
}

/// Products of `k+1` primes drawn (with repetition) from `followers`,
/// restricted to `range`, ascending.
fn exclusion_products(followers: &[u64], k: u32, range: &Window) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32, BigInt)> = vec![(0, 0, BigInt::from(1u32))];
    while let Some((start, depth, product)) = stack.pop() {
        if depth == k + 1 {
            if range.contains(&product) {
                out.push(product);
            }
            continue;
        }
        for (idx, &p) in followers.iter().enumerate().skip(start) {
            stack.push((idx, depth + 1, &product * p));
        }
    }
    out.sort_unstable();
    out
}

/// Runs the extension audit at `(basis, k, s)`. Reports, never asserts:
/// a failed precondition yields `NotApplicable`, a violating value
/// yields `Fail` with the witnesses listed.
pub fn bertrand_audit(basis: &PrimeBasis, k: u32, s: u32, ceiling: u64) -> Result<ClaimAudit> {
    if basis.r() < 2 {
        return Err(Error::InvalidBasis(
            "the audit needs a basis of at least two primes".into(),
        ));
    }
    if k < 2 || s < 1 {
        return Err(Error::InvalidArgument(format!(
            "the audit is stated for k >= 2 and s >= 1, got k = {k}, s = {s}"
        )));
    }
    let followers = basis.extension(s as usize);
    let target = BigInt::from(*followers.last().expect("s >= 1"));
    let range = Window::left_closed(
        num_traits::pow(target.clone(), k as usize),
        num_traits::pow(target, k as usize + 1),
    )?;

    // p_{r+1} > 2^{(k+1)(s-1)}; follower primes are far below 2^64, so
    // any exponent of 64 or more settles the comparison immediately.
    let exponent = (k as u64 + 1) * (s as u64 - 1);
    let precondition_holds =
        exponent < 64 && BigInt::from(followers[0]) > BigInt::from(1u128 << exponent);

    let exclusions = exclusion_products(&followers, k, &range);
    if !precondition_holds {
        return Ok(ClaimAudit {
            r: basis.r(),
            k,
            s,
            precondition_holds,
            range,
            exclusions,
            verdict: Verdict::NotApplicable,
            witnesses: Vec::new(),
        });
    }

    let report = classify_in(basis, k, range.clone(), &exclusions, ceiling)?;
    Ok(ClaimAudit {
        r: basis.r(),
        k,
        s,
        precondition_holds,
        range,
        exclusions,
        verdict: report.verdict,
        witnesses: report.witnesses,
    })
}
