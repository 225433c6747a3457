//! Window enumeration driven by the formula.
//!
//! Values are produced per residue: every offset tuple is walked once,
//! its residue modulo the primorial computed incrementally, and the
//! parameters `t` landing inside the window solved for directly. The
//! formula stays the generator — no integer in the window is ever
//! trial-divided — at a cost of one pass over the offset space plus
//! the output itself.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle;
use crate::wheel::{synthesize_elimination, PrimeBasis, WheelFormula};

/// Integer interval with explicit endpoint inclusivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    lo: BigInt,
    hi: BigInt,
    lo_inclusive: bool,
    hi_inclusive: bool,
}

impl Window {
    pub fn new(lo: BigInt, hi: BigInt, lo_inclusive: bool, hi_inclusive: bool) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "window bounds out of order: {lo} > {hi}"
            )));
        }
        Ok(Window {
            lo,
            hi,
            lo_inclusive,
            hi_inclusive,
        })
    }

    /// `(lo, hi)` — both endpoints excluded.
    pub fn open(lo: BigInt, hi: BigInt) -> Result<Self> {
        Window::new(lo, hi, false, false)
    }

    /// `[lo, hi)` — left endpoint included.
    pub fn left_closed(lo: BigInt, hi: BigInt) -> Result<Self> {
        Window::new(lo, hi, true, false)
    }

    /// `[lo, hi]` — both endpoints included.
    pub fn closed(lo: BigInt, hi: BigInt) -> Result<Self> {
        Window::new(lo, hi, true, true)
    }

    pub fn lo(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi(&self) -> &BigInt {
        &self.hi
    }

    pub fn lo_inclusive(&self) -> bool {
        self.lo_inclusive
    }

    pub fn hi_inclusive(&self) -> bool {
        self.hi_inclusive
    }

    /// First and last integers inside the window, or `None` when no
    /// integer survives the exclusions.
    pub fn effective_bounds(&self) -> Option<(BigInt, BigInt)> {
        let a = if self.lo_inclusive {
            self.lo.clone()
        } else {
            &self.lo + 1u32
        };
        let b = if self.hi_inclusive {
            self.hi.clone()
        } else {
            &self.hi - 1u32
        };
        (a <= b).then_some((a, b))
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        let lo_ok = if self.lo_inclusive {
            n >= &self.lo
        } else {
            n > &self.lo
        };
        let hi_ok = if self.hi_inclusive {
            n <= &self.hi
        } else {
            n < &self.hi
        };
        lo_ok && hi_ok
    }

    /// Number of integers inside the window.
    pub fn width(&self) -> BigInt {
        match self.effective_bounds() {
            Some((a, b)) => b - a + 1u32,
            None => BigInt::zero(),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_inclusive { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_inclusive { ']' } else { ')' },
        )
    }
}

/// JSON shape shared by every report that embeds a window.
#[derive(Serialize, Deserialize)]
pub(crate) struct WindowDoc {
    pub lo: String,
    pub hi: String,
    pub lo_inclusive: bool,
    pub hi_inclusive: bool,
}

impl WindowDoc {
    pub(crate) fn from_window(window: &Window) -> Self {
        WindowDoc {
            lo: window.lo.to_string(),
            hi: window.hi.to_string(),
            lo_inclusive: window.lo_inclusive,
            hi_inclusive: window.hi_inclusive,
        }
    }

    pub(crate) fn into_window(self) -> Result<Window> {
        Window::new(
            crate::wheel::parse_decimal(&self.lo)?,
            crate::wheel::parse_decimal(&self.hi)?,
            self.lo_inclusive,
            self.hi_inclusive,
        )
    }
}

/// The formula's value set reduced modulo the primorial: exactly the
/// units, one per offset tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSet {
    primorial: BigInt,
    residues: Vec<BigInt>,
}

impl ResidueSet {
    fn new(primorial: BigInt, residues: Vec<BigInt>, expected_len: &BigInt) -> Self {
        assert_eq!(
            BigInt::from(residues.len()),
            *expected_len,
            "residue count must match the offset-space size"
        );
        assert!(
            residues.windows(2).all(|w| w[0] < w[1]),
            "residues must be strictly increasing"
        );
        let coprime = match primorial.to_u64() {
            Some(p) => residues
                .iter()
                .all(|r| num_integer::gcd(r.to_u64().expect("residue below primorial"), p) == 1),
            None => residues.iter().all(|r| r.gcd(&primorial).is_one()),
        };
        assert!(coprime, "every residue must be a unit modulo the primorial");
        ResidueSet {
            primorial,
            residues,
        }
    }

    pub fn primorial(&self) -> &BigInt {
        &self.primorial
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, residue: &BigInt) -> bool {
        self.residues.binary_search(residue).is_ok()
    }
}

// Precomputed walking state: one stride per offset position, already
// reduced modulo the primorial.
struct WalkTables<T> {
    strides: Vec<T>,
    counts: Vec<u64>, // p_j - 1 choices per position
    modulus: T,
    start: T, // -1 reduced modulo the primorial
}

fn u64_tables(formula: &WheelFormula) -> Option<WalkTables<u64>> {
    let modulus = formula.primorial().to_u64()?;
    if modulus > i64::MAX as u64 {
        return None;
    }
    let strides = formula
        .coefficients()
        .iter()
        .map(|c| c.to_u64().expect("canonical coefficient below primorial"))
        .collect();
    let counts = formula.basis().primes()[1..].iter().map(|&p| p - 1).collect();
    Some(WalkTables {
        strides,
        counts,
        modulus,
        start: modulus - 1,
    })
}

fn big_tables(formula: &WheelFormula) -> WalkTables<BigInt> {
    WalkTables {
        strides: formula.coefficients().to_vec(),
        counts: formula.basis().primes()[1..].iter().map(|&p| p - 1).collect(),
        modulus: formula.primorial().clone(),
        start: formula.primorial() - 1u32,
    }
}

/// Calls `sink` with the residue of every offset tuple, in
/// lexicographic tuple order.
fn walk_u64(tables: &WalkTables<u64>, sink: &mut impl FnMut(u64)) {
    fn recurse(
        level: usize,
        acc: u64,
        tables: &WalkTables<u64>,
        sink: &mut impl FnMut(u64),
    ) {
        let stride = tables.strides[level];
        let modulus = tables.modulus;
        let mut s = acc;
        if level + 1 == tables.strides.len() {
            for _ in 0..tables.counts[level] {
                sink(s);
                s += stride;
                if s >= modulus {
                    s -= modulus;
                }
            }
        } else {
            for _ in 0..tables.counts[level] {
                recurse(level + 1, s, tables, sink);
                s += stride;
                if s >= modulus {
                    s -= modulus;
                }
            }
        }
    }
    if tables.strides.is_empty() {
        sink(tables.start);
    } else {
        recurse(0, tables.start, tables, sink);
    }
}

fn walk_big(tables: &WalkTables<BigInt>, sink: &mut impl FnMut(&BigInt)) {
    fn recurse(
        level: usize,
        acc: BigInt,
        tables: &WalkTables<BigInt>,
        sink: &mut impl FnMut(&BigInt),
    ) {
        let stride = &tables.strides[level];
        let mut s = acc;
        if level + 1 == tables.strides.len() {
            for _ in 0..tables.counts[level] {
                sink(&s);
                s += stride;
                if s >= tables.modulus {
                    s -= &tables.modulus;
                }
            }
        } else {
            for _ in 0..tables.counts[level] {
                recurse(level + 1, s.clone(), tables, sink);
                s += stride;
                if s >= tables.modulus {
                    s -= &tables.modulus;
                }
            }
        }
    }
    if tables.strides.is_empty() {
        sink(&tables.start);
    } else {
        recurse(0, tables.start.clone(), tables, sink);
    }
}

/// Size of the offset space, `prod (p_j - 1)`.
fn offset_space_size(basis: &PrimeBasis) -> BigInt {
    basis.primes()[1..]
        .iter()
        .map(|&p| BigInt::from(p - 1))
        .product()
}

/// All residues of the formula modulo its primorial, ascending. The
/// offset tuples map one-to-one onto the units of the primorial.
pub fn canonical_residues(formula: &WheelFormula) -> ResidueSet {
    let expected = offset_space_size(formula.basis());
    let residues = match u64_tables(formula) {
        Some(tables) => {
            let mut collected: Vec<u64> = Vec::new();
            walk_u64(&tables, &mut |s| collected.push(s));
            collected.sort_unstable();
            collected.into_iter().map(BigInt::from).collect()
        }
        None => {
            let tables = big_tables(formula);
            let mut collected: Vec<BigInt> = Vec::new();
            walk_big(&tables, &mut |s| collected.push(s.clone()));
            collected.sort_unstable();
            collected
        }
    };
    ResidueSet::new(formula.primorial().clone(), residues, &expected)
}

/// Every integer in `window` whose residue modulo the primorial belongs
/// to the formula's residue set, ascending and duplicate-free. Work is
/// one pass over the offset space plus the output size.
pub fn generate_window(formula: &WheelFormula, window: &Window) -> Vec<BigInt> {
    let Some((a, b)) = window.effective_bounds() else {
        return Vec::new();
    };
    if let Some(tables) = u64_tables(formula) {
        if let (Some(a), Some(b)) = (a.to_i128(), b.to_i128()) {
            return generate_fast(&tables, a, b);
        }
    }
    generate_big(&big_tables(formula), &a, &b)
}

fn generate_fast(tables: &WalkTables<u64>, a: i128, b: i128) -> Vec<BigInt> {
    let modulus = tables.modulus as i128;
    let width = (b - a) as u128 + 1;
    let mut hits: Vec<i128> = Vec::new();
    if width <= modulus as u128 {
        // The window meets each residue class at most once; membership
        // reduces to an interval test on the residue itself.
        let rho_a = a.rem_euclid(modulus) as u64;
        let rho_b = b.rem_euclid(modulus) as u64;
        let base_a = a - rho_a as i128;
        let base_b = b - rho_b as i128;
        if rho_a <= rho_b {
            walk_u64(tables, &mut |s| {
                if (rho_a..=rho_b).contains(&s) {
                    hits.push(base_a + s as i128);
                }
            });
        } else {
            walk_u64(tables, &mut |s| {
                if s >= rho_a {
                    hits.push(base_a + s as i128);
                } else if s <= rho_b {
                    hits.push(base_b + s as i128);
                }
            });
        }
    } else {
        walk_u64(tables, &mut |s| {
            let mut n = a + (s as i128 - a).rem_euclid(modulus);
            while n <= b {
                hits.push(n);
                n += modulus;
            }
        });
    }
    hits.sort_unstable();
    hits.dedup();
    hits.into_iter().map(BigInt::from).collect()
}

fn generate_big(tables: &WalkTables<BigInt>, a: &BigInt, b: &BigInt) -> Vec<BigInt> {
    let modulus = &tables.modulus;
    let mut hits: Vec<BigInt> = Vec::new();
    walk_big(tables, &mut |s| {
        let mut n = a + (s - a).mod_floor(modulus);
        while &n <= b {
            hits.push(n.clone());
            n += modulus;
        }
    });
    hits.sort_unstable();
    hits.dedup();
    hits
}

/// The certified window `(p_r, p_{r+1}^2)`: every member of the value
/// set inside it is prime, because any smaller composite would carry a
/// basis prime factor.
pub fn prime_window(basis: &PrimeBasis) -> Window {
    let next = oracle::next_prime(basis.last_prime());
    let square = BigInt::from(next) * next;
    Window::open(BigInt::from(basis.last_prime()), square)
        .expect("p_r < p_{r+1}^2 always")
}

/// The equivalent left-closed variant `[p_{r+1}, p_{r+1}^2)`; no prime
/// lies strictly between `p_r` and `p_{r+1}`, so both windows hold the
/// same primes.
pub fn prime_window_left_closed(basis: &PrimeBasis) -> Window {
    let next = oracle::next_prime(basis.last_prime());
    let square = BigInt::from(next) * next;
    Window::left_closed(BigInt::from(next), square).expect("p_{r+1} < p_{r+1}^2 always")
}

/// Formula values inside the certified prime window — by construction,
/// the primes strictly between `p_r` and `p_{r+1}^2`.
pub fn primes_by_formula(basis: &PrimeBasis) -> Vec<BigInt> {
    let (formula, _) = synthesize_elimination(basis);
    generate_window(&formula, &prime_window(basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wheel::synthesize_crt;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn ints(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| int(v)).collect()
    }

    fn formula(r: usize) -> WheelFormula {
        synthesize_crt(&PrimeBasis::first(r).unwrap())
    }

    #[test]
    fn window_construction_and_membership() {
        let open = Window::open(int(5), int(49)).unwrap();
        assert!(!open.contains(&int(5)));
        assert!(open.contains(&int(6)));
        assert!(open.contains(&int(48)));
        assert!(!open.contains(&int(49)));
        assert_eq!(open.to_string(), "(5, 49)");

        let half = Window::left_closed(int(49), int(343)).unwrap();
        assert!(half.contains(&int(49)));
        assert!(!half.contains(&int(343)));
        assert_eq!(half.to_string(), "[49, 343)");

        assert!(Window::new(int(3), int(2), true, true).is_err());
        assert!(Window::open(int(5), int(5)).unwrap().effective_bounds().is_none());
        assert_eq!(Window::closed(int(2), int(6)).unwrap().width(), int(5));
    }

    #[test]
    fn residues_match_unit_scan() {
        let set = canonical_residues(&formula(3));
        assert_eq!(set.residues(), &ints(&[1, 7, 11, 13, 17, 19, 23, 29]));
        // brute-force coprime scan of 1..30
        let brute: Vec<BigInt> = (1..30u64)
            .filter(|&n| num_integer::gcd(n, 30) == 1)
            .map(BigInt::from)
            .collect();
        assert_eq!(set.residues(), &brute);

        let tiny = canonical_residues(&formula(2));
        assert_eq!(tiny.residues(), &ints(&[1, 5]));

        let four = canonical_residues(&formula(4));
        assert_eq!(four.len(), 48);
        let brute: Vec<BigInt> = (1..210u64)
            .filter(|&n| num_integer::gcd(n, 210) == 1)
            .map(BigInt::from)
            .collect();
        assert_eq!(four.residues(), &brute);

        let single = canonical_residues(&formula(1));
        assert_eq!(single.residues(), &ints(&[1]));
    }

    #[test]
    fn generate_window_examples() {
        let values = generate_window(&formula(3), &Window::open(int(5), int(49)).unwrap());
        assert_eq!(values, ints(&[7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]));

        let values = generate_window(&formula(2), &Window::open(int(3), int(25)).unwrap());
        assert_eq!(values, ints(&[5, 7, 11, 13, 17, 19, 23]));

        let empty = generate_window(&formula(2), &Window::open(int(5), int(6)).unwrap());
        assert!(empty.is_empty());
    }

    #[test]
    fn generate_window_handles_wide_and_negative_windows() {
        // wider than the primorial: several t per residue
        let f = formula(2);
        let values = generate_window(&f, &Window::closed(int(1), int(30)).unwrap());
        assert_eq!(values, ints(&[1, 5, 7, 11, 13, 17, 19, 23, 25, 29]));

        // negative bounds follow the residue semantics
        let values = generate_window(&f, &Window::closed(int(-7), int(7)).unwrap());
        assert_eq!(values, ints(&[-7, -5, -1, 1, 5, 7]));
    }

    #[test]
    fn big_path_agrees_with_fast_path() {
        let f = formula(4);
        let window = Window::closed(int(-100), int(400)).unwrap();
        let fast = generate_window(&f, &window);
        let (a, b) = window.effective_bounds().unwrap();
        let big = generate_big(&big_tables(&f), &a, &b);
        assert_eq!(fast, big);

        let narrow = Window::open(int(7), int(121)).unwrap();
        let (a, b) = narrow.effective_bounds().unwrap();
        assert_eq!(generate_window(&f, &narrow), generate_big(&big_tables(&f), &a, &b));
    }

    #[test]
    fn prime_window_examples() {
        assert_eq!(
            prime_window(&PrimeBasis::first(3).unwrap()),
            Window::open(int(5), int(49)).unwrap()
        );
        assert_eq!(
            prime_window(&PrimeBasis::first(4).unwrap()),
            Window::open(int(7), int(121)).unwrap()
        );
        assert_eq!(
            prime_window(&PrimeBasis::first(5).unwrap()),
            Window::open(int(11), int(169)).unwrap()
        );
        assert_eq!(
            prime_window_left_closed(&PrimeBasis::first(3).unwrap()),
            Window::left_closed(int(7), int(49)).unwrap()
        );
    }

    #[test]
    fn primes_by_formula_examples() {
        let basis = PrimeBasis::first(2).unwrap();
        assert_eq!(primes_by_formula(&basis), ints(&[5, 7, 11, 13, 17, 19, 23]));

        let basis = PrimeBasis::first(3).unwrap();
        let values = primes_by_formula(&basis);
        assert_eq!(values.len(), 12);
        assert_eq!(values.first(), Some(&int(7)));
        assert_eq!(values.last(), Some(&int(47)));

        let basis = PrimeBasis::first(4).unwrap();
        let values = primes_by_formula(&basis);
        assert_eq!(values.len(), 26);
        assert_eq!(values.first(), Some(&int(11)));
        assert_eq!(values.last(), Some(&int(113)));

        let basis = PrimeBasis::first(1).unwrap();
        assert_eq!(primes_by_formula(&basis), ints(&[3, 5, 7]));
    }

    #[test]
    fn both_prime_windows_yield_the_same_primes() {
        for r in 1..=5 {
            let basis = PrimeBasis::first(r).unwrap();
            let (formula, _) = synthesize_elimination(&basis);
            let open = generate_window(&formula, &prime_window(&basis));
            let closed = generate_window(&formula, &prime_window_left_closed(&basis));
            assert_eq!(open, closed, "window variants differ at r = {r}");
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let f = formula(4);
        let window = Window::open(int(7), int(5000)).unwrap();
        let first = generate_window(&f, &window);
        let second = generate_window(&f, &window);
        assert_eq!(first, second);
        assert!(first.windows(2).all(|w| w[0] < w[1]));
    }
}
