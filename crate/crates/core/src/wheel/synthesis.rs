//! Formula synthesis.
//!
//! [`synthesize_elimination`] eliminates the chained congruence system
//!
//! ```text
//! p_1*x_1 - 1 = p_2*x_2 - h_2 = ... = p_r*x_r - h_r
//! ```
//!
//! one prime at a time. Each step solves a two-variable linear equation
//! with a ladder of canonical unit solutions and substitutes the result
//! back, carrying the intermediate solutions symbolically as affine
//! forms in the offsets and the remaining free parameter. The recorded
//! trace can be replayed to confirm the system holds identically.
//!
//! [`synthesize_crt`] rebuilds each coefficient directly from its
//! residue pattern and serves as the independent check on the
//! elimination route.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::integers::{bezout_unit, ext_gcd, mod_euclid};

use super::{PrimeBasis, WheelFormula};

/// Unit solutions `(x̂_i, t̂_i)` of `p_i * x - (p_1*..*p_{i-1}) * y = 1`
/// for `i = 2..=r`, each with the canonical representative from
/// [`bezout_unit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutLadder {
    pairs: Vec<(BigInt, BigInt)>,
}

impl BezoutLadder {
    pub fn for_basis(basis: &PrimeBasis) -> Self {
        let mut pairs = Vec::with_capacity(basis.r().saturating_sub(1));
        let mut prefix = BigInt::from(basis.primes()[0]);
        for &p in &basis.primes()[1..] {
            let pair = bezout_unit(&BigInt::from(p), &prefix)
                .expect("distinct primes are coprime to their product");
            pairs.push(pair);
            prefix *= p;
        }
        BezoutLadder { pairs }
    }

    /// The pair for step `i`, `2 <= i <= r`.
    pub fn pair(&self, i: usize) -> &(BigInt, BigInt) {
        &self.pairs[i - 2]
    }

    pub fn pairs(&self) -> &[(BigInt, BigInt)] {
        &self.pairs
    }
}

/// Integer-affine expression `constant + sum_j coeff_j*(h_j - 1) + t_coeff*t`
/// in the offsets and one free parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    constant: BigInt,
    offset_coeffs: Vec<BigInt>, // index 0 holds the coefficient of (h_2 - 1)
    t_coeff: BigInt,
}

impl AffineForm {
    fn zero(offset_count: usize) -> Self {
        AffineForm {
            constant: BigInt::zero(),
            offset_coeffs: vec![BigInt::zero(); offset_count],
            t_coeff: BigInt::zero(),
        }
    }

    fn constant(offset_count: usize, value: BigInt) -> Self {
        let mut form = AffineForm::zero(offset_count);
        form.constant = value;
        form
    }

    /// The form `(h_j - 1)`.
    fn offset_unit(offset_count: usize, j: usize) -> Self {
        let mut form = AffineForm::zero(offset_count);
        form.offset_coeffs[j - 2] = BigInt::one();
        form
    }

    /// The free parameter itself.
    fn t_unit(offset_count: usize) -> Self {
        let mut form = AffineForm::zero(offset_count);
        form.t_coeff = BigInt::one();
        form
    }

    fn scaled(&self, k: &BigInt) -> Self {
        AffineForm {
            constant: &self.constant * k,
            offset_coeffs: self.offset_coeffs.iter().map(|c| c * k).collect(),
            t_coeff: &self.t_coeff * k,
        }
    }

    fn plus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.offset_coeffs.len(), other.offset_coeffs.len());
        AffineForm {
            constant: &self.constant + &other.constant,
            offset_coeffs: self
                .offset_coeffs
                .iter()
                .zip(&other.offset_coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            t_coeff: &self.t_coeff + &other.t_coeff,
        }
    }

    pub fn constant_part(&self) -> &BigInt {
        &self.constant
    }

    /// Coefficient of `(h_j - 1)` for `j` in `2..=r`.
    pub fn offset_coefficient(&self, j: usize) -> &BigInt {
        &self.offset_coeffs[j - 2]
    }

    pub fn t_coefficient(&self) -> &BigInt {
        &self.t_coeff
    }
}

/// One elimination step. With `rhs` the affine right-hand side fed into
/// the two-variable solver, the step's general solution is
///
/// ```text
/// x_i     = bezout_x * rhs + x_stride * t_next
/// t_prev  = bezout_t * rhs + p_i      * t_next
/// ```
///
/// where `t_prev` is the parameter eliminated at this step (`x_1`
/// itself for the first step) and `t_next` is the fresh one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationStep {
    index: usize,
    prime: u64,
    bezout_x: BigInt,
    bezout_t: BigInt,
    rhs: AffineForm,
    x_stride: BigInt,
}

impl EliminationStep {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn bezout_pair(&self) -> (&BigInt, &BigInt) {
        (&self.bezout_x, &self.bezout_t)
    }

    pub fn rhs(&self) -> &AffineForm {
        &self.rhs
    }

    pub fn x_stride(&self) -> &BigInt {
        &self.x_stride
    }
}

/// Record of an elimination run: the per-step general solutions plus
/// the raw (pre-canonical) coefficients they produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTrace {
    offset_count: usize,
    steps: Vec<EliminationStep>,
    raw_coefficients: Vec<BigInt>,
}

impl EliminationTrace {
    pub fn steps(&self) -> &[EliminationStep] {
        &self.steps
    }

    /// Coefficients exactly as the elimination produced them, before
    /// reduction into `[0, P)`.
    pub fn raw_coefficients(&self) -> &[BigInt] {
        &self.raw_coefficients
    }

    /// Every `x_i` (`i = 1..=r`) rewritten in terms of the final free
    /// parameter by back-substituting the steps.
    pub fn solutions(&self) -> Vec<AffineForm> {
        let n = self.offset_count;
        let mut xs = vec![AffineForm::zero(n); n + 1];
        let mut current_t = AffineForm::t_unit(n);
        for step in self.steps.iter().rev() {
            xs[step.index - 1] = step
                .rhs
                .scaled(&step.bezout_x)
                .plus(&current_t.scaled(&step.x_stride));
            current_t = step
                .rhs
                .scaled(&step.bezout_t)
                .plus(&current_t.scaled(&BigInt::from(step.prime)));
        }
        xs[0] = current_t;
        xs
    }

    /// Replays the trace into the original system and checks that
    /// `p_1*x_1 - 1 = p_i*x_i - h_i` holds identically in the offsets
    /// and the free parameter, for every `i`.
    pub fn satisfies_system(&self, basis: &PrimeBasis) -> bool {
        if basis.r() != self.offset_count + 1 {
            return false;
        }
        let xs = self.solutions();
        let n = self.offset_count;
        let p1 = BigInt::from(basis.primes()[0]);
        let lhs = xs[0]
            .scaled(&p1)
            .plus(&AffineForm::constant(n, -BigInt::one()));
        basis.primes()[1..].iter().enumerate().all(|(idx, &p)| {
            let i = idx + 2;
            // p_i*x_i - h_i, with h_i = (h_i - 1) + 1
            let rhs = xs[i - 1]
                .scaled(&BigInt::from(p))
                .plus(&AffineForm::offset_unit(n, i).scaled(&-BigInt::one()))
                .plus(&AffineForm::constant(n, -BigInt::one()));
            lhs == rhs
        })
    }
}

/// Synthesizes the formula by stepwise elimination and returns it with
/// the full trace. The closed products over the ladder give the raw
/// coefficients; the trace re-derives them by substitution and the two
/// must agree. A single-prime basis has nothing to eliminate and
/// yields the bare `2t - 1`.
pub fn synthesize_elimination(basis: &PrimeBasis) -> (WheelFormula, EliminationTrace) {
    let ladder = BezoutLadder::for_basis(basis);
    let raw = closed_form_coefficients(basis, &ladder);
    let trace = eliminate(basis, &ladder);
    debug_assert_eq!(raw, trace.raw_coefficients);
    let formula = WheelFormula::from_raw(basis.clone(), raw);
    (formula, trace)
}

/// Raw coefficient for each offset `j`:
/// `t̂_j * (p_1*..*p_{j-1}) * prod_{q > j}(p_q * x̂_q)`.
fn closed_form_coefficients(basis: &PrimeBasis, ladder: &BezoutLadder) -> Vec<BigInt> {
    let r = basis.r();
    let mut coefficients = vec![BigInt::zero(); r.saturating_sub(1)];
    let mut suffix = BigInt::one();
    for j in (2..=r).rev() {
        let (bezout_x, bezout_t) = ladder.pair(j);
        let prefix: BigInt = basis.primes()[..j - 1].iter().product();
        coefficients[j - 2] = bezout_t * &prefix * &suffix;
        suffix *= bezout_x * basis.primes()[j - 1];
    }
    coefficients
}

fn eliminate(basis: &PrimeBasis, ladder: &BezoutLadder) -> EliminationTrace {
    let r = basis.r();
    let n = r - 1;
    let p1 = BigInt::from(basis.primes()[0]);

    let mut steps = Vec::with_capacity(n);
    // x_1 = carried + carried_stride * (current parameter)
    let mut carried = AffineForm::zero(n);
    let mut carried_stride = BigInt::one();
    let mut prefix = p1.clone(); // p_1 * .. * p_{i-1}
    for (idx, &p) in basis.primes()[1..].iter().enumerate() {
        let i = idx + 2;
        let (bezout_x, bezout_t) = ladder.pair(i).clone();
        // Substituting x_1 into p_1*x_1 - 1 = p_i*x_i - h_i leaves
        // p_i*x_i - prefix*t = p_1*carried + (h_i - 1) to solve.
        let rhs = carried
            .scaled(&p1)
            .plus(&AffineForm::offset_unit(n, i));
        carried = carried.plus(&rhs.scaled(&bezout_t).scaled(&carried_stride));
        carried_stride *= p;
        steps.push(EliminationStep {
            index: i,
            prime: p,
            bezout_x,
            bezout_t,
            rhs,
            x_stride: prefix.clone(),
        });
        prefix *= p;
    }

    // value = p_1*x_1 - 1; its offset coefficients are the raw ones.
    let value = carried
        .scaled(&p1)
        .plus(&AffineForm::t_unit(n).scaled(&(&p1 * &carried_stride)))
        .plus(&AffineForm::constant(n, -BigInt::one()));
    debug_assert_eq!(value.t_coefficient(), basis.primorial());
    debug_assert_eq!(value.constant_part(), &-BigInt::one());
    let raw_coefficients = (2..=r)
        .map(|j| value.offset_coefficient(j).clone())
        .collect();

    EliminationTrace {
        offset_count: n,
        steps,
        raw_coefficients,
    }
}

/// Rebuilds each canonical coefficient directly: `C_j` is the unique
/// residue in `[0, P)` that is `-1` modulo `p_j` and `0` modulo every
/// other basis prime, found by inverting `P/p_j` modulo `p_j`.
pub fn synthesize_crt(basis: &PrimeBasis) -> WheelFormula {
    let primorial = basis.primorial();
    let coefficients: Vec<BigInt> = basis.primes()[1..]
        .iter()
        .map(|&p| {
            let p_big = BigInt::from(p);
            let cofactor = primorial / &p_big;
            let (_, inverse, _) = ext_gcd(&mod_euclid(&cofactor, &p_big), &p_big)
                .expect("cofactor is non-zero modulo p");
            let multiplier = mod_euclid(&-inverse, &p_big);
            cofactor * multiplier
        })
        .collect();
    WheelFormula::from_raw(basis.clone(), coefficients)
}

/// Convenience check used by tests and the CLI: both synthesis routes,
/// compared coefficient by coefficient.
pub fn routes_agree(basis: &PrimeBasis) -> Result<bool> {
    let (eliminated, _) = synthesize_elimination(basis);
    let reconstructed = synthesize_crt(basis);
    Ok(eliminated == reconstructed)
}
