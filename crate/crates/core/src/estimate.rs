//! High-precision estimation of the initial-condition constant K from orbits.
//!
//! The orbit x_{n+1} = f(x_n) is iterated with the catalog's closed-form
//! evaluator at explicit decimal precision, asserting strict monotone decrease
//! at every step. The constant is then solved from the truncated expansion by
//! a Newton iteration in K, and trust is earned rather than asserted:
//!
//! - [`solve_k`] runs at two orbit depths N and 2N; the count of agreeing
//!   leading digits, minus one, is the trusted digit count,
//! - [`estimate_c`] escalates N (10⁴ → 10⁵ → 10⁶) and working precision until
//!   the requested digits are trusted or the resource cap is reached, in which
//!   case the error reports the best result achieved,
//! - [`shifted_constant`] converts a result to the constant of the same orbit
//!   started `steps` indices later (K advances by exactly 1 per step).

use crate::bigfloat::BigFloat;
use crate::catalog::{CatalogFunction, Initial};
use crate::expansion::AsymptoticExpansion;
use crate::rational::rat_int;
use num_bigint::BigInt;
use num_traits::pow::Pow;
use std::fmt;

/// Orbit depths tried in order by [`estimate_c`].
pub const N_SCHEDULE: [u64; 3] = [10_000, 100_000, 1_000_000];

/// A constant estimate together with the evidence behind it.
#[derive(Debug, Clone)]
pub struct EstimateResult {
    /// Function name.
    pub name: String,
    /// Canonical constant K.
    pub k: BigFloat,
    /// Published constant C = σ·K/scale.
    pub published_c: BigFloat,
    /// Leading digits agreeing between the N and 2N solves, minus one.
    pub trusted_digits: usize,
    /// Orbit depth of the final solve (the 2N leg).
    pub n_used: u64,
    /// Working decimal precision of the final solve.
    pub precision_used: u32,
    /// |expansion(N_used, K) − x_{N_used}| after the final solve.
    pub residual: BigFloat,
}

/// Failures of iteration, solving, or escalation.
#[derive(Debug, Clone)]
pub enum EstimateError {
    /// The start lies outside the function's admissible window.
    StartRejected {
        name: String,
        start: String,
        window: String,
    },
    /// The orbit stopped decreasing strictly inside (0, x_prev).
    MonotonicityViolation { step: u64 },
    /// The Newton solve hit a vanishing derivative.
    DerivativeVanished { n: u64 },
    /// The Newton solve did not converge in 64 steps.
    NewtonStalled { n: u64 },
    /// The escalation schedule ran out before reaching the target.
    ResourceCapExceeded { best: Box<EstimateResult> },
}

impl fmt::Display for EstimateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimateError::StartRejected { name, start, window } => {
                write!(f, "start {start} for {name} is outside the admissible window: {window}")
            }
            EstimateError::MonotonicityViolation { step } => write!(
                f,
                "orbit stopped decreasing strictly at step {step} \
                 (start inadmissible or precision exhausted)"
            ),
            EstimateError::DerivativeVanished { n } => {
                write!(f, "constant solve at n = {n}: derivative vanished")
            }
            EstimateError::NewtonStalled { n } => {
                write!(f, "constant solve at n = {n} did not converge in 64 steps")
            }
            EstimateError::ResourceCapExceeded { best } => write!(
                f,
                "resource cap exceeded: best {} trusted digits at N = {}, precision {}",
                best.trusted_digits, best.n_used, best.precision_used
            ),
        }
    }
}

impl std::error::Error for EstimateError {}

/// Smallest g with 10^g ≥ n.
fn ceil_log10(n: u64) -> u32 {
    let mut g = 0;
    let mut pow = 1u64;
    while pow < n {
        pow = pow.saturating_mul(10);
        g += 1;
    }
    g
}

/// Iterates the orbit once, returning x at each requested index.
///
/// `marks` must be strictly increasing and start at 1 or later. Every step is
/// checked for strict monotone decrease into (0, x_prev).
pub fn iterate_marks(
    f: &CatalogFunction,
    x0: &BigFloat,
    marks: &[u64],
    digits: u32,
) -> Result<Vec<BigFloat>, EstimateError> {
    assert!(!marks.is_empty(), "at least one orbit index is required");
    assert!(
        marks.windows(2).all(|w| w[0] < w[1]) && marks[0] >= 1,
        "orbit indices must be strictly increasing and at least 1"
    );
    let mut x = x0.with_digits(digits);
    if !x.is_positive() {
        return Err(EstimateError::MonotonicityViolation { step: 0 });
    }
    let mut out = Vec::with_capacity(marks.len());
    let mut next_mark = 0;
    let last = *marks.last().expect("nonempty marks");
    for step in 1..=last {
        let next = (f.evaluator)(&x);
        if !next.is_positive() || next >= x {
            return Err(EstimateError::MonotonicityViolation { step });
        }
        x = next;
        if marks[next_mark] == step {
            out.push(x.clone());
            next_mark += 1;
        }
    }
    Ok(out)
}

/// x_N for the orbit started at x0, at the given precision.
pub fn iterate(
    f: &CatalogFunction,
    x0: &BigFloat,
    n: u64,
    digits: u32,
) -> Result<BigFloat, EstimateError> {
    Ok(iterate_marks(f, x0, &[n], digits)?.pop().expect("one mark"))
}

/// Solves evaluateAt(n, K) = x_n for K by Newton iteration.
///
/// The seed is the first-order inversion K₀ = −τ·n·(x_n·(n/λ)^{1/τ} − 1) − b₁·ln n.
/// Iteration stops once |step| ≤ 10^{⌊log₁₀ n⌋ + 4 − digits}, a practical
/// floor that stays above the evaluation noise amplified by the K-sensitivity
/// of the expansion (≈ n^{1+1/τ}).
pub fn solve_k(
    exp: &AsymptoticExpansion,
    n: u64,
    x_n: &BigFloat,
    digits: u32,
) -> Result<BigFloat, EstimateError> {
    assert!(exp.max_order() >= 1, "the table must depend on K to solve for it");
    let target = x_n.with_digits(digits);
    let nf = BigFloat::from_u64(n, digits);
    let log_n = nf.ln();
    let lam = exp.lambda_numeric(digits);
    let tau = i64::from(exp.tau);
    // b₁ = −τ·Q_{1,1}, recovered exactly from the table itself.
    let b1 = rat_int(-tau) * exp.terms[1][1].coeff(0);
    let ratio = nf.div(&lam).nth_root(exp.tau);
    let linear = (&(&(&target * &ratio) - &BigFloat::one(digits)) * &nf).mul_int(-tau);
    let mut k = &linear - &(&BigFloat::from_rational(&b1, digits) * &log_n);
    let threshold_exponent = u32::try_from(nf.ilog10_abs().expect("n >= 2")).expect("small") + 4;
    let threshold = BigFloat::from_scaled(BigInt::from(10).pow(threshold_exponent), digits);
    for _ in 0..64 {
        let (value, derivative) = exp.evaluate_with_derivative(n, &k, digits);
        if derivative.is_zero() {
            return Err(EstimateError::DerivativeVanished { n });
        }
        let step = (&value - &target).div(&derivative);
        k = &k - &step;
        if step.abs() <= threshold {
            return Ok(k);
        }
    }
    Err(EstimateError::NewtonStalled { n })
}

/// Count of agreeing leading significant digits of two values.
pub fn digits_of_agreement(a: &BigFloat, b: &BigFloat) -> usize {
    let shared = a.digits().min(b.digits());
    let (a, b) = (a.with_digits(shared), b.with_digits(shared));
    let (a, b) = (&a, &b);
    let difference = (a - b).abs();
    if difference.is_zero() {
        return a.digits().min(b.digits()) as usize;
    }
    let magnitude = if a.abs() >= b.abs() { a.abs() } else { b.abs() };
    match (magnitude.ilog10_abs(), difference.ilog10_abs()) {
        (Some(m), Some(d)) => usize::try_from((m - d).max(0)).expect("nonnegative"),
        _ => 0,
    }
}

/// Runs one (N, 2N) solve pair at the precision sized for that depth.
fn estimate_round(
    f: &CatalogFunction,
    exp: &AsymptoticExpansion,
    x0: &Initial,
    target_digits: usize,
    n: u64,
) -> Result<EstimateResult, EstimateError> {
    let digits = u32::try_from(target_digits).expect("sane target") + 10 + ceil_log10(2 * n);
    let start = x0.to_bigfloat(digits);
    if !f.start_bound.admits(&start) {
        return Err(EstimateError::StartRejected {
            name: f.spec.name.clone(),
            start: x0.to_string(),
            window: f.start_bound.describe(),
        });
    }
    let orbit = iterate_marks(f, &start, &[n, 2 * n], digits)?;
    let k_n = solve_k(exp, n, &orbit[0], digits)?;
    let k_2n = solve_k(exp, 2 * n, &orbit[1], digits)?;
    let trusted_digits = digits_of_agreement(&k_n, &k_2n).saturating_sub(1);
    let residual = (&exp.evaluate_at(2 * n, &k_2n, digits) - &orbit[1]).abs();
    Ok(EstimateResult {
        name: f.spec.name.clone(),
        published_c: exp.constant_from_k(&k_2n),
        k: k_2n,
        trusted_digits,
        n_used: 2 * n,
        precision_used: digits,
        residual,
    })
}

/// Estimates the constant for the orbit of `f` started at `x0` to
/// `target_digits` trusted digits, escalating through `schedule`.
pub fn estimate_c_with_schedule(
    f: &CatalogFunction,
    exp: &AsymptoticExpansion,
    x0: &Initial,
    target_digits: usize,
    schedule: &[u64],
) -> Result<EstimateResult, EstimateError> {
    assert!(!schedule.is_empty(), "at least one orbit depth is required");
    let mut best: Option<EstimateResult> = None;
    for &n in schedule {
        let round = estimate_round(f, exp, x0, target_digits, n)?;
        if round.trusted_digits >= target_digits {
            return Ok(round);
        }
        let better = best
            .as_ref()
            .map(|b| round.trusted_digits > b.trusted_digits)
            .unwrap_or(true);
        if better {
            best = Some(round);
        }
    }
    Err(EstimateError::ResourceCapExceeded {
        best: Box::new(best.expect("at least one round ran")),
    })
}

/// [`estimate_c_with_schedule`] over the standard 10⁴ → 10⁵ → 10⁶ schedule.
pub fn estimate_c(
    f: &CatalogFunction,
    exp: &AsymptoticExpansion,
    x0: &Initial,
    target_digits: usize,
) -> Result<EstimateResult, EstimateError> {
    estimate_c_with_schedule(f, exp, x0, target_digits, &N_SCHEDULE)
}

/// Published constant of the same orbit started `steps` indices later:
/// K advances by exactly `steps`, so C' = σ·(K + steps)/scale.
pub fn shifted_constant(
    result: &EstimateResult,
    steps: i64,
    exp: &AsymptoticExpansion,
) -> BigFloat {
    let shifted = &result.k + &BigFloat::from_i64(steps, result.k.digits());
    exp.constant_from_k(&shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::engine::derive_all;
    use crate::expansion::assemble;
    use crate::rational::rat;

    fn setup(name: &str) -> (CatalogFunction, AsymptoticExpansion) {
        let entry = lookup(name).expect("catalog entry");
        let derivation = derive_all(&entry.spec);
        let exp = assemble(&derivation, entry.spec.depth_j());
        (entry, exp)
    }

    #[test]
    fn short_orbits_hit_closed_form_values() {
        let (logistic, _) = setup("logistic");
        let half = BigFloat::from_rational(&rat(1, 2), 30);
        let x2 = iterate(&logistic, &half, 2, 30).unwrap();
        assert_eq!(x2, BigFloat::from_rational(&rat(3, 16), 30));

        let (sine, _) = setup("sin");
        let start = Initial::PiOver(2).to_bigfloat(30);
        let x1 = iterate(&sine, &start, 1, 30).unwrap();
        assert!((&x1 - &BigFloat::one(30)).abs() <= BigFloat::ulp(30).mul_int(2));

        let (w, _) = setup("lambert-w");
        let one = BigFloat::one(30);
        let x1 = iterate(&w, &one, 1, 30).unwrap();
        let omega = BigFloat::parse("0.567143290409783872999968662210", 30).unwrap();
        assert!((&x1 - &omega).abs() <= BigFloat::ulp(30).mul_int(4));
    }

    #[test]
    fn orbits_that_stop_decreasing_are_reported() {
        let (mut doubler, _) = setup("logistic");
        fn grow(x: &BigFloat) -> BigFloat {
            x.mul_int(2)
        }
        doubler.evaluator = grow;
        let half = BigFloat::from_rational(&rat(1, 2), 20);
        match iterate(&doubler, &half, 5, 20) {
            Err(EstimateError::MonotonicityViolation { step: 1 }) => {}
            other => panic!("expected a monotonicity violation, got {other:?}"),
        }
    }

    #[test]
    fn inadmissible_starts_are_rejected() {
        let (logistic, exp) = setup("logistic");
        let start = Initial::Value(rat(3, 2));
        match estimate_c_with_schedule(&logistic, &exp, &start, 8, &[100]) {
            Err(EstimateError::StartRejected { name, .. }) => assert_eq!(name, "logistic"),
            other => panic!("expected a start rejection, got {other:?}"),
        }
    }

    #[test]
    fn solving_recovers_a_synthetic_constant() {
        let (_, exp) = setup("sin");
        let digits = 30;
        let k_true = BigFloat::parse("1.43045534652867724470", digits).unwrap();
        let x_synthetic = exp.evaluate_at(10_000, &k_true, digits);
        let k_back = solve_k(&exp, 10_000, &x_synthetic, digits).unwrap();
        let err = (&k_back - &k_true).abs();
        assert!(
            err <= BigFloat::parse("0.00000000000000000001", digits).unwrap(),
            "recovered {} vs {}",
            k_back.to_sci_string(25),
            k_true.to_sci_string(25)
        );
    }

    #[test]
    fn the_logistic_constant_is_reproduced() {
        let (logistic, exp) = setup("logistic");
        let result = estimate_c(&logistic, &exp, &Initial::Value(rat(1, 2)), 12).unwrap();
        assert!(result.trusted_digits >= 12);
        assert_eq!(result.n_used, 20_000);
        let reference = BigFloat::parse("1.76799378613615405044", result.precision_used).unwrap();
        assert!(digits_of_agreement(&result.published_c, &reference) >= 13);
        // The solve ends essentially on the measured orbit point.
        assert!(result.residual <= BigFloat::ulp(result.precision_used).mul_int(1000));
    }

    #[test]
    fn doubling_the_orbit_again_confirms_the_trusted_digits() {
        let (logistic, exp) = setup("logistic");
        let result =
            estimate_c_with_schedule(&logistic, &exp, &Initial::Value(rat(1, 2)), 10, &[5_000])
                .unwrap();
        let digits = result.precision_used;
        let start = BigFloat::from_rational(&rat(1, 2), digits);
        let x_4n = iterate(&logistic, &start, 2 * result.n_used, digits).unwrap();
        let k_4n = solve_k(&exp, 2 * result.n_used, &x_4n, digits).unwrap();
        assert!(digits_of_agreement(&k_4n, &result.k) >= result.trusted_digits);
    }

    #[test]
    fn doubling_the_precision_does_not_move_the_constant() {
        let (logistic, exp) = setup("logistic");
        let start = Initial::Value(rat(1, 2));
        let result = estimate_c_with_schedule(&logistic, &exp, &start, 10, &[5_000]).unwrap();
        // Re-run the final solve at twice the working precision.
        let digits = result.precision_used * 2;
        let x = iterate(&logistic, &BigFloat::from_rational(&rat(1, 2), digits), result.n_used, digits)
            .unwrap();
        let k_hi = solve_k(&exp, result.n_used, &x, digits).unwrap();
        let drift = (&k_hi - &result.k.with_digits(digits)).abs();
        let mut bound = BigFloat::one(digits);
        for _ in 0..result.trusted_digits {
            bound = bound.div_int(10);
        }
        assert!(
            drift < bound,
            "precision doubling moved K by {}",
            drift.to_sci_string(5)
        );
    }

    #[test]
    fn the_resource_cap_reports_the_best_round() {
        let (logistic, exp) = setup("logistic");
        let start = Initial::Value(rat(1, 2));
        match estimate_c_with_schedule(&logistic, &exp, &start, 30, &[100, 200]) {
            Err(EstimateError::ResourceCapExceeded { best }) => {
                assert!(best.trusted_digits < 30);
                assert_eq!(best.n_used, 400);
            }
            other => panic!("expected the resource cap, got {other:?}"),
        }
    }

    #[test]
    fn advancing_the_start_shifts_the_constant_by_one() {
        let (sine, exp) = setup("sin");
        let from_pi_half =
            estimate_c_with_schedule(&sine, &exp, &Initial::PiOver(2), 12, &[4_000]).unwrap();
        let from_one =
            estimate_c_with_schedule(&sine, &exp, &Initial::Value(rat(1, 1)), 12, &[4_000])
                .unwrap();
        // y_k = x_{k+1}, so K_y = K_x + 1 and the published constants differ by 1.
        let predicted = shifted_constant(&from_pi_half, 1, &exp);
        let agreement = digits_of_agreement(&predicted, &from_one.published_c);
        assert!(
            agreement >= 12,
            "predicted {} vs estimated {}",
            predicted.to_sci_string(20),
            from_one.published_c.to_sci_string(20)
        );
    }
}
