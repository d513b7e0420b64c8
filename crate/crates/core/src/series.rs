//! Formal power series in block form, and the series oracles that
//! independently re-derive the engine's coefficient families.
//!
//! A map f(x) = x + a₁x^{τ+1} + ⋯ + a_K x^{Kτ+1} is stored as its block
//! coefficients (a₁..a_K): substituting t = x^τ makes f(x) = x·G(t) with
//! G(t) = 1 + Σ a_m t^m, and every operation below works in ℚ[t]/t^{K+1}.
//!
//! Provides:
//! - [`PowerSeries`] with provenance tracking,
//! - [`compose_series`] and [`revert_series`] (compositional inverse),
//! - [`kindred_of`] — reversion followed by the blockwise sign flip
//!   ĝ_m ↦ (−1)^m·ĝ_m, the involution pairing the catalog's functions,
//! - three oracles ([`oracle_y_difference`], [`oracle_log_ratio`],
//!   [`oracle_power_difference`]) that expand the defining drift series of
//!   the b, a₀,ⱼ, and a_{i,j} families directly, sharing no code with the
//!   engine's partition formulas.

use crate::engine::SeriesSpec;
use crate::rational::{rat_int, rat_pow, Rational};
use num_traits::{One, Zero};
use std::fmt;

/// Where a series came from; propagated so reports can say how a partner
/// series was constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesOrigin {
    /// Written down directly (catalog closed form or user input).
    ClosedForm,
    /// Compositional inverse of another series.
    Reverted,
    /// Kindred construction applied to the named series.
    KindredOf(String),
}

/// A map in block form: x + Σ_{m=1..K} coeffs[m−1]·x^{mτ+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    /// Block exponent τ ≥ 1.
    pub tau: u32,
    /// Block coefficients a₁..a_K.
    pub coeffs: Vec<Rational>,
    /// Provenance of the series.
    pub origin: SeriesOrigin,
}

/// Errors from series-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Composition and reversion require matching block exponents.
    TauMismatch { left: u32, right: u32 },
    /// Reversion needs at least one coefficient.
    Empty,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::TauMismatch { left, right } => {
                write!(f, "block exponents differ: {left} vs {right}")
            }
            SeriesError::Empty => write!(f, "series has no coefficients"),
        }
    }
}

impl std::error::Error for SeriesError {}

impl PowerSeries {
    /// A closed-form series from raw block coefficients.
    pub fn new(tau: u32, coeffs: Vec<Rational>) -> Self {
        PowerSeries { tau, coeffs, origin: SeriesOrigin::ClosedForm }
    }

    /// Block depth K.
    pub fn depth_k(&self) -> usize {
        self.coeffs.len()
    }

    /// The same map as a validated spec (for the coefficient engine).
    pub fn to_spec(&self, spec_like: &SeriesSpec) -> SeriesSpec {
        SeriesSpec {
            name: spec_like.name.clone(),
            tau: self.tau,
            a: self.coeffs.clone(),
            theta: spec_like.theta,
            convention: spec_like.convention.clone(),
        }
    }
}

impl From<&SeriesSpec> for PowerSeries {
    fn from(spec: &SeriesSpec) -> Self {
        PowerSeries::new(spec.tau, spec.a.clone())
    }
}

// --- dense truncated-series helpers over ℚ[t]/t^{len} -----------------------
//
// Vectors hold coefficients of t^0..t^{len−1}. All operations truncate to the
// input length, which is exact for every consumer here: higher-order terms
// never feed back into lower orders.

pub(crate) fn ts_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

pub(crate) fn ts_pow(a: &[Rational], exp: u32, len: usize) -> Vec<Rational> {
    let mut result = vec![Rational::zero(); len];
    result[0] = Rational::one();
    let mut acc = a.to_vec();
    acc.resize(len, Rational::zero());
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = ts_mul(&result, &acc, len);
        }
        e >>= 1;
        if e > 0 {
            acc = ts_mul(&acc, &acc, len);
        }
    }
    result
}

/// Multiplicative inverse of a series with unit constant term.
pub(crate) fn ts_inv(a: &[Rational], len: usize) -> Vec<Rational> {
    assert!(a[0].is_one(), "series inverse needs constant term 1");
    let mut out = vec![Rational::zero(); len];
    out[0] = Rational::one();
    for n in 1..len {
        // coefficient of t^n in a·out must vanish.
        let mut acc = Rational::zero();
        for i in 1..=n {
            if let Some(ai) = a.get(i) {
                acc += ai * &out[n - i];
            }
        }
        out[n] = -acc;
    }
    out
}

/// ln(1 + u) for a series u with zero constant term.
pub(crate) fn ts_ln_one_plus(u: &[Rational], len: usize) -> Vec<Rational> {
    assert!(u[0].is_zero(), "log expansion needs zero constant term");
    let mut out = vec![Rational::zero(); len];
    let mut power = {
        let mut unit = vec![Rational::zero(); len];
        unit[0] = Rational::one();
        unit
    };
    for k in 1..len {
        power = ts_mul(&power, u, len);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let weight = rat_int(sign) / rat_int(k as i64);
        for (slot, coeff) in out.iter_mut().zip(&power) {
            *slot += coeff * &weight;
        }
    }
    out
}

/// (1 + u)^e for integer e (negative exponents via the series inverse).
pub(crate) fn ts_one_plus_pow(u: &[Rational], e: i64, len: usize) -> Vec<Rational> {
    let mut base = u.to_vec();
    base.resize(len, Rational::zero());
    base[0] += Rational::one();
    let positive = ts_pow(&base, e.unsigned_abs() as u32, len);
    if e >= 0 {
        positive
    } else {
        ts_inv(&positive, len)
    }
}

// --- composition / reversion / kindred ---------------------------------------

/// f∘g truncated to the shorter block depth.
///
/// In block form: (f∘g)(x) = x·G(t)·[1 + Σ_m a_m·t^m·G(t)^{mτ}] where
/// G(t) = 1 + Σ ĝ_m t^m is the inner series' block factor.
pub fn compose_series(f: &PowerSeries, g: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    if f.tau != g.tau {
        return Err(SeriesError::TauMismatch { left: f.tau, right: g.tau });
    }
    let k = f.depth_k().min(g.depth_k());
    if k == 0 {
        return Err(SeriesError::Empty);
    }
    let len = k + 1;
    let mut g_factor = vec![Rational::zero(); len];
    g_factor[0] = Rational::one();
    for (m, coeff) in g.coeffs.iter().take(k).enumerate() {
        g_factor[m + 1] = coeff.clone();
    }
    // bracket = 1 + Σ_m a_m t^m G^{mτ}
    let mut bracket = vec![Rational::zero(); len];
    bracket[0] = Rational::one();
    for (idx, a_m) in f.coeffs.iter().take(k).enumerate() {
        let m = idx + 1;
        if a_m.is_zero() {
            continue;
        }
        let g_pow = ts_pow(&g_factor, (m as u32) * f.tau, len);
        for (j, coeff) in g_pow.iter().enumerate().take(len - m) {
            bracket[m + j] += a_m * coeff;
        }
    }
    let product = ts_mul(&g_factor, &bracket, len);
    Ok(PowerSeries {
        tau: f.tau,
        coeffs: product[1..].to_vec(),
        origin: SeriesOrigin::ClosedForm,
    })
}

/// Compositional inverse truncated to the same block depth: the unique series
/// h with f(h(x)) = x + O(x^{(K+1)τ+1}).
///
/// Uses Lagrange inversion in block form: with f(x) = x·F(t), t = x^τ, the
/// inverse's m-th block coefficient is [t^m] F(t)^{−(mτ+1)} / (mτ+1). The
/// running power F^{−(mτ+1)} advances by one multiplication with F^{−τ} per
/// order, so depth K costs O(K³) coefficient multiplications — cheap enough
/// to invert far past the catalog depths.
pub fn revert_series(f: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    let k = f.depth_k();
    if k == 0 {
        return Err(SeriesError::Empty);
    }
    let len = k + 1;
    let mut f_factor = vec![Rational::zero(); len];
    f_factor[0] = Rational::one();
    for (idx, a_m) in f.coeffs.iter().enumerate() {
        f_factor[idx + 1] = a_m.clone();
    }
    let f_inv = ts_inv(&f_factor, len);
    let f_inv_tau = ts_pow(&f_inv, f.tau, len);
    let mut running = f_inv; // F^{−(mτ+1)} at m = 0
    let mut coeffs = Vec::with_capacity(k);
    for m in 1..=k {
        running = ts_mul(&running, &f_inv_tau, len);
        let order = rat_int((m as i64) * i64::from(f.tau) + 1);
        coeffs.push(&running[m] / order);
    }
    Ok(PowerSeries { tau: f.tau, coeffs, origin: SeriesOrigin::Reverted })
}

/// The kindred partner: revert, then flip every other block coefficient
/// (ĝ_m ↦ (−1)^m ĝ_m). Applied twice this returns the original map.
pub fn kindred_of(f: &PowerSeries, source_name: &str) -> Result<PowerSeries, SeriesError> {
    let mut reverted = revert_series(f)?;
    for (idx, coeff) in reverted.coeffs.iter_mut().enumerate() {
        if idx % 2 == 0 {
            // block index m = idx + 1 is odd: flip.
            *coeff = -&*coeff;
        }
    }
    reverted.origin = SeriesOrigin::KindredOf(source_name.to_string());
    Ok(reverted)
}

// --- oracles ------------------------------------------------------------------
//
// All three expand a drift series of the scaled inverse iterate y = λ/x^τ.
// With z = 1/y and u(z) = Σ_m v_m z^m, v_m = a_m λ^m, one iteration sends
// y to y·(1 + u)^{−τ}-ish quantities whose expansions are exactly the
// coefficient families. The truncation is exact for every reported index.

fn scaled_blocks(series: &PowerSeries) -> (Vec<Rational>, usize) {
    let k = series.depth_k();
    let lambda = -(rat_int(1) / (rat_int(i64::from(series.tau)) * &series.coeffs[0]));
    let mut u = vec![Rational::zero(); k + 1];
    for (idx, a_m) in series.coeffs.iter().enumerate() {
        u[idx + 1] = a_m * rat_pow(&lambda, (idx + 1) as u32);
    }
    (u, k)
}

/// Drift of the inverse iterate: expands y_{n+1} − y_n = y[(1+u)^{−τ} − 1]
/// in powers of 1/y and returns [1, b₁, b₂, …, b_J].
pub fn oracle_y_difference(series: &PowerSeries) -> Vec<Rational> {
    let (u, k) = scaled_blocks(series);
    let len = k + 1;
    let expanded = ts_one_plus_pow(&u, -i64::from(series.tau), len);
    // y·(expanded − 1): coefficient of z^j is expanded[j+1].
    (1..len).map(|j| expanded[j].clone()).collect()
}

/// Logarithmic drift: expands −τ·ln(1+u) and returns [a₀,₁, …, a₀,J]
/// (coefficients of z¹..z^J).
pub fn oracle_log_ratio(series: &PowerSeries) -> Vec<Rational> {
    let (u, k) = scaled_blocks(series);
    let len = k + 1;
    let log = ts_ln_one_plus(&u, len);
    let minus_tau = rat_int(-i64::from(series.tau));
    (1..k).map(|j| &log[j] * &minus_tau).collect()
}

/// Shifted power differences: expands y^{−i}·[(1+u)^{iτ} − 1] and returns
/// [a_{i,i+1}, …, a_{i,J}] (the coefficient of z^j overall is the bracket's
/// coefficient of z^{j−i}).
pub fn oracle_power_difference(series: &PowerSeries, i: usize) -> Vec<Rational> {
    let (u, k) = scaled_blocks(series);
    let jmax = k - 1;
    assert!(i >= 1 && i < jmax, "power-difference row needs 1 <= i < J");
    let len = k + 1;
    let bracket = ts_one_plus_pow(&u, (i as i64) * i64::from(series.tau), len);
    ((i + 1)..=jmax).map(|j| bracket[j - i].clone()).collect()
}
