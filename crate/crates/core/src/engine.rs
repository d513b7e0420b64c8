//! Exact derivation of the coefficient families and polynomial towers that
//! govern the asymptotics of iterates x_{n+1} = f(x_n) → 0 for analytic maps
//! f(x) = x + a₁x^{τ+1} + a₂x^{2τ+1} + ⋯ with a₁ < 0.
//!
//! Provides:
//! - [`SeriesSpec`] — a validated map description (τ, a₁..a_K, optional
//!   symbolic scale θ, and the sign/scaling convention for reporting the
//!   integration constant),
//! - [`compute_lambda`], [`compute_b`], [`compute_a0`], [`compute_aij`],
//!   [`compute_c`] — the scalar coefficient families,
//! - [`compute_t`], [`compute_p`] — the T_m and P_m polynomial towers,
//! - [`derive_all`] — everything at once, memoized per spec.
//!
//! With K coefficients the derivation depth is J = K − 1: b₁..b_J, a₀,₁..a₀,J,
//! a_{i,j} for 1 ≤ i < j ≤ J, c₀..c_{J−1}, T₁..T_J and P₀..P_J are defined.

use crate::combinatorics::{factorial, falling_factorial, multinomial, partitions};
use crate::poly::RatPoly;
use crate::rational::{format_rational, rat_int, rat_pow, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Sign of the constant in the displayed expansion: which of the two
/// conventional forms (+C or −C inside the logarithm argument) a function's
/// published constant uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// +1 or −1.
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// How a published constant C relates to the engine's canonical constant K
/// (the constant in X_n = −(1/τ)(b₁·ln n + K)): C = sigma·K / c_scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convention {
    /// Sign flip between K and the published C.
    pub sigma: Sign,
    /// Scale divisor between K and the published C (1 or 2 in practice).
    pub c_scale: Rational,
}

impl Convention {
    pub fn new(sigma: Sign, c_scale: Rational) -> Self {
        Convention { sigma, c_scale }
    }

    /// The plain convention: C = K.
    pub fn plus_one() -> Self {
        Convention::new(Sign::Plus, Rational::one())
    }
}

/// Optional symbolic scale θ: coefficients are stored reduced, with the true
/// map having a_m = r_m·θ^m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaScale {
    /// No scale; stored coefficients are the map's coefficients.
    One,
    /// θ = π²: the stored r_m satisfy a_m = r_m·π^{2m}.
    PiSquared,
}

/// Validated description of a map f(x) = x + Σ_m a_m x^{mτ+1}.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    /// Display name (catalog key or user label).
    pub name: String,
    /// Block exponent τ ≥ 1.
    pub tau: u32,
    /// Coefficients a₁..a_K (reduced by θ when `theta` is not `One`).
    pub a: Vec<Rational>,
    /// Symbolic scale carried outside the rational coefficients.
    pub theta: ThetaScale,
    /// How to map the canonical constant K to the published C.
    pub convention: Convention,
}

/// Validation failures when constructing a [`SeriesSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    /// τ must be at least one.
    InvalidTau { tau: u32 },
    /// At least two coefficients are needed for a nontrivial derivation.
    TooFewCoefficients { got: usize },
    /// a₁ < 0 is what makes the iterates decrease toward the fixed point at
    /// the origin; a nonnegative leading coefficient leaves nothing to expand.
    LeadingCoefficientNotNegative { a1: String },
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::InvalidTau { tau } => write!(f, "tau must be >= 1 (got {tau})"),
            SpecError::TooFewCoefficients { got } => {
                write!(f, "need at least 2 series coefficients (got {got})")
            }
            SpecError::LeadingCoefficientNotNegative { a1 } => write!(
                f,
                "a_1 must be negative (got {a1}): the iterates converge \
                 decreasingly to 0 only when the leading correction pulls down"
            ),
        }
    }
}

impl std::error::Error for SpecError {}

impl SeriesSpec {
    /// Validates and builds a spec.
    pub fn new(
        name: impl Into<String>,
        tau: u32,
        a: Vec<Rational>,
        theta: ThetaScale,
        convention: Convention,
    ) -> Result<Self, SpecError> {
        if tau < 1 {
            return Err(SpecError::InvalidTau { tau });
        }
        if a.len() < 2 {
            return Err(SpecError::TooFewCoefficients { got: a.len() });
        }
        if !a[0].is_negative() {
            return Err(SpecError::LeadingCoefficientNotNegative {
                a1: format_rational(&a[0]),
            });
        }
        Ok(SeriesSpec {
            name: name.into(),
            tau,
            a,
            theta,
            convention,
        })
    }

    /// Number of stored coefficients K.
    pub fn depth_k(&self) -> usize {
        self.a.len()
    }

    /// Derivation depth J = K − 1.
    pub fn depth_j(&self) -> usize {
        self.a.len() - 1
    }

    /// Memoization key: everything the derivation depends on.
    fn cache_key(&self) -> CacheKey {
        CacheKey {
            tau: self.tau,
            a: self.a.iter().map(format_rational).collect(),
        }
    }
}

/// The scalar coefficient families of a derivation.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSet {
    /// λ = −1/(τ·a₁).
    pub lambda: Rational,
    /// b₁..b_J (index j−1 holds b_j).
    pub b: Vec<Rational>,
    /// a₀,₁..a₀,J (index j−1 holds a₀,j).
    pub a0: Vec<Rational>,
    /// a_{i,j} for 1 ≤ i < j ≤ J: `aij[i−1][j−i−1]` holds a_{i,j}.
    pub aij: Vec<Vec<Rational>>,
    /// c₀..c_{J−1} (index i holds c_i).
    pub c: Vec<Rational>,
}

impl CoeffSet {
    /// a_{i,j} for 1 ≤ i < j ≤ J.
    pub fn aij_at(&self, i: usize, j: usize) -> &Rational {
        assert!(i >= 1 && j > i, "a_(i,j) requires 1 <= i < j");
        &self.aij[i - 1][j - i - 1]
    }
}

/// The polynomial towers of a derivation.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySet {
    /// T₁..T_J (index m−1 holds T_m).
    pub t: Vec<RatPoly>,
    /// T̃_m(X) = T_m(−τX), same indexing.
    pub t_tilde: Vec<RatPoly>,
    /// P₀..P_J (index m holds P_m).
    pub p: Vec<RatPoly>,
}

/// λ = −1/(τ·a₁); positive because a₁ < 0.
pub fn compute_lambda(spec: &SeriesSpec) -> Rational {
    -(rat_int(1) / (rat_int(i64::from(spec.tau)) * &spec.a[0]))
}

/// Sums multinomial(m−s; n)·Π wᵢ^{nᵢ} over the partition set (k, m, s).
fn weighted_partition_sum(k: usize, m: usize, s: usize, weights: &[Rational]) -> Rational {
    let top = (m - s) as u32;
    let mut sum = Rational::zero();
    for solution in partitions(k as u32, m as u32, s as i64) {
        let mut term = multinomial(top, &solution.n).expect("partition counts sum to m−s");
        for (idx, &e) in solution.n.iter().enumerate() {
            if e > 0 {
                term *= rat_pow(&weights[idx], e);
            }
        }
        sum += term;
    }
    sum
}

/// b₁..b_J: the coefficients of the inverse-iterate drift
/// y_{n+1} − y_n = 1 + b₁/y + b₂/y² + ⋯ where y = λ/xᵗ.
pub fn compute_b(spec: &SeriesSpec) -> Vec<Rational> {
    let k = spec.depth_k();
    let lambda = compute_lambda(spec);
    let minus_tau = rat_int(-i64::from(spec.tau));
    (1..=spec.depth_j())
        .map(|j| {
            let mut sum = Rational::zero();
            for s in 0..=j {
                let factors = (j + 1 - s) as u32;
                let weight = falling_factorial(&minus_tau, factors).expect("factors >= 1")
                    / factorial(factors);
                sum += weight * weighted_partition_sum(k, j + 1, s, &spec.a);
            }
            rat_pow(&lambda, (j + 1) as u32) * sum
        })
        .collect()
}

/// Weight vector (1, b₁, b₂, …) used by the log-ratio and power-difference
/// families: slot i (1-based) carries b_{i−1} with b₀ = 1.
fn b_weights(k: usize, b: &[Rational]) -> Vec<Rational> {
    let mut weights = Vec::with_capacity(k);
    weights.push(Rational::one());
    weights.extend(b.iter().take(k - 1).cloned());
    weights
}

/// a₀,₁..a₀,J: coefficients of the logarithmic drift
/// −τ·ln(x_{n+1}/x_n)·y = a₀,₁ + a₀,₂/y + ⋯ (a₀,₁ = 1 always).
pub fn compute_a0(spec: &SeriesSpec, b: &[Rational]) -> Vec<Rational> {
    let k = spec.depth_k();
    let weights = b_weights(k, b);
    (1..=spec.depth_j())
        .map(|j| {
            let mut sum = Rational::zero();
            for s in 0..j {
                let sign = if (j - 1 - s) % 2 == 0 { 1 } else { -1 };
                let weight = rat_int(sign) / rat_int((j - s) as i64);
                sum += weight * weighted_partition_sum(k, j, s, &weights);
            }
            sum
        })
        .collect()
}

/// a_{i,j} for 1 ≤ i < j ≤ J: coefficients of the shifted power differences
/// (a_{i,i+1} = −i always).
pub fn compute_aij(spec: &SeriesSpec, b: &[Rational]) -> Vec<Vec<Rational>> {
    let k = spec.depth_k();
    let jmax = spec.depth_j();
    let weights = b_weights(k, b);
    let mut rows = Vec::new();
    for i in 1..jmax {
        let minus_i = rat_int(-(i as i64));
        let mut row = Vec::new();
        for j in (i + 1)..=jmax {
            let mut sum = Rational::zero();
            for s in 0..=(j - i - 1) {
                let factors = (j - i - s) as u32;
                let weight = falling_factorial(&minus_i, factors).expect("factors >= 1")
                    / factorial(factors);
                sum += weight * weighted_partition_sum(k, j - i, s, &weights);
            }
            row.push(sum);
        }
        rows.push(row);
    }
    rows
}

/// c₀..c_{J−1} by the triangular recursion
/// c₀ = −b₁, i·c_i = b_{i+1} + Σ_{h<i} a_{h,i+1}·c_h.
pub fn compute_c(
    spec: &SeriesSpec,
    b: &[Rational],
    a0: &[Rational],
    aij: &[Vec<Rational>],
) -> Vec<Rational> {
    let jmax = spec.depth_j();
    let mut c: Vec<Rational> = Vec::with_capacity(jmax);
    c.push(-&b[0]);
    for i in 1..jmax {
        let mut sum = b[i].clone();
        for (h, ch) in c.iter().enumerate() {
            let a_h = if h == 0 {
                &a0[i] // a₀,_{i+1}
            } else {
                &aij[h - 1][i - h] // a_{h,i+1}
            };
            sum += a_h * ch;
        }
        c.push(sum / rat_int(i as i64));
    }
    c
}

/// Sums multinomial(top; n)·Π Tᵢ^{nᵢ} over the partition set (k, m, s), with
/// polynomial weights.
fn poly_partition_sum(k: usize, m: usize, s: i64, top: u32, polys: &[RatPoly]) -> RatPoly {
    let mut sum = RatPoly::zero();
    for solution in partitions(k as u32, m as u32, s) {
        let coefficient = multinomial(top, &solution.n).expect("partition counts sum to top");
        let mut term = RatPoly::constant(coefficient);
        for (idx, &e) in solution.n.iter().enumerate() {
            if e > 0 {
                term = &term * &polys[idx].pow(e);
            }
        }
        sum = &sum + &term;
    }
    sum
}

/// T₁..T_J: T₁ = X, T₂ = b₁X − c₁, and for m ≥ 2
/// T_{m+1} = b₁·S₁ − c_m − S₂ with S₁ the log-composition sum over T₁..T_m and
/// S₂ the power-composition correction driven by c₁..c_{m−1}.
pub fn compute_t(spec: &SeriesSpec, b: &[Rational], c: &[Rational]) -> Vec<RatPoly> {
    let jmax = spec.depth_j();
    let mut t = vec![RatPoly::x()];
    if jmax >= 2 {
        t.push(&RatPoly::x().scale(&b[0]) - &RatPoly::constant(c[1].clone()));
    }
    for m in 2..jmax {
        // S₁ = Σ_{s=0}^{m−1} (−1)^{m−1−s}/(m−s) Σ_{(m,m,s)} multinomial(m−s; n)·ΠTᵢ^{nᵢ}
        let mut s1 = RatPoly::zero();
        for s in 0..m {
            let sign = if (m - 1 - s) % 2 == 0 { 1 } else { -1 };
            let weight = rat_int(sign) / rat_int((m - s) as i64);
            s1 = &s1 + &poly_partition_sum(m, m, s as i64, (m - s) as u32, &t).scale(&weight);
        }
        // S₂ = Σ_{p=1}^{m−1} c_p Σ_{q=1}^{m−p} (−p)_q/q! Σ_{(m,m−p,m−p−q)} multinomial(q; n)·ΠTᵢ^{nᵢ}
        let mut s2 = RatPoly::zero();
        for p in 1..m {
            let minus_p = rat_int(-(p as i64));
            let mut inner = RatPoly::zero();
            for q in 1..=(m - p) {
                let weight = falling_factorial(&minus_p, q as u32).expect("q >= 1")
                    / factorial(q as u32);
                let s = (m - p - q) as i64;
                inner = &inner + &poly_partition_sum(m, m - p, s, q as u32, &t).scale(&weight);
            }
            s2 = &s2 + &inner.scale(&c[p]);
        }
        let next = &(&s1.scale(&b[0]) - &RatPoly::constant(c[m].clone())) - &s2;
        t.push(next);
    }
    t
}

/// T̃_m(X) = T_m(−τX).
pub fn compute_t_tilde(spec: &SeriesSpec, t: &[RatPoly]) -> Vec<RatPoly> {
    let minus_tau = rat_int(-i64::from(spec.tau));
    t.iter().map(|poly| poly.scale_var(&minus_tau)).collect()
}

/// P₀..P_J: P₀ = 1, P₁ = X, and for m ≥ 2
/// P_m = Σ_{s=0}^{m−1} (−1/τ)_{m−s}/(m−s)! Σ_{(m,m,s)} multinomial(m−s; n)·ΠT̃ᵢ^{nᵢ}.
pub fn compute_p(spec: &SeriesSpec, t_tilde: &[RatPoly]) -> Vec<RatPoly> {
    let jmax = spec.depth_j();
    let inv_tau = rat_int(-1) / rat_int(i64::from(spec.tau));
    let mut p = vec![RatPoly::one(), RatPoly::x()];
    for m in 2..=jmax {
        let mut sum = RatPoly::zero();
        for s in 0..m {
            let factors = (m - s) as u32;
            let weight =
                falling_factorial(&inv_tau, factors).expect("factors >= 1") / factorial(factors);
            sum = &sum + &poly_partition_sum(m, m, s as i64, factors, t_tilde).scale(&weight);
        }
        p.push(sum);
    }
    p.truncate(jmax + 1);
    p
}

/// A complete derivation for one spec.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub spec: SeriesSpec,
    pub coeffs: CoeffSet,
    pub polys: PolySet,
}

#[derive(PartialEq, Eq, Hash)]
struct CacheKey {
    tau: u32,
    a: Vec<String>,
}

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Derivation>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Derivation>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Runs the whole derivation (memoized on τ and the coefficient list; the
/// name and reporting convention of `spec` do not affect the tables).
pub fn derive_all(spec: &SeriesSpec) -> Arc<Derivation> {
    let key = spec.cache_key();
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let lambda = compute_lambda(spec);
    let b = compute_b(spec);
    let a0 = compute_a0(spec, &b);
    let aij = compute_aij(spec, &b);
    let c = compute_c(spec, &b, &a0, &aij);
    let t = compute_t(spec, &b, &c);
    let t_tilde = compute_t_tilde(spec, &t);
    let p = compute_p(spec, &t_tilde);
    let derivation = Arc::new(Derivation {
        spec: spec.clone(),
        coeffs: CoeffSet { lambda, b, a0, aij, c },
        polys: PolySet { t, t_tilde, p },
    });
    cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&derivation));
    Arc::clone(&derivation)
}
