//! Twelve ready-made maps with exact block-coefficient generators, start
//! metadata, and high-precision evaluators.
//!
//! Entries come in kindred pairs (each function's partner is its
//! compositional inverse with every odd block coefficient negated):
//! logistic/radical, log/exp, sin/arcsinh, arctan/tanh, fresnel/fresnel-g,
//! and lambert-w/z. Every entry carries:
//!
//! - a coefficient generator producing a₁..a_K at any requested depth,
//! - the display convention (sign and scale) its published constant uses,
//! - a default orbit start and the window of admissible starts,
//! - an evaluator computing f(x) in decimal fixed point at the argument's
//!   precision, used to follow orbits when estimating constants.
//!
//! The Fresnel pair stores coefficients reduced by θ = π² (the stored r_m
//! satisfy a_m = r_m·π^{2m}); the coefficient tower downstream only ever
//! sees the reduced values, and evaluators reattach the power of π.

use crate::bigfloat::{pi, BigFloat};
use crate::combinatorics::{binomial, factorial};
use crate::engine::{Convention, SeriesSpec, Sign, ThetaScale};
use crate::rational::{format_rational, parse_rational, rat, rat_int, rat_pow, Rational};
use crate::series::{kindred_of, ts_inv, ts_mul, PowerSeries};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// An orbit start: either an exact rational or a rational multiple of π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Initial {
    /// An exact rational start.
    Value(Rational),
    /// π divided by a positive integer.
    PiOver(u32),
}

impl Initial {
    /// The start as a fixed-point value at the requested precision.
    pub fn to_bigfloat(&self, digits: u32) -> BigFloat {
        match self {
            Initial::Value(r) => BigFloat::from_rational(r, digits),
            Initial::PiOver(q) => pi(digits).div_int(i64::from(*q)),
        }
    }

    /// Parses `"p/q"`, `"pi"`, or `"pi/q"`.
    pub fn parse(text: &str) -> Result<Initial, String> {
        let t = text.trim();
        if t == "pi" {
            return Ok(Initial::PiOver(1));
        }
        if let Some(rest) = t.strip_prefix("pi/") {
            let q: u32 = rest
                .trim()
                .parse()
                .map_err(|_| format!("invalid divisor in start '{t}'"))?;
            if q == 0 {
                return Err("start 'pi/0' has a zero divisor".to_string());
            }
            return Ok(Initial::PiOver(q));
        }
        parse_rational(t).map(Initial::Value).map_err(|e| e.to_string())
    }
}

impl fmt::Display for Initial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Initial::Value(r) => write!(f, "{}", format_rational(r)),
            Initial::PiOver(1) => write!(f, "pi"),
            Initial::PiOver(q) => write!(f, "pi/{q}"),
        }
    }
}

/// The window of starts for which an entry's orbit decreases to 0 and its
/// evaluator is trustworthy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StartBound {
    /// Any positive start.
    AnyPositive,
    /// Positive starts x₀ ≤ bound.
    AtMost(Rational),
    /// Positive starts x₀ < bound.
    Below(Rational),
}

impl StartBound {
    /// Whether a concrete start falls inside the window.
    pub fn admits(&self, x0: &BigFloat) -> bool {
        if !x0.is_positive() {
            return false;
        }
        match self {
            StartBound::AnyPositive => true,
            StartBound::AtMost(b) => *x0 <= BigFloat::from_rational(b, x0.digits()),
            StartBound::Below(b) => *x0 < BigFloat::from_rational(b, x0.digits()),
        }
    }

    /// Human-readable description of the window.
    pub fn describe(&self) -> String {
        match self {
            StartBound::AnyPositive => "any positive start".to_string(),
            StartBound::AtMost(b) => {
                format!("positive starts at most {}", format_rational(b))
            }
            StartBound::Below(b) => {
                format!("positive starts below {}", format_rational(b))
            }
        }
    }
}

/// A fully built catalog entry.
#[derive(Clone)]
pub struct CatalogFunction {
    /// Validated spec at the entry's default depth.
    pub spec: SeriesSpec,
    /// One-line description for listings.
    pub summary: &'static str,
    /// Name of the kindred partner entry.
    pub kindred_partner: &'static str,
    /// Default orbit start.
    pub default_start: Initial,
    /// Admissible starts.
    pub start_bound: StartBound,
    /// f(x) at the argument's precision.
    pub evaluator: fn(&BigFloat) -> BigFloat,
}

// --- static definition table --------------------------------------------------

enum StartDef {
    Rat(i64, i64),
    PiOver(u32),
}

enum BoundDef {
    Any,
    AtMost(i64, i64),
    Below(i64, i64),
}

struct EntryDef {
    name: &'static str,
    summary: &'static str,
    tau: u32,
    default_depth: usize,
    theta: ThetaScale,
    sigma: Sign,
    c_scale: i64,
    kindred: &'static str,
    start: StartDef,
    bound: BoundDef,
    generator: fn(usize) -> Vec<Rational>,
    evaluator: fn(&BigFloat) -> BigFloat,
}

static DEFS: [EntryDef; 12] = [
    EntryDef {
        name: "logistic",
        summary: "quadratic damping x(1 - x)",
        tau: 1,
        default_depth: 7,
        theta: ThetaScale::One,
        sigma: Sign::Plus,
        c_scale: 1,
        kindred: "radical",
        start: StartDef::Rat(1, 2),
        bound: BoundDef::Below(1, 1),
        generator: logistic_coeffs,
        evaluator: logistic_eval,
    },
    EntryDef {
        name: "radical",
        summary: "square-root damping (sqrt(1 + 4x) - 1)/2",
        tau: 1,
        default_depth: 7,
        theta: ThetaScale::One,
        sigma: Sign::Minus,
        c_scale: 1,
        kindred: "logistic",
        start: StartDef::Rat(1, 2),
        bound: BoundDef::Any,
        generator: radical_coeffs,
        evaluator: radical_eval,
    },
    EntryDef {
        name: "log",
        summary: "shifted logarithm ln(1 + x)",
        tau: 1,
        default_depth: 7,
        theta: ThetaScale::One,
        sigma: Sign::Plus,
        c_scale: 2,
        kindred: "exp",
        start: StartDef::Rat(1, 2),
        bound: BoundDef::Any,
        generator: log_coeffs,
        evaluator: log_eval,
    },
    EntryDef {
        name: "exp",
        summary: "exponential saturation 1 - exp(-x)",
        tau: 1,
        default_depth: 7,
        theta: ThetaScale::One,
        sigma: Sign::Minus,
        c_scale: 2,
        kindred: "log",
        start: StartDef::Rat(1, 2),
        bound: BoundDef::Any,
        generator: exp_coeffs,
        evaluator: exp_eval,
    },
    EntryDef {
        name: "sin",
        summary: "sine map",
        tau: 2,
        default_depth: 7,
        theta: ThetaScale::One,
        sigma: Sign::Plus,
        c_scale: 1,
        kindred: "arcsinh",
        start: StartDef::PiOver(2),
        bound: BoundDef::AtMost(2, 1),
        generator: sin_coeffs,
        evaluator: sin_eval,
    },
    EntryDef {
        name: "arcsinh",
        summary: "inverse hyperbolic sine ln(x + sqrt(1 + x^2))",
        tau: 2,
        default_depth: 7,
        theta: ThetaScale::One,
        sigma: Sign::Minus,
        c_scale: 1,
        kindred: "sin",
        start: StartDef::Rat(1, 1),
        bound: BoundDef::Any,
        generator: arcsinh_coeffs,
        evaluator: arcsinh_eval,
    },
    EntryDef {
        name: "arctan",
        summary: "inverse tangent",
        tau: 2,
        default_depth: 7,
        theta: ThetaScale::One,
        sigma: Sign::Minus,
        c_scale: 1,
        kindred: "tanh",
        start: StartDef::Rat(1, 1),
        bound: BoundDef::Any,
        generator: arctan_coeffs,
        evaluator: arctan_eval,
    },
    EntryDef {
        name: "tanh",
        summary: "hyperbolic tangent",
        tau: 2,
        default_depth: 7,
        theta: ThetaScale::One,
        sigma: Sign::Plus,
        c_scale: 1,
        kindred: "arctan",
        start: StartDef::Rat(1, 1),
        bound: BoundDef::Any,
        generator: tanh_coeffs,
        evaluator: tanh_eval,
    },
    EntryDef {
        name: "fresnel",
        summary: "cosine Fresnel integral C(x)",
        tau: 4,
        default_depth: 7,
        theta: ThetaScale::PiSquared,
        sigma: Sign::Minus,
        c_scale: 1,
        kindred: "fresnel-g",
        start: StartDef::Rat(1, 1),
        bound: BoundDef::AtMost(1, 1),
        generator: fresnel_coeffs,
        evaluator: fresnel_eval,
    },
    EntryDef {
        name: "fresnel-g",
        summary: "kindred partner of the cosine Fresnel integral",
        tau: 4,
        default_depth: 7,
        theta: ThetaScale::PiSquared,
        sigma: Sign::Plus,
        c_scale: 1,
        kindred: "fresnel",
        start: StartDef::Rat(1, 2),
        bound: BoundDef::AtMost(1, 2),
        generator: fresnel_g_coeffs,
        evaluator: fresnel_g_eval,
    },
    EntryDef {
        name: "lambert-w",
        summary: "principal solution of w exp(w) = x",
        tau: 1,
        default_depth: 8,
        theta: ThetaScale::One,
        sigma: Sign::Minus,
        c_scale: 1,
        kindred: "z",
        start: StartDef::Rat(1, 1),
        bound: BoundDef::Any,
        generator: lambert_w_coeffs,
        evaluator: lambert_w_eval,
    },
    EntryDef {
        name: "z",
        summary: "damped identity x exp(-x)",
        tau: 1,
        default_depth: 8,
        theta: ThetaScale::One,
        sigma: Sign::Plus,
        c_scale: 1,
        kindred: "lambert-w",
        start: StartDef::Rat(1, 1),
        bound: BoundDef::Any,
        generator: z_coeffs,
        evaluator: z_eval,
    },
];

fn build(def: &EntryDef) -> CatalogFunction {
    let spec = SeriesSpec::new(
        def.name,
        def.tau,
        (def.generator)(def.default_depth),
        def.theta,
        Convention::new(def.sigma, rat_int(def.c_scale)),
    )
    .expect("catalog definitions are valid");
    CatalogFunction {
        spec,
        summary: def.summary,
        kindred_partner: def.kindred,
        default_start: match def.start {
            StartDef::Rat(n, d) => Initial::Value(rat(n, d)),
            StartDef::PiOver(q) => Initial::PiOver(q),
        },
        start_bound: match def.bound {
            BoundDef::Any => StartBound::AnyPositive,
            BoundDef::AtMost(n, d) => StartBound::AtMost(rat(n, d)),
            BoundDef::Below(n, d) => StartBound::Below(rat(n, d)),
        },
        evaluator: def.evaluator,
    }
}

/// The catalog names, kindred pairs adjacent.
pub fn catalog_names() -> Vec<&'static str> {
    DEFS.iter().map(|d| d.name).collect()
}

/// One entry by name.
pub fn lookup(name: &str) -> Option<CatalogFunction> {
    DEFS.iter().find(|d| d.name == name).map(build)
}

/// All twelve entries in catalog order.
pub fn catalog() -> Vec<CatalogFunction> {
    DEFS.iter().map(build).collect()
}

/// An entry's block coefficients a₁..a_depth (reduced by θ where the entry
/// carries one), at any depth.
pub fn coefficients(name: &str, depth: usize) -> Option<Vec<Rational>> {
    DEFS.iter().find(|d| d.name == name).map(|d| (d.generator)(depth))
}

// --- coefficient generators ---------------------------------------------------

fn alt(m: usize) -> Rational {
    if m % 2 == 1 {
        rat_int(-1)
    } else {
        rat_int(1)
    }
}

fn logistic_coeffs(depth: usize) -> Vec<Rational> {
    let mut a = vec![Rational::from(BigInt::from(0)); depth];
    a[0] = rat_int(-1);
    a
}

fn radical_coeffs(depth: usize) -> Vec<Rational> {
    (1..=depth)
        .map(|m| {
            let catalan = binomial(2 * m as u32, m as u32) / rat_int(m as i64 + 1);
            alt(m) * catalan
        })
        .collect()
}

fn log_coeffs(depth: usize) -> Vec<Rational> {
    (1..=depth).map(|m| alt(m) / rat_int(m as i64 + 1)).collect()
}

fn exp_coeffs(depth: usize) -> Vec<Rational> {
    (1..=depth).map(|m| alt(m) / factorial(m as u32 + 1)).collect()
}

fn sin_coeffs(depth: usize) -> Vec<Rational> {
    (1..=depth).map(|m| alt(m) / factorial(2 * m as u32 + 1)).collect()
}

fn arcsinh_coeffs(depth: usize) -> Vec<Rational> {
    (1..=depth)
        .map(|m| {
            let central = binomial(2 * m as u32, m as u32);
            let denom = rat_pow(&rat_int(4), m as u32) * rat_int(2 * m as i64 + 1);
            alt(m) * central / denom
        })
        .collect()
}

fn arctan_coeffs(depth: usize) -> Vec<Rational> {
    (1..=depth).map(|m| alt(m) / rat_int(2 * m as i64 + 1)).collect()
}

fn tanh_coeffs(depth: usize) -> Vec<Rational> {
    // tanh x = x·S(t)/C(t) with t = x², S the odd-factorial blocks of sinh
    // and C the even-factorial blocks of cosh.
    let len = depth + 1;
    let sinh_blocks: Vec<Rational> =
        (0..len).map(|m| rat_int(1) / factorial(2 * m as u32 + 1)).collect();
    let cosh_blocks: Vec<Rational> =
        (0..len).map(|m| rat_int(1) / factorial(2 * m as u32)).collect();
    let ratio = ts_mul(&sinh_blocks, &ts_inv(&cosh_blocks, len), len);
    ratio[1..].to_vec()
}

fn fresnel_coeffs(depth: usize) -> Vec<Rational> {
    // Reduced by θ = π²: r_m = (−1)^m / (4^m (2m)! (4m+1)).
    (1..=depth)
        .map(|m| {
            let denom = rat_pow(&rat_int(4), m as u32)
                * factorial(2 * m as u32)
                * rat_int(4 * m as i64 + 1);
            alt(m) / denom
        })
        .collect()
}

fn fresnel_g_coeffs(depth: usize) -> Vec<Rational> {
    let base = PowerSeries::new(4, fresnel_coeffs(depth));
    kindred_of(&base, "fresnel").expect("fresnel series is invertible").coeffs
}

fn lambert_w_coeffs(depth: usize) -> Vec<Rational> {
    (1..=depth)
        .map(|m| {
            let power = BigInt::from(m as i64 + 1).pow(m as u32 - 1);
            alt(m) * Rational::from(power) / factorial(m as u32)
        })
        .collect()
}

fn z_coeffs(depth: usize) -> Vec<Rational> {
    (1..=depth).map(|m| alt(m) / factorial(m as u32)).collect()
}

// --- evaluators ----------------------------------------------------------------

fn logistic_eval(x: &BigFloat) -> BigFloat {
    let one = BigFloat::one(x.digits());
    x * &(&one - x)
}

fn radical_eval(x: &BigFloat) -> BigFloat {
    let one = BigFloat::one(x.digits());
    (&(&one + &x.mul_int(4)).sqrt() - &one).div_int(2)
}

fn log_eval(x: &BigFloat) -> BigFloat {
    (&BigFloat::one(x.digits()) + x).ln()
}

fn exp_eval(x: &BigFloat) -> BigFloat {
    &BigFloat::one(x.digits()) - &(-x).exp()
}

fn sin_eval(x: &BigFloat) -> BigFloat {
    x.sin()
}

fn arcsinh_eval(x: &BigFloat) -> BigFloat {
    let one = BigFloat::one(x.digits());
    (x + &(&one + &(x * x)).sqrt()).ln()
}

fn arctan_eval(x: &BigFloat) -> BigFloat {
    x.atan()
}

fn tanh_eval(x: &BigFloat) -> BigFloat {
    let one = BigFloat::one(x.digits());
    let e2x = x.mul_int(2).exp();
    (&e2x - &one).div(&(&e2x + &one))
}

fn fresnel_eval(x: &BigFloat) -> BigFloat {
    // C(x) = Σ_k (−1)^k (π/2)^{2k} x^{4k+1} / ((2k)! (4k+1)), with the
    // running factor between power terms −(π/2)²x⁴ / ((2k−1)(2k)).
    let d = x.digits();
    let dg = d + 12;
    let xx = x.with_digits(dg);
    let quarter_pi2 = {
        let p = pi(dg);
        (&p * &p).div_int(4)
    };
    let x4 = {
        let x2 = &xx * &xx;
        &x2 * &x2
    };
    let factor = -&(&quarter_pi2 * &x4);
    let ulp = BigFloat::ulp(dg);
    let mut power = xx.clone();
    let mut sum = xx;
    let mut k: i64 = 1;
    loop {
        power = (&power * &factor).div_int((2 * k - 1) * 2 * k);
        let term = power.div_int(4 * k + 1);
        if term.abs() < ulp {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    sum.with_digits(d)
}

// Dense truncated-series helpers over fixed-point values, for the deep
// numeric pool below (the exact rational route is kept for small depths,
// where catalog specs and reference tables live).

fn bf_series_mul(a: &[BigFloat], b: &[BigFloat], len: usize) -> Vec<BigFloat> {
    let digits = a[0].digits();
    let mut out = vec![BigFloat::zero(digits); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

fn bf_series_inv(a: &[BigFloat], len: usize) -> Vec<BigFloat> {
    let digits = a[0].digits();
    let mut out = vec![BigFloat::zero(digits); len];
    out[0] = BigFloat::one(digits);
    for n in 1..len {
        let mut acc = BigFloat::zero(digits);
        for i in 1..=n {
            acc = &acc + &(&a[i] * &out[n - i]);
        }
        out[n] = -&acc;
    }
    out
}

/// Block weights of the Fresnel partner in term-recursion form: the first
/// weight v₁ = ĝ₁·π² plus the bounded ratios v_{m+1}/v_m. Term m+1 of the
/// series is term_m·ratio·x⁴, which keeps every rounding error relative to
/// the term itself — carrying x^{4m+1} separately would let its absolute
/// rounding be amplified by the geometrically growing weights.
struct FresnelPartnerPool {
    first: BigFloat,
    ratios: Vec<BigFloat>,
}

type WeightKey = (u32, usize);
static FRESNEL_G_POOL: OnceLock<Mutex<HashMap<WeightKey, Arc<FresnelPartnerPool>>>> =
    OnceLock::new();

/// The partner's weight pool at the requested precision, cached per
/// (precision, depth) pair so orbit iteration pays only lookups.
///
/// The deep reduction runs the same Lagrange scheme as [`revert_series`]
/// but over fixed-point values: exact rationals at depth 128 drag in
/// factorial-sized denominators, while the numeric route needs only enough
/// guard digits to cover the growth of the working coefficients. The
/// dominant amplification is the reattached π^{2m} ≈ 10^m, so the guard
/// grows by one digit per order of depth.
///
/// [`revert_series`]: crate::series::revert_series
fn fresnel_g_pool(digits: u32, depth: usize) -> Arc<FresnelPartnerPool> {
    let cache = FRESNEL_G_POOL.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(found) = guard.get(&(digits, depth)) {
        return found.clone();
    }
    let dgp = digits + 10 + depth as u32;
    let len = depth + 1;
    let mut f = Vec::with_capacity(len);
    f.push(BigFloat::one(dgp));
    for r in &fresnel_coeffs(depth) {
        f.push(BigFloat::from_rational(r, dgp));
    }
    let f_inv = bf_series_inv(&f, len);
    let f_inv2 = bf_series_mul(&f_inv, &f_inv, len);
    let f_inv4 = bf_series_mul(&f_inv2, &f_inv2, len);
    let pi2 = {
        let p = pi(dgp);
        &p * &p
    };
    let mut running = f_inv; // F^{−(4m+1)} at m = 0
    let mut pi_pow = BigFloat::one(dgp);
    let mut weights = Vec::with_capacity(depth);
    for m in 1..=depth {
        running = bf_series_mul(&running, &f_inv4, len);
        pi_pow = &pi_pow * &pi2;
        let mut reverted = running[m].div_int(4 * m as i64 + 1);
        if m % 2 == 1 {
            reverted = -&reverted;
        }
        assert!(!reverted.is_zero(), "partner weight {m} vanished");
        weights.push(&reverted * &pi_pow);
    }
    let ratios = weights
        .windows(2)
        .map(|pair| pair[1].div(&pair[0]).with_digits(digits))
        .collect();
    let shared = Arc::new(FresnelPartnerPool {
        first: weights[0].with_digits(digits),
        ratios,
    });
    guard.insert((digits, depth), shared.clone());
    shared
}

fn fresnel_g_eval(x: &BigFloat) -> BigFloat {
    // No elementary closed form exists: sum the kindred series directly.
    // Inside |x| ≤ 11/20 the block terms shrink geometrically (the block
    // radius is C(1)⁴ ≈ 0.37), so a depth-64 or depth-128 pool covers all
    // practical precisions.
    let d = x.digits();
    let dg = d + 12;
    let xx = x.with_digits(dg);
    assert!(xx.is_positive(), "fresnel partner expects a positive argument");
    assert!(
        xx <= BigFloat::from_rational(&rat(11, 20), dg),
        "fresnel partner argument exceeds the supported window (0, 11/20]"
    );
    let x4 = {
        let x2 = &xx * &xx;
        &x2 * &x2
    };
    let ulp = BigFloat::ulp(dg);
    let mut depth = 64usize;
    loop {
        let pool = fresnel_g_pool(dg, depth);
        let mut term = &(&pool.first * &x4) * &xx; // v₁·x⁵
        let mut sum = &xx + &term;
        let mut settled = false;
        for (idx, ratio) in pool.ratios.iter().enumerate() {
            term = &(&term * ratio) * &x4;
            sum = &sum + &term;
            if idx >= 2 && term.abs() < ulp {
                settled = true;
                break;
            }
        }
        if settled {
            return sum.with_digits(d);
        }
        depth *= 2;
        assert!(
            depth <= 128,
            "fresnel partner series needs more than 128 terms at this precision; \
             lower the requested digits or the start"
        );
    }
}

fn lambert_w_eval(x: &BigFloat) -> BigFloat {
    // Newton iteration on w·e^w = x, seeded with ln(1 + x).
    let d = x.digits();
    if x.is_zero() {
        return BigFloat::zero(d);
    }
    let dg = d + 12;
    let xx = x.with_digits(dg);
    let one = BigFloat::one(dg);
    let tol = BigFloat::ulp(dg).mul_int(4);
    let mut w = (&one + &xx).ln();
    for _ in 0..64 {
        let ew = w.exp();
        let numer = &(&w * &ew) - &xx;
        let denom = &ew * &(&one + &w);
        let step = numer.div(&denom);
        w = &w - &step;
        if step.abs() <= tol {
            return w.with_digits(d);
        }
    }
    panic!("product-logarithm iteration failed to settle");
}

fn z_eval(x: &BigFloat) -> BigFloat {
    x * &(-x).exp()
}
