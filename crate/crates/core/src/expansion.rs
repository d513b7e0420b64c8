//! Assembly and presentation of the asymptotic term table for a shrinking orbit.
//!
//! Substituting X = −(1/τ)(b₁·ln n + K) into the polynomial tower P_m and
//! collecting by powers of ln n turns a [`Derivation`] into the table
//!
//!   x_n ∼ (λ/θ)^{1/τ} · n^{−1/τ} · Σ_{m=0}^{J} n^{−m} Σ_{p=0}^{m} Q_{m,p}(K) · lnᵖ n,
//!
//! where every Q_{m,p} is an exact rational polynomial in the canonical
//! constant K. This module provides:
//!
//! - [`assemble`]: build the table from a derivation at a chosen depth,
//! - numeric evaluation (optionally with the K-derivative used by the
//!   constant solver), at an explicit decimal precision,
//! - conversion between K and a published constant C = σ·K/scale,
//! - [`kindred_compare`]: magnitude comparison of partner tables under K ↦ −K,
//! - deterministic text, LaTeX, and JSON renderings.

use crate::bigfloat::{pi, BigFloat};
use crate::combinatorics::binomial;
use crate::engine::{Convention, Derivation, ThetaScale};
use crate::poly::RatPoly;
use crate::rational::{format_rational, rat_int, rat_pow, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exact term table of the expansion, plus the conventions needed to present it.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticExpansion {
    /// Display name of the underlying function.
    pub name: String,
    /// Block exponent τ of the underlying map.
    pub tau: u32,
    /// Reduced λ; the map's true λ is this divided by θ.
    pub lambda: Rational,
    /// Symbolic scale θ carried outside the rational data.
    pub theta: ThetaScale,
    /// How the canonical K maps to the published constant C.
    pub convention: Convention,
    /// `terms[m][p]` = Q_{m,p}(K) for 0 ≤ p ≤ m ≤ J; `terms[0]` = [1].
    pub terms: Vec<Vec<RatPoly>>,
}

/// Builds the term table for orders m = 0..=depth from a derivation.
///
/// Panics if `depth` exceeds the derivation's coefficient depth J.
pub fn assemble(derivation: &Derivation, depth: usize) -> AsymptoticExpansion {
    let available = derivation.spec.depth_j();
    assert!(
        depth <= available,
        "requested depth {depth} exceeds available coefficient depth {available}"
    );
    let tau = rat_int(i64::from(derivation.spec.tau));
    // X = α·L + β·K with α = −b₁/τ, β = −1/τ and L standing for ln n.
    let alpha = -(&derivation.coeffs.b[0] / &tau);
    let beta = -(Rational::one() / &tau);
    let mut terms = vec![vec![RatPoly::one()]];
    for m in 1..=depth {
        let p_m = &derivation.polys.p[m];
        let mut row = Vec::with_capacity(m + 1);
        for p in 0..=m {
            let mut q = vec![Rational::zero(); m - p + 1];
            for d in p..=m {
                let c_md = p_m.coeff(d);
                if c_md.is_zero() {
                    continue;
                }
                let weight = binomial(d as u32, p as u32)
                    * rat_pow(&alpha, p as u32)
                    * rat_pow(&beta, (d - p) as u32);
                q[d - p] = &q[d - p] + &(c_md * weight);
            }
            row.push(RatPoly::from_coeffs(q));
        }
        terms.push(row);
    }
    AsymptoticExpansion {
        name: derivation.spec.name.clone(),
        tau: derivation.spec.tau,
        lambda: derivation.coeffs.lambda.clone(),
        theta: derivation.spec.theta,
        convention: derivation.spec.convention.clone(),
        terms,
    }
}

/// Horner evaluation of an exact polynomial at a fixed-precision point.
fn eval_poly_bf(poly: &RatPoly, x: &BigFloat) -> BigFloat {
    let digits = x.digits();
    let mut acc = BigFloat::zero(digits);
    for coeff in poly.coeffs().iter().rev() {
        acc = &(&acc * x) + &BigFloat::from_rational(coeff, digits);
    }
    acc
}

impl AsymptoticExpansion {
    /// Largest order m present in the table.
    pub fn max_order(&self) -> usize {
        self.terms.len() - 1
    }

    /// The map's true λ (reduced λ divided by θ) at the requested precision.
    pub fn lambda_numeric(&self, digits: u32) -> BigFloat {
        match self.theta {
            ThetaScale::One => BigFloat::from_rational(&self.lambda, digits),
            ThetaScale::PiSquared => {
                let guarded = digits + 5;
                let lam = BigFloat::from_rational(&self.lambda, guarded);
                let p = pi(guarded);
                lam.div(&(&p * &p)).with_digits(digits)
            }
        }
    }

    /// Numeric value of the truncated expansion at index n with constant K.
    pub fn evaluate_at(&self, n: u64, k: &BigFloat, digits: u32) -> BigFloat {
        self.evaluate_truncated(n, k, digits, self.max_order())
    }

    /// Same as [`Self::evaluate_at`] but summing only orders m ≤ `max_m`.
    pub fn evaluate_truncated(&self, n: u64, k: &BigFloat, digits: u32, max_m: usize) -> BigFloat {
        self.eval_core(n, k, digits, max_m, false).0
    }

    /// Value and ∂/∂K of the full table at index n; used by the constant solver.
    pub fn evaluate_with_derivative(&self, n: u64, k: &BigFloat, digits: u32) -> (BigFloat, BigFloat) {
        let (value, deriv) = self.eval_core(n, k, digits, self.max_order(), true);
        (value, deriv.expect("derivative requested"))
    }

    fn eval_core(
        &self,
        n: u64,
        k: &BigFloat,
        digits: u32,
        max_m: usize,
        want_deriv: bool,
    ) -> (BigFloat, Option<BigFloat>) {
        assert!(n >= 2, "expansion evaluation requires n >= 2");
        let dg = digits + 10;
        let kv = k.with_digits(dg);
        let nf = BigFloat::from_u64(n, dg);
        let prefactor = self.lambda_numeric(dg).div(&nf).nth_root(self.tau);
        let log_n = nf.ln();
        let inv_n = BigFloat::one(dg).div(&nf);
        let mut bracket = BigFloat::zero(dg);
        let mut dbracket = BigFloat::zero(dg);
        let mut n_pow = BigFloat::one(dg);
        for (m, row) in self.terms.iter().enumerate().take(max_m + 1) {
            if m > 0 {
                n_pow = &n_pow * &inv_n;
            }
            let mut l_pow = BigFloat::one(dg);
            let mut row_val = BigFloat::zero(dg);
            let mut row_der = BigFloat::zero(dg);
            for (p, poly) in row.iter().enumerate() {
                if p > 0 {
                    l_pow = &l_pow * &log_n;
                }
                if poly.is_zero() {
                    continue;
                }
                row_val = &row_val + &(&eval_poly_bf(poly, &kv) * &l_pow);
                if want_deriv {
                    let slope = poly.derivative();
                    if !slope.is_zero() {
                        row_der = &row_der + &(&eval_poly_bf(&slope, &kv) * &l_pow);
                    }
                }
            }
            bracket = &bracket + &(&n_pow * &row_val);
            if want_deriv {
                dbracket = &dbracket + &(&n_pow * &row_der);
            }
        }
        let value = (&prefactor * &bracket).with_digits(digits);
        let deriv = want_deriv.then(|| (&prefactor * &dbracket).with_digits(digits));
        (value, deriv)
    }

    /// Published constant C = σ·K/scale for this expansion's convention.
    pub fn constant_from_k(&self, k: &BigFloat) -> BigFloat {
        let factor = conversion_ratio(&self.convention);
        k * &BigFloat::from_rational(&factor, k.digits())
    }

    /// Canonical K = σ·scale·C, the inverse of [`Self::constant_from_k`].
    pub fn k_from_constant(&self, c: &BigFloat) -> BigFloat {
        let factor = conversion_ratio(&self.convention).recip();
        c * &BigFloat::from_rational(&factor, c.digits())
    }

    /// Q_{m,p} rewritten in the published constant: Q_{m,p}(σ·scale·C).
    pub fn display_poly(&self, m: usize, p: usize) -> RatPoly {
        let back = rat_int(self.convention.sigma.value()) * &self.convention.c_scale;
        self.terms[m][p].scale_var(&back)
    }
}

fn conversion_ratio(convention: &Convention) -> Rational {
    rat_int(convention.sigma.value()) / &convention.c_scale
}

/// One magnitude disagreement between partner tables.
#[derive(Debug, Clone, PartialEq)]
pub struct KindredMismatch {
    /// Order 1/n^m.
    pub m: usize,
    /// Power of ln n.
    pub p: usize,
    /// Power of K inside Q_{m,p}.
    pub degree: usize,
    /// Signed coefficient on the left table.
    pub left: Rational,
    /// Signed coefficient on the right table.
    pub right: Rational,
}

/// Outcome of comparing two partner tables under K ↦ −K.
#[derive(Debug, Clone)]
pub struct KindredComparison {
    /// Name of the left (reference) expansion.
    pub left: String,
    /// Name of the right (partner) expansion.
    pub right: String,
    /// Number of orders m compared (J + 1).
    pub orders: usize,
    /// Number of (m, p) polynomial slots compared.
    pub slots: usize,
    /// Coefficient slots whose magnitudes disagree.
    pub mismatches: Vec<KindredMismatch>,
    /// Slots with a nonzero polynomial on the left side.
    pub left_nonzero: usize,
    /// Left slots printed with a minus sign (negative leading coefficient in
    /// the published constant).
    pub left_negative: usize,
    /// Slots with a nonzero polynomial on the right side.
    pub right_nonzero: usize,
    /// Right slots printed with a minus sign.
    pub right_negative: usize,
}

impl KindredComparison {
    /// True when every corresponding magnitude agrees.
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Why two tables cannot be compared at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KindredCompareError {
    /// The block exponents differ.
    TauMismatch { left: u32, right: u32 },
    /// The tables hold different numbers of orders.
    DepthMismatch { left: usize, right: usize },
}

impl fmt::Display for KindredCompareError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KindredCompareError::TauMismatch { left, right } => {
                write!(f, "block exponents differ: {left} vs {right}")
            }
            KindredCompareError::DepthMismatch { left, right } => {
                write!(f, "table depths differ: {left} orders vs {right}")
            }
        }
    }
}

impl std::error::Error for KindredCompareError {}

/// Compares |coefficients| of two tables term by term under K ↦ −K and
/// tallies the sign pattern of each side in its own published constant.
pub fn kindred_compare(
    left: &AsymptoticExpansion,
    right: &AsymptoticExpansion,
) -> Result<KindredComparison, KindredCompareError> {
    if left.tau != right.tau {
        return Err(KindredCompareError::TauMismatch {
            left: left.tau,
            right: right.tau,
        });
    }
    if left.terms.len() != right.terms.len() {
        return Err(KindredCompareError::DepthMismatch {
            left: left.terms.len(),
            right: right.terms.len(),
        });
    }
    let mut mismatches = Vec::new();
    let mut slots = 0;
    for (m, (lrow, rrow)) in left.terms.iter().zip(&right.terms).enumerate() {
        for (p, (lq, rq)) in lrow.iter().zip(rrow).enumerate() {
            slots += 1;
            let width = lq.coeffs().len().max(rq.coeffs().len());
            for degree in 0..width {
                let lc = lq.coeff(degree);
                let rc = rq.coeff(degree);
                if lc.abs() != rc.abs() {
                    mismatches.push(KindredMismatch {
                        m,
                        p,
                        degree,
                        left: lc,
                        right: rc,
                    });
                }
            }
        }
    }
    let (left_nonzero, left_negative) = sign_tally(left);
    let (right_nonzero, right_negative) = sign_tally(right);
    Ok(KindredComparison {
        left: left.name.clone(),
        right: right.name.clone(),
        orders: left.terms.len(),
        slots,
        mismatches,
        left_nonzero,
        left_negative,
        right_nonzero,
        right_negative,
    })
}

/// (nonzero, negative) slot counts: a slot is negative when its term is
/// printed with a minus sign, i.e. the leading coefficient of Q_{m,p} in the
/// published constant is negative.
fn sign_tally(exp: &AsymptoticExpansion) -> (usize, usize) {
    let mut nonzero = 0;
    let mut negative = 0;
    for m in 0..exp.terms.len() {
        for p in 0..exp.terms[m].len() {
            if let Some(lead) = exp.display_poly(m, p).leading().cloned() {
                nonzero += 1;
                if lead.is_negative() {
                    negative += 1;
                }
            }
        }
    }
    (nonzero, negative)
}

/// Serialized form of a term table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionDocument {
    /// Function name.
    pub function: String,
    /// Block exponent.
    pub tau: u32,
    /// Reduced λ as a `p/q` string.
    pub lambda: String,
    /// `"none"`, or `"pi^-1/2-family"` when θ = π² scales the prefactor.
    pub scale: String,
    /// ±1 sign relating K to the published constant.
    pub sigma: i64,
    /// All (m, p) slots, m ascending then p descending.
    pub terms: Vec<TermDocument>,
}

/// One Q_{m,p} slot: coefficients ascending in K, each a `p/q` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDocument {
    pub m: usize,
    pub p: usize,
    pub poly: Vec<String>,
}

impl AsymptoticExpansion {
    /// The table as a serializable document (canonical K, exact rationals).
    pub fn to_document(&self) -> ExpansionDocument {
        let mut terms = Vec::new();
        for (m, row) in self.terms.iter().enumerate() {
            for p in (0..row.len()).rev() {
                terms.push(TermDocument {
                    m,
                    p,
                    poly: row[p].coeffs().iter().map(format_rational).collect(),
                });
            }
        }
        ExpansionDocument {
            function: self.name.clone(),
            tau: self.tau,
            lambda: format_rational(&self.lambda),
            scale: match self.theta {
                ThetaScale::One => "none".to_string(),
                ThetaScale::PiSquared => "pi^-1/2-family".to_string(),
            },
            sigma: self.convention.sigma.value(),
            terms,
        }
    }

    /// Pretty-printed JSON form of [`Self::to_document`].
    pub fn render_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.to_document()).expect("document serializes");
        text.push('\n');
        text
    }
}

/// Parses a JSON term-table document.
pub fn parse_document(text: &str) -> Result<ExpansionDocument, serde_json::Error> {
    serde_json::from_str(text)
}

impl TermDocument {
    /// Rebuilds the exact polynomial from its serialized coefficients.
    pub fn to_poly(&self) -> Result<RatPoly, crate::rational::RationalParseError> {
        let coeffs = self
            .poly
            .iter()
            .map(|text| crate::rational::parse_rational(text))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RatPoly::from_coeffs(coeffs))
    }
}

/// How a term's power of n is written in renderings.
enum PowerTail {
    /// Leading term of a τ ≥ 2 family: a bare n^(−1/τ) factor.
    Lead(u32),
    /// 1/n^power for τ = 1 tables.
    Integer(usize),
    /// 1/n^(num/τ) for τ ≥ 2 tables.
    Fraction(usize, u32),
}

/// One signed textual term, before sign-aware joining.
struct RenderedTerm {
    negative: bool,
    body: String,
}

fn text_power_suffix(tail: &PowerTail) -> String {
    match tail {
        PowerTail::Lead(tau) => format!("n^(-1/{tau})"),
        PowerTail::Integer(1) => "/n".to_string(),
        PowerTail::Integer(power) => format!("/n^{power}"),
        PowerTail::Fraction(num, tau) => format!("/n^({num}/{tau})"),
    }
}

/// Pieces of one monomial |c|·C^t·ln(n)^p, joined with a center dot.
fn text_monomial(magnitude: &Rational, t: usize, lnp: usize) -> String {
    let mut pieces = Vec::new();
    if !magnitude.is_one() || (t == 0 && lnp == 0) {
        pieces.push(format_rational(magnitude));
    }
    match t {
        0 => {}
        1 => pieces.push("C".to_string()),
        _ => pieces.push(format!("C^{t}")),
    }
    match lnp {
        0 => {}
        1 => pieces.push("ln(n)".to_string()),
        _ => pieces.push(format!("ln(n)^{lnp}")),
    }
    pieces.join("·")
}

/// Renders one (poly, ln-power, n-power) slot as a signed text term.
fn text_term(poly: &RatPoly, lnp: usize, tail: &PowerTail) -> RenderedTerm {
    let coeffs = poly.coeffs();
    let nonzero: Vec<usize> = (0..coeffs.len()).filter(|&t| !coeffs[t].is_zero()).collect();
    if nonzero.len() == 1 {
        let t = nonzero[0];
        let c = &coeffs[t];
        let mono = text_monomial(&c.abs(), t, lnp);
        let body = match tail {
            PowerTail::Lead(_) => {
                if mono.is_empty() || mono == "1" {
                    text_power_suffix(tail)
                } else {
                    format!("{mono}·{}", text_power_suffix(tail))
                }
            }
            _ => format!("{mono}{}", text_power_suffix(tail)),
        };
        return RenderedTerm {
            negative: c.is_negative(),
            body,
        };
    }
    // Multi-monomial slot: parenthesize the polynomial, keep signs inside.
    let mut inner = String::new();
    for (index, &t) in nonzero.iter().rev().enumerate() {
        let c = &coeffs[t];
        let mono = text_monomial(&c.abs(), t, 0);
        if index == 0 {
            if c.is_negative() {
                inner.push('-');
            }
        } else if c.is_negative() {
            inner.push_str(" - ");
        } else {
            inner.push_str(" + ");
        }
        inner.push_str(&mono);
    }
    let ln_factor = match lnp {
        0 => String::new(),
        1 => "·ln(n)".to_string(),
        _ => format!("·ln(n)^{lnp}"),
    };
    RenderedTerm {
        negative: false,
        body: format!("({inner}){ln_factor}{}", text_power_suffix(tail)),
    }
}

impl AsymptoticExpansion {
    /// λ-fold factor applied to every displayed coefficient: λ itself when the
    /// prefactor merges into integer powers (τ = 1), 2 for the θ-normalized
    /// family (x_n/√κ = 2·n^{−1/τ}·[…]), and 1 otherwise.
    fn display_fold(&self) -> Rational {
        match self.theta {
            ThetaScale::PiSquared => rat_int(2),
            ThetaScale::One if self.tau == 1 => self.lambda.clone(),
            ThetaScale::One => Rational::one(),
        }
    }

    /// Left-hand side of the displayed relation.
    fn text_head(&self) -> String {
        match self.theta {
            ThetaScale::PiSquared => "x_n / sqrt(kappa) ~ ".to_string(),
            ThetaScale::One if self.tau == 1 => "x_n ~ ".to_string(),
            ThetaScale::One => {
                let root = if self.lambda.denom().is_one() {
                    format!("{}^(1/{})", self.lambda.numer(), self.tau)
                } else {
                    format!("({})^(1/{})", format_rational(&self.lambda), self.tau)
                };
                format!("x_n / {root} ~ ")
            }
        }
    }

    fn power_tail(&self, m: usize) -> PowerTail {
        if self.tau == 1 {
            PowerTail::Integer(m + 1)
        } else if m == 0 {
            PowerTail::Lead(self.tau)
        } else {
            PowerTail::Fraction(m * self.tau as usize + 1, self.tau)
        }
    }

    /// Deterministic one-line text rendering (orders ascending, ln-powers
    /// descending, coefficients in the published constant C).
    pub fn render_text(&self) -> String {
        let fold = self.display_fold();
        let mut out = self.text_head();
        let mut first = true;
        for m in 0..self.terms.len() {
            let tail = self.power_tail(m);
            for p in (0..self.terms[m].len()).rev() {
                let poly = self.display_poly(m, p).scale(&fold);
                if poly.is_zero() {
                    continue;
                }
                let term = text_term(&poly, p, &tail);
                if first {
                    if term.negative {
                        out.push('-');
                    }
                    first = false;
                } else if term.negative {
                    out.push_str(" - ");
                } else {
                    out.push_str(" + ");
                }
                out.push_str(&term.body);
            }
        }
        out.push_str(" + ...");
        if self.theta == ThetaScale::PiSquared {
            let ratio = &self.lambda / rat_int(16);
            out.push_str(&format!(
                "\nwhere kappa = sqrt({})/pi",
                format_rational(&ratio)
            ));
        }
        out
    }
}

fn latex_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn latex_upper(t: usize, lnp: usize) -> String {
    let c_part = match t {
        0 => String::new(),
        1 => "C".to_string(),
        _ => format!("C^{{{t}}}"),
    };
    let ln_part = match lnp {
        0 => String::new(),
        1 => "\\ln(n)".to_string(),
        _ => format!("\\ln^{{{lnp}}}(n)"),
    };
    match (c_part.is_empty(), ln_part.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => c_part,
        (true, false) => ln_part,
        (false, false) => format!("{c_part}\\,{ln_part}"),
    }
}

fn latex_power_den(tail: &PowerTail) -> String {
    match tail {
        PowerTail::Lead(tau) => format!("n^{{-1/{tau}}}"),
        PowerTail::Integer(power) => {
            if *power == 1 {
                "n".to_string()
            } else {
                format!("n^{{{power}}}")
            }
        }
        PowerTail::Fraction(num, tau) => format!("n^{{{num}/{tau}}}"),
    }
}

/// Renders one slot as a signed LaTeX term.
fn latex_term(poly: &RatPoly, lnp: usize, tail: &PowerTail) -> RenderedTerm {
    let coeffs = poly.coeffs();
    let nonzero: Vec<usize> = (0..coeffs.len()).filter(|&t| !coeffs[t].is_zero()).collect();
    if nonzero.len() == 1 {
        let t = nonzero[0];
        let c = &coeffs[t];
        let magnitude = c.abs();
        let upper = latex_upper(t, lnp);
        let body = match tail {
            PowerTail::Lead(_) => {
                let base = latex_power_den(tail);
                if magnitude.is_one() && upper == "1" {
                    base
                } else if upper == "1" {
                    format!("{}\\cdot {base}", latex_rational(&magnitude))
                } else {
                    format!("{}\\cdot {upper}\\,{base}", latex_rational(&magnitude))
                }
            }
            _ => {
                let den = latex_power_den(tail);
                if magnitude.is_one() {
                    format!("\\frac{{{upper}}}{{{den}}}")
                } else if upper == "1" {
                    format!("\\frac{{{}}}{{{den}}}", latex_rational(&magnitude))
                } else {
                    format!("{}\\cdot\\frac{{{upper}}}{{{den}}}", latex_rational(&magnitude))
                }
            }
        };
        return RenderedTerm {
            negative: c.is_negative(),
            body,
        };
    }
    let mut inner = String::new();
    for (index, &t) in nonzero.iter().rev().enumerate() {
        let c = &coeffs[t];
        let magnitude = c.abs();
        let mono = match t {
            0 => latex_rational(&magnitude),
            _ if magnitude.is_one() => latex_upper(t, 0),
            _ => format!("{}{}", latex_rational(&magnitude), latex_upper(t, 0)),
        };
        if index == 0 {
            if c.is_negative() {
                inner.push('-');
            }
        } else if c.is_negative() {
            inner.push_str(" - ");
        } else {
            inner.push_str(" + ");
        }
        inner.push_str(&mono);
    }
    let upper = match lnp {
        0 => "1".to_string(),
        1 => "\\ln(n)".to_string(),
        _ => format!("\\ln^{{{lnp}}}(n)"),
    };
    RenderedTerm {
        negative: false,
        body: format!(
            "\\left({inner}\\right)\\cdot\\frac{{{upper}}}{{{}}}",
            latex_power_den(tail)
        ),
    }
}

impl AsymptoticExpansion {
    fn latex_head(&self) -> String {
        match self.theta {
            ThetaScale::PiSquared => "\\frac{x_n}{\\sqrt{\\kappa}} &\\sim ".to_string(),
            ThetaScale::One if self.tau == 1 => "x_n &\\sim ".to_string(),
            ThetaScale::One => {
                let root = if self.lambda.denom().is_one() {
                    format!("{}^{{1/{}}}", self.lambda.numer(), self.tau)
                } else {
                    format!("({})^{{1/{}}}", format_rational(&self.lambda), self.tau)
                };
                format!("\\frac{{x_n}}{{{root}}} &\\sim ")
            }
        }
    }

    /// Display-math aligned block: orders 0 and 1 on the first row, one row
    /// per later order, and a trailing ellipsis row.
    pub fn render_latex(&self) -> String {
        let fold = self.display_fold();
        let mut rows: Vec<String> = Vec::new();
        let mut current = self.latex_head();
        let mut first = true;
        for m in 0..self.terms.len() {
            if m >= 2 {
                rows.push(current);
                current = "  &\\quad ".to_string();
                first = false;
                // A continuation row starts with an explicit sign below.
            }
            let tail = self.power_tail(m);
            let mut row_first = m >= 2;
            for p in (0..self.terms[m].len()).rev() {
                let poly = self.display_poly(m, p).scale(&fold);
                if poly.is_zero() {
                    continue;
                }
                let term = latex_term(&poly, p, &tail);
                if first {
                    if term.negative {
                        current.push('-');
                    }
                    first = false;
                    row_first = false;
                } else if row_first {
                    current.push_str(if term.negative { "- " } else { "+ " });
                    row_first = false;
                } else {
                    current.push_str(if term.negative { " - " } else { " + " });
                }
                current.push_str(&term.body);
            }
        }
        rows.push(current);
        rows.push("  &\\quad + \\cdots".to_string());
        let mut out = String::from("\\begin{aligned}\n");
        out.push_str(&rows.join(" \\\\\n"));
        out.push_str("\n\\end{aligned}\n");
        if self.theta == ThetaScale::PiSquared {
            let ratio = &self.lambda / rat_int(16);
            out.push_str(&format!(
                "% kappa = sqrt({})/pi\n",
                format_rational(&ratio)
            ));
        }
        out
    }
}
