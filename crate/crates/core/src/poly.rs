//! Dense univariate polynomials over exact rationals.
//!
//! Provides:
//! - [`RatPoly`] with exact ring operations, powers, evaluation, and the
//!   derivative,
//! - variable rescaling `p(X) ↦ p(cX)` ([`RatPoly::scale_var`]), the bridge
//!   between a polynomial family and its sign-flipped companion,
//! - deterministic text rendering in descending powers.
//!
//! Coefficients are stored in ascending degree with no trailing zeros, so the
//! zero polynomial is the empty vector and `degree` is `None` exactly there.

use crate::rational::{format_rational, rat_int, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial with exact rational coefficients, ascending degree order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial one.
    pub fn one() -> Self {
        RatPoly::constant(Rational::one())
    }

    /// The monomial X.
    pub fn x() -> Self {
        RatPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    /// A constant polynomial.
    pub fn constant(value: Rational) -> Self {
        RatPoly::from_coeffs(vec![value])
    }

    /// Builds a polynomial from ascending-degree coefficients, trimming
    /// trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut poly = RatPoly { coeffs };
        poly.trim();
        poly
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Ascending-degree coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of X^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return RatPoly::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Substitutes X ↦ cX, i.e. multiplies the degree-k coefficient by c^k.
    pub fn scale_var(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|coef| {
                let scaled = coef * &power;
                power *= c;
                scaled
            })
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, exp: u32) -> Self {
        let mut result = RatPoly::one();
        let mut acc = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &acc;
            }
            e >>= 1;
            if e > 0 {
                acc = &acc * &acc;
            }
        }
        result
    }

    /// Evaluates at a rational point by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat_int(k as i64))
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    /// Renders in descending powers of `var`, e.g. `-1/2*X^2 + 3/2*X - 5/6`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coef_text = format_rational(&magnitude);
            match k {
                0 => out.push_str(&coef_text),
                _ => {
                    if magnitude.is_one() {
                        out.push_str(var);
                    } else {
                        out.push_str(&coef_text);
                        out.push('*');
                        out.push_str(var);
                    }
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for RatPoly {
    /// Renders with the conventional variable X.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("X"))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] -= c;
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
