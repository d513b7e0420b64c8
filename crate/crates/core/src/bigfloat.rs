//! Arbitrary-precision decimal fixed-point numbers.
//!
//! Provides:
//! - [`BigFloat`]: value = mantissa · 10^(−digits), with an explicit decimal
//!   digit count chosen by the caller,
//! - exact addition/subtraction, correctly-rounded multiplication, division,
//!   and square root (≤ 0.5 ulp),
//! - elementary functions ([`BigFloat::exp`], [`BigFloat::ln`],
//!   [`BigFloat::sin`], [`pi`], [`BigFloat::nth_root`]) computed with internal
//!   guard digits so results are within 2 ulp at the requested precision.
//!
//! Design rules:
//! - arithmetic between operands demands equal `digits` (mixing precisions is
//!   a bug at the call site; convert explicitly with [`BigFloat::with_digits`]),
//! - comparisons work across precisions (upscaling by powers of ten is exact),
//! - precision never changes implicitly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Decimal fixed-point number: value = `mant` · 10^(−`digits`).
#[derive(Debug, Clone)]
pub struct BigFloat {
    mant: BigInt,
    digits: u32,
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Integer division rounded to nearest, ties away from zero.
fn round_div(numer: &BigInt, denom: &BigInt) -> BigInt {
    let (mut q, r) = numer.div_rem(denom);
    if &r.abs() * 2 >= denom.abs() {
        if numer.sign() == denom.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

fn decimal_len(v: &BigInt) -> u64 {
    if v.is_zero() {
        return 1;
    }
    v.abs().to_string().len() as u64
}

impl BigFloat {
    /// Builds a value directly from a scaled mantissa.
    pub fn from_scaled(mant: BigInt, digits: u32) -> Self {
        BigFloat { mant, digits }
    }

    /// Zero at the given precision.
    pub fn zero(digits: u32) -> Self {
        BigFloat { mant: BigInt::zero(), digits }
    }

    /// One at the given precision.
    pub fn one(digits: u32) -> Self {
        BigFloat::from_i64(1, digits)
    }

    /// Exact conversion from a machine integer.
    pub fn from_i64(value: i64, digits: u32) -> Self {
        BigFloat { mant: BigInt::from(value) * pow10(digits), digits }
    }

    /// Exact conversion from an unsigned machine integer.
    pub fn from_u64(value: u64, digits: u32) -> Self {
        BigFloat { mant: BigInt::from(value) * pow10(digits), digits }
    }

    /// Nearest representable value of an exact rational.
    pub fn from_rational(value: &BigRational, digits: u32) -> Self {
        BigFloat {
            mant: round_div(&(value.numer() * pow10(digits)), value.denom()),
            digits,
        }
    }

    /// Exact rational value of this number.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), pow10(self.digits))
    }

    /// Approximate `f64` value; for range decisions only, never for results.
    pub fn to_f64_approx(&self) -> f64 {
        let len = decimal_len(&self.mant);
        // Shrink the mantissa so the conversion cannot overflow.
        let drop = len.saturating_sub(15) as u32;
        let head = if drop > 0 { &self.mant / pow10(drop) } else { self.mant.clone() };
        let head = head.to_f64().unwrap_or(0.0);
        head * 10f64.powi(drop as i32 - self.digits as i32)
    }

    /// The precision this value carries.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Rescales to another precision (exact when widening, rounded when
    /// narrowing).
    pub fn with_digits(&self, digits: u32) -> Self {
        match digits.cmp(&self.digits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => BigFloat {
                mant: &self.mant * pow10(digits - self.digits),
                digits,
            },
            Ordering::Less => BigFloat {
                mant: round_div(&self.mant, &pow10(self.digits - digits)),
                digits,
            },
        }
    }

    /// One unit in the last place at this precision.
    pub fn ulp(digits: u32) -> Self {
        BigFloat { mant: BigInt::from(1), digits }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), digits: self.digits }
    }

    fn assert_same_digits(&self, rhs: &BigFloat, op: &str) {
        assert_eq!(
            self.digits, rhs.digits,
            "{op} requires operands at the same precision ({} vs {} digits)",
            self.digits, rhs.digits
        );
    }

    /// Rounded division; the divisor must be nonzero.
    pub fn div(&self, rhs: &BigFloat) -> Self {
        self.assert_same_digits(rhs, "division");
        assert!(!rhs.is_zero(), "division by zero");
        BigFloat {
            mant: round_div(&(&self.mant * pow10(self.digits)), &rhs.mant),
            digits: self.digits,
        }
    }

    /// Exact multiplication by a machine integer.
    pub fn mul_int(&self, factor: i64) -> Self {
        BigFloat { mant: &self.mant * BigInt::from(factor), digits: self.digits }
    }

    /// Rounded division by a machine integer.
    pub fn div_int(&self, divisor: i64) -> Self {
        assert!(divisor != 0, "division by zero");
        BigFloat { mant: round_div(&self.mant, &BigInt::from(divisor)), digits: self.digits }
    }

    /// Integer power by repeated squaring (each product rounds once).
    pub fn pow_u(&self, exp: u32) -> Self {
        let mut result = BigFloat::one(self.digits);
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

    /// Square root rounded to nearest; the input must be nonnegative.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative value");
        let scaled = &self.mant * pow10(self.digits);
        let mut root = scaled.sqrt();
        if &scaled - &root * &root > root {
            root += 1;
        }
        BigFloat { mant: root, digits: self.digits }
    }

    /// Floor of log10 of the absolute value; `None` for zero.
    pub fn ilog10_abs(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(decimal_len(&self.mant) as i64 - 1 - i64::from(self.digits))
    }

    /// e^x within 2 ulp. The argument magnitude must stay below ~10^4 (all
    /// call sites pass O(1)..O(10) values).
    pub fn exp(&self) -> Self {
        let d = self.digits;
        let magnitude = self.to_f64_approx().abs();
        assert!(magnitude < 1.0e4, "exp argument out of supported range");
        // Halve until the series argument is at most 1/2, then square back.
        let halvings = if magnitude > 0.5 {
            (magnitude / 0.5).log2().ceil() as u32 + 1
        } else {
            0
        };
        let dg = d + 16 + halvings;
        let mut y = self.with_digits(dg);
        if halvings > 0 {
            y = y.div(&BigFloat::from_i64(1i64 << halvings.min(62), dg));
            // For ranges needing > 62 halvings the assert above already fired.
        }
        let ulp = BigFloat::ulp(dg);
        let mut sum = BigFloat::one(dg);
        let mut term = BigFloat::one(dg);
        let mut k: i64 = 1;
        loop {
            term = (&term * &y).div_int(k);
            if term.abs() < ulp {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        let mut result = sum;
        for _ in 0..halvings {
            result = &result * &result;
        }
        result.with_digits(d)
    }

    /// Natural logarithm within 2 ulp; the input must be positive.
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "logarithm of a non-positive value");
        let d = self.digits;
        let dg = d + 16;
        // Decimal normalization is exact: x = z · 10^e with z in [1, 10).
        let e10 = self.ilog10_abs().expect("nonzero");
        let mut z = BigFloat {
            mant: self.mant.clone(),
            digits: (i64::from(self.digits) + e10)
                .try_into()
                .expect("normalized exponent fits"),
        }
        .with_digits(dg);
        // Halve into [0.75, 1.5) so the atanh series converges fast.
        let three_halves = BigFloat::from_i64(3, dg).div_int(2);
        let mut halvings: i64 = 0;
        while z >= three_halves {
            z = z.div_int(2);
            halvings += 1;
        }
        let one = BigFloat::one(dg);
        let u = (&z - &one).div(&(&z + &one));
        let mut result = atanh_small(&u).mul_int(2);
        if halvings != 0 {
            result = &result + &ln2(dg).mul_int(halvings);
        }
        if e10 != 0 {
            result = &result + &ln10(dg).mul_int(e10);
        }
        result.with_digits(d)
    }

    /// sin(x) within 2 ulp for |x| ≤ 2 (the iterated maps never leave this
    /// range).
    pub fn sin(&self) -> Self {
        let d = self.digits;
        assert!(self.to_f64_approx().abs() <= 2.0, "sin argument out of supported range");
        let dg = d + 12;
        let x = self.with_digits(dg);
        let minus_x2 = -&(&x * &x);
        let ulp = BigFloat::ulp(dg);
        let mut term = x.clone();
        let mut sum = x;
        let mut k: i64 = 1;
        loop {
            term = (&term * &minus_x2).div_int(2 * k).div_int(2 * k + 1);
            if term.abs() < ulp {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        sum.with_digits(d)
    }

    /// arctan(x) within 2 ulp, via argument halving down to |u| ≤ 1/8 and
    /// the alternating Maclaurin series.
    pub fn atan(&self) -> Self {
        let d = self.digits;
        if self.is_zero() {
            return self.clone();
        }
        assert!(
            self.to_f64_approx().abs() <= 1.0e4,
            "atan argument out of supported range"
        );
        let dg = d + 12;
        let mut u = self.with_digits(dg);
        let one = BigFloat::one(dg);
        let threshold = BigFloat::one(dg).div_int(8);
        let mut halvings: u32 = 0;
        while u.abs() > threshold {
            // atan(u) = 2·atan(u / (1 + √(1 + u²)))
            let denom = &one + &(&one + &(&u * &u)).sqrt();
            u = u.div(&denom);
            halvings += 1;
        }
        let u2 = &u * &u;
        let ulp = BigFloat::ulp(dg);
        let mut power = u.clone();
        let mut sum = u;
        let mut k: i64 = 1;
        loop {
            power = &power * &u2;
            let term = power.div_int(2 * k + 1);
            if term.abs() < ulp {
                break;
            }
            if k % 2 == 1 {
                sum = &sum - &term;
            } else {
                sum = &sum + &term;
            }
            k += 1;
        }
        sum.mul_int(1i64 << halvings).with_digits(d)
    }

    /// x^(1/n) within 2 ulp for positive x (n = 1, 2, 4 use exact root
    /// chains; other n go through exp(ln(x)/n) with guard digits).
    pub fn nth_root(&self, n: u32) -> Self {
        assert!(n >= 1, "root order must be at least 1");
        assert!(!self.is_negative(), "root of a negative value");
        if self.is_zero() {
            return self.clone();
        }
        match n {
            1 => self.clone(),
            2 => self.sqrt(),
            4 => self.sqrt().sqrt(),
            _ => {
                let d = self.digits;
                let dg = d + 12;
                self.with_digits(dg).ln().div_int(i64::from(n)).exp().with_digits(d)
            }
        }
    }

    /// Full-precision decimal rendering, e.g. `-0.00317...` with exactly
    /// `digits` fractional places.
    pub fn to_decimal_string(&self) -> String {
        let sign = if self.mant.is_negative() { "-" } else { "" };
        let body = self.mant.abs().to_string();
        let d = self.digits as usize;
        if d == 0 {
            return format!("{sign}{body}");
        }
        let padded = if body.len() <= d {
            format!("{}{}", "0".repeat(d - body.len() + 1), body)
        } else {
            body
        };
        let split = padded.len() - d;
        format!("{sign}{}.{}", &padded[..split], &padded[split..])
    }

    /// Scientific rendering rounded to `sig` significant digits, e.g.
    /// `1.4304553465e0` or `-3.2e-31`.
    pub fn to_sci_string(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut mant = self.mant.abs();
        let mut exp10 = self.ilog10_abs().expect("nonzero");
        let len = decimal_len(&mant);
        let drop = len as i64 - sig as i64;
        match drop.cmp(&0) {
            Ordering::Greater => mant = round_div(&mant, &pow10(drop as u32)),
            Ordering::Less => mant *= pow10((-drop) as u32),
            Ordering::Equal => {}
        }
        // Rounding can carry over (999.. -> 1000..): renormalize.
        if decimal_len(&mant) > sig as u64 {
            mant /= BigInt::from(10);
            exp10 += 1;
        }
        let body = mant.to_string();
        let sign = if self.mant.is_negative() { "-" } else { "" };
        let (head, tail) = body.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{exp10}")
        } else {
            format!("{sign}{head}.{tail}e{exp10}")
        }
    }

    /// Parses `[-]int[.frac]` at the given precision, rounding any excess
    /// fractional digits.
    pub fn parse(text: &str, digits: u32) -> Result<Self, String> {
        let trimmed = text.trim();
        let (sign, body) = match trimmed.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1i64, trimmed.strip_prefix('+').unwrap_or(trimmed)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(format!("invalid decimal literal {text:?}"));
        }
        let digits_ok = |s: &str| s.chars().all(|c| c.is_ascii_digit());
        if !digits_ok(int_part) || !digits_ok(frac_part) {
            return Err(format!("invalid decimal literal {text:?}"));
        }
        let combined = format!("{}{}", if int_part.is_empty() { "0" } else { int_part }, frac_part);
        let raw: BigInt = combined.parse().map_err(|_| format!("invalid decimal literal {text:?}"))?;
        let frac_len = frac_part.len() as u32;
        let mant = if frac_len <= digits {
            raw * pow10(digits - frac_len)
        } else {
            round_div(&raw, &pow10(frac_len - digits))
        };
        Ok(BigFloat { mant: mant * BigInt::from(sign), digits })
    }
}

impl PartialEq for BigFloat {
    /// Numeric equality across precisions (upscaling is exact).
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.digits.max(other.digits);
        let lhs = &self.mant * pow10(common - self.digits);
        let rhs = &other.mant * pow10(common - other.digits);
        lhs.cmp(&rhs)
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;

    fn add(self, rhs: &BigFloat) -> BigFloat {
        self.assert_same_digits(rhs, "addition");
        BigFloat { mant: &self.mant + &rhs.mant, digits: self.digits }
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;

    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self.assert_same_digits(rhs, "subtraction");
        BigFloat { mant: &self.mant - &rhs.mant, digits: self.digits }
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;

    fn mul(self, rhs: &BigFloat) -> BigFloat {
        self.assert_same_digits(rhs, "multiplication");
        BigFloat {
            mant: round_div(&(&self.mant * &rhs.mant), &pow10(self.digits)),
            digits: self.digits,
        }
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;

    fn neg(self) -> BigFloat {
        BigFloat { mant: -&self.mant, digits: self.digits }
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

/// atanh for |u| well below 1, by the odd power series.
fn atanh_small(u: &BigFloat) -> BigFloat {
    let dg = u.digits();
    let ulp = BigFloat::ulp(dg);
    let u2 = u * u;
    let mut power = u.clone();
    let mut sum = u.clone();
    let mut k: i64 = 1;
    loop {
        power = &power * &u2;
        let term = power.div_int(2 * k + 1);
        if term.abs() < ulp {
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    sum
}

/// ln 2 = 2·atanh(1/3).
fn ln2(digits: u32) -> BigFloat {
    let third = BigFloat::one(digits).div_int(3);
    atanh_small(&third).mul_int(2)
}

/// ln 10 = 3·ln 2 + 2·atanh(1/9).
fn ln10(digits: u32) -> BigFloat {
    let ninth = BigFloat::one(digits).div_int(9);
    &ln2(digits).mul_int(3) + &atanh_small(&ninth).mul_int(2)
}

/// Arctangent of 1/m (m ≥ 2) scaled by 10^digits, by integer-only series.
fn atan_recip_scaled(m: u64, digits: u32) -> BigInt {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut power = pow10(digits) / &m;
    let mut sum = power.clone();
    let mut k: i64 = 1;
    while !power.is_zero() {
        power = power / &m2;
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// π within 2 ulp, by the two-arctangent integer scheme
/// π = 16·atan(1/5) − 4·atan(1/239).
pub fn pi(digits: u32) -> BigFloat {
    let dg = digits + 12;
    let value = atan_recip_scaled(5, dg) * BigInt::from(16) - atan_recip_scaled(239, dg) * BigInt::from(4);
    BigFloat::from_scaled(value, dg).with_digits(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937511";
    const E_50: &str = "2.71828182845904523536028747135266249775724709369996";
    const LN2_50: &str = "0.69314718055994530941723212145817656807550013436026";
    const LN10_50: &str = "2.30258509299404568401799145468436420760110148862877";
    const SQRT2_50: &str = "1.41421356237309504880168872420969807856967187537695";
    const SIN1_50: &str = "0.84147098480789650665250232163029899962256306079837";

    fn assert_close(actual: &BigFloat, expected: &str, digits: u32, ulps: i64) {
        let want = BigFloat::parse(expected, digits).unwrap();
        let diff = &actual.with_digits(digits) - &want;
        let bound = BigFloat::from_scaled(BigInt::from(ulps), digits);
        assert!(
            diff.abs() <= bound,
            "expected {expected} within {ulps} ulp, got {}",
            actual.to_decimal_string()
        );
    }

    #[test]
    fn exact_add_sub_and_ordering() {
        let a = BigFloat::parse("1.25", 10).unwrap();
        let b = BigFloat::parse("0.75", 10).unwrap();
        assert_eq!(&a + &b, BigFloat::from_i64(2, 10));
        assert_eq!(&a - &b, BigFloat::parse("0.5", 10).unwrap());
        assert!(a > b);
        assert!(-&a < b);
        // Cross-precision numeric equality.
        assert_eq!(BigFloat::parse("0.5", 5).unwrap(), BigFloat::parse("0.5", 40).unwrap());
    }

    #[test]
    fn multiplication_rounds_to_nearest() {
        // 0.15 * 0.15 = 0.0225 -> 0.02 at two digits (ties away would be 0.02
        // only if exact half; 0.0225 rounds to 0.02? half of ulp is 0.005;
        // 0.0225 = 0.02 + 0.0025 -> nearest is 0.02).
        let x = BigFloat::parse("0.15", 2).unwrap();
        assert_eq!((&x * &x).to_decimal_string(), "0.02");
        // Ties round away from zero: 0.25 * 0.5 = 0.125 -> 0.13.
        let a = BigFloat::parse("0.25", 2).unwrap();
        let b = BigFloat::parse("0.5", 2).unwrap();
        assert_eq!((&a * &b).to_decimal_string(), "0.13");
    }

    #[test]
    fn division_and_rational_round_trip() {
        let digits = 30;
        let x = BigFloat::from_rational(&rat(1, 3), digits);
        assert_eq!(x.to_decimal_string(), "0.333333333333333333333333333333");
        let one = BigFloat::one(digits);
        let three = BigFloat::from_i64(3, digits);
        assert_eq!(one.div(&three), x);
        let back = BigFloat::from_rational(&x.to_rational(), digits);
        assert_eq!(back, x);
    }

    #[test]
    fn mul_error_is_within_half_ulp_of_exact_product() {
        let digits = 20;
        let cases = [rat(22, 7), rat(-355, 113), rat(1, 97), rat(123456, 99991)];
        for a in &cases {
            for b in &cases {
                let fa = BigFloat::from_rational(a, digits);
                let fb = BigFloat::from_rational(b, digits);
                let exact = fa.to_rational() * fb.to_rational();
                let diff = ((&fa * &fb).to_rational() - exact).abs();
                let half_ulp = rat(1, 2) * BigFloat::ulp(digits).to_rational();
                assert!(diff <= half_ulp);
            }
        }
    }

    #[test]
    fn sqrt_matches_reference() {
        let digits = 50;
        let two = BigFloat::from_i64(2, digits);
        assert_close(&two.sqrt(), SQRT2_50, digits, 1);
        assert!(BigFloat::zero(10).sqrt().is_zero());
        // Perfect squares at low precision stay exact.
        assert_eq!(BigFloat::from_i64(144, 8).sqrt(), BigFloat::from_i64(12, 8));
    }

    #[test]
    fn pi_matches_reference() {
        assert_close(&pi(50), PI_50, 50, 1);
    }

    #[test]
    fn exp_matches_reference() {
        let digits = 50;
        assert_close(&BigFloat::one(digits).exp(), E_50, digits, 2);
        // exp(ln 2) = 2.
        let ln2 = BigFloat::parse(LN2_50, digits).unwrap();
        assert_close(&ln2.exp(), "2", digits, 2);
        // Guard-digit contract: recomputing with 20 extra digits moves the
        // result by at most 2 ulp of the requested precision.
        for value in ["-7.25", "-0.125", "0.001", "3.5", "13.81"] {
            let x = BigFloat::parse(value, digits).unwrap();
            let wide = BigFloat::parse(value, digits + 20).unwrap().exp().with_digits(digits);
            let diff = &x.exp() - &wide;
            assert!(diff.abs() <= BigFloat::from_scaled(BigInt::from(2), digits), "exp({value})");
        }
        assert_eq!(BigFloat::zero(digits).exp(), BigFloat::one(digits));
    }

    #[test]
    fn ln_matches_reference() {
        let digits = 50;
        assert_close(&BigFloat::from_i64(2, digits).ln(), LN2_50, digits, 2);
        assert_close(&BigFloat::from_i64(10, digits).ln(), LN10_50, digits, 2);
        // ln(e) = 1.
        let e = BigFloat::parse(E_50, digits).unwrap();
        assert_close(&e.ln(), "1", digits, 2);
        // ln(1024) = 10·ln 2 (reference product is exact, so the slack covers
        // the 2 ulp contract plus the truncated reference string).
        let ln1024 = BigFloat::from_i64(1024, digits).ln();
        let want = BigFloat::parse(LN2_50, digits).unwrap().mul_int(10);
        assert!((&ln1024 - &want).abs() <= BigFloat::from_scaled(BigInt::from(10), digits));
        // Round trips for moderate magnitudes (the exp error scales with the
        // value, so keep inputs at O(1) for a tight bound).
        for value in ["0.0003", "0.5", "1.0001", "9.75"] {
            let x = BigFloat::parse(value, digits).unwrap();
            assert_close(&x.ln().exp(), value, digits, 100);
        }
        assert!(BigFloat::from_i64(1, digits).ln().is_zero());
    }

    #[test]
    fn sin_matches_reference() {
        let digits = 50;
        assert_close(&BigFloat::one(digits).sin(), SIN1_50, digits, 2);
        // sin(pi/2) = 1 to within the guard-digit contract.
        let half_pi = pi(digits).div_int(2);
        assert_close(&half_pi.sin(), "1", digits, 2);
        assert!(BigFloat::zero(digits).sin().is_zero());
    }

    #[test]
    fn atan_matches_pi_identities() {
        let digits = 50;
        // atan(1) = π/4.
        let quarter_pi = pi(digits).div_int(4);
        let diff = &BigFloat::one(digits).atan() - &quarter_pi;
        assert!(diff.abs() <= BigFloat::from_scaled(BigInt::from(4), digits));
        // 16·atan(1/5) − 4·atan(1/239) = π, hitting both series branches.
        let a5 = BigFloat::one(digits).div_int(5).atan().mul_int(16);
        let a239 = BigFloat::one(digits).div_int(239).atan().mul_int(4);
        let machin = &a5 - &a239;
        let diff = &machin - &pi(digits);
        assert!(diff.abs() <= BigFloat::from_scaled(BigInt::from(40), digits));
        // Odd symmetry and large arguments: atan(−x) = −atan(x),
        // atan(x) + atan(1/x) = π/2 for x > 0.
        let x = BigFloat::parse("37.25", digits).unwrap();
        assert_eq!((-&x).atan(), -&x.atan());
        let sum = &x.atan() + &BigFloat::one(digits).div(&x).atan();
        let diff = &sum - &pi(digits).div_int(2);
        assert!(diff.abs() <= BigFloat::from_scaled(BigInt::from(8), digits));
    }

    #[test]
    fn nth_root_agrees_with_sqrt_chains() {
        let digits = 40;
        let x = BigFloat::parse("0.0017", digits).unwrap();
        assert_eq!(x.nth_root(1), x);
        assert_eq!(x.nth_root(2), x.sqrt());
        assert_eq!(x.nth_root(4), x.sqrt().sqrt());
        // Cube root of 8 = 2 within 2 ulp.
        let eight = BigFloat::from_i64(8, digits);
        assert_close(&eight.nth_root(3), "2", digits, 2);
    }

    #[test]
    fn rendering_and_parsing() {
        let x = BigFloat::parse("-0.004500", 6).unwrap();
        assert_eq!(x.to_decimal_string(), "-0.004500");
        assert_eq!(x.to_sci_string(2), "-4.5e-3");
        assert_eq!(BigFloat::zero(5).to_sci_string(3), "0");
        let y = BigFloat::parse("1987.25", 4).unwrap();
        assert_eq!(y.to_sci_string(3), "1.99e3");
        assert_eq!(y.to_sci_string(8), "1.9872500e3");
        // Carry propagation in significant rounding.
        let z = BigFloat::parse("0.999", 3).unwrap();
        assert_eq!(z.to_sci_string(2), "1.0e0");
        assert!(BigFloat::parse("1.2.3", 5).is_err());
        assert!(BigFloat::parse("", 5).is_err());
        assert!(BigFloat::parse("12a", 5).is_err());
        // Excess fractional digits round.
        assert_eq!(BigFloat::parse("0.126", 2).unwrap().to_decimal_string(), "0.13");
    }

    #[test]
    fn ilog10_tracks_magnitude() {
        assert_eq!(BigFloat::parse("123.4", 10).unwrap().ilog10_abs(), Some(2));
        assert_eq!(BigFloat::parse("0.00123", 10).unwrap().ilog10_abs(), Some(-3));
        assert_eq!(BigFloat::parse("1", 10).unwrap().ilog10_abs(), Some(0));
        assert_eq!(BigFloat::zero(10).ilog10_abs(), None);
    }
}
