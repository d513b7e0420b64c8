//! Small formatting helpers shared by the subcommands.

use kindred_core::{format_rational, RatPoly, Rational, Sign, ThetaScale};
use num_traits::{One, Signed, Zero};

/// `"A"` for the +C display convention, `"B"` for −C.
pub(crate) fn formula_letter(sigma: Sign) -> &'static str {
    match sigma {
        Sign::Plus => "A",
        Sign::Minus => "B",
    }
}

/// `"none"` or `"pi^2"`.
pub(crate) fn scale_marker(theta: ThetaScale) -> &'static str {
    match theta {
        ThetaScale::One => "none",
        ThetaScale::PiSquared => "pi^2",
    }
}

/// Rationals as `"p/q"` strings.
pub(crate) fn rational_strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

/// `"p/q, p/q, ..."` on one line.
pub(crate) fn rational_list(values: &[Rational]) -> String {
    rational_strings(values).join(", ")
}

/// A rational in LaTeX: integers plain, fractions as `\frac{p}{q}`.
pub(crate) fn latex_rational(value: &Rational) -> String {
    let text = format_rational(value);
    match text.split_once('/') {
        Some((p, q)) => {
            let (sign, p) = match p.strip_prefix('-') {
                Some(rest) => ("-", rest),
                None => ("", p),
            };
            format!("{sign}\\frac{{{p}}}{{{q}}}")
        }
        None => text,
    }
}

/// Rationals as a LaTeX tuple `\left( ..., ... \right)`.
pub(crate) fn latex_tuple(values: &[Rational]) -> String {
    let body: Vec<String> = values.iter().map(latex_rational).collect();
    format!("\\left( {} \\right)", body.join(",\\; "))
}

/// A polynomial in LaTeX, descending powers of `var`.
pub(crate) fn latex_poly(poly: &RatPoly, var: &str) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, coeff) in poly.coeffs().iter().enumerate().rev() {
        if coeff.is_zero() {
            continue;
        }
        let magnitude = coeff.abs();
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff_text = latex_rational(&magnitude);
        match k {
            0 => out.push_str(&coeff_text),
            _ => {
                if !magnitude.is_one() {
                    out.push_str(&coeff_text);
                }
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{{{k}}}"));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use kindred_core::{rat, rat_int};

    #[test]
    fn latex_fractions_and_polynomials_render() {
        assert_eq!(latex_rational(&rat(3, 5)), "\\frac{3}{5}");
        assert_eq!(latex_rational(&rat(-79, 350)), "-\\frac{79}{350}");
        assert_eq!(latex_rational(&rat_int(7)), "7");
        let poly = RatPoly::from_coeffs(vec![rat(-79, 350), rat(3, 5)]);
        assert_eq!(latex_poly(&poly, "X"), "\\frac{3}{5}X - \\frac{79}{350}");
        let square = RatPoly::from_coeffs(vec![rat(1, 2), rat_int(-1), rat_int(1)]);
        assert_eq!(latex_poly(&square, "X"), "X^{2} - X + \\frac{1}{2}");
    }
}
