//! On-disk format for user-supplied maps.
//!
//! A map is described by a small TOML document:
//!
//! ```toml
//! name = "product-log"        # optional display name
//! tau = 1                     # block exponent, >= 1
//! a = ["-1", "3/2", "-8/3"]   # a_1..a_K as exact "p/q" strings
//! formula = "A"               # optional: "A" (C = K) or "B" (C = -K)
//! scale = "pi^2"              # optional: coefficients are reduced by pi^(2m)
//! ```
//!
//! Rationals must be spelled in lowest terms with a nonzero denominator;
//! anything else is rejected with the offending field named. The validated
//! result is an ordinary [`SeriesSpec`], so a file is interchangeable with a
//! catalog entry everywhere except orbit evaluation (files carry no
//! closed-form evaluator).

use crate::engine::{Convention, SeriesSpec, SpecError, Sign, ThetaScale};
use crate::rational::{parse_rational_strict, Rational};
use num_traits::One;
use serde::Deserialize;
use std::fmt;
use std::path::Path;

/// Failures while reading or validating a spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecFileError {
    /// The file could not be read.
    Io { path: String, message: String },
    /// The document is not well-formed TOML (message carries line/column).
    Syntax { message: String },
    /// A present field holds an unusable value.
    Field { field: String, message: String },
    /// The fields parse but do not describe an admissible map.
    Invalid(SpecError),
}

impl fmt::Display for SpecFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecFileError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            SpecFileError::Syntax { message } => write!(f, "spec file is not valid TOML: {message}"),
            SpecFileError::Field { field, message } => write!(f, "field {field}: {message}"),
            SpecFileError::Invalid(inner) => write!(f, "inadmissible map: {inner}"),
        }
    }
}

impl std::error::Error for SpecFileError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpecFile {
    tau: u32,
    a: Vec<String>,
    name: Option<String>,
    formula: Option<String>,
    scale: Option<String>,
}

/// Parses and validates a spec document.
pub fn parse_spec_file(text: &str) -> Result<SeriesSpec, SpecFileError> {
    let raw: RawSpecFile = toml::from_str(text).map_err(|e| SpecFileError::Syntax {
        message: e.to_string().trim().to_string(),
    })?;
    let mut a: Vec<Rational> = Vec::with_capacity(raw.a.len());
    for (index, text) in raw.a.iter().enumerate() {
        let value = parse_rational_strict(text).map_err(|e| SpecFileError::Field {
            field: format!("a[{index}]"),
            message: e.to_string(),
        })?;
        a.push(value);
    }
    let sigma = match raw.formula.as_deref() {
        None | Some("A") => Sign::Plus,
        Some("B") => Sign::Minus,
        Some(other) => {
            return Err(SpecFileError::Field {
                field: "formula".to_string(),
                message: format!("expected \"A\" or \"B\", got {other:?}"),
            })
        }
    };
    let theta = match raw.scale.as_deref() {
        None => ThetaScale::One,
        Some("pi^2") => ThetaScale::PiSquared,
        Some(other) => {
            return Err(SpecFileError::Field {
                field: "scale".to_string(),
                message: format!("expected \"pi^2\", got {other:?}"),
            })
        }
    };
    let name = raw.name.unwrap_or_else(|| "custom".to_string());
    SeriesSpec::new(name, raw.tau, a, theta, Convention::new(sigma, Rational::one()))
        .map_err(SpecFileError::Invalid)
}

/// Reads and parses a spec document from disk.
pub fn load_spec_file(path: &Path) -> Result<SeriesSpec, SpecFileError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecFileError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_spec_file(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn the_product_log_document_matches_the_catalog_entry() {
        let text = r#"
            name = "product-log"
            tau = 1
            a = ["-1", "3/2", "-8/3", "125/24", "-54/5", "16807/720", "-16384/315", "531441/4480"]
        "#;
        let spec = parse_spec_file(text).unwrap();
        let reference = lookup("lambert-w").unwrap().spec;
        assert_eq!(spec.tau, reference.tau);
        assert_eq!(spec.a, reference.a);
        assert_eq!(spec.theta, ThetaScale::One);
        assert_eq!(spec.name, "product-log");
    }

    #[test]
    fn the_reduced_quartic_document_with_scale_marker_matches_the_catalog_entry() {
        let text = r#"
            tau = 4
            scale = "pi^2"
            formula = "B"
            a = ["-1/40", "1/3456", "-1/599040", "1/175472640", "-1/78033715200", "1/49049763840000"]
        "#;
        let spec = parse_spec_file(text).unwrap();
        let reference = lookup("fresnel").unwrap().spec;
        assert_eq!(spec.tau, reference.tau);
        assert_eq!(spec.a, reference.a[..spec.a.len()]);
        assert_eq!(spec.theta, ThetaScale::PiSquared);
        assert_eq!(spec.convention.sigma, Sign::Minus);
    }

    #[test]
    fn a_positive_leading_coefficient_is_rejected_with_the_rationale() {
        let text = r#"
            tau = 1
            a = ["1", "-1/2"]
        "#;
        match parse_spec_file(text) {
            Err(SpecFileError::Invalid(SpecError::LeadingCoefficientNotNegative { a1 })) => {
                assert_eq!(a1, "1");
            }
            other => panic!("expected the a_1 < 0 rejection, got {other:?}"),
        }
        let shown = parse_spec_file(text).unwrap_err().to_string();
        assert!(shown.contains("a_1 must be negative"));
        assert!(shown.contains("decreasingly"));
    }

    #[test]
    fn rationals_must_be_reduced_with_nonzero_denominator() {
        let non_reduced = r#"
            tau = 1
            a = ["-1", "4/6"]
        "#;
        match parse_spec_file(non_reduced) {
            Err(SpecFileError::Field { field, message }) => {
                assert_eq!(field, "a[1]");
                assert!(message.contains("lowest terms"), "got {message}");
            }
            other => panic!("expected a field error, got {other:?}"),
        }

        let zero_denominator = r#"
            tau = 1
            a = ["-1", "1/0"]
        "#;
        match parse_spec_file(zero_denominator) {
            Err(SpecFileError::Field { field, .. }) => assert_eq!(field, "a[1]"),
            other => panic!("expected a field error, got {other:?}"),
        }

        let float_not_rational = r#"
            tau = 1
            a = ["-1", "0.5"]
        "#;
        assert!(matches!(
            parse_spec_file(float_not_rational),
            Err(SpecFileError::Field { .. })
        ));
    }

    #[test]
    fn malformed_documents_report_line_positions() {
        let text = "tau = \na = [\"-1\", \"1/2\"]\n";
        match parse_spec_file(text) {
            Err(SpecFileError::Syntax { message }) => {
                assert!(message.contains("line 1"), "got {message}");
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_and_missing_fields_are_named() {
        let unknown = "tau = 1\na = [\"-1\", \"1/2\"]\nextra = 3\n";
        match parse_spec_file(unknown) {
            Err(SpecFileError::Syntax { message }) => {
                assert!(message.contains("extra"), "got {message}");
            }
            other => panic!("expected an unknown-field error, got {other:?}"),
        }

        let missing = "a = [\"-1\", \"1/2\"]\n";
        match parse_spec_file(missing) {
            Err(SpecFileError::Syntax { message }) => {
                assert!(message.contains("tau"), "got {message}");
            }
            other => panic!("expected a missing-field error, got {other:?}"),
        }
    }

    #[test]
    fn formula_and_scale_values_are_checked() {
        let bad_formula = "tau = 1\nformula = \"C\"\na = [\"-1\", \"1/2\"]\n";
        match parse_spec_file(bad_formula) {
            Err(SpecFileError::Field { field, .. }) => assert_eq!(field, "formula"),
            other => panic!("expected a formula error, got {other:?}"),
        }

        let bad_scale = "tau = 1\nscale = \"pi\"\na = [\"-1\", \"1/2\"]\n";
        match parse_spec_file(bad_scale) {
            Err(SpecFileError::Field { field, .. }) => assert_eq!(field, "scale"),
            other => panic!("expected a scale error, got {other:?}"),
        }

        let formula_a = "tau = 1\nformula = \"A\"\na = [\"-1\", \"1/2\"]\n";
        assert_eq!(parse_spec_file(formula_a).unwrap().convention.sigma, Sign::Plus);
    }

    #[test]
    fn files_load_from_disk_and_io_failures_are_reported() {
        let dir = std::env::temp_dir().join("kindred-specfile-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("w.toml");
        std::fs::write(&path, "tau = 1\na = [\"-1\", \"3/2\"]\n").unwrap();
        let spec = load_spec_file(&path).unwrap();
        assert_eq!(spec.tau, 1);
        assert_eq!(spec.depth_k(), 2);

        let missing = dir.join("absent.toml");
        assert!(matches!(
            load_spec_file(&missing),
            Err(SpecFileError::Io { .. })
        ));
    }
}
