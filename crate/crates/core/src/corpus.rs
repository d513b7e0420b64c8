//! Loading and checking the golden reference tables.
//!
//! The reference tables live as TOML files under `corpus/`, one per catalog
//! function, embedded into the library at compile time. Each file records the
//! map's defining coefficients and every downstream family — λ, b_j, a_{0,j},
//! c_i, the T_m and P_m polynomials — plus any published orbit constants.
//! [`verify_entry`] re-derives everything from the catalog with exact
//! arithmetic and reports each difference as a [`Mismatch`]; a clean corpus
//! yields an empty list.

use crate::catalog::{lookup, Initial};
use crate::engine::{derive_all, Sign, ThetaScale};
use crate::rational::{format_rational, parse_rational_strict, Rational};
use serde::Deserialize;
use std::fmt;
use std::path::Path;

/// The embedded corpus: (file name, contents), in catalog order.
pub const EMBEDDED: [(&str, &str); 12] = [
    ("logistic.toml", include_str!("../corpus/logistic.toml")),
    ("radical.toml", include_str!("../corpus/radical.toml")),
    ("log.toml", include_str!("../corpus/log.toml")),
    ("exp.toml", include_str!("../corpus/exp.toml")),
    ("sin.toml", include_str!("../corpus/sin.toml")),
    ("arcsinh.toml", include_str!("../corpus/arcsinh.toml")),
    ("arctan.toml", include_str!("../corpus/arctan.toml")),
    ("tanh.toml", include_str!("../corpus/tanh.toml")),
    ("fresnel.toml", include_str!("../corpus/fresnel.toml")),
    ("fresnel-g.toml", include_str!("../corpus/fresnel-g.toml")),
    ("lambert-w.toml", include_str!("../corpus/lambert-w.toml")),
    ("z.toml", include_str!("../corpus/z.toml")),
];

/// A published orbit constant: start and its 20-digit decimal value.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantRecord {
    pub x0: Initial,
    pub c: String,
}

/// One function's reference tables.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub tau: u32,
    pub lambda: Rational,
    pub sigma: Sign,
    pub c_scale: Rational,
    pub theta: ThetaScale,
    pub kindred: Option<String>,
    pub a: Vec<Rational>,
    /// b_1, b_2, …
    pub b: Vec<Rational>,
    /// a_{0,1}, a_{0,2}, …
    pub a0: Vec<Rational>,
    /// c_1, c_2, … (c_0 = −b_1 is definitional and not tabulated).
    pub c: Vec<Rational>,
    /// (m, ascending coefficients of T_m).
    pub t: Vec<(usize, Vec<Rational>)>,
    /// (m, ascending coefficients of P_m).
    pub p: Vec<(usize, Vec<Rational>)>,
    pub constants: Vec<ConstantRecord>,
}

/// Failures while reading corpus files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusError {
    Io { file: String, message: String },
    Syntax { file: String, message: String },
    Field { file: String, field: String, message: String },
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::Io { file, message } => write!(f, "cannot read {file}: {message}"),
            CorpusError::Syntax { file, message } => {
                write!(f, "{file} is not a valid corpus document: {message}")
            }
            CorpusError::Field { file, field, message } => {
                write!(f, "{file}, field {field}: {message}")
            }
        }
    }
}

impl std::error::Error for CorpusError {}

/// One disagreement between a derived value and the corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub function: String,
    /// Family name: "tau", "lambda", "formula", "c_scale", "scale",
    /// "a", "b", "a0", "c", "T_m", or "P_m".
    pub table: String,
    /// Position within the family: subscript for coefficient families,
    /// power of X for polynomials, 0 for scalars.
    pub index: usize,
    /// The freshly derived value — what the corpus is expected to contain.
    pub expected: String,
    /// What the corpus actually lists.
    pub got: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slot = match self.table.as_str() {
            "a" | "b" | "c" => format!("{}_{}", self.table, self.index),
            "a0" => format!("a0_{}", self.index),
            t if t.starts_with('T') || t.starts_with('P') => {
                format!("{} coefficient of X^{}", t, self.index)
            }
            t => t.to_string(),
        };
        write!(
            f,
            "{}: {} expected {}, got {}",
            self.function, slot, self.expected, self.got
        )
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoly {
    m: usize,
    coeffs: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstant {
    x0: String,
    c: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCorpus {
    name: String,
    tau: u32,
    lambda: String,
    formula: String,
    c_scale: String,
    scale: Option<String>,
    kindred: Option<String>,
    a: Vec<String>,
    b: Vec<String>,
    a0: Vec<String>,
    c: Vec<String>,
    #[serde(default)]
    t: Vec<RawPoly>,
    #[serde(default)]
    p: Vec<RawPoly>,
    #[serde(default)]
    constants: Vec<RawConstant>,
}

fn rational_field(
    file: &str,
    field: String,
    text: &str,
) -> Result<Rational, CorpusError> {
    parse_rational_strict(text).map_err(|e| CorpusError::Field {
        file: file.to_string(),
        field,
        message: e.to_string(),
    })
}

fn rational_list(
    file: &str,
    field: &str,
    texts: &[String],
) -> Result<Vec<Rational>, CorpusError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| rational_field(file, format!("{field}[{i}]"), t))
        .collect()
}

/// Parses one corpus document.
pub fn parse_corpus_entry(file: &str, text: &str) -> Result<CorpusEntry, CorpusError> {
    let raw: RawCorpus = toml::from_str(text).map_err(|e| CorpusError::Syntax {
        file: file.to_string(),
        message: e.to_string().trim().to_string(),
    })?;
    let sigma = match raw.formula.as_str() {
        "A" => Sign::Plus,
        "B" => Sign::Minus,
        other => {
            return Err(CorpusError::Field {
                file: file.to_string(),
                field: "formula".to_string(),
                message: format!("expected \"A\" or \"B\", got {other:?}"),
            })
        }
    };
    let theta = match raw.scale.as_deref() {
        None => ThetaScale::One,
        Some("pi^2") => ThetaScale::PiSquared,
        Some(other) => {
            return Err(CorpusError::Field {
                file: file.to_string(),
                field: "scale".to_string(),
                message: format!("expected \"pi^2\", got {other:?}"),
            })
        }
    };
    let polys = |raws: &[RawPoly], field: &str| -> Result<Vec<(usize, Vec<Rational>)>, CorpusError> {
        raws.iter()
            .map(|rp| {
                let coeffs = rational_list(file, &format!("{field}[m={}].coeffs", rp.m), &rp.coeffs)?;
                Ok((rp.m, coeffs))
            })
            .collect()
    };
    let t = polys(&raw.t, "t")?;
    let p = polys(&raw.p, "p")?;
    let constants = raw
        .constants
        .iter()
        .map(|rc| {
            let x0 = Initial::parse(&rc.x0).map_err(|e| CorpusError::Field {
                file: file.to_string(),
                field: "constants.x0".to_string(),
                message: e,
            })?;
            Ok(ConstantRecord { x0, c: rc.c.clone() })
        })
        .collect::<Result<Vec<_>, CorpusError>>()?;
    Ok(CorpusEntry {
        tau: raw.tau,
        lambda: rational_field(file, "lambda".to_string(), &raw.lambda)?,
        sigma,
        c_scale: rational_field(file, "c_scale".to_string(), &raw.c_scale)?,
        theta,
        kindred: raw.kindred,
        a: rational_list(file, "a", &raw.a)?,
        b: rational_list(file, "b", &raw.b)?,
        a0: rational_list(file, "a0", &raw.a0)?,
        c: rational_list(file, "c", &raw.c)?,
        t,
        p,
        constants,
        name: raw.name,
    })
}

/// Parses the embedded corpus, in catalog order.
pub fn corpus_entries() -> Result<Vec<CorpusEntry>, CorpusError> {
    EMBEDDED
        .iter()
        .map(|(file, text)| parse_corpus_entry(file, text))
        .collect()
}

/// Reads every `.toml` under `dir` as a corpus document, sorted by file name.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let label = dir.display().to_string();
    let io_err = |message: String| CorpusError::Io {
        file: label.clone(),
        message,
    };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| io_err(e.to_string()))?
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| io_err(e.to_string()))?
        .into_iter()
        .map(|entry| entry.path())
        .filter(|p| p.extension().is_some_and(|ext| ext == "toml"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let file = path.display().to_string();
            let text = std::fs::read_to_string(&path).map_err(|e| CorpusError::Io {
                file: file.clone(),
                message: e.to_string(),
            })?;
            parse_corpus_entry(&file, &text)
        })
        .collect()
}

/// Re-derives one entry's tables from the catalog and lists every difference.
pub fn verify_entry(entry: &CorpusEntry) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let mut push = |table: &str, index: usize, expected: String, got: String| {
        if expected != got {
            out.push(Mismatch {
                function: entry.name.clone(),
                table: table.to_string(),
                index,
                expected,
                got,
            });
        }
    };
    let Some(function) = lookup(&entry.name) else {
        return vec![Mismatch {
            function: entry.name.clone(),
            table: "function".to_string(),
            index: 0,
            expected: "a catalog function".to_string(),
            got: entry.name.clone(),
        }];
    };
    let spec = &function.spec;
    push("tau", 0, spec.tau.to_string(), entry.tau.to_string());
    push(
        "formula",
        0,
        sign_letter(spec.convention.sigma).to_string(),
        sign_letter(entry.sigma).to_string(),
    );
    push(
        "c_scale",
        0,
        format_rational(&spec.convention.c_scale),
        format_rational(&entry.c_scale),
    );
    push(
        "scale",
        0,
        scale_marker(spec.theta).to_string(),
        scale_marker(entry.theta).to_string(),
    );
    let derivation = derive_all(spec);
    push(
        "lambda",
        0,
        format_rational(&derivation.coeffs.lambda),
        format_rational(&entry.lambda),
    );
    let compare_family = |push: &mut dyn FnMut(&str, usize, String, String),
                          table: &str,
                          listed: &[Rational],
                          derived: &[Rational],
                          first_subscript: usize| {
        for (pos, listed_value) in listed.iter().enumerate() {
            let subscript = first_subscript + pos;
            let derived_value = derived
                .get(pos)
                .map(format_rational)
                .unwrap_or_else(|| "absent".to_string());
            push(table, subscript, derived_value, format_rational(listed_value));
        }
    };
    compare_family(&mut push, "a", &entry.a, &spec.a, 1);
    compare_family(&mut push, "b", &entry.b, &derivation.coeffs.b, 1);
    compare_family(&mut push, "a0", &entry.a0, &derivation.coeffs.a0, 1);
    // The derived c starts at c_0 = −b_1; the tabulated family starts at c_1.
    compare_family(&mut push, "c", &entry.c, &derivation.coeffs.c[1..], 1);
    for (m, coeffs) in &entry.t {
        let derived: &[Rational] = derivation
            .polys
            .t
            .get(m.saturating_sub(1))
            .map(|poly| poly.coeffs())
            .unwrap_or(&[]);
        compare_family(&mut push, &format!("T_{m}"), coeffs, derived, 0);
    }
    for (m, coeffs) in &entry.p {
        let derived: &[Rational] = derivation
            .polys
            .p
            .get(*m)
            .map(|poly| poly.coeffs())
            .unwrap_or(&[]);
        compare_family(&mut push, &format!("P_{m}"), coeffs, derived, 0);
    }
    out
}

/// Verifies a set of entries, concatenating the mismatches.
pub fn verify_all(entries: &[CorpusEntry]) -> Vec<Mismatch> {
    entries.iter().flat_map(verify_entry).collect()
}

fn sign_letter(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "A",
        Sign::Minus => "B",
    }
}

fn scale_marker(theta: ThetaScale) -> &'static str {
    match theta {
        ThetaScale::One => "none",
        ThetaScale::PiSquared => "pi^2",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_names;

    #[test]
    fn the_embedded_corpus_parses_in_catalog_order() {
        let entries = corpus_entries().unwrap();
        assert_eq!(entries.len(), 12);
        let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, catalog_names());
        for entry in &entries {
            assert!(!entry.b.is_empty());
            assert!(!entry.a0.is_empty());
            assert!(!entry.c.is_empty());
            assert!(entry.t.iter().any(|(m, _)| *m == 2));
            assert!(entry.p.iter().any(|(m, _)| *m == 4));
        }
    }

    #[test]
    fn every_table_in_the_corpus_is_reproduced_exactly() {
        let entries = corpus_entries().unwrap();
        let mismatches = verify_all(&entries);
        assert!(
            mismatches.is_empty(),
            "corpus disagreements:\n{}",
            mismatches
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join("\n")
        );
    }

    #[test]
    fn a_corrupted_value_is_located_and_named() {
        let source = EMBEDDED[0];
        assert_eq!(source.0, "logistic.toml");
        let tampered = source.1.replace("\"13/36\"", "\"1/3\"");
        assert_ne!(tampered, source.1);
        let entry = parse_corpus_entry("logistic.toml", &tampered).unwrap();
        let mismatches = verify_entry(&entry);
        assert_eq!(mismatches.len(), 1);
        let m = &mismatches[0];
        assert_eq!(m.function, "logistic");
        assert_eq!(m.table, "c");
        assert_eq!(m.index, 3);
        assert_eq!(m.expected, "13/36");
        assert_eq!(m.got, "1/3");
        assert_eq!(
            m.to_string(),
            "logistic: c_3 expected 13/36, got 1/3"
        );
    }

    #[test]
    fn published_constants_are_carried_with_their_starts() {
        let entries = corpus_entries().unwrap();
        let sine = entries.iter().find(|e| e.name == "sin").unwrap();
        assert_eq!(sine.constants.len(), 4);
        assert_eq!(sine.constants[0].x0, Initial::PiOver(2));
        assert_eq!(sine.constants[0].c, "1.43045534652867724470");
        assert_eq!(sine.constants[3].x0, Initial::PiOver(6));

        let z = entries.iter().find(|e| e.name == "z").unwrap();
        assert_eq!(z.constants.len(), 1);
        assert_eq!(z.constants[0].c, "1.29024720868776429166");

        let total: usize = entries.iter().map(|e| e.constants.len()).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn unknown_functions_and_bad_fields_are_reported() {
        let text = "name = \"mystery\"\ntau = 1\nlambda = \"1\"\nformula = \"A\"\n\
                    c_scale = \"1\"\na = [\"-1\"]\nb = [\"1\"]\na0 = [\"1\"]\nc = [\"1/2\"]\n";
        let entry = parse_corpus_entry("mystery.toml", text).unwrap();
        let mismatches = verify_entry(&entry);
        assert_eq!(mismatches.len(), 1);
        assert_eq!(mismatches[0].table, "function");

        let bad = text.replace("\"1/2\"", "\"2/4\"");
        match parse_corpus_entry("mystery.toml", &bad) {
            Err(CorpusError::Field { field, .. }) => assert_eq!(field, "c[0]"),
            other => panic!("expected a field error, got {other:?}"),
        }
    }

    #[test]
    fn corpus_files_round_trip_through_a_directory_load() {
        let dir = std::env::temp_dir().join("kindred-corpus-test");
        std::fs::create_dir_all(&dir).unwrap();
        for (file, text) in EMBEDDED {
            std::fs::write(dir.join(file), text).unwrap();
        }
        let from_dir = load_corpus_dir(&dir).unwrap();
        let mut embedded = corpus_entries().unwrap();
        embedded.sort_by(|l, r| l.name.cmp(&r.name));
        let mut sorted = from_dir.clone();
        sorted.sort_by(|l, r| l.name.cmp(&r.name));
        assert_eq!(sorted, embedded);
        assert!(matches!(
            load_corpus_dir(&dir.join("absent")),
            Err(CorpusError::Io { .. })
        ));
    }
}
