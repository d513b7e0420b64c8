//! The subcommand implementations.
//!
//! Every function returns the finished output document as a string (so the
//! caller can route it to standard output or a file) plus a flag saying
//! whether verification-style checks all passed.

use crate::render::{
    formula_letter, latex_poly, latex_rational, latex_tuple, rational_list, rational_strings,
    scale_marker,
};
use crate::{resolve_digits, text_or_json, CliError, Format, Outcome, TargetArgs};
use kindred_core::{
    assemble, catalog, compute_lambda, corpus_entries, derive_all, estimate_c_with_schedule,
    format_rational, kindred_compare, kindred_of, load_corpus_dir, load_spec_file, lookup,
    rat_int, AsymptoticExpansion, BigFloat, CatalogFunction, Convention, Derivation, Initial,
    Mismatch, PowerSeries, RatPoly, Rational, SeriesSpec, Sign, ThetaScale, N_SCHEDULE,
};
use serde::Serialize;
use std::path::Path;
use std::str::FromStr;

// --- shared plumbing ------------------------------------------------------------

/// A resolved subject: the validated spec plus its catalog entry when the
/// target was a catalog name.
struct Target {
    spec: SeriesSpec,
    catalog: Option<CatalogFunction>,
}

fn unknown_function(name: &str) -> CliError {
    CliError::new(format!(
        "unknown function '{name}' (run 'kindred list-functions' for the catalog)"
    ))
}

fn resolve_target(args: &TargetArgs) -> Result<Target, CliError> {
    if let Some(name) = &args.function {
        let entry = lookup(name).ok_or_else(|| unknown_function(name))?;
        Ok(Target { spec: entry.spec.clone(), catalog: Some(entry) })
    } else {
        let path = args.spec.as_ref().expect("the argument group guarantees one source");
        let spec = load_spec_file(path).map_err(|e| CliError::new(e.to_string()))?;
        Ok(Target { spec, catalog: None })
    }
}

fn depth_error(spec: &SeriesSpec, orders: usize) -> CliError {
    CliError::new(format!(
        "orders {orders} exceeds the depth of '{}': {} series coefficients allow at most J = {}",
        spec.name,
        spec.a.len(),
        spec.a.len() - 1
    ))
}

/// Rebuilds the target's spec with exactly `k` series coefficients. Catalog
/// entries regenerate from their closed-form coefficient rules at any depth;
/// custom documents are capped by the coefficients they supply.
fn spec_at_depth(target: &Target, k: usize) -> Result<SeriesSpec, CliError> {
    let spec = &target.spec;
    if k == spec.a.len() {
        return Ok(spec.clone());
    }
    let a = if target.catalog.is_some() {
        kindred_core::coefficients(&spec.name, k).expect("catalog entry exists")
    } else {
        if k > spec.a.len() {
            return Err(depth_error(spec, k - 1));
        }
        spec.a[..k].to_vec()
    };
    SeriesSpec::new(spec.name.clone(), spec.tau, a, spec.theta, spec.convention.clone())
        .map_err(|e| CliError::new(e.to_string()))
}

/// The spec to derive when `--orders J` may override the default depth.
fn spec_at_orders(target: &Target, orders: Option<usize>) -> Result<SeriesSpec, CliError> {
    match orders {
        None => Ok(target.spec.clone()),
        Some(0) => Err(CliError::new("orders must be at least 1")),
        Some(j) => spec_at_depth(target, j + 1),
    }
}

/// Assembles the expansion truncated at order J (default: full depth).
/// J = 0 is allowed and keeps only the leading term.
fn expansion_for(
    target: &Target,
    orders: Option<usize>,
) -> Result<AsymptoticExpansion, CliError> {
    let j = orders.unwrap_or(target.spec.depth_j());
    if target.catalog.is_none() && j > target.spec.depth_j() {
        return Err(depth_error(&target.spec, j));
    }
    // A valid spec needs at least two coefficients even when only the
    // leading term is kept.
    let spec = spec_at_depth(target, (j + 1).max(2))?;
    let derivation = derive_all(&spec);
    Ok(assemble(&derivation, j))
}

fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(doc)
        .map(|mut text| {
            text.push('\n');
            text
        })
        .map_err(|e| CliError::new(format!("cannot serialize the document: {e}")))
}

fn json_number(text: &str) -> Result<serde_json::Number, CliError> {
    serde_json::Number::from_str(text)
        .map_err(|e| CliError::new(format!("cannot encode {text:?} as a JSON number: {e}")))
}

/// (−1)^k as a rational.
fn alternator(k: usize) -> Rational {
    if k % 2 == 0 {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

fn flip(sigma: Sign) -> Sign {
    match sigma {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    }
}

fn plural(count: usize, one: &str, many: &str) -> String {
    format!("{count} {}", if count == 1 { one } else { many })
}

// --- coeffs ---------------------------------------------------------------------

#[derive(Serialize)]
struct CoeffsDoc {
    function: String,
    tau: u32,
    formula: &'static str,
    scale: &'static str,
    lambda: String,
    a: Vec<String>,
    b: Vec<String>,
    a0: Vec<String>,
    aij: Vec<Vec<String>>,
    c: Vec<String>,
}

fn coeffs_doc(derivation: &Derivation) -> CoeffsDoc {
    let spec = &derivation.spec;
    let coeffs = &derivation.coeffs;
    CoeffsDoc {
        function: spec.name.clone(),
        tau: spec.tau,
        formula: formula_letter(spec.convention.sigma),
        scale: scale_marker(spec.theta),
        lambda: format_rational(&coeffs.lambda),
        a: rational_strings(&spec.a),
        b: rational_strings(&coeffs.b),
        a0: rational_strings(&coeffs.a0),
        aij: coeffs.aij.iter().map(|row| rational_strings(row)).collect(),
        c: rational_strings(&coeffs.c),
    }
}

fn coeffs_text(derivation: &Derivation) -> String {
    let spec = &derivation.spec;
    let coeffs = &derivation.coeffs;
    let mut out = String::new();
    out.push_str(&format!("function: {}\n", spec.name));
    out.push_str(&format!("tau: {}\n", spec.tau));
    out.push_str(&format!("formula: {}\n", formula_letter(spec.convention.sigma)));
    if spec.theta == ThetaScale::PiSquared {
        out.push_str("scale: pi^2 (stored values are reduced: true a_m = a_m * pi^(2m))\n");
    }
    out.push_str(&format!("lambda: {}\n", format_rational(&coeffs.lambda)));
    out.push_str(&format!("a (m = 1..{}): {}\n", spec.a.len(), rational_list(&spec.a)));
    out.push_str(&format!("b (j = 1..{}): {}\n", coeffs.b.len(), rational_list(&coeffs.b)));
    out.push_str(&format!(
        "a0 (j = 1..{}): {}\n",
        coeffs.a0.len(),
        rational_list(&coeffs.a0)
    ));
    for (row_idx, row) in coeffs.aij.iter().enumerate() {
        let i = row_idx + 1;
        out.push_str(&format!(
            "a_{{{i},j}} (j = {}..{}): {}\n",
            i + 1,
            i + row.len(),
            rational_list(row)
        ));
    }
    out.push_str(&format!(
        "c (i = 0..{}): {}\n",
        coeffs.c.len() - 1,
        rational_list(&coeffs.c)
    ));
    out
}

fn coeffs_latex(derivation: &Derivation) -> String {
    let spec = &derivation.spec;
    let coeffs = &derivation.coeffs;
    let mut out = String::new();
    out.push_str(&format!("\\lambda = {}\n", latex_rational(&coeffs.lambda)));
    out.push_str(&format!(
        "(a_m)_{{m=1}}^{{{}}} = {}\n",
        spec.a.len(),
        latex_tuple(&spec.a)
    ));
    out.push_str(&format!(
        "(b_j)_{{j=1}}^{{{}}} = {}\n",
        coeffs.b.len(),
        latex_tuple(&coeffs.b)
    ));
    out.push_str(&format!(
        "(a_{{0,j}})_{{j=1}}^{{{}}} = {}\n",
        coeffs.a0.len(),
        latex_tuple(&coeffs.a0)
    ));
    out.push_str(&format!(
        "(c_i)_{{i=0}}^{{{}}} = {}\n",
        coeffs.c.len() - 1,
        latex_tuple(&coeffs.c)
    ));
    out
}

pub(crate) fn coeffs(
    target: &TargetArgs,
    orders: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    let target = resolve_target(target)?;
    let spec = spec_at_orders(&target, orders)?;
    let derivation = derive_all(&spec);
    let document = match format {
        Format::Text => coeffs_text(&derivation),
        Format::Json => to_json(&coeffs_doc(&derivation))?,
        Format::Latex => coeffs_latex(&derivation),
    };
    Ok(Outcome::ok(document))
}

// --- polys ----------------------------------------------------------------------

#[derive(Serialize)]
struct PolyDoc {
    m: usize,
    /// Coefficients ascending in X, as `p/q` strings.
    coeffs: Vec<String>,
}

#[derive(Serialize)]
struct PolysDoc {
    function: String,
    tau: u32,
    lambda: String,
    t: Vec<PolyDoc>,
    p: Vec<PolyDoc>,
}

fn poly_docs(polys: &[RatPoly], first_m: usize) -> Vec<PolyDoc> {
    polys
        .iter()
        .enumerate()
        .map(|(idx, poly)| PolyDoc {
            m: first_m + idx,
            coeffs: poly.coeffs().iter().map(format_rational).collect(),
        })
        .collect()
}

pub(crate) fn polys(
    target: &TargetArgs,
    orders: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    let target = resolve_target(target)?;
    let spec = spec_at_orders(&target, orders)?;
    let derivation = derive_all(&spec);
    let polys = &derivation.polys;
    let document = match format {
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!("function: {}\n", spec.name));
            out.push_str(&format!("tau: {}\n", spec.tau));
            for (idx, poly) in polys.t.iter().enumerate() {
                out.push_str(&format!("T_{}(X) = {}\n", idx + 1, poly));
            }
            for (m, poly) in polys.p.iter().enumerate() {
                out.push_str(&format!("P_{m}(X) = {poly}\n"));
            }
            out
        }
        Format::Json => to_json(&PolysDoc {
            function: spec.name.clone(),
            tau: spec.tau,
            lambda: format_rational(&derivation.coeffs.lambda),
            t: poly_docs(&polys.t, 1),
            p: poly_docs(&polys.p, 0),
        })?,
        Format::Latex => {
            let mut out = String::new();
            for (idx, poly) in polys.t.iter().enumerate() {
                out.push_str(&format!("T_{{{}}}(X) = {}\n", idx + 1, latex_poly(poly, "X")));
            }
            for (m, poly) in polys.p.iter().enumerate() {
                out.push_str(&format!("P_{{{m}}}(X) = {}\n", latex_poly(poly, "X")));
            }
            out
        }
    };
    Ok(Outcome::ok(document))
}

// --- expand ---------------------------------------------------------------------

pub(crate) fn expand(
    target: &TargetArgs,
    orders: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    let target = resolve_target(target)?;
    let expansion = expansion_for(&target, orders)?;
    let document = match format {
        Format::Text => {
            let mut text = expansion.render_text();
            text.push('\n');
            text
        }
        Format::Json => expansion.render_json(),
        Format::Latex => {
            let mut text = expansion.render_latex();
            text.push('\n');
            text
        }
    };
    Ok(Outcome::ok(document))
}

// --- eval -----------------------------------------------------------------------

#[derive(Serialize)]
struct EvalDoc {
    function: String,
    tau: u32,
    n: u64,
    orders: usize,
    digits: u32,
    constant: serde_json::Number,
    value: serde_json::Number,
}

pub(crate) fn eval(
    target: &TargetArgs,
    n: u64,
    constant_text: &str,
    digits_flag: Option<u32>,
    orders: Option<usize>,
    format: Format,
) -> Result<Outcome, CliError> {
    text_or_json(format, "eval")?;
    if n < 2 {
        return Err(CliError::new("n must be at least 2"));
    }
    let digits = resolve_digits(digits_flag, 30)?;
    let target = resolve_target(target)?;
    let expansion = expansion_for(&target, orders)?;
    // Work with guard digits so the printed digits are fully settled.
    let working = digits + 8;
    let constant = BigFloat::parse(constant_text, working)
        .map_err(|e| CliError::new(format!("invalid constant: {e}")))?;
    let k = expansion.k_from_constant(&constant);
    let value = expansion.evaluate_at(n, &k, working).with_digits(digits);
    let document = match format {
        Format::Text => format!("{}\n", value.to_decimal_string()),
        Format::Json => to_json(&EvalDoc {
            function: target.spec.name.clone(),
            tau: target.spec.tau,
            n,
            orders: expansion.max_order(),
            digits,
            constant: json_number(&constant.with_digits(digits).to_decimal_string())?,
            value: json_number(&value.to_decimal_string())?,
        })?,
        Format::Latex => unreachable!("rejected above"),
    };
    Ok(Outcome::ok(document))
}

// --- estimate-c -----------------------------------------------------------------

#[derive(Serialize)]
struct EstimateDoc {
    function: String,
    x0: String,
    digits: u32,
    constant: serde_json::Number,
    trusted_digits: usize,
    n_used: u64,
    precision_used: u32,
    residual: serde_json::Number,
}

pub(crate) fn estimate(
    name: &str,
    x0_text: Option<&str>,
    digits_flag: Option<u32>,
    max_n: Option<u64>,
    format: Format,
) -> Result<Outcome, CliError> {
    text_or_json(format, "estimate-c")?;
    let entry = lookup(name).ok_or_else(|| unknown_function(name))?;
    let x0 = match x0_text {
        Some(text) => Initial::parse(text).map_err(CliError::new)?,
        None => entry.default_start.clone(),
    };
    let digits = resolve_digits(digits_flag, 20)?;
    let schedule: Vec<u64> = match max_n {
        Some(cap) => {
            let schedule: Vec<u64> = N_SCHEDULE.iter().copied().filter(|n| *n <= cap).collect();
            if schedule.is_empty() {
                return Err(CliError::new(format!(
                    "max-n {cap} is below the smallest orbit depth {}",
                    N_SCHEDULE[0]
                )));
            }
            schedule
        }
        None => N_SCHEDULE.to_vec(),
    };
    let derivation = derive_all(&entry.spec);
    let expansion = assemble(&derivation, entry.spec.depth_j());
    // The printed digits sit after the decimal point; every catalog constant
    // has one integer digit, so ask for two more trusted significant digits.
    let target_digits = digits as usize + 2;
    let result = estimate_c_with_schedule(&entry, &expansion, &x0, target_digits, &schedule)
        .map_err(|e| CliError::new(e.to_string()))?;
    let printed = result.published_c.with_digits(digits).to_decimal_string();
    let document = match format {
        Format::Text => format!("{printed}\n"),
        Format::Json => to_json(&EstimateDoc {
            function: entry.spec.name.clone(),
            x0: x0.to_string(),
            digits,
            constant: json_number(&printed)?,
            trusted_digits: result.trusted_digits,
            n_used: result.n_used,
            precision_used: result.precision_used,
            residual: json_number(&result.residual.to_sci_string(3))?,
        })?,
        Format::Latex => unreachable!("rejected above"),
    };
    Ok(Outcome::ok(document))
}

// --- kindred --------------------------------------------------------------------

#[derive(Serialize)]
struct RelationDoc {
    relation: String,
    passed: bool,
}

#[derive(Serialize)]
struct SignTallyDoc {
    function: String,
    nonzero_slots: usize,
    negative_slots: usize,
}

#[derive(Serialize)]
struct KindredDoc {
    function: String,
    partner: String,
    partner_source: &'static str,
    tau: u32,
    partner_a: Vec<String>,
    partner_b: Vec<String>,
    partner_a0: Vec<String>,
    partner_c: Vec<String>,
    relations: Vec<RelationDoc>,
    compared_slots: usize,
    signs: Vec<SignTallyDoc>,
}

/// The three exact sign relations between a pair's derivations.
fn relation_checks(df: &Derivation, dg: &Derivation) -> Vec<RelationDoc> {
    let minus_one = rat_int(-1);
    let c_len = df.coeffs.c.len().min(dg.coeffs.c.len());
    let c_pass = (0..c_len)
        .all(|i| dg.coeffs.c[i] == &alternator(i + 1) * &df.coeffs.c[i]);
    let t_len = df.polys.t.len().min(dg.polys.t.len());
    let t_pass = (1..=t_len).all(|m| {
        dg.polys.t[m - 1] == df.polys.t[m - 1].scale_var(&minus_one).scale(&alternator(m))
    });
    let p_len = df.polys.p.len().min(dg.polys.p.len());
    let p_pass = (0..p_len).all(|m| {
        dg.polys.p[m] == df.polys.p[m].scale_var(&minus_one).scale(&alternator(m))
    });
    vec![
        RelationDoc {
            relation: "c_i^(g) = (-1)^(i+1) c_i^(f)".to_string(),
            passed: c_pass,
        },
        RelationDoc {
            relation: "T_m^(g)(X) = (-1)^m T_m^(f)(-X)".to_string(),
            passed: t_pass,
        },
        RelationDoc {
            relation: "P_m^(g)(X) = (-1)^m P_m^(f)(-X)".to_string(),
            passed: p_pass,
        },
    ]
}

pub(crate) fn kindred(target: &TargetArgs, format: Format) -> Result<Outcome, CliError> {
    text_or_json(format, "kindred")?;
    let target = resolve_target(target)?;
    let f_spec = target.spec.clone();
    let (g_spec, partner_source) = match &target.catalog {
        Some(entry) => {
            let partner = lookup(entry.kindred_partner).expect("catalog pairs are closed");
            (partner.spec.clone(), "catalog")
        }
        None => {
            let series = PowerSeries::new(f_spec.tau, f_spec.a.clone());
            let partner = kindred_of(&series, &f_spec.name)
                .map_err(|e| CliError::new(e.to_string()))?;
            let convention =
                Convention::new(flip(f_spec.convention.sigma), f_spec.convention.c_scale.clone());
            let spec = SeriesSpec::new(
                format!("{}-kindred", f_spec.name),
                f_spec.tau,
                partner.coeffs,
                f_spec.theta,
                convention,
            )
            .map_err(|e| CliError::new(e.to_string()))?;
            (spec, "constructed")
        }
    };
    let df = derive_all(&f_spec);
    let dg = derive_all(&g_spec);
    let relations = relation_checks(&df, &dg);
    let j = f_spec.depth_j().min(g_spec.depth_j());
    let comparison = kindred_compare(&assemble(&df, j), &assemble(&dg, j))
        .map_err(|e| CliError::new(e.to_string()))?;
    let magnitudes = RelationDoc {
        relation: "expansion magnitudes match term-by-term under C -> -C".to_string(),
        passed: comparison.passed(),
    };
    let all_passed = relations.iter().all(|r| r.passed) && magnitudes.passed;

    let document = match format {
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "function: {} (tau = {}, formula {})\n",
                f_spec.name,
                f_spec.tau,
                formula_letter(f_spec.convention.sigma)
            ));
            out.push_str(&format!(
                "partner: {} ({} entry, formula {})\n\n",
                g_spec.name,
                partner_source,
                formula_letter(g_spec.convention.sigma)
            ));
            out.push_str("partner series\n");
            out.push_str(&format!(
                "a (m = 1..{}): {}\n",
                g_spec.a.len(),
                rational_list(&g_spec.a)
            ));
            out.push_str(&format!(
                "b (j = 1..{}): {}\n",
                dg.coeffs.b.len(),
                rational_list(&dg.coeffs.b)
            ));
            out.push_str(&format!(
                "a0 (j = 1..{}): {}\n",
                dg.coeffs.a0.len(),
                rational_list(&dg.coeffs.a0)
            ));
            out.push_str(&format!(
                "c (i = 0..{}): {}\n\n",
                dg.coeffs.c.len() - 1,
                rational_list(&dg.coeffs.c)
            ));
            out.push_str("exact relations\n");
            for relation in &relations {
                out.push_str(&format!(
                    "{}: {}\n",
                    relation.relation,
                    if relation.passed { "PASS" } else { "FAIL" }
                ));
            }
            out.push_str(&format!(
                "{} ({} slots): {}\n\n",
                magnitudes.relation,
                comparison.slots,
                if magnitudes.passed { "PASS" } else { "FAIL" }
            ));
            out.push_str("sign pattern in each published constant\n");
            out.push_str(&format!(
                "{}: {} of {} nonzero slots negative\n",
                f_spec.name, comparison.left_negative, comparison.left_nonzero
            ));
            out.push_str(&format!(
                "{}: {} of {} nonzero slots negative\n",
                g_spec.name, comparison.right_negative, comparison.right_nonzero
            ));
            out
        }
        Format::Json => {
            let mut relations = relations;
            relations.push(magnitudes);
            to_json(&KindredDoc {
                function: f_spec.name.clone(),
                partner: g_spec.name.clone(),
                partner_source,
                tau: g_spec.tau,
                partner_a: rational_strings(&g_spec.a),
                partner_b: rational_strings(&dg.coeffs.b),
                partner_a0: rational_strings(&dg.coeffs.a0),
                partner_c: rational_strings(&dg.coeffs.c),
                relations,
                compared_slots: comparison.slots,
                signs: vec![
                    SignTallyDoc {
                        function: f_spec.name.clone(),
                        nonzero_slots: comparison.left_nonzero,
                        negative_slots: comparison.left_negative,
                    },
                    SignTallyDoc {
                        function: g_spec.name.clone(),
                        nonzero_slots: comparison.right_nonzero,
                        negative_slots: comparison.right_negative,
                    },
                ],
            })?
        }
        Format::Latex => unreachable!("rejected above"),
    };
    Ok(Outcome { document, verified: all_passed })
}

// --- list-functions ---------------------------------------------------------------

#[derive(Serialize)]
struct FunctionRow {
    name: String,
    tau: u32,
    formula: &'static str,
    scale: &'static str,
    lambda: String,
    start: String,
    window: String,
    partner: &'static str,
    summary: &'static str,
}

pub(crate) fn list_functions(format: Format) -> Result<Outcome, CliError> {
    text_or_json(format, "list-functions")?;
    let rows: Vec<FunctionRow> = catalog()
        .into_iter()
        .map(|entry| FunctionRow {
            name: entry.spec.name.clone(),
            tau: entry.spec.tau,
            formula: formula_letter(entry.spec.convention.sigma),
            scale: scale_marker(entry.spec.theta),
            lambda: format_rational(&compute_lambda(&entry.spec)),
            start: entry.default_start.to_string(),
            window: entry.start_bound.describe(),
            partner: entry.kindred_partner,
            summary: entry.summary,
        })
        .collect();
    let document = match format {
        Format::Text => {
            let mut out = String::new();
            let name_width = rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
            let lambda_width = rows.iter().map(|r| r.lambda.len()).max().unwrap_or(6).max(6);
            let start_width = rows.iter().map(|r| r.start.len()).max().unwrap_or(5).max(5);
            let partner_width = rows.iter().map(|r| r.partner.len()).max().unwrap_or(7).max(7);
            out.push_str(&format!(
                "{:<name_width$}  tau  formula  {:<lambda_width$}  {:<start_width$}  {:<partner_width$}  summary\n",
                "name", "lambda", "start", "partner"
            ));
            for row in &rows {
                out.push_str(&format!(
                    "{:<name_width$}  {:<3}  {:<7}  {:<lambda_width$}  {:<start_width$}  {:<partner_width$}  {}\n",
                    row.name, row.tau, row.formula, row.lambda, row.start, row.partner, row.summary
                ));
            }
            out
        }
        Format::Json => to_json(&rows)?,
        Format::Latex => unreachable!("rejected above"),
    };
    Ok(Outcome::ok(document))
}

// --- verify -----------------------------------------------------------------------

#[derive(Serialize)]
struct MismatchDoc {
    function: String,
    table: String,
    index: usize,
    expected: String,
    got: String,
}

impl MismatchDoc {
    fn from(mismatch: &Mismatch) -> Self {
        MismatchDoc {
            function: mismatch.function.clone(),
            table: mismatch.table.clone(),
            index: mismatch.index,
            expected: mismatch.expected.clone(),
            got: mismatch.got.clone(),
        }
    }
}

#[derive(Serialize)]
struct VerifiedFunctionDoc {
    function: String,
    passed: bool,
    mismatches: Vec<MismatchDoc>,
}

#[derive(Serialize)]
struct VerifyDoc {
    functions: Vec<VerifiedFunctionDoc>,
    mismatches: usize,
    passed: bool,
}

pub(crate) fn verify(
    corpus_dir: Option<&Path>,
    function: Option<&str>,
    format: Format,
) -> Result<Outcome, CliError> {
    text_or_json(format, "verify")?;
    let mut entries = match corpus_dir {
        Some(dir) => load_corpus_dir(dir),
        None => corpus_entries(),
    }
    .map_err(|e| CliError::new(e.to_string()))?;
    if let Some(name) = function {
        entries.retain(|entry| entry.name == name);
        if entries.is_empty() {
            return Err(CliError::new(format!(
                "unknown function '{name}': not present in the corpus"
            )));
        }
    }
    let reports: Vec<(String, Vec<Mismatch>)> = entries
        .iter()
        .map(|entry| (entry.name.clone(), kindred_core::verify_entry(entry)))
        .collect();
    let total: usize = reports.iter().map(|(_, m)| m.len()).sum();
    let document = match format {
        Format::Text => {
            let mut out = String::new();
            for (name, mismatches) in &reports {
                if mismatches.is_empty() {
                    out.push_str(&format!("{name}: PASS\n"));
                } else {
                    out.push_str(&format!(
                        "{name}: FAIL ({})\n",
                        plural(mismatches.len(), "mismatch", "mismatches")
                    ));
                    for mismatch in mismatches {
                        out.push_str(&format!("  {mismatch}\n"));
                    }
                }
            }
            if total == 0 {
                out.push_str(&format!(
                    "checked {}: all tables reproduced exactly\n",
                    plural(reports.len(), "function", "functions")
                ));
            } else {
                out.push_str(&format!(
                    "checked {}: {}\n",
                    plural(reports.len(), "function", "functions"),
                    plural(total, "mismatch", "mismatches")
                ));
            }
            out
        }
        Format::Json => to_json(&VerifyDoc {
            functions: reports
                .iter()
                .map(|(name, mismatches)| VerifiedFunctionDoc {
                    function: name.clone(),
                    passed: mismatches.is_empty(),
                    mismatches: mismatches.iter().map(MismatchDoc::from).collect(),
                })
                .collect(),
            mismatches: total,
            passed: total == 0,
        })?,
        Format::Latex => unreachable!("rejected above"),
    };
    Ok(Outcome { document, verified: total == 0 })
}
