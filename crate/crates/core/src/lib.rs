//! Exact asymptotics of iterated analytic maps with a degenerate fixed point
//! at the origin.
//!
//! For a map f(x) = x + a₁x^{τ+1} + a₂x^{2τ+1} + ⋯ with a₁ < 0, the iterates
//! x_{n+1} = f(x_n) from a small positive start decay like (λ/n)^{1/τ}, with
//! corrections organized by a family of polynomials in ln n and an
//! initial-condition constant. This crate derives every coefficient of that
//! structure exactly over rationals and estimates the constant to many digits:
//!
//! - [`rational`], [`combinatorics`], [`poly`] — the exact arithmetic kernel,
//! - [`engine`] — the coefficient families (λ, b, a₀, a_{i,j}, c) and the
//!   polynomial towers (T_m, T̃_m, P_m),
//! - [`series`] — formal power series in block form: composition, reversion,
//!   the kindred (sign-flipped inverse) construction, and independent series
//!   oracles for the engine's coefficient families,
//! - [`catalog`] — twelve ready-made maps with exact coefficient generators
//!   and high-precision evaluators,
//! - [`bigfloat`] — decimal fixed-point arithmetic with explicit precision,
//! - [`expansion`] — assembling, evaluating, and rendering the asymptotic
//!   expansion of x_n,
//! - [`estimate`] — high-precision estimation of the initial-condition
//!   constant from iterated orbits,
//! - [`specfile`] — the on-disk format for user-supplied maps,
//! - [`corpus`] — loading and checking the golden reference tables.

pub mod bigfloat;
pub mod catalog;
pub mod combinatorics;
pub mod corpus;
pub mod engine;
pub mod estimate;
pub mod expansion;
pub mod poly;
pub mod rational;
pub mod series;
pub mod specfile;

pub use bigfloat::{pi, BigFloat};
pub use catalog::{
    catalog, catalog_names, coefficients, lookup, CatalogFunction, Initial, StartBound,
};
pub use combinatorics::{
    binomial, factorial, falling_factorial, multinomial, partitions, PartitionSolution,
};
pub use corpus::{
    corpus_entries, load_corpus_dir, parse_corpus_entry, verify_all, verify_entry,
    ConstantRecord, CorpusEntry, CorpusError, Mismatch,
};
pub use engine::{
    compute_a0, compute_aij, compute_b, compute_c, compute_lambda, compute_p, compute_t,
    compute_t_tilde, derive_all, CoeffSet, Convention, Derivation, PolySet, SeriesSpec, Sign,
    SpecError, ThetaScale,
};
pub use estimate::{
    digits_of_agreement, estimate_c, estimate_c_with_schedule, iterate, iterate_marks,
    shifted_constant, solve_k, EstimateError, EstimateResult, N_SCHEDULE,
};
pub use expansion::{
    assemble, kindred_compare, parse_document, AsymptoticExpansion, ExpansionDocument,
    KindredCompareError, KindredComparison, KindredMismatch, TermDocument,
};
pub use poly::RatPoly;
pub use rational::{
    big_rat, format_rational, parse_rational, parse_rational_strict, rat, rat_int, rat_pow,
    Rational,
};
pub use series::{
    compose_series, kindred_of, oracle_log_ratio, oracle_power_difference, oracle_y_difference,
    revert_series, PowerSeries, SeriesError, SeriesOrigin,
};
pub use specfile::{load_spec_file, parse_spec_file, SpecFileError};
