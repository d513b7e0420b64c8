//! Combinatorial primitives behind every coefficient formula in the crate.
//!
//! Provides:
//! - [`falling_factorial`] — the product t(t−1)···(t−k+1) for rational t,
//! - [`factorial`], [`binomial`], [`multinomial`] — exact counting helpers,
//! - [`partitions`] — constrained integer solutions of Σ i·nᵢ = m with a
//!   prescribed total Σ nᵢ = m − s, the index set every coefficient family
//!   sums over.

use crate::rational::{rat_int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Error raised by the combinatorial primitives on out-of-contract input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    /// `falling_factorial` requires at least one factor.
    EmptyFallingFactorial,
    /// `multinomial` requires the parts to sum to the top index.
    PartsSumMismatch { top: u32, sum: u32 },
}

impl fmt::Display for CombinatoricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinatoricsError::EmptyFallingFactorial => {
                write!(f, "falling factorial needs k >= 1 (empty products are excluded)")
            }
            CombinatoricsError::PartsSumMismatch { top, sum } => {
                write!(f, "multinomial parts sum to {sum}, expected the top index {top}")
            }
        }
    }
}

impl std::error::Error for CombinatoricsError {}

/// Falling factorial t(t−1)(t−2)···(t−k+1) with k ≥ 1 factors.
///
/// # Edge cases
/// k = 0 is rejected: every use site in the coefficient formulas has at least
/// one factor, so an empty product would mask an index bug.
pub fn falling_factorial(t: &Rational, k: u32) -> Result<Rational, CombinatoricsError> {
    if k == 0 {
        return Err(CombinatoricsError::EmptyFallingFactorial);
    }
    let mut product = Rational::one();
    for i in 0..k {
        product *= t - rat_int(i64::from(i));
    }
    Ok(product)
}

/// k! as an exact rational (so it can divide other rationals directly).
pub fn factorial(k: u32) -> Rational {
    let mut product = BigInt::one();
    for i in 2..=k {
        product *= BigInt::from(i);
    }
    Rational::from_integer(product)
}

/// Binomial coefficient C(n, k) as an exact rational.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for i in 0..k {
        numer *= BigInt::from(n - i);
        denom *= BigInt::from(i + 1);
    }
    Rational::new(numer, denom)
}

/// Multinomial coefficient top! / (n₁!·n₂!···), requiring Σ nᵢ = top.
pub fn multinomial(top: u32, parts: &[u32]) -> Result<Rational, CombinatoricsError> {
    let sum: u32 = parts.iter().sum();
    if sum != top {
        return Err(CombinatoricsError::PartsSumMismatch { top, sum });
    }
    let mut value = factorial(top);
    for &part in parts {
        value /= factorial(part);
    }
    Ok(value)
}

/// One solution of the constrained partition system: exponents n₁..n_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSolution {
    /// Exponent nᵢ sits at index i−1.
    pub n: Vec<u32>,
}

impl PartitionSolution {
    /// Σ i·nᵢ — the weighted total the solution was constrained to.
    pub fn weighted_sum(&self) -> u32 {
        self.n
            .iter()
            .enumerate()
            .map(|(idx, &e)| (idx as u32 + 1) * e)
            .sum()
    }

    /// Σ nᵢ — the number of parts used.
    pub fn count(&self) -> u32 {
        self.n.iter().sum()
    }
}

/// All nonnegative (n₁, …, n_k) with Σ i·nᵢ = m and Σ nᵢ = m − s, in
/// lexicographic order of the tuple.
///
/// # Edge cases
/// Returns the empty list when m − s is negative or no solution exists; when
/// m = s = 0 the single all-zero tuple is the solution.
pub fn partitions(k: u32, m: u32, s: i64) -> Vec<PartitionSolution> {
    let count = i64::from(m) - s;
    if count < 0 || count > i64::from(m) {
        // More parts than weight (each part weighs >= 1) is impossible.
        return Vec::new();
    }
    let mut solutions = Vec::new();
    let mut current = vec![0u32; k as usize];
    descend(k, 1, m, count as u32, &mut current, &mut solutions);
    solutions
}

fn descend(
    k: u32,
    index: u32,
    weight_left: u32,
    count_left: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<PartitionSolution>,
) {
    if index > k {
        if weight_left == 0 && count_left == 0 {
            out.push(PartitionSolution { n: current.clone() });
        }
        return;
    }
    // Remaining parts each weigh at least `index`, so the count is bounded.
    let max_here = (weight_left / index).min(count_left);
    for e in 0..=max_here {
        current[(index - 1) as usize] = e;
        descend(k, index + 1, weight_left - index * e, count_left - e, current, out);
    }
    current[(index - 1) as usize] = 0;
}
