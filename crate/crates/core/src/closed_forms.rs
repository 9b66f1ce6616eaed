//! Exact big-integer evaluation of the binomial sums.
//!
//! Every function here returns a [`Count`] (an unbounded nonnegative
//! integer); nothing is computed in fixed width.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact nonnegative count.
pub type Count = BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("k = {k} outside 0..={n}")]
    KOutOfRange { n: u64, k: i64 },
    #[error("a = {a} outside 0..={k}")]
    AOutOfRange { k: u64, a: i64 },
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
///
/// Running product `prod (n - k + i) / i` over `i = 1..=k`; each partial
/// product is itself a binomial so the division is exact.
pub fn binomial(n: u64, k: i64) -> Count {
    if k < 0 || k as u64 > n {
        return Count::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Count::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// Row `C(n, 0), ..., C(n, n)`.
pub fn binomial_row(n: u64) -> Vec<Count> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = Count::one();
    for j in 0..=n {
        row.push(c.clone());
        c = c * (n - j) / (j + 1);
    }
    row
}

/// Franel number `sum_j C(n, j)^3`: the number of full-deck deals.
pub fn franel(n: u64) -> Count {
    binomial_row(n).iter().map(|c| c * c * c).sum()
}

/// Left side of the identity, `sum_k C(n, k) * franel(k)`.
pub fn lhs_sum(n: u64) -> Count {
    binomial_row(n)
        .iter()
        .zip(0..)
        .map(|(c, k)| c * franel(k))
        .sum()
}

/// Right side of the identity, `sum_k C(n, k)^2 * C(2k, k)`.
pub fn rhs_sum(n: u64) -> Count {
    binomial_row(n)
        .iter()
        .zip(0..)
        .map(|(c, k)| c * c * binomial(2 * k, k as i64))
        .sum()
}

fn check_k(n: u64, k: i64) -> Result<u64, FormulaError> {
    if k < 0 || k as u64 > n {
        Err(FormulaError::KOutOfRange { n, k })
    } else {
        Ok(k as u64)
    }
}

/// Number of deals whose red denominations are one fixed `k`-set:
/// `C(n, k) * C(2k, k)`.
pub fn prop2_count(n: u64, k: i64) -> Result<Count, FormulaError> {
    let k = check_k(n, k)?;
    Ok(binomial(n, k as i64) * binomial(2 * k, k as i64))
}

/// Number of deals with exactly `k` distinct red denominations:
/// `C(n, k)^2 * C(2k, k)`.
pub fn stat2_count(n: u64, k: i64) -> Result<Count, FormulaError> {
    let per_set = prop2_count(n, k)?;
    Ok(binomial(n, k) * per_set)
}

/// Number of deals with `|S| = k`: `C(n, k) * franel(k)`.
pub fn stat1_count(n: u64, k: i64) -> Result<Count, FormulaError> {
    let k = check_k(n, k)?;
    Ok(binomial(n, k as i64) * franel(k))
}

/// Inner sum over the blue-only block, `sum_b C(k - a, b) * C(k + a, k - b)`.
/// Equals `C(2k, k)` for every admissible `a`.
pub fn vandermonde_inner(k: u64, a: i64) -> Result<Count, FormulaError> {
    if a < 0 || a as u64 > k {
        return Err(FormulaError::AOutOfRange { k, a });
    }
    let a = a as u64;
    Ok((0..=k - a)
        .map(|b| binomial(k - a, b as i64) * binomial(k + a, k as i64 - b as i64))
        .sum())
}

/// Outer sum over the both-colors block, `sum_a C(k, a) * C(n - k, n - k - a)`.
/// Equals `C(n, n - k) = C(n, k)`.
pub fn vandermonde_outer(n: u64, k: i64) -> Result<Count, FormulaError> {
    let k = check_k(n, k)?;
    let rest = n - k;
    Ok((0..=k)
        .map(|a| binomial(k, a as i64) * binomial(rest, rest as i64 - a as i64))
        .sum())
}

/// The unsimplified count of deals with a fixed red denomination `k`-set,
/// summed over the block sizes `a = |A|` and `b = |B|` with `c = k - a - b`:
/// `sum C(k, a) C(k - a, b) C(n - k, a) C(k + a, a + c)`.
pub fn prop2_double_sum(n: u64, k: i64) -> Result<Count, FormulaError> {
    let k = check_k(n, k)?;
    let mut total = Count::zero();
    for a in 0..=k {
        let outer = binomial(k, a as i64) * binomial(n - k, a as i64);
        if outer.is_zero() {
            continue;
        }
        for b in 0..=k - a {
            let c = k - a - b;
            total += &outer * binomial(k - a, b as i64) * binomial(k + a, (a + c) as i64);
        }
    }
    Ok(total)
}

/// `sum_k C(n, k) * C(2k, k)`: deals whose red denominations form a prefix `{1..k}`.
pub fn central_binomial_sum(n: u64) -> Count {
    binomial_row(n)
        .iter()
        .zip(0..)
        .map(|(c, k)| c * binomial(2 * k, k as i64))
        .sum()
}

/// Integer sequences exported by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    /// The common value of both sides: 1, 3, 15, 93, 639, ...
    Main,
    /// Franel numbers: 1, 2, 10, 56, 346, ...
    Franel,
    /// `sum_k C(n, k) C(2k, k)`: 1, 3, 11, 45, 195, ...
    PrefixSum,
}

impl Sequence {
    pub fn term(self, n: u64) -> Count {
        match self {
            Sequence::Main => rhs_sum(n),
            Sequence::Franel => franel(n),
            Sequence::PrefixSum => central_binomial_sum(n),
        }
    }
}
