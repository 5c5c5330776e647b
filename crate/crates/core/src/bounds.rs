//! Lower bounds on the sizes of disjoint compatible subsets and the kissing
//! numbers they give in dimensions 25 through 31.
//!
//! Everything is exact: the expected overlap after `k` subsets,
//! `E_k = |S| · Σ|S_j| / 196560`, is a rational number and its parity tests
//! never go through floating point.

use std::fmt::Write as _;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::leech::KISSING_24;

pub type Rational = Ratio<i64>;

const C: i64 = KISSING_24 as i64;

/// Largest base size for which the paired-step recursion is valid.
pub const MAX_PAIRED_BASE: i64 = 626;

/// Number of subsets the dimension formulas use.
pub const MAX_SUBSETS: usize = 51;

/// Greatest even integer `≤ x`.
pub fn floor_even(x: Rational) -> i64 {
    2 * (x / 2).floor().to_integer()
}

/// Smallest even integer `≥ x`.
pub fn ceil_even(x: Rational) -> i64 {
    2 * (x / 2).ceil().to_integer()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// One subset at a time from the expected-overlap argument.
    Prop14,
    /// Paired steps whenever `⌊E_k⌋` is even.
    Algnew,
}

impl std::str::FromStr for BoundMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prop14" => Ok(BoundMode::Prop14),
            "algnew" => Ok(BoundMode::Algnew),
            other => Err(Error::InvalidParams(format!("unknown bound mode {other:?}"))),
        }
    }
}

impl std::fmt::Display for BoundMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundMode::Prop14 => "prop14",
            BoundMode::Algnew => "algnew",
        })
    }
}

/// Running bookkeeping of a bound sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundState {
    base: i64,
    sizes: Vec<i64>,
    running_sum: i64,
    expected_overlap: Rational,
}

impl BoundState {
    pub fn new(base: i64) -> Result<Self> {
        if base < 2 || base.is_odd() {
            return Err(Error::InvalidParams(format!(
                "base size must be an even integer at least 2, got {base}"
            )));
        }
        Ok(BoundState {
            base,
            sizes: vec![base],
            running_sum: base,
            expected_overlap: Rational::new(base * base, C),
        })
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn sizes(&self) -> &[i64] {
        &self.sizes
    }

    pub fn running_sum(&self) -> i64 {
        self.running_sum
    }

    /// `E_k` for `k = sizes.len()`.
    pub fn expected_overlap(&self) -> Rational {
        self.expected_overlap
    }

    pub fn push(&mut self, size: i64) {
        self.sizes.push(size);
        self.running_sum += size;
        self.expected_overlap = Rational::new(self.base * self.running_sum, C);
    }

    pub fn into_sizes(self) -> Vec<i64> {
        self.sizes
    }
}

/// `⌈|S| − E_k⌉₂`, the next subset size guaranteed by the expected-overlap
/// argument.
pub fn prop14_next(state: &BoundState) -> Result<i64> {
    let next = ceil_even(Rational::from_integer(state.base) - state.expected_overlap);
    if next <= 0 {
        return Err(Error::NonPositiveBound {
            step: state.sizes.len() + 1,
            value: (Rational::from_integer(state.base) - state.expected_overlap).to_string(),
        });
    }
    Ok(next)
}

pub fn prop14_sequence(base: i64, n: usize) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::InvalidParams("need at least one subset".into()));
    }
    let mut state = BoundState::new(base)?;
    while state.sizes.len() < n {
        let next = prop14_next(&state)?;
        state.push(next);
    }
    Ok(state.into_sizes())
}

/// Sequence of the paired-step recursion. The sizes it lists are devices
/// for computing the dimension bounds: only the sums of each paired step are
/// guaranteed, not the individual entries.
pub fn algnew_sequence(base: i64, n: usize) -> Result<Vec<i64>> {
    if n == 0 || n > MAX_SUBSETS {
        return Err(Error::InvalidParams(format!("subset count must be in 1..={MAX_SUBSETS}, got {n}")));
    }
    if base > MAX_PAIRED_BASE {
        return Err(Error::InvalidParams(format!(
            "paired steps need a base size of at most {MAX_PAIRED_BASE}, got {base}"
        )));
    }
    let mut state = BoundState::new(base)?;
    if n >= 2 {
        let second = prop14_next(&state)?;
        state.push(second);
    }
    while state.sizes.len() < n {
        let e = state.expected_overlap;
        if e.floor().to_integer().is_even() {
            let paired = base - floor_even(e);
            if paired <= 0 {
                return Err(Error::NonPositiveBound {
                    step: state.sizes.len() + 1,
                    value: paired.to_string(),
                });
            }
            state.push(paired);
            if state.sizes.len() < n {
                state.push(paired);
            }
        } else {
            let next = prop14_next(&state)?;
            state.push(next);
        }
    }
    Ok(state.into_sizes())
}

pub fn sequence(base: i64, n: usize, mode: BoundMode) -> Result<Vec<i64>> {
    match mode {
        BoundMode::Prop14 => prop14_sequence(base, n),
        BoundMode::Algnew => algnew_sequence(base, n),
    }
}

/// `196560 + Σ coefficient · |S_i|` over 1-based inclusive index ranges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionFormula {
    pub dim: usize,
    /// `(coefficient, first, last)`, coefficient-2 ranges first.
    pub terms: Vec<(i64, usize, usize)>,
}

impl DimensionFormula {
    pub fn for_dim(dim: usize) -> Result<Self> {
        let terms = match dim {
            25 => vec![(1, 1, 1)],
            26 => vec![(2, 1, 2)],
            27 => vec![(2, 1, 2), (1, 3, 5)],
            28 => vec![(2, 1, 8)],
            29 => vec![(2, 1, 8), (1, 9, 16)],
            30 => vec![(2, 1, 24)],
            31 => vec![(2, 1, 24), (1, 25, 51)],
            _ => return Err(Error::UnsupportedDimension(dim)),
        };
        Ok(DimensionFormula { dim, terms })
    }

    /// Number of subsets the formula reads.
    pub fn subsets_used(&self) -> usize {
        self.terms.iter().map(|t| t.2).max().unwrap_or(0)
    }

    /// `(coefficient-2 count, coefficient-1 count)`.
    pub fn coefficient_counts(&self) -> (usize, usize) {
        let count = |c| {
            self.terms
                .iter()
                .filter(|t| t.0 == c)
                .map(|t| t.2 + 1 - t.1)
                .sum()
        };
        (count(2), count(1))
    }

    pub fn evaluate(&self, sizes: &[i64]) -> i64 {
        let at = |i: usize| sizes.get(i - 1).copied().unwrap_or(0);
        C + self
            .terms
            .iter()
            .map(|&(coef, first, last)| coef * (first..=last).map(at).sum::<i64>())
            .sum::<i64>()
    }
}

/// Kissing-number lower bound in `dim` from subset sizes (missing entries
/// count as 0).
pub fn dimension_bound(sizes: &[i64], dim: usize) -> Result<i64> {
    Ok(DimensionFormula::for_dim(dim)?.evaluate(sizes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub dim: usize,
    pub bound: i64,
    pub family_bound: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub base: i64,
    pub mode: BoundMode,
    /// Sizes from the recursion. For `algnew` these are bound-computation
    /// devices, not sizes of subsets known to exist.
    pub sizes: Vec<i64>,
    pub sizes_are_hypothetical: bool,
    pub family_sizes: Option<Vec<i64>>,
    pub rows: Vec<BoundRow>,
}

pub fn bounds_report(
    base: i64,
    mode: BoundMode,
    family_sizes: Option<&[i64]>,
    dims: std::ops::RangeInclusive<usize>,
) -> Result<BoundsReport> {
    let sizes = sequence(base, MAX_SUBSETS, mode)?;
    let rows = dims
        .map(|dim| {
            Ok(BoundRow {
                dim,
                bound: dimension_bound(&sizes, dim)?,
                family_bound: family_sizes.map(|f| dimension_bound(f, dim)).transpose()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundsReport {
        base,
        mode,
        sizes,
        sizes_are_hypothetical: mode == BoundMode::Algnew,
        family_sizes: family_sizes.map(<[i64]>::to_vec),
        rows,
    })
}

impl BoundsReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let label = match self.mode {
            BoundMode::Prop14 => "expected-overlap recursion",
            BoundMode::Algnew => "paired-step recursion (sizes are bound devices only)",
        };
        writeln!(out, "base |S| = {}, {}", self.base, label).unwrap();
        let with_family = self.family_sizes.is_some();
        if with_family {
            writeln!(out, "{:>9}  {:>12}  {:>12}", "dimension", "recursion", "family").unwrap();
        } else {
            writeln!(out, "{:>9}  {:>12}", "dimension", "recursion").unwrap();
        }
        for row in &self.rows {
            match row.family_bound {
                Some(f) => writeln!(out, "{:>9}  {:>12}  {:>12}", row.dim, row.bound, f).unwrap(),
                None => writeln!(out, "{:>9}  {:>12}", row.dim, row.bound).unwrap(),
            }
        }
        out
    }
}
