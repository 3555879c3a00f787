//! Orthogonal arrays: representation, exhaustive strength verification,
//! finite-field constructions and a plain-text loader.
//!
//! An `OA(N, n, s, t)` is an `N x n` array over the alphabet `{1..s}` in
//! which every `N x t` subarray contains each `t`-tuple exactly
//! `lambda = N / s^t` times. Symbols are always stored 1-based.

mod catalog;
mod construct;
mod text;

pub use catalog::{bundled_text, figure1, oa_32_9_4_2};
pub use construct::{construct_from_linear_code, construct_rao_hamming};
pub use text::{load, parse, parse_rows, render};

use crate::error::{Error, Result};
use crate::exec::{self, Parallelism};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalArray {
    runs: usize,
    factors: usize,
    levels: u32,
    strength: u32,
    /// Row-major, symbols in `1..=levels`.
    entries: Vec<u32>,
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationReport {
    Ok { lambda: usize },
    /// `N` is not a multiple of `s^t`.
    BadRunCount { runs: usize, block: usize },
    Unbalanced {
        columns: Vec<usize>,
        tuple: Vec<u32>,
        count: usize,
        expected: usize,
    },
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerificationReport::Ok { .. })
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerificationReport::Ok { lambda } => write!(f, "OK lambda {lambda}"),
            VerificationReport::BadRunCount { runs, block } => {
                write!(f, "run count {runs} is not a multiple of s^t = {block}")
            }
            VerificationReport::Unbalanced {
                columns,
                tuple,
                count,
                expected,
            } => {
                let cols: Vec<String> = columns.iter().map(|c| (c + 1).to_string()).collect();
                let tup: Vec<String> = tuple.iter().map(u32::to_string).collect();
                write!(
                    f,
                    "columns ({}) contain tuple ({}) {count} times, expected {expected}",
                    cols.join(","),
                    tup.join(",")
                )
            }
        }
    }
}

impl OrthogonalArray {
    /// Wraps raw rows without checking the balance property. Entries must lie
    /// in `1..=levels`; use [`verify`] to check the strength.
    pub fn from_rows(rows: Vec<Vec<u32>>, levels: u32, strength: u32) -> Result<Self> {
        let runs = rows.len();
        if runs == 0 {
            return Err(Error::MalformedArray("array has no rows".into()));
        }
        let factors = rows[0].len();
        if factors == 0 {
            return Err(Error::MalformedArray("array has no columns".into()));
        }
        if levels < 2 {
            return Err(Error::MalformedArray("need at least two levels".into()));
        }
        let mut entries = Vec::with_capacity(runs * factors);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != factors {
                return Err(Error::MalformedArray(format!(
                    "row {} has {} entries, expected {factors}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x == 0 || x > levels) {
                return Err(Error::MalformedArray(format!(
                    "row {} has symbol {bad} outside 1..={levels}",
                    i + 1
                )));
            }
            entries.extend(row);
        }
        Ok(OrthogonalArray {
            runs,
            factors,
            levels,
            strength,
            entries,
        })
    }

    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    pub fn strength(&self) -> u32 {
        self.strength
    }

    /// `N / s^t`, rounded down.
    pub fn lambda(&self) -> usize {
        self.runs / (self.levels as usize).pow(self.strength)
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.factors..(i + 1) * self.factors]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.factors)
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.factors + col]
    }

    /// Overwrites one entry; the result may no longer be an OA.
    pub fn set(&mut self, row: usize, col: usize, symbol: u32) -> Result<()> {
        if symbol == 0 || symbol > self.levels {
            return Err(Error::MalformedArray(format!(
                "symbol {symbol} outside 1..={}",
                self.levels
            )));
        }
        self.entries[row * self.factors + col] = symbol;
        Ok(())
    }

    pub fn with_strength(mut self, strength: u32) -> Self {
        self.strength = strength;
        self
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.factors {
            entries.extend((0..self.runs).map(|r| self.get(r, c)));
        }
        OrthogonalArray {
            runs: self.factors,
            factors: self.runs,
            levels: self.levels,
            strength: self.strength,
            entries,
        }
    }

    /// Reorders rows; `order` must be a permutation of `0..N`.
    pub fn permute_rows(&self, order: &[usize]) -> Self {
        let rows = order.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(rows, self.levels, self.strength).expect("permuted rows stay valid")
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows = self
            .rows()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        Self::from_rows(rows, self.levels, self.strength).expect("selected columns stay valid")
    }
}

/// Iterates over all `t`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if t > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        out.push(idx.clone());
        let mut i = t;
        while i > 0 && idx[i - 1] == n - t + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_subset(arr: &OrthogonalArray, cols: &[usize], expected: usize) -> Option<VerificationReport> {
    let s = arr.levels as usize;
    let mut hist = vec![0usize; s.pow(cols.len() as u32)];
    for row in arr.rows() {
        let key = cols.iter().fold(0, |acc, &c| acc * s + (row[c] - 1) as usize);
        hist[key] += 1;
    }
    let (key, &count) = hist.iter().enumerate().find(|(_, &c)| c != expected)?;
    let mut tuple = vec![0u32; cols.len()];
    let mut rest = key;
    for slot in tuple.iter_mut().rev() {
        *slot = (rest % s) as u32 + 1;
        rest /= s;
    }
    Some(VerificationReport::Unbalanced {
        columns: cols.to_vec(),
        tuple,
        count,
        expected,
    })
}

/// Exhaustively checks the strength-`t` balance property over all column subsets.
pub fn verify(arr: &OrthogonalArray) -> VerificationReport {
    verify_with(arr, Parallelism::default())
}

pub fn verify_with(arr: &OrthogonalArray, mode: Parallelism) -> VerificationReport {
    let t = arr.strength as usize;
    let block = (arr.levels as usize).pow(arr.strength);
    if !arr.runs.is_multiple_of(block) {
        return VerificationReport::BadRunCount {
            runs: arr.runs,
            block,
        };
    }
    let lambda = arr.runs / block;
    if t == 0 {
        return VerificationReport::Ok { lambda };
    }
    if t > arr.factors {
        return VerificationReport::BadRunCount {
            runs: arr.runs,
            block,
        };
    }
    let subsets = combinations(arr.factors, t);
    let failures = exec::map_indexed(mode, subsets.len(), |i| {
        check_subset(arr, &subsets[i], lambda)
    });
    failures
        .into_iter()
        .flatten()
        .next()
        .unwrap_or(VerificationReport::Ok { lambda })
}

/// Keeps the listed columns; fails unless at least `t` distinct in-range
/// columns are requested. The strength label is carried over unchanged.
pub fn restrict_columns(arr: &OrthogonalArray, cols: &[usize]) -> Result<OrthogonalArray> {
    if cols.len() < arr.strength as usize {
        return Err(Error::InvalidParameter(format!(
            "restriction keeps {} columns, strength {} needs at least that many",
            cols.len(),
            arr.strength
        )));
    }
    let mut seen = vec![false; arr.factors];
    for &c in cols {
        if c >= arr.factors {
            return Err(Error::InvalidParameter(format!(
                "column {} out of range 1..={}",
                c + 1,
                arr.factors
            )));
        }
        if std::mem::replace(&mut seen[c], true) {
            return Err(Error::InvalidParameter(format!("column {} repeated", c + 1)));
        }
    }
    Ok(arr.select_columns(cols))
}
