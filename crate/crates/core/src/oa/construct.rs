//! Finite-field constructions of orthogonal arrays.

use super::{verify, OrthogonalArray};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// Vectors of `GF(s)^len` in lexicographic order, first coordinate most significant.
fn all_vectors(f: &Field, len: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let s = f.order() as usize;
    let total = s.pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![f.zero(); len];
        for slot in v.iter_mut().rev() {
            *slot = f.element((idx % s) as u32);
            idx /= s;
        }
        v
    })
}

/// Rank of a matrix over `f` by Gaussian elimination.
pub(crate) fn rank(f: &Field, rows: &[Vec<FieldElement>]) -> usize {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != f.zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = f.inv(m[rank][col]).expect("pivot is nonzero");
        let pivot_row: Vec<_> = m[rank].iter().map(|&x| f.mul(x, inv)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col] == f.zero() {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, p));
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Builds the array whose rows are all `s^k` codewords `u G` of the code
/// generated by the `k x n` matrix `generator`, then checks it at
/// `claimed_strength`. Symbols are shifted to `1..=s`.
pub fn construct_from_linear_code(
    f: &Field,
    generator: &[Vec<FieldElement>],
    claimed_strength: u32,
) -> Result<OrthogonalArray> {
    let k = generator.len();
    if k == 0 {
        return Err(Error::InvalidParameter("generator has no rows".into()));
    }
    let n = generator[0].len();
    if n == 0 || generator.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameter("generator rows must be nonempty and equal length".into()));
    }
    if let Some(bad) = generator.iter().flatten().find(|x| x.rep() >= f.order()) {
        return Err(Error::InvalidParameter(format!(
            "generator entry {} outside GF({})",
            bad.rep(),
            f.order()
        )));
    }
    let r = rank(f, generator);
    if r < k {
        return Err(Error::RankDeficient { rank: r, rows: k });
    }
    let rows = all_vectors(f, k)
        .map(|u| {
            (0..n)
                .map(|c| {
                    let col: Vec<_> = generator.iter().map(|row| row[c]).collect();
                    f.dot(&u, &col).rep() + 1
                })
                .collect()
        })
        .collect();
    let arr = OrthogonalArray::from_rows(rows, f.order(), claimed_strength)?;
    let report = verify(&arr);
    if !report.is_ok() {
        return Err(Error::Verification(report.to_string()));
    }
    Ok(arr)
}

/// Generator whose columns are the canonical representatives of the
/// 1-dimensional subspaces of `GF(s)^ell` (first nonzero coordinate is 1),
/// ordered by their encoding.
pub fn rao_hamming_generator(f: &Field, ell: usize) -> Vec<Vec<FieldElement>> {
    let reps: Vec<Vec<FieldElement>> = all_vectors(f, ell)
        .filter(|v| v.iter().find(|&&x| x != f.zero()) == Some(&f.one()))
        .collect();
    (0..ell)
        .map(|i| reps.iter().map(|c| c[i]).collect())
        .collect()
}

/// `OA(s^ell, (s^ell - 1)/(s - 1), s, 2)`: rows indexed by `v in GF(s)^ell`,
/// columns by projective points `c`, entry `1 + <v, c>`.
pub fn construct_rao_hamming(f: &Field, ell: u32) -> Result<OrthogonalArray> {
    if ell < 2 {
        return Err(Error::InvalidParameter(format!("exponent must be >= 2, got {ell}")));
    }
    let s = f.order() as u64;
    if s.pow(ell) > 1 << 20 {
        return Err(Error::TooLarge(format!("s^ell = {s}^{ell} runs")));
    }
    construct_from_linear_code(f, &rao_hamming_generator(f, ell as usize), 2)
}
