//! Dense complex linear algebra for numerical validation.
//!
//! Matrices are square and row-major. Multiplication goes through
//! `matrixmultiply::zgemm`; everything else (exponential, eigensolver,
//! distances) is implemented here.

mod distance;
mod eigh;
mod expm;
mod random;

pub use distance::{trace_distance, trace_distance_pure_vs_mixture};
pub use eigh::{eigh, Eigh};
pub use expm::expm_i_hermitian;
pub use random::haar_state;

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::{self, Parallelism};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Largest side length accepted by the exponential and eigensolver.
pub const MAX_DIM: usize = 1024;

/// Numerical tolerances shared by the dense routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermiticity: f64,
    pub unitarity: f64,
    /// Unitarity accepted for inputs to `ctrl` and `lambda_op`.
    pub control_input: f64,
    pub eig_offdiag: f64,
    pub density_trace: f64,
    pub max_sweeps: usize,
}

pub const TOLERANCES: Tolerances = Tolerances {
    hermiticity: 1e-10,
    unitarity: 1e-10,
    control_input: 1e-8,
    eig_offdiag: 1e-12,
    density_trace: 1e-8,
    max_sweeps: 100,
};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

/// `c = a * b` for row-major `m x k` and `k x n` buffers.
fn gemm(m: usize, k: usize, n: usize, a: &[C64], b: &[C64], c: &mut [C64]) {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), k * n);
    debug_assert_eq!(c.len(), m * n);
    // SAFETY: Complex64 is repr(C) with layout [re, im], which is exactly the
    // `[f64; 2]` element type zgemm expects; slice lengths are checked above.
    unsafe {
        matrixmultiply::zgemm(
            matrixmultiply::CGemmOption::Standard,
            matrixmultiply::CGemmOption::Standard,
            m,
            k,
            n,
            [1.0, 0.0],
            a.as_ptr() as *const [f64; 2],
            k as isize,
            1,
            b.as_ptr() as *const [f64; 2],
            n as isize,
            1,
            [0.0, 0.0],
            c.as_mut_ptr() as *mut [f64; 2],
            n as isize,
            1,
        );
    }
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        DenseMatrix { dim, data }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("matrix rows must form a square".into()));
        }
        Ok(DenseMatrix {
            dim,
            data: rows.concat(),
        })
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} vs {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zeros(self.dim);
        gemm(self.dim, self.dim, self.dim, &self.data, &other.data, &mut out.data);
        Ok(out)
    }

    /// Panicking product for internal use where dimensions are known to agree.
    pub fn mul(&self, other: &Self) -> Self {
        self.matmul(other).expect("matching dimensions")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(DenseMatrix { dim: self.dim, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(DenseMatrix { dim: self.dim, data })
    }

    /// `self += alpha * other`.
    pub fn axpy(&mut self, alpha: C64, other: &Self) -> Result<()> {
        self.check_same(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
        Ok(())
    }

    pub fn scale(&self, alpha: C64) -> Self {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * alpha).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    /// Kronecker product `self (x) other`; `self` is the more significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |r, c| self[(r / b, c / b)] * other[(r % b, c % b)])
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.dim)
            .map(|c| (0..self.dim).map(|r| self[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn unitarity_error(&self) -> f64 {
        let prod = self.adjoint().mul(self);
        prod.max_abs_diff(&Self::identity(self.dim))
    }

    pub fn check_hermitian(&self, tol: f64) -> Result<()> {
        let err = self.hermiticity_error();
        if err > tol {
            return Err(Error::NotHermitian(err));
        }
        Ok(())
    }

    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        let err = self.unitarity_error();
        if err > tol {
            return Err(Error::NotUnitary(err));
        }
        Ok(())
    }

    /// `self * v`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `min |self - phase * other|_F` over unit-modulus phases.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        let overlap: C64 = other
            .data
            .iter()
            .zip(&self.data)
            .map(|(o, s)| o.conj() * s)
            .sum();
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            ONE
        };
        self.sub(&other.scale(phase)).expect("same dim").frobenius_norm()
    }

    /// Largest singular value, from the top eigenvalue of `A^dagger A`.
    pub fn spectral_norm(&self) -> Result<f64> {
        let gram = self.adjoint().mul(self);
        let e = eigh(&gram)?;
        Ok(e.values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
    }
}

/// `ctrl(U) = |0><0| (x) I + |1><1| (x) U`, control as the most significant factor.
pub fn ctrl(u: &DenseMatrix) -> Result<DenseMatrix> {
    u.check_unitary(TOLERANCES.control_input)?;
    Ok(block_diag(&DenseMatrix::identity(u.dim()), u))
}

/// `Lambda(M) = |0><0| (x) M + |1><1| (x) I`: active when the control is `|0>`.
pub fn lambda_op(u: &DenseMatrix) -> Result<DenseMatrix> {
    u.check_unitary(TOLERANCES.control_input)?;
    Ok(block_diag(u, &DenseMatrix::identity(u.dim())))
}

/// `|0><0| (x) upper + |1><1| (x) lower`.
pub fn block_diag(upper: &DenseMatrix, lower: &DenseMatrix) -> DenseMatrix {
    let d = upper.dim();
    assert_eq!(d, lower.dim());
    DenseMatrix::from_fn(2 * d, |r, c| match (r < d, c < d) {
        (true, true) => upper[(r, c)],
        (false, false) => lower[(r - d, c - d)],
        _ => ZERO,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Self {
        StateVector { amps }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        StateVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            self.amps.iter_mut().for_each(|x| *x /= n);
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> C64 {
        inner(&self.amps, &other.amps)
    }

    pub fn density(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.dim(), |r, c| self.amps[r] * self.amps[c].conj())
    }
}

/// `<a|b>`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// A batch of `count` state vectors of length `dim`, each stored contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct StateBatch {
    dim: usize,
    count: usize,
    data: Vec<C64>,
}

impl StateBatch {
    pub fn from_states(dim: usize, states: impl IntoIterator<Item = Vec<C64>>) -> Self {
        let mut data = Vec::new();
        let mut count = 0;
        for s in states {
            assert_eq!(s.len(), dim);
            data.extend(s);
            count += 1;
        }
        StateBatch { dim, count, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn state(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn state_mut(&mut self, i: usize) -> &mut [C64] {
        &mut self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// All amplitudes, state after state.
    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn states_mut(&mut self) -> std::slice::ChunksMut<'_, C64> {
        self.data.chunks_mut(self.dim)
    }

    /// Replaces every state `v` by `u v`. Work is split over blocks of states
    /// in parallel mode; each state's result is independent of the split.
    pub fn apply_unitary(&mut self, u: &DenseMatrix, mode: Parallelism) {
        assert_eq!(u.dim(), self.dim);
        let dim = self.dim;
        let workers = exec::worker_count(mode);
        let per_chunk = if workers > 1 {
            self.count.div_ceil(workers).max(1)
        } else {
            self.count.max(1)
        };
        let ut = u.as_slice();
        exec::for_each_chunk_mut(mode, &mut self.data, per_chunk * dim, |_, chunk| {
            let rows = chunk.len() / dim;
            let mut out = vec![ZERO; chunk.len()];
            // rows of S times U^T: out = S U^T, so each state v becomes U v
            unsafe {
                matrixmultiply::zgemm(
                    matrixmultiply::CGemmOption::Standard,
                    matrixmultiply::CGemmOption::Standard,
                    rows,
                    dim,
                    dim,
                    [1.0, 0.0],
                    chunk.as_ptr() as *const [f64; 2],
                    dim as isize,
                    1,
                    ut.as_ptr() as *const [f64; 2],
                    1,
                    dim as isize,
                    [0.0, 0.0],
                    out.as_mut_ptr() as *mut [f64; 2],
                    dim as isize,
                    1,
                );
            }
            chunk.copy_from_slice(&out);
        });
    }
}
