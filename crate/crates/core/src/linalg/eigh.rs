use super::{DenseMatrix, Tolerances, C64, MAX_DIM, TOLERANCES, ZERO};
use crate::error::{Error, Result};

/// Eigendecomposition `h = V diag(values) V^dagger` with ascending values.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: DenseMatrix,
}

impl Eigh {
    pub fn reconstruct(&self) -> DenseMatrix {
        let v = &self.vectors;
        let d = DenseMatrix::diagonal(&self.values.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>());
        v.mul(&d).mul(&v.adjoint())
    }
}

fn off_diagonal_norm(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[r * n + c].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
pub fn eigh(h: &DenseMatrix) -> Result<Eigh> {
    eigh_with(h, &TOLERANCES)
}

pub fn eigh_with(h: &DenseMatrix, tol: &Tolerances) -> Result<Eigh> {
    let n = h.dim();
    if n > MAX_DIM {
        return Err(Error::TooLarge(format!("eigendecomposition of dimension {n}")));
    }
    h.check_hermitian(tol.hermiticity * h.frobenius_norm().max(1.0))?;
    let mut a: Vec<C64> = h.as_slice().to_vec();
    // symmetrize exactly so the rotations see a Hermitian matrix
    for r in 0..n {
        a[r * n + r] = C64::new(a[r * n + r].re, 0.0);
        for c in r + 1..n {
            let avg = (a[r * n + c] + a[c * n + r].conj()) * 0.5;
            a[r * n + c] = avg;
            a[c * n + r] = avg.conj();
        }
    }
    let mut v = DenseMatrix::identity(n);
    let target = tol.eig_offdiag * h.frobenius_norm();

    let mut converged = off_diagonal_norm(&a, n) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == tol.max_sweeps {
            return Err(Error::NoConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let phase = apq / r;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;
                // A <- A G (columns p, q)
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * g_pp + akq * g_qp;
                    a[k * n + q] = akp * g_pq + akq * g_qq;
                }
                // A <- G^dagger A (rows p, q)
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p] = C64::new(a[p * n + p].re, 0.0);
                a[q * n + q] = C64::new(a[q * n + q].re, 0.0);
                let vd = v.as_mut_slice();
                for k in 0..n {
                    let vkp = vd[k * n + p];
                    let vkq = vd[k * n + q];
                    vd[k * n + p] = vkp * g_pp + vkq * g_qp;
                    vd[k * n + q] = vkp * g_pq + vkq * g_qq;
                }
            }
        }
        converged = off_diagonal_norm(&a, n) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = DenseMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(Eigh { values, vectors })
}
