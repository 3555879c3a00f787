use super::{DenseMatrix, Tolerances, C64, MAX_DIM, TOLERANCES};
use crate::error::{Error, Result};

const TAYLOR_TERMS: usize = 18;

/// `exp(-i h t)` for Hermitian `h` by scaling and squaring a truncated
/// Taylor series: scale so the 1-norm of the exponent is at most 1/2, sum 18
/// terms, then square back.
pub fn expm_i_hermitian(h: &DenseMatrix, t: f64) -> Result<DenseMatrix> {
    expm_i_hermitian_with(h, t, &TOLERANCES)
}

pub fn expm_i_hermitian_with(h: &DenseMatrix, t: f64, tol: &Tolerances) -> Result<DenseMatrix> {
    let dim = h.dim();
    if dim > MAX_DIM {
        return Err(Error::TooLarge(format!("matrix exponential of dimension {dim}")));
    }
    h.check_hermitian(tol.hermiticity)?;
    if t == 0.0 {
        return Ok(DenseMatrix::identity(dim));
    }
    let exponent = h.scale(C64::new(0.0, -t));
    let norm = exponent.norm_one();
    let mut squarings = 0u32;
    while norm / f64::from(2u32).powi(squarings as i32) > 0.5 {
        squarings += 1;
    }
    let a = exponent.scale(C64::new(1.0 / f64::from(2u32).powi(squarings as i32), 0.0));

    let mut sum = DenseMatrix::identity(dim);
    let mut term = DenseMatrix::identity(dim);
    for k in 1..=TAYLOR_TERMS {
        term = term.mul(&a).scale(C64::new(1.0 / k as f64, 0.0));
        sum.axpy(C64::new(1.0, 0.0), &term)?;
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_state, ONE, ZERO};

    fn random_hermitian(dim: usize, seed: u64) -> DenseMatrix {
        let cols: Vec<Vec<C64>> = (0..dim)
            .map(|j| haar_state(dim, seed * 1000 + j as u64).into_amplitudes())
            .collect();
        let g = DenseMatrix::from_fn(dim, |r, c| cols[c][r] * dim as f64);
        g.add(&g.adjoint()).unwrap().scale(C64::new(0.5, 0.0))
    }

    #[test]
    fn diagonal_exponent() {
        let z = DenseMatrix::diagonal(&[ONE, -ONE]);
        for t in [0.3, -1.7, 5.0] {
            let u = expm_i_hermitian(&z, t).unwrap();
            let expected =
                DenseMatrix::diagonal(&[C64::new(0.0, -t).exp(), C64::new(0.0, t).exp()]);
            assert!(u.max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn zero_time_is_identity() {
        let h = random_hermitian(6, 1);
        assert_eq!(expm_i_hermitian(&h, 0.0).unwrap(), DenseMatrix::identity(6));
    }

    #[test]
    fn x_at_half_pi() {
        let x = DenseMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap();
        let u = expm_i_hermitian(&x, std::f64::consts::FRAC_PI_2).unwrap();
        // cos(t) I - i sin(t) X
        assert!(u.max_abs_diff(&x.scale(C64::new(0.0, -1.0))) < 1e-12);
    }

    #[test]
    fn unitary_and_semigroup() {
        for (dim, seed) in [(4, 2), (32, 3), (128, 4)] {
            let h = random_hermitian(dim, seed);
            let u1 = expm_i_hermitian(&h, 0.4).unwrap();
            let u2 = expm_i_hermitian(&h, 1.1).unwrap();
            let u12 = expm_i_hermitian(&h, 1.5).unwrap();
            assert!(u1.unitarity_error() < 1e-10, "dim {dim}");
            assert!(u1.mul(&u2).max_abs_diff(&u12) < 1e-9, "dim {dim}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DenseMatrix::from_rows(&[vec![ZERO, ONE], vec![ZERO, ZERO]]).unwrap();
        assert!(matches!(expm_i_hermitian(&m, 1.0), Err(Error::NotHermitian(_))));
    }
}
