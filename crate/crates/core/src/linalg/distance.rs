use super::{eigh, inner, DenseMatrix, C64, TOLERANCES};
use crate::error::{Error, Result};

fn check_density(m: &DenseMatrix, name: &str) -> Result<()> {
    if m.hermiticity_error() > TOLERANCES.hermiticity.max(1e-12) * 100.0 {
        return Err(Error::NotDensity(format!("{name} is not Hermitian")));
    }
    let tr = m.trace();
    if (tr - C64::new(1.0, 0.0)).norm() > TOLERANCES.density_trace {
        return Err(Error::NotDensity(format!("{name} has trace {tr}")));
    }
    Ok(())
}

/// `1/2 Tr|rho - sigma|` from the eigenvalues of the difference.
pub fn trace_distance(rho: &DenseMatrix, sigma: &DenseMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    check_density(rho, "rho")?;
    check_density(sigma, "sigma")?;
    let diff = rho.sub(sigma)?;
    let e = eigh(&diff)?;
    Ok((0.5 * e.values.iter().map(|x| x.abs()).sum::<f64>()).clamp(0.0, 1.0))
}

/// Trace distance between `|phi><phi|` and the uniform mixture of the given
/// pure states, computed inside their joint span (rank at most `r + 1`)
/// instead of on the full space.
pub fn trace_distance_pure_vs_mixture(phi: &[C64], states: &[&[C64]]) -> Result<f64> {
    if states.is_empty() {
        return Err(Error::InvalidParameter("mixture needs at least one state".into()));
    }
    let dim = phi.len();
    if states.iter().any(|s| s.len() != dim) {
        return Err(Error::DimensionMismatch("states differ in length".into()));
    }
    // modified Gram-Schmidt over phi followed by the mixture states
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in std::iter::once(phi).chain(states.iter().copied()) {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for q in &basis {
                let proj = inner(q, &w);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let norm = inner(&w, &w).re.sqrt();
        if norm > 1e-10 {
            w.iter_mut().for_each(|x| *x /= norm);
            basis.push(w);
        }
    }
    let m = basis.len();
    let coords = |v: &[C64]| -> Vec<C64> { basis.iter().map(|q| inner(q, v)).collect() };
    let c = coords(phi);
    let weight = 1.0 / states.len() as f64;
    let mut diff = DenseMatrix::from_fn(m, |a, b| c[a] * c[b].conj());
    for s in states {
        let d = coords(s);
        for a in 0..m {
            for b in 0..m {
                diff[(a, b)] -= d[a] * d[b].conj() * weight;
            }
        }
    }
    let e = eigh(&diff)?;
    Ok((0.5 * e.values.iter().map(|x| x.abs()).sum::<f64>()).clamp(0.0, 1.0))
}
