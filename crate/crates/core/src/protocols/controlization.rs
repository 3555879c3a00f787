//! Operator-level Trotter error of controlization and time reversal.

use std::time::Instant;

use super::{trotter_pass, ControlizationConfig, Order, QdriftMode, ResultRow};
use crate::error::{Error, Result};
use crate::hamiltonian::KLocalHamiltonian;
use crate::linalg::{ctrl, DenseMatrix};
use crate::schemes::{controlize, derive_time_reversal, Scheme};

/// Largest system size (without the control qubit) accepted here.
pub const MAX_CONTROLLED_QUBITS: usize = 6;

fn power(m: &DenseMatrix, mut e: usize) -> DenseMatrix {
    let mut base = m.clone();
    let mut acc = DenseMatrix::identity(m.dim());
    while e > 0 {
        if e & 1 == 1 {
            acc = base.mul(&acc);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

fn guard(h: &KLocalHamiltonian, rs: &[usize]) -> Result<()> {
    if h.num_qudits() > MAX_CONTROLLED_QUBITS {
        return Err(Error::TooLarge(format!(
            "{} qudits exceeds the controlled limit {MAX_CONTROLLED_QUBITS}",
            h.num_qudits()
        )));
    }
    if rs.is_empty() || rs.contains(&0) {
        return Err(Error::InvalidParameter("Trotter step counts must be positive".into()));
    }
    Ok(())
}

/// `||U_r - ctrl(e^{-iHt})||` for each `r`, where `U_r` is `r` passes of
/// the controlized scheme with black-box time `t / r` each.
pub fn controlization_errors(
    dec: &Scheme,
    h: &KLocalHamiltonian,
    t: f64,
    rs: &[usize],
    order: Order,
) -> Result<Vec<(usize, f64)>> {
    guard(h, rs)?;
    let c = controlize(dec)?;
    let target = ctrl(&super::evolution(h, t)?)?;
    rs.iter()
        .map(|&r| {
            let pass = trotter_pass(&c, h, t / r as f64, order)?;
            Ok((r, power(&pass, r).sub(&target)?.spectral_norm()?))
        })
        .collect()
}

/// `||R_r e^{-iHt} - I||` where `R_r` is `r` passes of the derived
/// time-reversal scheme, each undoing black-box time `t / r`.
pub fn time_reversal_errors(
    dec: &Scheme,
    h: &KLocalHamiltonian,
    t: f64,
    rs: &[usize],
    order: Order,
) -> Result<Vec<(usize, f64)>> {
    guard(h, rs)?;
    let rev = derive_time_reversal(dec)?;
    let forward = super::evolution(h, t)?;
    let id = DenseMatrix::identity(forward.dim());
    rs.iter()
        .map(|&r| {
            let pass = trotter_pass(&rev, h, t / r as f64, order)?;
            Ok((r, power(&pass, r).mul(&forward).sub(&id)?.spectral_norm()?))
        })
        .collect()
}

/// One `operator_error` row per (order, r).
pub fn run_controlization_experiment(cfg: &ControlizationConfig) -> Result<Vec<ResultRow>> {
    let (h, scheme, label) = cfg.build()?;
    let mut rows = Vec::new();
    for &order in &cfg.orders {
        for &r in &cfg.trotter_steps {
            let start = Instant::now();
            let (_, err) = controlization_errors(&scheme, &h, cfg.total_time, &[r], order)?[0];
            rows.push(ResultRow {
                scheme: label.clone(),
                order,
                randomized: false,
                qdrift_mode: QdriftMode::Off,
                blocks: r,
                state_id: None,
                instance_reps: 1,
                metric: "operator_error".into(),
                value: err,
                seconds: start.elapsed().as_secs_f64(),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{random_k_local, spectral_norm};
    use crate::oa::{figure1, restrict_columns};
    use crate::protocols::fit_loglog_slope;
    use crate::schemes::scheme_from_oa;

    fn setup() -> (Scheme, KLocalHamiltonian) {
        let arr = restrict_columns(&figure1(), &[0, 1, 2]).unwrap();
        let h = random_k_local(3, 2, 2, 6, 4).unwrap();
        let h = h.scaled(1.0 / spectral_norm(&h).unwrap());
        (scheme_from_oa(&arr, 2).unwrap(), h)
    }

    #[test]
    fn zero_time_is_exact() {
        let (s, h) = setup();
        let errs = controlization_errors(&s, &h, 0.0, &[1, 4], Order::First).unwrap();
        assert!(errs.iter().all(|&(_, e)| e < 1e-10));
    }

    #[test]
    fn power_by_squaring() {
        let m = DenseMatrix::diagonal(&[crate::linalg::ONE, crate::linalg::I]);
        assert!(power(&m, 5).max_abs_diff(&m) < 1e-15);
        assert_eq!(power(&m, 0), DenseMatrix::identity(2));
    }

    #[test]
    fn errors_decay_with_order() {
        let arr = restrict_columns(&figure1(), &[0, 1, 2, 3]).unwrap();
        let s = scheme_from_oa(&arr, 2).unwrap();
        let h = random_k_local(4, 2, 2, 12, 1).unwrap();
        let h = h.scaled(1.0 / spectral_norm(&h).unwrap());
        let rs = [8, 16, 32];
        let e1 = controlization_errors(&s, &h, 1.0, &rs, Order::First).unwrap();
        let e2 = controlization_errors(&s, &h, 1.0, &rs, Order::Second).unwrap();
        let pts = |e: &[(usize, f64)]| e.iter().map(|&(r, v)| (r as f64, v)).collect::<Vec<_>>();
        assert!((fit_loglog_slope(&pts(&e1)).unwrap() + 1.0).abs() < 0.15);
        assert!((fit_loglog_slope(&pts(&e2)).unwrap() + 2.0).abs() < 0.2);
    }

    #[test]
    fn reversal_undoes_forward_evolution() {
        let (s, h) = setup();
        let errs = time_reversal_errors(&s, &h, 1.0, &[8, 16, 32], Order::First).unwrap();
        assert!(errs.windows(2).all(|w| w[1].1 < w[0].1));
        assert!(errs[2].1 < 0.2);
    }

    #[test]
    fn guards() {
        let (s, h) = setup();
        assert!(controlization_errors(&s, &h, 1.0, &[], Order::First).is_err());
        assert!(controlization_errors(&s, &h, 1.0, &[0], Order::First).is_err());
    }
}
