//! Controlled evolution under a known Pauli term.
//!
//! For a Pauli `P` and a weight-one `Q` with `Q P Q^dagger = -P`,
//! `Q e^{-iPt/2} Q^dagger e^{-iPt/2} = I`, so toggling `Q` on the control's
//! `|0>` branch between two half evolutions leaves only the `|1>` branch
//! evolving.

use crate::error::{Error, Result};
use crate::linalg::{lambda_op, DenseMatrix, C64};
use crate::pauli::PauliString;

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// `I (x) e^{-i P t}` with `P` realized as a Hermitian qubit Pauli.
    Evolve { p: PauliString, time: f64 },
    /// `Lambda(Q) = |0><0| (x) Q + |1><1| (x) I`.
    OpenControlled(PauliString),
}

/// Weight-one `Q` anticommuting with `p`, placed on the first qudit where
/// `p` acts: `Z` if that factor has an `X` part, otherwise `X`.
pub fn find_anticommuting_pauli(p: &PauliString) -> Result<PauliString> {
    if p.d() != 2 {
        return Err(Error::InvalidParameter("anticommuting partner needs qubits".into()));
    }
    let q = *p
        .support()
        .first()
        .ok_or_else(|| Error::InvalidParameter("identity has no anticommuting Pauli".into()))?;
    let f = p.factor(q);
    let (a, b) = if f.x_power() != 0 { (0, 1) } else { (1, 0) };
    PauliString::single(p.num_qudits(), 2, q, a, b)
}

/// Gate sequence (in time order) realizing `ctrl(e^{-iPt})`.
pub fn controlize_known_term(p: &PauliString, t: f64) -> Result<Vec<Gate>> {
    let q = find_anticommuting_pauli(p)?;
    let half = Gate::Evolve {
        p: p.without_phase(),
        time: t / 2.0,
    };
    Ok(vec![
        half.clone(),
        Gate::OpenControlled(q.clone()),
        half,
        Gate::OpenControlled(q.adjoint()),
    ])
}

fn evolution(p: &PauliString, time: f64) -> Result<DenseMatrix> {
    let herm = p
        .hermitian()
        .ok_or_else(|| Error::InvalidParameter("evolution gates need qubits".into()))?;
    let m = herm.matrix()?;
    let mut u = DenseMatrix::identity(m.dim()).scale(C64::new(time.cos(), 0.0));
    u.axpy(C64::new(0.0, -time.sin()), &m)?;
    Ok(u)
}

/// Product of the gates on control (x) `n` qubits, first gate applied first.
pub fn gates_to_dense(gates: &[Gate], n: usize) -> Result<DenseMatrix> {
    let dim = 2usize
        .checked_pow(n as u32 + 1)
        .ok_or_else(|| Error::TooLarge("gate sequence dimension".into()))?;
    let mut acc = DenseMatrix::identity(dim);
    for g in gates {
        let m = match g {
            Gate::Evolve { p, time } => DenseMatrix::identity(2).kron(&evolution(p, *time)?),
            Gate::OpenControlled(q) => lambda_op(&q.matrix()?)?,
        };
        if m.dim() != dim {
            return Err(Error::DimensionMismatch(format!("gate dimension {} vs {dim}", m.dim())));
        }
        acc = m.mul(&acc);
    }
    Ok(acc)
}
