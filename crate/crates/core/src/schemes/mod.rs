//! Decoupling, time-reversal and controlization schemes built from
//! orthogonal arrays, with exact symbolic verification.
//!
//! A scheme is a list of steps `(tau_j, U_j)` with Pauli-string `U_j`.
//! Controlized steps stand for `Lambda(U_j) = |0><0| (x) U_j + |1><1| (x) I`
//! on a control qubit placed before the system (most significant in dense
//! realizations).

mod known;
mod text;

pub use known::{controlize_known_term, find_anticommuting_pauli, gates_to_dense, Gate};

use crate::error::{Error, Result};
use crate::hamiltonian::KLocalHamiltonian;
use crate::linalg::{lambda_op, DenseMatrix, C64, ONE, ZERO};
use crate::oa::OrthogonalArray;
use crate::pauli::{root_of_unity, PauliString, PauliSum};

/// Coefficients at or below this are dropped from symbolic averages.
pub const PRUNE_TOL: f64 = 1e-14;

/// Tolerance on `sum tau_j = 1` for decoupling schemes.
pub const DURATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Decoupling,
    TimeReversal,
    Controlization,
    Simulation,
}

impl SchemeKind {
    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Decoupling => "decoupling",
            SchemeKind::TimeReversal => "time_reversal",
            SchemeKind::Controlization => "controlization",
            SchemeKind::Simulation => "simulation",
        }
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "decoupling" => SchemeKind::Decoupling,
            "time_reversal" => SchemeKind::TimeReversal,
            "controlization" => SchemeKind::Controlization,
            "simulation" => SchemeKind::Simulation,
            _ => return Err(Error::InvalidParameter(format!("unknown scheme kind {s:?}"))),
        })
    }
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub tau: f64,
    pub u: PauliString,
    pub controlled: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scheme {
    kind: SchemeKind,
    n: usize,
    d: u32,
    steps: Vec<Step>,
}

impl Scheme {
    pub fn new(kind: SchemeKind, n: usize, d: u32, steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Scheme("scheme has no steps".into()));
        }
        for s in &steps {
            if s.u.num_qudits() != n || s.u.d() != d {
                return Err(Error::DimensionMismatch(format!(
                    "step {} does not act on {n} qudits of dimension {d}",
                    s.u
                )));
            }
            if !(s.tau >= 0.0 && s.tau.is_finite()) {
                return Err(Error::Scheme(format!("invalid duration {}", s.tau)));
            }
        }
        match kind {
            SchemeKind::Decoupling => {
                let total: f64 = steps.iter().map(|s| s.tau).sum();
                if (total - 1.0).abs() > DURATION_TOL {
                    return Err(Error::Scheme(format!("durations sum to {total}, not 1")));
                }
            }
            SchemeKind::Controlization
                if steps.iter().any(|s| !s.controlled) => {
                    return Err(Error::Scheme("controlization step without control".into()));
                }
            _ => {}
        }
        Ok(Scheme { kind, n, d, steps })
    }

    /// Equal-weight scheme over the given strings.
    pub fn uniform(n: usize, d: u32, us: Vec<PauliString>) -> Result<Self> {
        let tau = 1.0 / us.len().max(1) as f64;
        let steps = us
            .into_iter()
            .map(|u| Step {
                tau,
                u,
                controlled: false,
            })
            .collect();
        Self::new(SchemeKind::Decoupling, n, d, steps)
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn num_qudits(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn total_duration(&self) -> f64 {
        self.steps.iter().map(|s| s.tau).sum()
    }

    pub fn is_controlled(&self) -> bool {
        self.steps.iter().any(|s| s.controlled)
    }

    /// Hilbert-space dimension of the dense realization.
    pub fn dim(&self) -> Result<usize> {
        let base = (self.d as usize)
            .checked_pow(self.n as u32)
            .ok_or_else(|| Error::TooLarge("scheme dimension overflows".into()))?;
        Ok(if self.is_controlled() { 2 * base } else { base })
    }

    /// Dense unitary of step `j`, lifted to the control qubit when needed.
    pub fn step_unitary(&self, j: usize) -> Result<DenseMatrix> {
        let step = &self.steps[j];
        let u = step.u.matrix()?;
        if step.controlled {
            lambda_op(&u)
        } else if self.is_controlled() {
            Ok(DenseMatrix::identity(2).kron(&u))
        } else {
            Ok(u)
        }
    }

    /// Same steps with `U_j` reordered by `order`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.steps.len() {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        let steps = order.iter().map(|&i| self.steps[i].clone()).collect();
        Self::new(self.kind, self.n, self.d, steps)
    }
}

/// One step per array row, `tau = 1/N`, symbols mapped by `1 + a d + b`.
pub fn scheme_from_oa(arr: &OrthogonalArray, d: u32) -> Result<Scheme> {
    if arr.levels() != d * d {
        return Err(Error::InvalidParameter(format!(
            "array has {} levels, need d^2 = {}",
            arr.levels(),
            d * d
        )));
    }
    let us = arr
        .rows()
        .map(|row| PauliString::from_oa_row(row, d))
        .collect::<Result<Vec<_>>>()?;
    Scheme::uniform(arr.factors(), d, us)
}

/// Like [`scheme_from_oa`] on `colors.len()` qudits, with qudit `i` driven
/// by array column `colors[i]`.
pub fn scheme_from_oa_colored(arr: &OrthogonalArray, d: u32, colors: &[usize]) -> Result<Scheme> {
    if let Some(&c) = colors.iter().find(|&&c| c >= arr.factors()) {
        return Err(Error::InvalidParameter(format!(
            "color {c} but the array has only {} columns",
            arr.factors()
        )));
    }
    let base = scheme_from_oa(arr, d)?;
    let us = base
        .steps
        .iter()
        .map(|s| {
            let xs = colors.iter().map(|&c| s.u.factor(c).x_power()).collect();
            let zs = colors.iter().map(|&c| s.u.factor(c).z_power()).collect();
            PauliString::from_exponents(d, xs, zs)
        })
        .collect::<Result<Vec<_>>>()?;
    Scheme::uniform(colors.len(), d, us)
}

fn check_compatible(s: &Scheme, h: &KLocalHamiltonian) -> Result<()> {
    if s.n != h.num_qudits() || s.d != h.d() {
        return Err(Error::DimensionMismatch(format!(
            "scheme on {} qudits (d={}) vs Hamiltonian on {} (d={})",
            s.n,
            s.d,
            h.num_qudits(),
            h.d()
        )));
    }
    Ok(())
}

/// `sum_j tau_j U_j A U_j^dagger` for an arbitrary Pauli sum, computed from
/// the commutation phases alone.
///
/// For each string the durations are binned by phase class `k`; since the
/// `d` roots of unity sum to zero the smallest bin is subtracted from all
/// before summing, so balanced bins cancel exactly.
pub fn average_pauli_sum(s: &Scheme, a: &PauliSum) -> Result<PauliSum> {
    if s.is_controlled() {
        return Err(Error::Scheme("symbolic average needs an uncontrolled scheme".into()));
    }
    let d = s.d as usize;
    let mut out = PauliSum::zero(s.n, s.d);
    let mut bins = vec![0.0f64; d];
    for (p, c) in a.terms() {
        bins.fill(0.0);
        for step in &s.steps {
            bins[step.u.symplectic(p)? as usize] += step.tau;
        }
        let floor = bins.iter().cloned().fold(f64::INFINITY, f64::min);
        let factor: C64 = bins
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != floor)
            .map(|(k, &w)| root_of_unity(2 * k as i64, s.d) * (w - floor))
            .sum();
        out.add_term(c * factor, p)?;
    }
    out.prune(PRUNE_TOL);
    Ok(out)
}

/// Average Hamiltonian `sum_j tau_j U_j H U_j^dagger` as an exact Pauli sum.
pub fn average_hamiltonian(s: &Scheme, h: &KLocalHamiltonian) -> Result<PauliSum> {
    check_compatible(s, h)?;
    average_pauli_sum(s, &h.pauli_sum())
}

/// Dense `sum_j tau_j U_j A U_j^dagger`, where `A` lives on the scheme's
/// full space (including the control qubit for controlized schemes).
pub fn average_dense(s: &Scheme, a: &DenseMatrix) -> Result<DenseMatrix> {
    if a.dim() != s.dim()? {
        return Err(Error::DimensionMismatch(format!(
            "operator of dimension {} vs scheme dimension {}",
            a.dim(),
            s.dim()?
        )));
    }
    let mut acc = DenseMatrix::zeros(a.dim());
    for (j, step) in s.steps.iter().enumerate() {
        let u = s.step_unitary(j)?;
        acc.axpy(C64::new(step.tau, 0.0), &u.mul(a).mul(&u.adjoint()))?;
    }
    Ok(acc)
}

/// Rotates the first identity step to the front and returns
/// `(tau_j / tau_1, U_j)` for the remaining steps.
pub fn derive_time_reversal(dec: &Scheme) -> Result<Scheme> {
    if dec.kind != SchemeKind::Decoupling || dec.is_controlled() {
        return Err(Error::Scheme(format!("cannot reverse a {} scheme", dec.kind)));
    }
    let first = dec
        .steps
        .iter()
        .position(|s| s.u.is_identity())
        .ok_or_else(|| Error::Scheme("no identity step to anchor the reversal".into()))?;
    let tau1 = dec.steps[first].tau;
    if tau1 <= 0.0 {
        return Err(Error::Scheme("identity step has zero duration".into()));
    }
    let len = dec.steps.len();
    let steps = (1..len)
        .map(|off| {
            let s = &dec.steps[(first + off) % len];
            Step {
                tau: s.tau / tau1,
                u: s.u.clone(),
                controlled: false,
            }
        })
        .collect();
    Scheme::new(SchemeKind::TimeReversal, dec.n, dec.d, steps)
}

/// `Lambda(D)`: same durations, every step marked controlled.
pub fn controlize(dec: &Scheme) -> Result<Scheme> {
    if dec.kind != SchemeKind::Decoupling {
        return Err(Error::Scheme(format!("cannot controlize a {} scheme", dec.kind)));
    }
    let steps = dec
        .steps
        .iter()
        .map(|s| Step {
            controlled: true,
            ..s.clone()
        })
        .collect();
    Scheme::new(SchemeKind::Controlization, dec.n, dec.d, steps)
}

/// `V_j = U_j U_{j-1}^dagger` with `U_0 = I`, and `V_{N+1} = U_N^dagger`.
pub fn us_to_vs(s: &Scheme) -> Vec<PauliString> {
    let mut prev = PauliString::identity(s.n, s.d);
    let mut vs = Vec::with_capacity(s.steps.len() + 1);
    for step in &s.steps {
        vs.push(step.u.multiply(&prev.adjoint()).expect("same shape"));
        prev = step.u.clone();
    }
    vs.push(prev.adjoint());
    vs
}

/// Cumulative products `U_j = V_j ... V_1`; the final entry is the full
/// product, which is the identity for a cyclic sequence.
pub fn vs_to_us(vs: &[PauliString]) -> Result<Vec<PauliString>> {
    let first = vs
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty V sequence".into()))?;
    let mut acc = PauliString::identity(first.num_qudits(), first.d());
    vs.iter()
        .map(|v| {
            acc = v.multiply(&acc)?;
            Ok(acc.clone())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightReport {
    pub weights: Vec<usize>,
    pub max: usize,
    pub mean: f64,
}

/// Weights of the V-form operations.
pub fn weight_report(s: &Scheme) -> WeightReport {
    let weights: Vec<usize> = us_to_vs(s).iter().map(PauliString::weight).collect();
    let max = weights.iter().copied().max().unwrap_or(0);
    let mean = weights.iter().sum::<usize>() as f64 / weights.len() as f64;
    WeightReport { weights, max, mean }
}

/// Largest `d^k` accepted by [`depolarize`].
pub const MAX_DEPOLARIZE_DIM: usize = 64;

/// Uniform average of `P h P^dagger` over all `d^(2k)` Pauli strings.
pub fn depolarize(d: u32, kqu: usize, h: &DenseMatrix) -> Result<DenseMatrix> {
    let dim = (d as usize)
        .checked_pow(kqu as u32)
        .filter(|&x| x <= MAX_DEPOLARIZE_DIM)
        .ok_or_else(|| Error::TooLarge(format!("{d}^{kqu} exceeds {MAX_DEPOLARIZE_DIM}")))?;
    if h.dim() != dim {
        return Err(Error::DimensionMismatch(format!("operator dimension {} vs {dim}", h.dim())));
    }
    let count = dim * dim;
    let mut acc = DenseMatrix::zeros(dim);
    for idx in 0..count {
        let mut rest = idx;
        let mut xs = vec![0; kqu];
        let mut zs = vec![0; kqu];
        for q in 0..kqu {
            xs[q] = (rest % d as usize) as u32;
            rest /= d as usize;
            zs[q] = (rest % d as usize) as u32;
            rest /= d as usize;
        }
        let action = PauliString::from_exponents(d, xs, zs)?.action()?;
        for x in 0..dim {
            for y in 0..dim {
                acc[(action.perm[x], action.perm[y])] +=
                    action.phases[x] * h[(x, y)] * action.phases[y].conj();
            }
        }
    }
    Ok(acc.scale(C64::new(1.0 / count as f64, 0.0)))
}

/// Frobenius norm of the depolarized operator.
pub fn depolarize_check(d: u32, kqu: usize, h: &DenseMatrix) -> Result<f64> {
    Ok(depolarize(d, kqu, h)?.frobenius_norm())
}

/// Dense `|1><1| (x) A` on a leading control qubit.
pub fn on_one(a: &DenseMatrix) -> DenseMatrix {
    DenseMatrix::diagonal(&[ZERO, ONE]).kron(a)
}
