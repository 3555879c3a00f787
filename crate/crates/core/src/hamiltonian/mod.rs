//! k-local Hamiltonians as real-weighted sums of Pauli strings.
//!
//! Each term stores a real coefficient and a phase-free string. For qubits a
//! factor `XZ` stands for `Y = i X Z`, so the string is realized with the
//! phase from [`PauliString::hermitian_phase_exp`]. For `d > 2` a term
//! `c P` is realized as `c (P + P^dagger) / 2`. Either way the operator is
//! Hermitian and traceless.

mod graph;
mod text;

pub use graph::{greedy_coloring, Coloring, InteractionGraph};

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{eigh, DenseMatrix, C64, ZERO};
use crate::pauli::{PauliString, PauliSum};

/// Largest Hilbert space diagonalized exactly by [`spectral_norm`].
pub const EXACT_NORM_DIM: usize = 1 << 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub string: PauliString,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KLocalHamiltonian {
    n: usize,
    d: u32,
    k: usize,
    terms: Vec<Term>,
}

impl KLocalHamiltonian {
    /// Validates weights, phases and the absence of identity terms.
    pub fn new(n: usize, d: u32, k: usize, terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            if t.string.num_qudits() != n || t.string.d() != d {
                return Err(Error::DimensionMismatch(format!(
                    "term {} does not live on {n} qudits of dimension {d}",
                    t.string
                )));
            }
            if t.string.phase_exp() != 0 {
                return Err(Error::InvalidParameter(format!("term {} carries a phase", t.string)));
            }
            if t.string.is_identity() {
                return Err(Error::InvalidParameter("identity term".into()));
            }
            if t.string.weight() > k {
                return Err(Error::InvalidParameter(format!(
                    "term {} has weight above {k}",
                    t.string
                )));
            }
            if !t.coeff.is_finite() {
                return Err(Error::InvalidParameter("non-finite coefficient".into()));
            }
        }
        Ok(KLocalHamiltonian { n, d, k, terms })
    }

    /// Locality taken as the largest term weight (at least 1).
    pub fn from_terms(n: usize, d: u32, terms: Vec<Term>) -> Result<Self> {
        let k = terms.iter().map(|t| t.string.weight()).max().unwrap_or(1).max(1);
        Self::new(n, d, k, terms)
    }

    pub fn num_qudits(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn locality(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn dim(&self) -> Option<usize> {
        (self.d as usize).checked_pow(self.n as u32)
    }

    /// The Hermitian operator as a complex Pauli sum.
    pub fn pauli_sum(&self) -> PauliSum {
        let mut sum = PauliSum::zero(self.n, self.d);
        for t in &self.terms {
            let c = C64::new(t.coeff, 0.0);
            match t.string.hermitian() {
                Some(h) => sum.add_term(c, &h),
                None => sum
                    .add_term(c * 0.5, &t.string)
                    .and_then(|_| sum.add_term(c * 0.5, &t.string.adjoint())),
            }
            .expect("terms share the Hamiltonian's shape");
        }
        sum
    }

    pub fn dense(&self) -> Result<DenseMatrix> {
        self.pauli_sum().matrix()
    }

    /// `sum |c_j|`, an upper bound on the spectral norm.
    pub fn coeff_one_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.abs()).sum()
    }

    /// Copy with every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= factor;
        }
        out
    }

    /// Copy on `n + extra` qudits, the new ones appended after the old.
    pub fn embedded(&self, extra: usize, offset: usize) -> Result<Self> {
        let n = self.n + extra;
        if offset > extra {
            return Err(Error::InvalidParameter(format!("offset {offset} > {extra}")));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut xs = vec![0; n];
                let mut zs = vec![0; n];
                for (i, f) in t.string.factors().enumerate() {
                    xs[i + offset] = f.x_power();
                    zs[i + offset] = f.z_power();
                }
                Ok(Term {
                    coeff: t.coeff,
                    string: PauliString::from_exponents(self.d, xs, zs)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, self.d, self.k, terms)
    }

    /// `y = H x` without forming the matrix.
    pub fn apply(&self, x: &[C64], y: &mut [C64]) -> Result<()> {
        y.fill(ZERO);
        for (p, c) in self.pauli_sum().terms() {
            let action = p.action()?;
            for (i, &amp) in x.iter().enumerate() {
                y[action.perm[i]] += c * action.phases[i] * amp;
            }
        }
        Ok(())
    }
}

/// Single-qubit factor exponents for `X`, `Y`, `Z`.
const QUBIT_FACTORS: [(u32, u32); 3] = [(1, 0), (1, 1), (0, 1)];

/// All weight-1 and weight-2 qubit strings in a fixed order: weight one by
/// qubit then `X, Y, Z`, followed by pairs `i < j` with factors in the same
/// order.
pub fn two_local_qubit_strings(n: usize) -> Vec<PauliString> {
    let mut out = Vec::with_capacity(3 * n + 9 * n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for &(a, b) in &QUBIT_FACTORS {
            out.push(PauliString::single(n, 2, i, a, b).expect("valid factor"));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for &(a, b) in &QUBIT_FACTORS {
                for &(c, e) in &QUBIT_FACTORS {
                    let mut xs = vec![0; n];
                    let mut zs = vec![0; n];
                    (xs[i], zs[i], xs[j], zs[j]) = (a, b, c, e);
                    out.push(PauliString::from_exponents(2, xs, zs).expect("valid factor"));
                }
            }
        }
    }
    out
}

fn uniform_angle<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0.0..std::f64::consts::TAU)
}

/// `m` distinct random qubit strings of weight at most two with
/// coefficients uniform in `[0, 2 pi)`.
pub fn random_sparse(n: usize, m: usize, seed: u64) -> Result<KLocalHamiltonian> {
    if n < 2 {
        return Err(Error::InvalidParameter("random_sparse needs n >= 2".into()));
    }
    let pool = two_local_qubit_strings(n);
    if m > pool.len() {
        return Err(Error::InvalidParameter(format!(
            "{m} terms requested but only {} distinct two-local strings exist",
            pool.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut terms = Vec::with_capacity(m);
    while terms.len() < m {
        let idx = rng.gen_range(0..pool.len());
        if !seen.insert(idx) {
            continue;
        }
        terms.push(Term {
            coeff: uniform_angle(&mut rng),
            string: pool[idx].clone(),
        });
    }
    KLocalHamiltonian::new(n, 2, 2, terms)
}

/// Every weight-1 and weight-2 qubit string with a coefficient uniform in
/// `[0, 2 pi)`.
pub fn random_dense_all_terms(n: usize, seed: u64) -> Result<KLocalHamiltonian> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = two_local_qubit_strings(n)
        .into_iter()
        .map(|string| Term {
            coeff: uniform_angle(&mut rng),
            string,
        })
        .collect();
    KLocalHamiltonian::new(n, 2, 2.min(n.max(1)), terms)
}

/// Random k-local Hamiltonian on qudits: `m` terms, each on a uniformly
/// random set of exactly `k` qudits with nonidentity factors there, and
/// coefficients uniform in `[-1, 1]`. Duplicates are allowed and merge
/// linearly.
pub fn random_k_local(n: usize, d: u32, k: usize, m: usize, seed: u64) -> Result<KLocalHamiltonian> {
    if k == 0 || k > n || d < 2 {
        return Err(Error::InvalidParameter(format!("k={k}, n={n}, d={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qudits: Vec<usize> = (0..n).collect();
    let mut terms = Vec::with_capacity(m);
    for _ in 0..m {
        let mut xs = vec![0; n];
        let mut zs = vec![0; n];
        for &q in qudits.choose_multiple(&mut rng, k) {
            loop {
                let (a, b) = (rng.gen_range(0..d), rng.gen_range(0..d));
                if (a, b) != (0, 0) {
                    (xs[q], zs[q]) = (a, b);
                    break;
                }
            }
        }
        terms.push(Term {
            coeff: rng.gen_range(-1.0..=1.0),
            string: PauliString::from_exponents(d, xs, zs)?,
        });
    }
    KLocalHamiltonian::new(n, d, k, terms)
}

/// `XXIX + YIIY + (ZIZZ + XIXX) / 2` on four qubits.
pub fn paper_example_3local() -> KLocalHamiltonian {
    let text = "# hamiltonian n=4 d=2 k=3\n\
                1.0  X@1 X@2 X@4\n\
                1.0  Y@1 Y@4\n\
                0.5  Z@1 Z@3 Z@4\n\
                0.5  X@1 X@3 X@4\n";
    KLocalHamiltonian::parse(text).expect("built-in example parses")
}

/// Largest absolute eigenvalue. Exact (Hermitian eigensolver) up to
/// [`EXACT_NORM_DIM`]; power iteration on the matrix-free action beyond.
pub fn spectral_norm(h: &KLocalHamiltonian) -> Result<f64> {
    let dim = h
        .dim()
        .ok_or_else(|| Error::TooLarge("Hilbert space dimension overflows".into()))?;
    if dim <= EXACT_NORM_DIM {
        return spectral_norm_exact(h);
    }
    power_iteration_norm(h, 100, 1e-8, 0x5eed)
}

/// Exact spectral norm; errors above [`EXACT_NORM_DIM`].
pub fn spectral_norm_exact(h: &KLocalHamiltonian) -> Result<f64> {
    match h.dim() {
        Some(dim) if dim <= EXACT_NORM_DIM => {}
        _ => return Err(Error::TooLarge(format!("{}^{} exceeds exact mode", h.d, h.n))),
    }
    let e = eigh(&h.dense()?)?;
    Ok(e.values.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}

/// Power iteration on `H^2`, reporting `sqrt(<v|H^2|v>)`.
pub fn power_iteration_norm(h: &KLocalHamiltonian, iterations: usize, tol: f64, seed: u64) -> Result<f64> {
    let dim = h
        .dim()
        .ok_or_else(|| Error::TooLarge("Hilbert space dimension overflows".into()))?;
    let mut v = crate::linalg::haar_state(dim, seed).into_amplitudes();
    let mut w = vec![ZERO; dim];
    let mut estimate = 0.0;
    for _ in 0..iterations {
        h.apply(&v, &mut w)?;
        h.apply(&w, &mut v)?;
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(0.0);
        }
        v.iter_mut().for_each(|z| *z /= norm);
        let next = norm.sqrt();
        if (next - estimate).abs() <= tol * next {
            return Ok(next);
        }
        estimate = next;
    }
    Ok(estimate)
}
