//! Batched decoupling experiment: trace distance against block count.
//!
//! For each block count `B` every variant applies the same black-box step
//! `U(t / (2 N B))`, so all (variant, state, instance) vectors are evolved
//! together as one batch: a Pauli on each vector, one matrix product for the
//! whole batch, and the Pauli's inverse.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{derive_seed, ExperimentConfig, Order, QdriftMode, ResultRow, Variant};
use crate::error::{Error, Result};
use crate::exec::{self, Parallelism};
use crate::hamiltonian::KLocalHamiltonian;
use crate::linalg::{expm_i_hermitian, haar_state, trace_distance_pure_vs_mixture, StateBatch, C64};
use crate::pauli::PauliString;
use crate::schemes::Scheme;

/// Largest qubit count accepted by the dense simulation.
pub const MAX_QUBITS: usize = 10;

const STATE_STREAM: u64 = 1;
const SEQUENCE_STREAM: u64 = 2;

#[derive(Debug, Clone)]
pub struct DecouplingExperiment {
    pub h: KLocalHamiltonian,
    pub scheme: Scheme,
    pub label: String,
    pub variants: Vec<Variant>,
    pub blocks: Vec<usize>,
    pub total_time: f64,
    pub reps: usize,
    pub states: usize,
    pub seed: u64,
    pub mode: Parallelism,
}

/// Qubit string as `(x mask, z mask)`, qubit 0 in the most significant bit.
fn masks(p: &PauliString) -> (usize, usize) {
    let n = p.num_qudits();
    p.factors().enumerate().fold((0, 0), |(x, z), (i, f)| {
        let bit = 1 << (n - 1 - i);
        (
            x | if f.x_power() != 0 { bit } else { 0 },
            z | if f.z_power() != 0 { bit } else { 0 },
        )
    })
}

fn sign(z: usize, x: usize) -> f64 {
    if (z & x).count_ones() % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// In-place `X^a Z^b` (or its adjoint) on a qubit state vector.
fn apply_pauli(v: &mut [C64], (a, b): (usize, usize), adjoint: bool) {
    if a == 0 {
        for (x, amp) in v.iter_mut().enumerate() {
            *amp *= sign(b, x);
        }
        return;
    }
    for x in 0..v.len() {
        let y = x ^ a;
        if x < y {
            let (ox, oy) = (v[x], v[y]);
            if adjoint {
                v[x] = oy * sign(b, x);
                v[y] = ox * sign(b, y);
            } else {
                v[x] = oy * sign(b, y);
                v[y] = ox * sign(b, x);
            }
        }
    }
}

/// Produces the Pauli sequence of one vector, one invocation at a time.
struct Sequencer {
    variant: Variant,
    steps: usize,
    rng: ChaCha8Rng,
    perm: Vec<usize>,
    pos: usize,
}

impl Sequencer {
    fn new(variant: Variant, steps: usize, seed: u64) -> Self {
        Sequencer {
            variant,
            steps,
            rng: ChaCha8Rng::seed_from_u64(seed),
            perm: (0..steps).collect(),
            pos: 0,
        }
    }

    fn next(&mut self, pool: &[(usize, usize)], all: usize) -> (usize, usize) {
        let n = self.steps;
        let k = self.pos % (2 * n);
        self.pos += 1;
        let v = self.variant;
        match v.qdrift {
            QdriftMode::FullPauliGroup => {
                return (self.rng.gen::<usize>() & all, self.rng.gen::<usize>() & all)
            }
            QdriftMode::OaSubset => return pool[self.rng.gen_range(0..n)],
            QdriftMode::Off => {}
        }
        let fresh = match v.order {
            Order::First => k.is_multiple_of(n),
            Order::Second => k == 0,
        };
        if v.randomized && fresh {
            self.perm.shuffle(&mut self.rng);
        }
        let idx = match v.order {
            Order::First => k % n,
            Order::Second if k < n => k,
            Order::Second => 2 * n - 1 - k,
        };
        pool[self.perm[idx]]
    }
}

fn validate(exp: &DecouplingExperiment) -> Result<()> {
    let n = exp.h.num_qudits();
    if exp.h.d() != 2 || exp.scheme.d() != 2 {
        return Err(Error::InvalidParameter("decoupling experiment runs on qubits".into()));
    }
    if n > MAX_QUBITS {
        return Err(Error::TooLarge(format!("{n} qubits exceeds the dense limit {MAX_QUBITS}")));
    }
    if exp.scheme.num_qudits() != n || exp.scheme.is_controlled() {
        return Err(Error::DimensionMismatch(format!(
            "scheme acts on {} qubits, Hamiltonian on {n}",
            exp.scheme.num_qudits()
        )));
    }
    if exp.blocks.is_empty() || exp.blocks.contains(&0) {
        return Err(Error::InvalidParameter("block counts must be a nonempty list of positive integers".into()));
    }
    if exp.variants.is_empty() || exp.states == 0 || exp.reps == 0 {
        return Err(Error::InvalidParameter("need at least one variant, state and repetition".into()));
    }
    let tau = 1.0 / exp.scheme.len() as f64;
    if exp.scheme.steps().iter().any(|s| s.tau != tau) {
        return Err(Error::Scheme("batched experiment needs equal step durations".into()));
    }
    if !(exp.total_time.is_finite() && exp.total_time >= 0.0) {
        return Err(Error::InvalidParameter("total time must be finite and nonnegative".into()));
    }
    Ok(())
}

/// Runs every block count; one row per (block count, variant, state).
pub fn run_decoupling(exp: &DecouplingExperiment) -> Result<Vec<ResultRow>> {
    validate(exp)?;
    let n = exp.h.num_qudits();
    let dim = 1usize << n;
    let all = dim - 1;
    let steps = exp.scheme.len();
    let pool: Vec<(usize, usize)> = exp.scheme.steps().iter().map(|s| masks(&s.u)).collect();
    let h = exp.h.dense()?;
    let initial: Vec<Vec<C64>> = (0..exp.states)
        .map(|s| haar_state(dim, derive_seed(exp.seed, &[STATE_STREAM, s as u64])).into_amplitudes())
        .collect();

    // column layout: variant-major, then state, then instance
    let mut layout = Vec::new();
    for (vi, v) in exp.variants.iter().enumerate() {
        for s in 0..exp.states {
            for i in 0..v.instances(exp.reps) {
                layout.push((vi, s, i));
            }
        }
    }

    let mut rows = Vec::new();
    for &b in &exp.blocks {
        let start = Instant::now();
        let invocations = 2 * steps * b;
        let dt = exp.total_time / invocations as f64;
        let elapsed_time = dt * invocations as f64;
        if (elapsed_time - exp.total_time).abs() > 1e-12 * exp.total_time.max(1.0) {
            return Err(Error::Scheme(format!("time bookkeeping drifted to {elapsed_time}")));
        }
        let u = expm_i_hermitian(&h, dt)?;
        let mut batch = StateBatch::from_states(dim, layout.iter().map(|&(_, s, _)| initial[s].clone()));
        let mut seqs: Vec<Sequencer> = layout
            .iter()
            .map(|&(vi, s, i)| {
                let seed = derive_seed(exp.seed, &[SEQUENCE_STREAM, b as u64, vi as u64, s as u64, i as u64]);
                Sequencer::new(exp.variants[vi], steps, seed)
            })
            .collect();
        let mut current = vec![(0usize, 0usize); layout.len()];
        for _ in 0..invocations {
            for (c, seq) in current.iter_mut().zip(seqs.iter_mut()) {
                *c = seq.next(&pool, all);
            }
            let cur = &current;
            let chunk = dim * layout.len().div_ceil(exec::worker_count(exp.mode)).max(1);
            exec::for_each_chunk_mut(exp.mode, batch.as_mut_slice(), chunk, |ci, data| {
                let first = ci * chunk / dim;
                for (k, v) in data.chunks_mut(dim).enumerate() {
                    apply_pauli(v, cur[first + k], true);
                }
            });
            batch.apply_unitary(&u, exp.mode);
            exec::for_each_chunk_mut(exp.mode, batch.as_mut_slice(), chunk, |ci, data| {
                let first = ci * chunk / dim;
                for (k, v) in data.chunks_mut(dim).enumerate() {
                    apply_pauli(v, cur[first + k], false);
                }
            });
        }
        let seconds = start.elapsed().as_secs_f64();

        let mut col = 0;
        for v in &exp.variants {
            let r = v.instances(exp.reps);
            for (s, phi) in initial.iter().enumerate() {
                let mix: Vec<&[C64]> = (col..col + r).map(|c| batch.state(c)).collect();
                col += r;
                rows.push(ResultRow {
                    scheme: exp.label.clone(),
                    order: v.order,
                    randomized: v.randomized,
                    qdrift_mode: v.qdrift,
                    blocks: b,
                    state_id: Some(s),
                    instance_reps: r,
                    metric: "trace_distance".into(),
                    value: trace_distance_pure_vs_mixture(phi, &mix)?,
                    seconds,
                });
            }
        }
    }
    Ok(rows)
}

/// Builds the Hamiltonian and scheme from `cfg` and runs the experiment.
pub fn run_decoupling_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    run_decoupling(&cfg.build()?)
}
