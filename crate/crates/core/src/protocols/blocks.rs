//! Dense product formulas for a single block.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Order, QdriftMode};
use crate::error::{Error, Result};
use crate::hamiltonian::KLocalHamiltonian;
use crate::linalg::{expm_i_hermitian, DenseMatrix};
use crate::pauli::{MonomialAction, PauliString};
use crate::schemes::Scheme;

/// `e^{-iHt}` on the system.
pub fn evolution(h: &KLocalHamiltonian, t: f64) -> Result<DenseMatrix> {
    expm_i_hermitian(&h.dense()?, t)
}

/// Monomial action of step `j` on the scheme's full space.
fn step_action(scheme: &Scheme, j: usize) -> Result<MonomialAction> {
    let step = &scheme.steps()[j];
    let base = step.u.action()?;
    if !scheme.is_controlled() {
        return Ok(base);
    }
    let dim = base.perm.len();
    let mut perm = Vec::with_capacity(2 * dim);
    let mut phases = Vec::with_capacity(2 * dim);
    for half in 0..2 {
        let active = half == 0 || !step.controlled;
        for x in 0..dim {
            if active {
                perm.push(half * dim + base.perm[x]);
                phases.push(base.phases[x]);
            } else {
                perm.push(half * dim + x);
                phases.push(crate::linalg::ONE);
            }
        }
    }
    Ok(MonomialAction { perm, phases })
}

/// `P U P^dagger` for a monomial `P`.
fn conjugate(u: &DenseMatrix, p: &MonomialAction) -> DenseMatrix {
    let dim = u.dim();
    let mut out = DenseMatrix::zeros(dim);
    for x in 0..dim {
        for y in 0..dim {
            out[(p.perm[x], p.perm[y])] = p.phases[x] * u[(x, y)] * p.phases[y].conj();
        }
    }
    out
}

struct Evolver {
    h: DenseMatrix,
    lift: bool,
    cache: HashMap<u64, DenseMatrix>,
}

impl Evolver {
    fn new(h: &KLocalHamiltonian, lift: bool) -> Result<Self> {
        Ok(Evolver {
            h: h.dense()?,
            lift,
            cache: HashMap::new(),
        })
    }

    fn get(&mut self, t: f64) -> Result<&DenseMatrix> {
        if !self.cache.contains_key(&t.to_bits()) {
            let u = expm_i_hermitian(&self.h, t)?;
            let u = if self.lift {
                DenseMatrix::identity(2).kron(&u)
            } else {
                u
            };
            self.cache.insert(t.to_bits(), u);
        }
        Ok(&self.cache[&t.to_bits()])
    }
}

fn check(scheme: &Scheme, h: &KLocalHamiltonian) -> Result<()> {
    if scheme.num_qudits() != h.num_qudits() || scheme.d() != h.d() {
        return Err(Error::DimensionMismatch(format!(
            "scheme on {} qudits vs Hamiltonian on {}",
            scheme.num_qudits(),
            h.num_qudits()
        )));
    }
    Ok(())
}

/// One product-formula pass over the scheme with black-box time `s`.
///
/// First order: `prod_j P_j U(tau_j s) P_j^dagger` in step order. Second
/// order: the same with `U(tau_j s / 2)` forward, then in reverse.
pub fn trotter_pass(scheme: &Scheme, h: &KLocalHamiltonian, s: f64, order: Order) -> Result<DenseMatrix> {
    check(scheme, h)?;
    let mut ev = Evolver::new(h, scheme.is_controlled())?;
    let actions = (0..scheme.len())
        .map(|j| step_action(scheme, j))
        .collect::<Result<Vec<_>>>()?;
    let (sequence, factor): (Vec<usize>, f64) = match order {
        Order::First => ((0..scheme.len()).collect(), 1.0),
        Order::Second => ((0..scheme.len()).chain((0..scheme.len()).rev()).collect(), 0.5),
    };
    let mut acc = DenseMatrix::identity(scheme.dim()?);
    for j in sequence {
        let u = ev.get(scheme.steps()[j].tau * s * factor)?;
        acc = conjugate(u, &actions[j]).mul(&acc);
    }
    Ok(acc)
}

/// Two first-order passes, each over half the block time.
pub fn first_order_block(scheme: &Scheme, h: &KLocalHamiltonian, dt: f64) -> Result<DenseMatrix> {
    let pass = trotter_pass(scheme, h, dt / 2.0, Order::First)?;
    Ok(pass.mul(&pass))
}

/// One symmetric second-order pass; the two central factors stay separate.
pub fn second_order_block(scheme: &Scheme, h: &KLocalHamiltonian, dt: f64) -> Result<DenseMatrix> {
    trotter_pass(scheme, h, dt, Order::Second)
}

/// `n_samples` factors `P U(dt / n_samples) P^dagger` with `P` uniform over
/// all strings or over the scheme's steps.
pub fn qdrift_block<R: Rng + ?Sized>(
    h: &KLocalHamiltonian,
    scheme: &Scheme,
    dt: f64,
    mode: QdriftMode,
    n_samples: usize,
    rng: &mut R,
) -> Result<DenseMatrix> {
    check(scheme, h)?;
    if scheme.is_controlled() {
        return Err(Error::Scheme("qDRIFT block needs an uncontrolled scheme".into()));
    }
    let u = evolution(h, dt / n_samples.max(1) as f64)?;
    let mut acc = DenseMatrix::identity(u.dim());
    for _ in 0..n_samples {
        let p = match mode {
            QdriftMode::FullPauliGroup => PauliString::random(h.num_qudits(), h.d(), rng),
            QdriftMode::OaSubset => scheme
                .steps()
                .choose(rng)
                .expect("scheme has steps")
                .u
                .clone(),
            QdriftMode::Off => return Err(Error::InvalidParameter("qDRIFT mode is off".into())),
        };
        acc = conjugate(&u, &p.action()?).mul(&acc);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{random_k_local, Term};
    use crate::oa::figure1;
    use crate::schemes::scheme_from_oa;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z_h() -> KLocalHamiltonian {
        let string = PauliString::parse("Z1", 1, 2).unwrap();
        KLocalHamiltonian::from_terms(1, 2, vec![Term { coeff: 1.3, string }]).unwrap()
    }

    fn half_x() -> Scheme {
        Scheme::uniform(
            1,
            2,
            vec![PauliString::identity(1, 2), PauliString::parse("X1", 1, 2).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn anticommuting_pair_cancels_exactly() {
        let pass = trotter_pass(&half_x(), &z_h(), 0.8, Order::First).unwrap();
        assert!(pass.max_abs_diff(&DenseMatrix::identity(2)) < 1e-14);
        let second = second_order_block(&half_x(), &z_h(), 0.8).unwrap();
        assert!(second.max_abs_diff(&first_order_block(&half_x(), &z_h(), 0.8).unwrap()) < 1e-14);
    }

    #[test]
    fn zero_time_is_identity() {
        let s = scheme_from_oa(&figure1(), 2).unwrap();
        let h = random_k_local(5, 2, 2, 6, 1).unwrap();
        let id = DenseMatrix::identity(32);
        assert!(first_order_block(&s, &h, 0.0).unwrap().max_abs_diff(&id) < 1e-14);
        assert!(second_order_block(&s, &h, 0.0).unwrap().max_abs_diff(&id) < 1e-14);
    }

    #[test]
    fn block_errors_shrink_with_order() {
        let s = scheme_from_oa(&figure1(), 2).unwrap();
        let h = random_k_local(5, 2, 2, 8, 3).unwrap();
        let id = DenseMatrix::identity(32);
        let err = |order: Order, dt: f64| {
            let b = match order {
                Order::First => first_order_block(&s, &h, dt),
                Order::Second => second_order_block(&s, &h, dt),
            };
            b.unwrap().sub(&id).unwrap().spectral_norm().unwrap()
        };
        let dts = [0.02, 0.01, 0.005];
        let first: Vec<(f64, f64)> = dts.iter().map(|&dt| (dt, err(Order::First, dt))).collect();
        let second: Vec<(f64, f64)> = dts.iter().map(|&dt| (dt, err(Order::Second, dt))).collect();
        let s1 = super::super::fit_loglog_slope(&first).unwrap();
        let s2 = super::super::fit_loglog_slope(&second).unwrap();
        assert!((s1 - 2.0).abs() < 0.15, "{s1}");
        assert!((s2 - 3.0).abs() < 0.3, "{s2}");
    }

    #[test]
    fn qdrift_blocks_are_seeded() {
        let s = scheme_from_oa(&figure1(), 2).unwrap();
        let h = random_k_local(5, 2, 2, 4, 1).unwrap();
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            qdrift_block(&h, &s, 0.1, QdriftMode::OaSubset, 64, &mut rng).unwrap()
        };
        assert_eq!(run(3), run(3));
        assert!(run(3).max_abs_diff(&run(4)) > 1e-6);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(qdrift_block(&h, &s, 0.1, QdriftMode::Off, 4, &mut rng).is_err());
    }

    #[test]
    fn full_group_twirl_averages_out() {
        // mean of P Z P^dagger over uniform single-qubit Paulis tends to 0
        let z = PauliString::parse("Z1", 1, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let samples = 20_000;
        let total: i64 = (0..samples)
            .map(|_| {
                let p = PauliString::random(1, 2, &mut rng);
                if crate::pauli::commutes(&p, &z).unwrap().commute { 1 } else { -1 }
            })
            .sum();
        assert!((total as f64 / samples as f64).abs() < 0.03);
    }

    #[test]
    fn controlled_pass_lifts() {
        let c = crate::schemes::controlize(&half_x()).unwrap();
        let pass = trotter_pass(&c, &z_h(), 0.4, Order::First).unwrap();
        let target = crate::linalg::ctrl(&evolution(&z_h(), 0.4).unwrap()).unwrap();
        assert!(pass.max_abs_diff(&target) < 1e-14);
    }
}
