//! Generalized Pauli operators `X^a Z^b` on `d`-level qudits and their
//! tensor products, with exact phase tracking.
//!
//! `X|x> = |x+1 mod d>` and `Z|x> = w^x |x>` with `w = exp(2 pi i / d)`, so
//! `Z X = w X Z`. A [`PauliString`] stores one `(a, b)` pair per qudit plus a
//! global phase, kept as an integer power of the primitive `2d`-th root
//! `exp(i pi / d)`. All products, commutators and conjugations are computed
//! from the exponents alone; [`PauliString::action`] gives the dense
//! (monomial) realization when a matrix is needed.

mod sum;
mod text;

pub use sum::PauliSum;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, C64, ZERO};

/// Largest qudit dimension accepted when building dense matrices.
pub const MAX_DENSE_D: u32 = 16;

/// `exp(i pi k / d)`, exact on the quarter turns.
pub fn root_of_unity(k: i64, d: u32) -> C64 {
    let order = 2 * d as i64;
    let k = k.rem_euclid(order);
    if (4 * k) % order == 0 {
        return match 4 * k / order {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    C64::from_polar(1.0, std::f64::consts::PI * k as f64 / d as f64)
}

/// A single-qudit generalized Pauli `X^a Z^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuditPauli {
    d: u32,
    a: u32,
    b: u32,
}

impl QuditPauli {
    pub fn new(d: u32, a: u32, b: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("qudit dimension {d} < 2")));
        }
        if a >= d || b >= d {
            return Err(Error::InvalidParameter(format!(
                "exponents ({a},{b}) outside 0..{d}"
            )));
        }
        Ok(QuditPauli { d, a, b })
    }

    /// Symbol `1 + a d + b` of the alphabet `{1..d^2}`.
    pub fn from_index(d: u32, index: u32) -> Result<Self> {
        if index == 0 || index > d * d {
            return Err(Error::InvalidParameter(format!(
                "symbol {index} outside 1..={}",
                d * d
            )));
        }
        Self::new(d, (index - 1) / d, (index - 1) % d)
    }

    pub fn index(&self) -> u32 {
        1 + self.a * self.d + self.b
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn x_power(&self) -> u32 {
        self.a
    }

    pub fn z_power(&self) -> u32 {
        self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `X^a Z^b` as a dense `d x d` unitary.
    pub fn matrix(&self) -> Result<DenseMatrix> {
        if self.d > MAX_DENSE_D {
            return Err(Error::TooLarge(format!("qudit dimension {}", self.d)));
        }
        let d = self.d as usize;
        let mut m = DenseMatrix::zeros(d);
        for x in 0..d {
            m[((x + self.a as usize) % d, x)] = root_of_unity(2 * (self.b as i64) * x as i64, self.d);
        }
        Ok(m)
    }
}

/// `n`-fold tensor product of generalized Paulis times `exp(i pi phase / d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    d: u32,
    xs: Vec<u32>,
    zs: Vec<u32>,
    phase: u32,
}

/// Result of [`commutes`]: `x y = w^omega_power y x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Commutation {
    pub commute: bool,
    pub omega_power: u32,
}

/// `u h u^dagger = w^omega_power h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjugated {
    pub string: PauliString,
    pub omega_power: u32,
}

impl Conjugated {
    /// The scalar `w^omega_power`.
    pub fn scalar(&self) -> C64 {
        root_of_unity(2 * self.omega_power as i64, self.string.d)
    }

    /// `+1` or `-1` for qubits.
    pub fn sign(&self) -> Option<i32> {
        match (self.string.d, self.omega_power) {
            (_, 0) => Some(1),
            (2, 1) => Some(-1),
            _ => None,
        }
    }
}

/// Dense action of a string: basis state `x` maps to `phases[x] |perm[x]>`.
#[derive(Debug, Clone)]
pub struct MonomialAction {
    pub perm: Vec<usize>,
    pub phases: Vec<C64>,
}

impl MonomialAction {
    /// `out = P v`.
    pub fn apply(&self, v: &[C64], out: &mut [C64]) {
        for (x, &amp) in v.iter().enumerate() {
            out[self.perm[x]] = self.phases[x] * amp;
        }
    }

    /// `v <- P v`, using `scratch` of the same length.
    pub fn apply_in_place(&self, v: &mut [C64], scratch: &mut [C64]) {
        self.apply(v, scratch);
        v.copy_from_slice(scratch);
    }

    pub fn to_matrix(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.perm.len());
        for (x, (&y, &ph)) in self.perm.iter().zip(&self.phases).enumerate() {
            m[(y, x)] = ph;
        }
        m
    }
}

fn check_pair(x: &PauliString, y: &PauliString) -> Result<()> {
    if x.d != y.d || x.xs.len() != y.xs.len() {
        return Err(Error::DimensionMismatch(format!(
            "strings on {} qudits of dimension {} and {} qudits of dimension {}",
            x.num_qudits(),
            x.d,
            y.num_qudits(),
            y.d
        )));
    }
    Ok(())
}

impl PauliString {
    pub fn identity(n: usize, d: u32) -> Self {
        PauliString {
            d,
            xs: vec![0; n],
            zs: vec![0; n],
            phase: 0,
        }
    }

    pub fn from_factors(factors: &[QuditPauli]) -> Result<Self> {
        let d = factors
            .first()
            .map(QuditPauli::d)
            .ok_or_else(|| Error::InvalidParameter("empty factor list".into()))?;
        if factors.iter().any(|f| f.d != d) {
            return Err(Error::DimensionMismatch("factors of different dimension".into()));
        }
        Ok(PauliString {
            d,
            xs: factors.iter().map(|f| f.a).collect(),
            zs: factors.iter().map(|f| f.b).collect(),
            phase: 0,
        })
    }

    /// Builds from parallel exponent lists.
    pub fn from_exponents(d: u32, xs: Vec<u32>, zs: Vec<u32>) -> Result<Self> {
        if d < 2 || xs.len() != zs.len() || xs.iter().chain(&zs).any(|&e| e >= d) {
            return Err(Error::InvalidParameter("bad exponent lists".into()));
        }
        Ok(PauliString { d, xs, zs, phase: 0 })
    }

    /// Weight-one (or identity) string with `X^a Z^b` on `qudit`.
    pub fn single(n: usize, d: u32, qudit: usize, a: u32, b: u32) -> Result<Self> {
        let f = QuditPauli::new(d, a, b)?;
        if qudit >= n {
            return Err(Error::InvalidParameter(format!("qudit {qudit} >= {n}")));
        }
        let mut s = Self::identity(n, d);
        s.xs[qudit] = f.a;
        s.zs[qudit] = f.b;
        Ok(s)
    }

    /// Maps a row of symbols in `{1..d^2}` through `1 + a d + b`.
    pub fn from_oa_row(row: &[u32], d: u32) -> Result<Self> {
        let factors = row
            .iter()
            .map(|&m| QuditPauli::from_index(d, m))
            .collect::<Result<Vec<_>>>()?;
        Self::from_factors(&factors)
    }

    /// Uniformly random string (phase 0) over all `d^(2n)` choices.
    pub fn random<R: Rng + ?Sized>(n: usize, d: u32, rng: &mut R) -> Self {
        let mut s = Self::identity(n, d);
        for i in 0..n {
            s.xs[i] = rng.gen_range(0..d);
            s.zs[i] = rng.gen_range(0..d);
        }
        s
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn num_qudits(&self) -> usize {
        self.xs.len()
    }

    pub fn phase_exp(&self) -> u32 {
        self.phase
    }

    /// The global phase `exp(i pi phase / d)`.
    pub fn phase(&self) -> C64 {
        root_of_unity(self.phase as i64, self.d)
    }

    pub fn with_phase_exp(mut self, phase: u32) -> Self {
        self.phase = phase % (2 * self.d);
        self
    }

    pub fn without_phase(&self) -> Self {
        self.clone().with_phase_exp(0)
    }

    pub fn factor(&self, i: usize) -> QuditPauli {
        QuditPauli {
            d: self.d,
            a: self.xs[i],
            b: self.zs[i],
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = QuditPauli> + '_ {
        (0..self.num_qudits()).map(|i| self.factor(i))
    }

    /// Indices of qudits acted on nontrivially.
    pub fn support(&self) -> Vec<usize> {
        (0..self.num_qudits())
            .filter(|&i| self.xs[i] != 0 || self.zs[i] != 0)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.support().len()
    }

    /// True when every factor is the identity (the phase may be anything).
    pub fn is_identity(&self) -> bool {
        self.xs.iter().chain(&self.zs).all(|&e| e == 0)
    }

    /// Same factors, ignoring phase.
    pub fn same_factors(&self, other: &Self) -> bool {
        self.d == other.d && self.xs == other.xs && self.zs == other.zs
    }

    /// Exact product `self * other`, using `Z^b X^c = w^(bc) X^c Z^b`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_pair(self, other)?;
        let d = self.d;
        let mut phase = self.phase as u64 + other.phase as u64;
        let mut xs = Vec::with_capacity(self.xs.len());
        let mut zs = Vec::with_capacity(self.xs.len());
        for i in 0..self.xs.len() {
            phase += 2 * self.zs[i] as u64 * other.xs[i] as u64;
            xs.push((self.xs[i] + other.xs[i]) % d);
            zs.push((self.zs[i] + other.zs[i]) % d);
        }
        Ok(PauliString {
            d,
            xs,
            zs,
            phase: (phase % (2 * d as u64)) as u32,
        })
    }

    /// Exact adjoint.
    pub fn adjoint(&self) -> Self {
        let d = self.d;
        let order = 2 * d as u64;
        let mut phase = (order - self.phase as u64 % order) % order;
        let mut xs = Vec::with_capacity(self.xs.len());
        let mut zs = Vec::with_capacity(self.xs.len());
        for i in 0..self.xs.len() {
            // (X^a Z^b)^dagger = Z^-b X^-a = w^(ab) X^-a Z^-b
            phase += 2 * self.xs[i] as u64 * self.zs[i] as u64;
            xs.push((d - self.xs[i]) % d);
            zs.push((d - self.zs[i]) % d);
        }
        PauliString {
            d,
            xs,
            zs,
            phase: (phase % order) as u32,
        }
    }

    /// Symplectic form `sum_i (b_i a'_i - a_i b'_i) mod d`, so that
    /// `self * other = w^form * other * self`.
    pub fn symplectic(&self, other: &Self) -> Result<u32> {
        check_pair(self, other)?;
        let d = self.d as i64;
        let s: i64 = (0..self.xs.len())
            .map(|i| {
                self.zs[i] as i64 * other.xs[i] as i64 - self.xs[i] as i64 * other.zs[i] as i64
            })
            .sum();
        Ok(s.rem_euclid(d) as u32)
    }

    /// Dense monomial action; requires `d <= 16` and `d^n <= 2^24`.
    pub fn action(&self) -> Result<MonomialAction> {
        if self.d > MAX_DENSE_D {
            return Err(Error::TooLarge(format!("qudit dimension {}", self.d)));
        }
        let n = self.num_qudits();
        let d = self.d as usize;
        let dim = d
            .checked_pow(n as u32)
            .filter(|&x| x <= 1 << 24)
            .ok_or_else(|| Error::TooLarge(format!("{d}^{n} dimensional space")))?;
        let mut perm = vec![0usize; dim];
        let mut phases = vec![ZERO; dim];
        // phase exponents in units of exp(i pi / d)
        let global = self.phase as i64;
        let mut digits = vec![0usize; n];
        for x in 0..dim {
            let mut rest = x;
            for slot in digits.iter_mut().rev() {
                *slot = rest % d;
                rest /= d;
            }
            let mut y = 0usize;
            let mut ph = global;
            for i in 0..n {
                ph += 2 * self.zs[i] as i64 * digits[i] as i64;
                y = y * d + (digits[i] + self.xs[i] as usize) % d;
            }
            perm[x] = y;
            phases[x] = root_of_unity(ph, self.d);
        }
        Ok(MonomialAction { perm, phases })
    }

    /// Dense matrix including the phase.
    pub fn matrix(&self) -> Result<DenseMatrix> {
        Ok(self.action()?.to_matrix())
    }

    /// For qubits: phase that makes the string Hermitian, one factor of `i`
    /// per `XZ` factor (`Y = i X Z`).
    pub fn hermitian_phase_exp(&self) -> Option<u32> {
        (self.d == 2).then(|| {
            let ys = (0..self.xs.len())
                .filter(|&i| self.xs[i] == 1 && self.zs[i] == 1)
                .count();
            (ys % 4) as u32
        })
    }

    /// Copy with the Hermitian phase applied (qubits only).
    pub fn hermitian(&self) -> Option<Self> {
        self.hermitian_phase_exp()
            .map(|p| self.clone().with_phase_exp(p))
    }
}

/// Whether `x y = y x`, and the `w`-power otherwise.
pub fn commutes(x: &PauliString, y: &PauliString) -> Result<Commutation> {
    let omega_power = x.symplectic(y)?;
    Ok(Commutation {
        commute: omega_power == 0,
        omega_power,
    })
}

/// `u h u^dagger`, which is `h` times a root of unity.
pub fn conjugate_term(u: &PauliString, h: &PauliString) -> Result<Conjugated> {
    Ok(Conjugated {
        string: h.clone(),
        omega_power: u.symplectic(h)?,
    })
}

/// `X^a Z^b` as a dense matrix.
pub fn matrix_of(p: &QuditPauli) -> Result<DenseMatrix> {
    p.matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;

    fn qubit(n: usize, spec: &[(usize, u32, u32)]) -> PauliString {
        let mut s = PauliString::identity(n, 2);
        for &(q, a, b) in spec {
            s.xs[q] = a;
            s.zs[q] = b;
        }
        s
    }

    fn all_strings(n: usize, d: u32) -> Vec<PauliString> {
        let total = (d as usize).pow(2 * n as u32);
        (0..total)
            .map(|mut idx| {
                let mut s = PauliString::identity(n, d);
                for i in 0..n {
                    s.xs[i] = (idx % d as usize) as u32;
                    idx /= d as usize;
                    s.zs[i] = (idx % d as usize) as u32;
                    idx /= d as usize;
                }
                s
            })
            .collect()
    }

    #[test]
    fn qubit_matrices() {
        let x = QuditPauli::new(2, 1, 0).unwrap().matrix().unwrap();
        assert_eq!(x, DenseMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]]).unwrap());
        let z = QuditPauli::new(2, 0, 1).unwrap().matrix().unwrap();
        assert_eq!(z, DenseMatrix::diagonal(&[ONE, -ONE]));
    }

    #[test]
    fn qutrit_z() {
        let z = QuditPauli::new(3, 0, 1).unwrap().matrix().unwrap();
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let expected = DenseMatrix::diagonal(&[ONE, w, w * w]);
        assert!(z.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn index_map() {
        for d in [2, 3, 4] {
            for idx in 1..=d * d {
                assert_eq!(QuditPauli::from_index(d, idx).unwrap().index(), idx);
            }
        }
        let names: Vec<(u32, u32)> = (1..=4)
            .map(|i| {
                let p = QuditPauli::from_index(2, i).unwrap();
                (p.x_power(), p.z_power())
            })
            .collect();
        assert_eq!(names, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert!(QuditPauli::from_index(2, 5).is_err());
        assert!(QuditPauli::from_index(2, 0).is_err());
    }

    #[test]
    fn z_times_x_is_minus_x_times_z() {
        let z = qubit(1, &[(0, 0, 1)]);
        let x = qubit(1, &[(0, 1, 0)]);
        let zx = z.multiply(&x).unwrap();
        assert!(zx.same_factors(&qubit(1, &[(0, 1, 1)])));
        assert_eq!(zx.phase(), -ONE);
        assert_eq!(x.multiply(&z).unwrap().phase(), ONE);
    }

    #[test]
    fn identity_is_neutral() {
        let y = qubit(3, &[(0, 1, 1), (2, 0, 1)]).with_phase_exp(3);
        let id = PauliString::identity(3, 2);
        assert_eq!(id.multiply(&y).unwrap(), y);
    }

    #[test]
    fn xz_squared_is_minus_identity() {
        let xz = qubit(1, &[(0, 1, 1)]);
        let sq = xz.multiply(&xz).unwrap();
        assert!(sq.is_identity());
        assert_eq!(sq.phase(), -ONE);
        // oracle: 2x2 product
        let m = xz.matrix().unwrap();
        assert_eq!(m.mul(&m), DenseMatrix::identity(2).scale(-ONE));
    }

    #[test]
    fn multiply_matches_dense_products() {
        for (n, d) in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)] {
            let all = all_strings(n, d);
            let step = if all.len() > 64 { 7 } else { 1 };
            for x in all.iter().step_by(step) {
                for y in all.iter().step_by(step) {
                    let x = x.clone().with_phase_exp(1);
                    let prod = x.multiply(y).unwrap();
                    let dense = x.matrix().unwrap().mul(&y.matrix().unwrap());
                    assert!(prod.matrix().unwrap().max_abs_diff(&dense) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn adjoint_matches_dense() {
        for d in [2, 3, 4] {
            for s in all_strings(1, d) {
                let s = s.with_phase_exp(1);
                let adj = s.adjoint();
                assert!(adj.matrix().unwrap().max_abs_diff(&s.matrix().unwrap().adjoint()) < 1e-12);
                assert!(s.multiply(&adj).unwrap().is_identity());
                assert_eq!(s.multiply(&adj).unwrap().phase_exp(), 0);
            }
        }
    }

    #[test]
    fn commutation_examples() {
        let x = qubit(1, &[(0, 1, 0)]);
        let z = qubit(1, &[(0, 0, 1)]);
        assert!(!commutes(&x, &z).unwrap().commute);
        let xx = qubit(2, &[(0, 1, 0), (1, 1, 0)]);
        let zz = qubit(2, &[(0, 0, 1), (1, 0, 1)]);
        assert!(commutes(&xx, &zz).unwrap().commute);
        let xxix = qubit(4, &[(0, 1, 0), (1, 1, 0), (3, 1, 0)]);
        let ziii = qubit(4, &[(0, 0, 1)]);
        assert!(!commutes(&xxix, &ziii).unwrap().commute);
        // 16x16 oracle
        let a = xxix.matrix().unwrap();
        let b = ziii.matrix().unwrap();
        assert!(a.mul(&b).max_abs_diff(&b.mul(&a).scale(-ONE)) < 1e-15);
    }

    #[test]
    fn commutes_agrees_with_matrices() {
        for (n, d) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
            let all = all_strings(n, d);
            for x in &all {
                for y in &all {
                    let (mx, my) = (x.matrix().unwrap(), y.matrix().unwrap());
                    let comm = mx.mul(&my).sub(&my.mul(&mx)).unwrap().frobenius_norm();
                    assert_eq!(commutes(x, y).unwrap().commute, comm < 1e-12);
                }
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let x = qubit(1, &[(0, 1, 0)]);
        let z = qubit(1, &[(0, 0, 1)]);
        let y = qubit(1, &[(0, 1, 1)]);
        assert_eq!(conjugate_term(&x, &z).unwrap().sign(), Some(-1));
        assert_eq!(conjugate_term(&y, &x).unwrap().sign(), Some(-1));
        let id = PauliString::identity(1, 2);
        let c = conjugate_term(&id, &z).unwrap();
        assert_eq!((c.sign(), c.string), (Some(1), z.clone()));
        // 2x2 oracle for the Y-like case
        let (my, mx) = (y.matrix().unwrap(), x.matrix().unwrap());
        assert_eq!(my.mul(&mx).mul(&my.adjoint()), mx.scale(-ONE));
    }

    #[test]
    fn conjugation_matches_dense_qutrits() {
        let all = all_strings(2, 3);
        for u in all.iter().step_by(5) {
            for h in all.iter().step_by(3) {
                let c = conjugate_term(u, h).unwrap();
                let mu = u.matrix().unwrap();
                let dense = mu.mul(&h.matrix().unwrap()).mul(&mu.adjoint());
                let sym = h.matrix().unwrap().scale(c.scalar());
                assert!(dense.max_abs_diff(&sym) < 1e-12);
            }
        }
    }

    #[test]
    fn mismatched_dimensions() {
        let a = PauliString::identity(2, 2);
        assert!(a.multiply(&PauliString::identity(3, 2)).is_err());
        assert!(commutes(&a, &PauliString::identity(2, 3)).is_err());
    }

    #[test]
    fn oa_rows_map_to_strings() {
        let id = PauliString::from_oa_row(&[1, 1, 1, 1, 1], 2).unwrap();
        assert!(id.is_identity());
        let s = PauliString::from_oa_row(&[1, 2, 3, 4], 2).unwrap();
        let f: Vec<(u32, u32)> = s.factors().map(|p| (p.x_power(), p.z_power())).collect();
        assert_eq!(f, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let fig = PauliString::from_oa_row(&[1, 2, 2, 2, 2], 2).unwrap();
        assert_eq!(fig.render(), "Z2 Z3 Z4 Z5");
        assert!(PauliString::from_oa_row(&[5], 2).is_err());
    }

    #[test]
    fn hermitian_phase() {
        let y = qubit(1, &[(0, 1, 1)]).hermitian().unwrap();
        let m = y.matrix().unwrap();
        assert_eq!(m, m.adjoint());
        assert_eq!(m[(0, 1)], C64::new(0.0, -1.0));
        let yy = qubit(2, &[(0, 1, 1), (1, 1, 1)]).hermitian().unwrap();
        assert_eq!(yy.phase(), -ONE);
    }

    #[test]
    fn paulis_are_hilbert_schmidt_orthogonal() {
        for d in [2, 3] {
            let all: Vec<DenseMatrix> = all_strings(1, d).iter().map(|s| s.matrix().unwrap()).collect();
            for (i, a) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate() {
                    let ip = a.adjoint().mul(b).trace();
                    let expected = if i == j { d as f64 } else { 0.0 };
                    assert!((ip - C64::new(expected, 0.0)).norm() < 1e-12);
                }
            }
        }
    }
}
