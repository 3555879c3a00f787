//! Linear combinations of Pauli strings with complex coefficients.

use std::collections::BTreeMap;

use super::PauliString;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, C64, ZERO};

/// `sum_k c_k P_k` with phase-free, distinct `P_k` kept in a canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n: usize,
    d: u32,
    terms: BTreeMap<PauliString, C64>,
}

impl PauliSum {
    pub fn zero(n: usize, d: u32) -> Self {
        PauliSum {
            n,
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<'a>(
        n: usize,
        d: u32,
        terms: impl IntoIterator<Item = (C64, &'a PauliString)>,
    ) -> Result<Self> {
        let mut sum = Self::zero(n, d);
        for (c, p) in terms {
            sum.add_term(c, p)?;
        }
        Ok(sum)
    }

    pub fn num_qudits(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Adds `coeff * p`, folding the string's phase into the coefficient.
    pub fn add_term(&mut self, coeff: C64, p: &PauliString) -> Result<()> {
        if p.d() != self.d || p.num_qudits() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "term on {} qudits of dimension {} added to sum on {} of dimension {}",
                p.num_qudits(),
                p.d(),
                self.n,
                self.d
            )));
        }
        *self.terms.entry(p.without_phase()).or_insert(ZERO) += coeff * p.phase();
        Ok(())
    }

    pub fn add(&mut self, other: &Self) -> Result<()> {
        for (p, &c) in &other.terms {
            self.add_term(c, p)?;
        }
        Ok(())
    }

    pub fn scale(&self, alpha: C64) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= alpha;
        }
        out
    }

    /// Drops terms with `|c| <= tol`.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() > tol);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, C64)> {
        self.terms.iter().map(|(p, &c)| (p, c))
    }

    pub fn coefficient(&self, p: &PauliString) -> C64 {
        self.terms.get(&p.without_phase()).map_or(ZERO, |&c| c * p.phase())
    }

    /// Largest `|c_k|`.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `sqrt(sum |c_k|^2)`, which is `||A||_F / sqrt(d^n)`.
    pub fn coeff_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n, self.d);
        for (p, &c) in &self.terms {
            let adj = p.adjoint();
            out.add_term(c.conj(), &adj).expect("same shape");
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.n, self.d);
        for (p, &c) in &self.terms {
            for (q, &e) in &other.terms {
                out.add_term(c * e, &p.multiply(q)?)?;
            }
        }
        Ok(out)
    }

    /// `u A u^dagger` for a Pauli string `u`.
    pub fn conjugate_by(&self, u: &PauliString) -> Result<Self> {
        let mut out = Self::zero(self.n, self.d);
        for (p, &c) in &self.terms {
            let conj = super::conjugate_term(u, p)?;
            out.add_term(c * conj.scalar(), p)?;
        }
        Ok(out)
    }

    pub fn matrix(&self) -> Result<DenseMatrix> {
        let dim = (self.d as usize)
            .checked_pow(self.n as u32)
            .ok_or_else(|| Error::TooLarge("sum dimension".into()))?;
        let mut m = DenseMatrix::zeros(dim);
        for (p, &c) in &self.terms {
            let action = p.action()?;
            for x in 0..dim {
                m[(action.perm[x], x)] += c * action.phases[x];
            }
        }
        Ok(m)
    }
}

impl std::fmt::Display for PauliSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({:.6}{:+.6}i) {}", c.re, c.im, p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{I, ONE};

    fn p(text: &str, n: usize) -> PauliString {
        PauliString::parse(text, n, 2).unwrap()
    }

    #[test]
    fn phases_fold_into_coefficients() {
        let mut s = PauliSum::zero(1, 2);
        s.add_term(ONE, &p("i * (XZ)1", 1)).unwrap();
        assert_eq!(s.coefficient(&p("(XZ)1", 1)), I);
        assert_eq!(s.len(), 1);
        s.add_term(ONE, &p("-i * (XZ)1", 1)).unwrap();
        s.prune(1e-14);
        assert!(s.is_empty());
    }

    #[test]
    fn matrix_matches_termwise_sum() {
        let terms = [(C64::new(0.5, 0.0), p("X1 Z2", 2)), (C64::new(0.0, -2.0), p("-1 * (XZ)2", 2))];
        let s = PauliSum::from_terms(2, 2, terms.iter().map(|(c, p)| (*c, p))).unwrap();
        let mut dense = DenseMatrix::zeros(4);
        for (c, q) in &terms {
            dense.axpy(*c, &q.matrix().unwrap()).unwrap();
        }
        assert!(s.matrix().unwrap().max_abs_diff(&dense) < 1e-15);
    }

    #[test]
    fn product_and_adjoint_match_dense() {
        let a = PauliSum::from_terms(
            2,
            3,
            [
                (C64::new(0.3, 0.1), &PauliString::from_exponents(3, vec![1, 0], vec![2, 1]).unwrap()),
                (C64::new(-1.0, 0.0), &PauliString::from_exponents(3, vec![0, 2], vec![1, 1]).unwrap()),
            ],
        )
        .unwrap();
        let b = a.adjoint();
        let (ma, mb) = (a.matrix().unwrap(), b.matrix().unwrap());
        assert!(mb.max_abs_diff(&ma.adjoint()) < 1e-14);
        assert!(a.multiply(&b).unwrap().matrix().unwrap().max_abs_diff(&ma.mul(&mb)) < 1e-13);
    }

    #[test]
    fn conjugation_matches_dense() {
        let h = PauliSum::from_terms(2, 2, [(ONE, &p("X1 X2", 2)), (C64::new(0.7, 0.0), &p("Z1", 2))]).unwrap();
        let u = p("(XZ)1", 2);
        let mu = u.matrix().unwrap();
        let dense = mu.mul(&h.matrix().unwrap()).mul(&mu.adjoint());
        assert!(h.conjugate_by(&u).unwrap().matrix().unwrap().max_abs_diff(&dense) < 1e-15);
    }

    #[test]
    fn coefficient_norm_is_scaled_frobenius() {
        let h = PauliSum::from_terms(3, 2, [(ONE, &p("X1 X2", 3)), (C64::new(2.0, 0.0), &p("Z3", 3))]).unwrap();
        let f = h.matrix().unwrap().frobenius_norm();
        assert!((h.coeff_norm() - f / 8f64.sqrt()).abs() < 1e-12);
    }
}
