//! Serializable experiment descriptions.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::{DecouplingExperiment, Order, Variant, ALL_VARIANTS};
use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::gf::Field;
use crate::hamiltonian::{
    paper_example_3local, random_dense_all_terms, random_k_local, random_sparse, spectral_norm,
    KLocalHamiltonian,
};
use crate::oa::{self, construct_rao_hamming, restrict_columns, OrthogonalArray};
use crate::schemes::{scheme_from_oa, Scheme};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case", deny_unknown_fields)]
pub enum HamiltonianSpec {
    /// `terms` distinct random two-local qubit strings.
    Sparse { n: usize, terms: usize, seed: u64 },
    /// Every one- and two-local qubit string.
    DenseAllTerms { n: usize, seed: u64 },
    /// Random terms of weight exactly `k` on qudits.
    KLocal {
        n: usize,
        #[serde(default = "two")]
        d: u32,
        k: usize,
        terms: usize,
        seed: u64,
    },
    PaperExample,
    File { path: PathBuf },
}

fn two() -> u32 {
    2
}

impl HamiltonianSpec {
    pub fn build(&self) -> Result<KLocalHamiltonian> {
        match self {
            HamiltonianSpec::Sparse { n, terms, seed } => random_sparse(*n, *terms, *seed),
            HamiltonianSpec::DenseAllTerms { n, seed } => random_dense_all_terms(*n, *seed),
            HamiltonianSpec::KLocal { n, d, k, terms, seed } => random_k_local(*n, *d, *k, *terms, *seed),
            HamiltonianSpec::PaperExample => Ok(paper_example_3local()),
            HamiltonianSpec::File { path } => KLocalHamiltonian::parse(&read(path)?),
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum SchemeSource {
    /// A bundled array: `fig1` (OA(16,5,4,2)) or `oa32` (OA(32,9,4,2)).
    Builtin {
        name: String,
        #[serde(default)]
        columns: Option<Vec<usize>>,
    },
    RaoHamming {
        s: u32,
        ell: u32,
        #[serde(default)]
        columns: Option<Vec<usize>>,
    },
    /// An array in the text format, verified at strength `t`.
    OaFile {
        path: PathBuf,
        s: u32,
        t: u32,
        #[serde(default)]
        columns: Option<Vec<usize>>,
    },
    /// A decoupling scheme in the export format.
    SchemeFile { path: PathBuf },
}

/// Restricts to the given 1-based columns, or to the first `n` when none
/// are given.
fn pick_columns(arr: OrthogonalArray, columns: &Option<Vec<usize>>, n: usize) -> Result<OrthogonalArray> {
    let cols: Vec<usize> = match columns {
        Some(c) if c.contains(&0) => {
            return Err(Error::InvalidParameter("columns are 1-based".into()));
        }
        Some(c) => c.iter().map(|&x| x - 1).collect(),
        None => (0..n).collect(),
    };
    if cols.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} columns selected for {n} qudits",
            cols.len()
        )));
    }
    if cols.len() == arr.factors() && cols.iter().enumerate().all(|(i, &c)| i == c) {
        return Ok(arr);
    }
    restrict_columns(&arr, &cols)
}

impl SchemeSource {
    /// Decoupling scheme on `n` qudits of dimension `d`, with a label.
    pub fn build(&self, n: usize, d: u32) -> Result<(Scheme, String)> {
        let (arr, columns, label) = match self {
            SchemeSource::Builtin { name, columns } => {
                let arr = match name.as_str() {
                    "fig1" | "oa16" => oa::figure1(),
                    "oa32" => oa::oa_32_9_4_2(),
                    _ => return Err(Error::InvalidParameter(format!("unknown array {name:?}"))),
                };
                (arr, columns, name.clone())
            }
            SchemeSource::RaoHamming { s, ell, columns } => {
                let arr = construct_rao_hamming(&Field::with_order(*s)?, *ell)?;
                (arr, columns, format!("rh{s}_{ell}"))
            }
            SchemeSource::OaFile { path, s, t, columns } => {
                let arr = oa::load(&read(path)?, *s, *t, false)?;
                let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
                (arr, columns, stem.unwrap_or_else(|| "file".into()))
            }
            SchemeSource::SchemeFile { path } => {
                let scheme = Scheme::parse(&read(path)?)?;
                if scheme.num_qudits() != n || scheme.d() != d {
                    return Err(Error::DimensionMismatch(format!(
                        "scheme file acts on {} qudits",
                        scheme.num_qudits()
                    )));
                }
                let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
                return Ok((scheme, stem.unwrap_or_else(|| "file".into())));
            }
        };
        let arr = pick_columns(arr, columns, n)?;
        let label = format!("{label}x{n}");
        Ok((scheme_from_oa(&arr, d)?, label))
    }
}

fn default_variants() -> Vec<Variant> {
    ALL_VARIANTS.to_vec()
}

fn one() -> f64 {
    1.0
}

fn hundred() -> usize {
    100
}

fn ten() -> usize {
    10
}

fn both_orders() -> Vec<Order> {
    vec![Order::First, Order::Second]
}

fn yes() -> bool {
    true
}

/// Decoupling experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub hamiltonian: HamiltonianSpec,
    pub scheme: SchemeSource,
    #[serde(default = "default_variants")]
    pub variants: Vec<Variant>,
    pub blocks: Vec<usize>,
    #[serde(default = "one")]
    pub total_time: f64,
    #[serde(default = "hundred")]
    pub reps: usize,
    #[serde(default = "ten")]
    pub states: usize,
    #[serde(default)]
    pub seed: u64,
    /// Rescale the Hamiltonian to unit spectral norm.
    #[serde(default)]
    pub normalize: bool,
    #[serde(default)]
    pub parallelism: Parallelism,
}

fn build_hamiltonian(spec: &HamiltonianSpec, normalize: bool) -> Result<KLocalHamiltonian> {
    let h = spec.build()?;
    if !normalize || h.terms().is_empty() {
        return Ok(h);
    }
    let norm = spectral_norm(&h)?;
    Ok(h.scaled(1.0 / norm))
}

impl ExperimentConfig {
    pub fn build(&self) -> Result<DecouplingExperiment> {
        let h = build_hamiltonian(&self.hamiltonian, self.normalize)?;
        let (scheme, label) = self.scheme.build(h.num_qudits(), h.d())?;
        Ok(DecouplingExperiment {
            h,
            scheme,
            label,
            variants: self.variants.clone(),
            blocks: self.blocks.clone(),
            total_time: self.total_time,
            reps: self.reps,
            states: self.states,
            seed: self.seed,
            mode: self.parallelism,
        })
    }
}

/// Controlization error sweep description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlizationConfig {
    pub hamiltonian: HamiltonianSpec,
    pub scheme: SchemeSource,
    #[serde(default = "both_orders")]
    pub orders: Vec<Order>,
    pub trotter_steps: Vec<usize>,
    #[serde(default = "one")]
    pub total_time: f64,
    #[serde(default = "yes")]
    pub normalize: bool,
}

impl ControlizationConfig {
    pub fn build(&self) -> Result<(KLocalHamiltonian, Scheme, String)> {
        if self.trotter_steps.is_empty() || self.orders.is_empty() {
            return Err(Error::InvalidParameter("need Trotter step counts and orders".into()));
        }
        let h = build_hamiltonian(&self.hamiltonian, self.normalize)?;
        let (scheme, label) = self.scheme.build(h.num_qudits(), h.d())?;
        Ok((h, scheme, label))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_restriction() {
        let src = SchemeSource::Builtin {
            name: "oa32".into(),
            columns: None,
        };
        let (s, label) = src.build(8, 2).unwrap();
        assert_eq!((s.len(), s.num_qudits(), label.as_str()), (32, 8, "oa32x8"));
        let explicit = SchemeSource::Builtin {
            name: "fig1".into(),
            columns: Some(vec![5, 1]),
        };
        let (s, _) = explicit.build(2, 2).unwrap();
        let row = oa::figure1().row(1).to_vec();
        let expected = crate::pauli::QuditPauli::from_index(2, row[4]).unwrap();
        assert_eq!(s.steps()[1].u.factor(0), expected);
        assert!(SchemeSource::Builtin { name: "nope".into(), columns: None }.build(2, 2).is_err());
        assert!(SchemeSource::Builtin { name: "fig1".into(), columns: Some(vec![0, 1]) }.build(2, 2).is_err());
        assert!(SchemeSource::Builtin { name: "fig1".into(), columns: None }.build(6, 2).is_err());
    }

    #[test]
    fn normalization() {
        let cfg = ControlizationConfig {
            hamiltonian: HamiltonianSpec::KLocal { n: 3, d: 2, k: 2, terms: 5, seed: 1 },
            scheme: SchemeSource::RaoHamming { s: 4, ell: 2, columns: None },
            orders: vec![Order::First],
            trotter_steps: vec![4],
            total_time: 1.0,
            normalize: true,
        };
        let (h, s, label) = cfg.build().unwrap();
        assert!((spectral_norm(&h).unwrap() - 1.0).abs() < 1e-10);
        assert_eq!((s.len(), label.as_str()), (16, "rh4_2x3"));
    }
}
