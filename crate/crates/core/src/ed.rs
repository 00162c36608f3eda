//! Exact diagonalization of short spin chains, used as an independent check of
//! the thermodynamic-limit formulas.
//!
//! Basis states are bit strings with site 0 as the most significant bit and
//! bit 0 meaning σᶻ = +1. Hamiltonians are real in this basis. The Ising chain
//! is diagonalized after a Hadamard on every site, which makes the spin-flip
//! parity manifest and splits the matrix into two equal blocks; the XX chain
//! conserves magnetization and splits by it directly. Blocks are found as
//! connected components of the sparse matrix, so no symmetry is assumed.

use faer::{Mat, Side};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::quantum::Density;
use crate::tfim::Convention;
use crate::DensityMatrix;

pub const MAX_SITES: usize = 12;

/// Largest chain converted to a full density matrix by [`MixedState::to_density`].
pub const MAX_DENSE_SITES: usize = 10;

/// Relative energy window treated as degenerate with the ground state.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainModel {
    /// `−J Σ σᶻσᶻ − B Σ σˣ` with λ interpreted per the convention.
    Tfim(Convention),
    /// `−½ Σ (σˣσˣ + σʸσʸ) − λ Σ σᶻ`.
    Xx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundary {
    Open,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub n_sites: usize,
    pub model: ChainModel,
    pub lambda: f64,
    pub kbt: f64,
    pub boundary: Boundary,
}

impl ChainSpec {
    /// Periodic chain, except that two sites are always open: a periodic
    /// two-site ring would count its only bond twice.
    pub fn new(model: ChainModel, n_sites: usize, lambda: f64, kbt: f64) -> Result<Self> {
        let boundary = if n_sites == 2 {
            Boundary::Open
        } else {
            Boundary::Periodic
        };
        Self::with_boundary(model, n_sites, lambda, kbt, boundary)
    }

    pub fn with_boundary(model: ChainModel, n_sites: usize, lambda: f64, kbt: f64, boundary: Boundary) -> Result<Self> {
        if !(2..=MAX_SITES).contains(&n_sites) {
            return Err(Error::Dimension(format!(
                "chains need 2 to {MAX_SITES} sites, got {n_sites}"
            )));
        }
        if boundary == Boundary::Periodic && n_sites < 4 {
            return Err(Error::InvalidParameter(format!(
                "periodic chains need at least 4 sites, got {n_sites}"
            )));
        }
        if !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!("lambda must be finite, got {lambda}")));
        }
        if !(kbt.is_finite() && kbt >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "kBT must be finite and >= 0, got {kbt}"
            )));
        }
        Ok(Self {
            n_sites,
            model,
            lambda,
            kbt,
            boundary,
        })
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.n_sites;
        let mut b: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        if self.boundary == Boundary::Periodic {
            b.push((n - 1, 0));
        }
        b
    }
}

/// Which single-site basis the sparse matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LocalBasis {
    Z,
    /// Hadamard-rotated: σˣ ↔ σᶻ on every site.
    X,
}

/// Real symmetric sparse matrix as sorted, merged `(row, col, value)` triples.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseHamiltonian {
    dim: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl SparseHamiltonian {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn to_dense(&self) -> Result<CMatrix<f64>> {
        if self.dim > 1 << MAX_DENSE_SITES {
            return Err(Error::Dimension(format!(
                "dense matrix of dimension {} is too large",
                self.dim
            )));
        }
        let mut m = CMatrix::zeros(self.dim);
        for &(i, j, v) in &self.entries {
            m[(i, j)] += Complex::new(v, 0.0);
        }
        Ok(m)
    }

    /// max |H_ij − H_ji|.
    pub fn max_asymmetry(&self) -> f64 {
        let lookup = |i: usize, j: usize| {
            self.entries
                .binary_search_by(|e| (e.0, e.1).cmp(&(i, j)))
                .map(|k| self.entries[k].2)
                .unwrap_or(0.0)
        };
        self.entries
            .iter()
            .map(|&(i, j, v)| (v - lookup(j, i)).abs())
            .fold(0.0, f64::max)
    }
}

fn site_bit(n: usize, site: usize) -> usize {
    1 << (n - 1 - site)
}

fn spin(state: usize, bit: usize) -> f64 {
    if state & bit == 0 {
        1.0
    } else {
        -1.0
    }
}

fn build(spec: &ChainSpec, basis: LocalBasis) -> SparseHamiltonian {
    let n = spec.n_sites;
    let dim = spec.dim();
    let bonds = spec.bonds();
    let mut entries = Vec::new();
    for s in 0..dim {
        let mut diag = 0.0;
        match spec.model {
            ChainModel::Tfim(convention) => {
                let (j, b) = match convention {
                    Convention::CouplingOverField => (spec.lambda, 1.0),
                    Convention::FieldOverCoupling => (1.0, spec.lambda),
                };
                match basis {
                    LocalBasis::Z => {
                        for &(p, q) in &bonds {
                            diag -= j * spin(s, site_bit(n, p)) * spin(s, site_bit(n, q));
                        }
                        for site in 0..n {
                            entries.push((s, s ^ site_bit(n, site), -b));
                        }
                    }
                    LocalBasis::X => {
                        for site in 0..n {
                            diag -= b * spin(s, site_bit(n, site));
                        }
                        for &(p, q) in &bonds {
                            entries.push((s, s ^ site_bit(n, p) ^ site_bit(n, q), -j));
                        }
                    }
                }
            }
            ChainModel::Xx => {
                for site in 0..n {
                    diag -= spec.lambda * spin(s, site_bit(n, site));
                }
                // ½(σˣσˣ + σʸσʸ) swaps antiparallel neighbours with amplitude 1
                for &(p, q) in &bonds {
                    let (bp, bq) = (site_bit(n, p), site_bit(n, q));
                    if (s & bp == 0) != (s & bq == 0) {
                        entries.push((s, s ^ bp ^ bq, -1.0));
                    }
                }
            }
        }
        if diag != 0.0 {
            entries.push((s, s, diag));
        }
    }
    entries.sort_by_key(|e| (e.0, e.1));
    let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(entries.len());
    for e in entries {
        match merged.last_mut() {
            Some(last) if (last.0, last.1) == (e.0, e.1) => last.2 += e.2,
            _ => merged.push(e),
        }
    }
    merged.retain(|e| e.2 != 0.0);
    SparseHamiltonian { dim, entries: merged }
}

/// The Hamiltonian in the computational (σᶻ) basis.
pub fn build_hamiltonian(spec: &ChainSpec) -> SparseHamiltonian {
    build(spec, LocalBasis::Z)
}

#[derive(Debug, Clone)]
struct Block {
    states: Vec<usize>,
    values: Vec<f64>,
    vectors: Mat<f64>,
}

/// Full spectrum and eigenvectors of a chain, stored block by block.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    spec: ChainSpec,
    basis: LocalBasis,
    blocks: Vec<Block>,
}

impl EigenSystem {
    pub fn new(spec: &ChainSpec) -> Result<Self> {
        let basis = match spec.model {
            ChainModel::Tfim(_) => LocalBasis::X,
            ChainModel::Xx => LocalBasis::Z,
        };
        let h = build(spec, basis);
        let blocks = components(&h)
            .into_iter()
            .map(|states| diagonalize_block(&h, states))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spec: *spec,
            basis,
            blocks,
        })
    }

    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    /// Sizes of the independent blocks.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.states.len()).collect()
    }

    /// All eigenvalues in ascending order.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.blocks.iter().flat_map(|b| b.values.iter().copied()).collect();
        all.sort_by(f64::total_cmp);
        all
    }

    pub fn ground_energy(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| b.values.iter().copied())
            .fold(f64::INFINITY, f64::min)
    }

    /// `exp(−H/kBT)/Z`, with the ground energy subtracted before exponentiating.
    pub fn gibbs(&self, kbt: f64) -> Result<MixedState<'_>> {
        if !(kbt > 0.0 && kbt.is_finite()) {
            return Err(Error::InvalidParameter(format!("Gibbs state needs kBT > 0, got {kbt}")));
        }
        let e0 = self.ground_energy();
        Ok(self.mixture(|e| (-(e - e0) / kbt).exp()))
    }

    /// Equal mixture of all states within the degeneracy window of the ground
    /// energy.
    pub fn ground_mixture(&self) -> MixedState<'_> {
        let e0 = self.ground_energy();
        let window = DEGENERACY_TOL * e0.abs().max(1.0);
        self.mixture(|e| if e - e0 <= window { 1.0 } else { 0.0 })
    }

    /// Gibbs state for `kBT > 0`, ground mixture for `kBT = 0`.
    pub fn thermal(&self, kbt: f64) -> Result<MixedState<'_>> {
        if kbt == 0.0 {
            Ok(self.ground_mixture())
        } else {
            self.gibbs(kbt)
        }
    }

    fn mixture(&self, weight: impl Fn(f64) -> f64) -> MixedState<'_> {
        let mut weights: Vec<Vec<f64>> = self
            .blocks
            .iter()
            .map(|b| b.values.iter().map(|&e| weight(e)).collect())
            .collect();
        let z: f64 = weights.iter().flatten().sum();
        for w in weights.iter_mut().flatten() {
            *w /= z;
        }
        MixedState { system: self, weights }
    }
}

fn components(h: &SparseHamiltonian) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..h.dim).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for &(i, j, _) in &h.entries {
        let (a, b) = (root(&mut parent, i), root(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; h.dim];
    for s in 0..h.dim {
        let r = root(&mut parent, s);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(s);
    }
    groups
}

fn diagonalize_block(h: &SparseHamiltonian, states: Vec<usize>) -> Result<Block> {
    let m = states.len();
    let mut local = std::collections::HashMap::with_capacity(m);
    for (k, &s) in states.iter().enumerate() {
        local.insert(s, k);
    }
    let mut dense = Mat::<f64>::zeros(m, m);
    for &(i, j, v) in &h.entries {
        if let (Some(&a), Some(&b)) = (local.get(&i), local.get(&j)) {
            dense[(a, b)] += v;
        }
    }
    let eig = dense
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::EigenNoConvergence { sweeps: 0 })?;
    let values: Vec<f64> = (0..m).map(|k| eig.S().column_vector()[k]).collect();
    Ok(Block {
        states,
        values,
        vectors: eig.U().to_owned(),
    })
}

/// A state diagonal in the chain's eigenbasis.
#[derive(Debug, Clone)]
pub struct MixedState<'a> {
    system: &'a EigenSystem,
    weights: Vec<Vec<f64>>,
}

/// Weights below this are dropped from partial traces.
const NEGLIGIBLE_WEIGHT: f64 = 1e-300;

impl MixedState<'_> {
    pub fn n_sites(&self) -> usize {
        self.system.spec.n_sites
    }

    /// Reduced state of the listed sites in the computational basis, sites
    /// in ascending order as in [`crate::quantum::reduce`].
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.n_sites();
        check_keep(keep, n)?;
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        let k = keep.len();
        let kd = 1usize << k;
        let env_sites: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
        let ed = 1usize << env_sites.len();
        let split = |s: usize| {
            let a = keep.iter().fold(0usize, |acc, &site| {
                (acc << 1) | usize::from(s & site_bit(n, site) != 0)
            });
            let e = env_sites.iter().fold(0usize, |acc, &site| {
                (acc << 1) | usize::from(s & site_bit(n, site) != 0)
            });
            (a, e)
        };

        let mut rho = vec![0.0f64; kd * kd];
        let mut amp = vec![0.0f64; kd * ed];
        for (block, weights) in self.system.blocks.iter().zip(&self.weights) {
            let index: Vec<(usize, usize)> = block.states.iter().map(|&s| split(s)).collect();
            for (col, &w) in weights.iter().enumerate() {
                if w <= NEGLIGIBLE_WEIGHT {
                    continue;
                }
                amp.iter_mut().for_each(|x| *x = 0.0);
                for (row, &(a, e)) in index.iter().enumerate() {
                    amp[a * ed + e] = block.vectors[(row, col)];
                }
                for a in 0..kd {
                    for b in a..kd {
                        let dot: f64 = (0..ed).map(|e| amp[a * ed + e] * amp[b * ed + e]).sum();
                        rho[a * kd + b] += w * dot;
                    }
                }
            }
        }
        let mut m = CMatrix::from_fn(kd, |i, j| {
            let v = if i <= j { rho[i * kd + j] } else { rho[j * kd + i] };
            Complex::new(v, 0.0)
        });
        if self.system.basis == LocalBasis::X {
            let h = hadamard_power(k);
            m = h.matmul(&m).matmul(&h);
        }
        Density::new(m.hermitian_part())
    }

    /// Full density matrix in the computational basis (small chains only).
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let n = self.n_sites();
        if n > MAX_DENSE_SITES {
            return Err(Error::Dimension(format!("full state of {n} sites is too large")));
        }
        let dim = 1usize << n;
        let mut m = vec![0.0f64; dim * dim];
        for (block, weights) in self.system.blocks.iter().zip(&self.weights) {
            for (col, &w) in weights.iter().enumerate() {
                if w <= NEGLIGIBLE_WEIGHT {
                    continue;
                }
                for (r1, &s1) in block.states.iter().enumerate() {
                    let v1 = w * block.vectors[(r1, col)];
                    for (r2, &s2) in block.states.iter().enumerate() {
                        m[s1 * dim + s2] += v1 * block.vectors[(r2, col)];
                    }
                }
            }
        }
        let mut full = CMatrix::from_fn(dim, |i, j| Complex::new(m[i * dim + j], 0.0));
        if self.system.basis == LocalBasis::X {
            let h = hadamard_power(n);
            full = h.matmul(&full).matmul(&h);
        }
        Density::new(full.hermitian_part())
    }
}

fn check_keep(keep: &[usize], n: usize) -> Result<()> {
    if keep.is_empty() || keep.len() > 2 {
        return Err(Error::Dimension(format!(
            "can keep one or two sites, got {}",
            keep.len()
        )));
    }
    if keep.iter().any(|&s| s >= n) {
        return Err(Error::Dimension(format!(
            "site index out of range for {n} sites: {keep:?}"
        )));
    }
    if keep.len() == 2 && keep[0] == keep[1] {
        return Err(Error::Dimension(format!("repeated site {}", keep[0])));
    }
    Ok(())
}

fn hadamard_power(k: usize) -> CMatrix<f64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let one = CMatrix::from_fn(2, |i, j| Complex::new(if i == 1 && j == 1 { -h } else { h }, 0.0));
    (1..k).fold(one.clone(), |acc, _| acc.kron(&one))
}

/// Nearest-neighbour correlators of a translation-invariant chain state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainCorrelators {
    pub sx: f64,
    pub sz: f64,
    pub gxx: f64,
    pub gyy: f64,
    pub gzz: f64,
}

pub fn nearest_neighbour_correlators(state: &MixedState<'_>) -> Result<ChainCorrelators> {
    let t = crate::quantum::TwoSiteExpectations::from_state(&state.reduce(&[0, 1])?)?;
    Ok(ChainCorrelators {
        sx: t.c[1][0],
        sz: t.c[3][0],
        gxx: t.c[1][1],
        gyy: t.c[2][2],
        gzz: t.c[3][3],
    })
}
