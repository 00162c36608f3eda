//! Pauli algebra, density matrices, von Neumann entropy and the relative-entropy
//! coherence measure.
//!
//! All coherence values are computed in the fixed computational basis (the
//! product eigenbasis of σᶻ) and reported in bits.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, hermitian_eigenvalues, CMatrix};
use crate::scalar::Real;

/// Entries may be asymmetric by this much before construction is refused;
/// smaller defects are symmetrized away.
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues down to `-PSD_TOL` are treated as zero.
pub const PSD_TOL: f64 = 1e-10;
/// Threshold below which a Pauli reconstruction is declared unphysical.
pub const RECONSTRUCTION_PSD_TOL: f64 = 1e-8;
pub const BLOCH_TOL: f64 = 1e-10;

fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// σ⁰ = I, σ¹ = σˣ, σ² = σʸ, σ³ = σᶻ.
pub fn pauli<T: Real>(alpha: usize) -> CMatrix<T> {
    let entries = match alpha {
        0 => [(1., 0.), (0., 0.), (0., 0.), (1., 0.)],
        1 => [(0., 0.), (1., 0.), (1., 0.), (0., 0.)],
        2 => [(0., 0.), (0., -1.), (0., 1.), (0., 0.)],
        3 => [(1., 0.), (0., 0.), (0., 0.), (-1., 0.)],
        _ => panic!("Pauli index {alpha} out of range"),
    };
    CMatrix::from_vec(2, entries.iter().map(|&(r, i)| cplx(r, i)).collect()).expect("2x2")
}

/// σᵅ ⊗ σᵝ.
pub fn pauli_pair<T: Real>(alpha: usize, beta: usize) -> CMatrix<T> {
    pauli::<T>(alpha).kron(&pauli(beta))
}

/// Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Density<T> {
    matrix: CMatrix<T>,
}

impl<T: Real> Density<T> {
    /// Validates and wraps `matrix`.
    pub fn new(matrix: CMatrix<T>) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > T::tol(HERMITIAN_TOL) {
            return Err(Error::NotHermitian {
                asymmetry: defect.to_f64_lossy(),
            });
        }
        let matrix = matrix.hermitian_part();
        let trace = matrix.trace().re;
        if (trace - T::one()).abs() > T::tol(TRACE_TOL) {
            return Err(Error::TraceNotUnit {
                trace: trace.to_f64_lossy(),
            });
        }
        let min = hermitian_eigenvalues(&matrix)?[0];
        if min < -T::tol(PSD_TOL) {
            return Err(Error::NotPositive {
                min_eigenvalue: min.to_f64_lossy(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let p = T::one() / T::from_usize(dim).expect("dimension");
        Self {
            matrix: CMatrix::from_real_diagonal(&vec![p; dim]),
        }
    }

    /// |ψ⟩⟨ψ| for a (not necessarily normalized) vector.
    pub fn pure(psi: &[Complex<T>]) -> Result<Self> {
        let norm: T = psi.iter().fold(T::zero(), |s, z| s + z.norm_sqr());
        if norm <= T::zero() {
            return Err(Error::InvalidParameter("zero state vector".into()));
        }
        let m = CMatrix::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj() / norm);
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.matrix[(i, j)]
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        hermitian_eigenvalues(&self.matrix)
    }

    /// tr(ρ O).
    pub fn expectation(&self, op: &CMatrix<T>) -> Result<T> {
        if op.dim() != self.dim() {
            return Err(Error::Dimension(format!(
                "operator {} vs state {}",
                op.dim(),
                self.dim()
            )));
        }
        let n = self.dim();
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..n {
            for j in 0..n {
                acc = acc + self.matrix[(i, j)] * op[(j, i)];
            }
        }
        Ok(acc.re)
    }

    /// U ρ U†.
    pub fn conjugate(&self, unitary: &CMatrix<T>) -> Result<Self> {
        Self::new(unitary.matmul(&self.matrix).matmul(&unitary.adjoint()))
    }

    /// Largest absolute off-diagonal entry.
    pub fn max_off_diagonal(&self) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    worst = worst.max(self.matrix[(i, j)].norm());
                }
            }
        }
        worst
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            matrix: self.matrix.kron(&other.matrix),
        }
    }
}

/// One-site Pauli expectations ⟨σˣ⟩, ⟨σʸ⟩, ⟨σᶻ⟩ (⟨σ⁰⟩ = 1 implicitly).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OneSiteExpectations<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> OneSiteExpectations<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn from_state(rho: &Density<T>) -> Result<Self> {
        Ok(Self {
            x: rho.expectation(&pauli(1))?,
            y: rho.expectation(&pauli(2))?,
            z: rho.expectation(&pauli(3))?,
        })
    }
}

/// Two-site table c[α][β] = ⟨σᵅ ⊗ σᵝ⟩ with c[0][0] = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSiteExpectations<T> {
    pub c: [[T; 4]; 4],
}

impl<T: Real> Default for TwoSiteExpectations<T> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<T: Real> TwoSiteExpectations<T> {
    /// Only c[0][0] = 1 set: the maximally mixed two-qubit state.
    pub fn identity() -> Self {
        let mut c = [[T::zero(); 4]; 4];
        c[0][0] = T::one();
        Self { c }
    }

    pub fn with(mut self, alpha: usize, beta: usize, value: T) -> Self {
        self.c[alpha][beta] = value;
        self
    }

    pub fn from_state(rho: &Density<T>) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::Dimension(format!("two-site state of dimension {}", rho.dim())));
        }
        let mut c = [[T::zero(); 4]; 4];
        for (a, row) in c.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = rho.expectation(&pauli_pair(a, b))?;
            }
        }
        Ok(Self { c })
    }
}

/// ρ₁ = (I + x σˣ + y σʸ + z σᶻ)/2.
pub fn reconstruct_one_site<T: Real>(e: &OneSiteExpectations<T>) -> Result<Density<T>> {
    let norm = e.norm();
    if !norm.is_finite() || norm > T::one() + T::tol(BLOCH_TOL) {
        return Err(Error::OutsideBlochBall {
            norm: norm.to_f64_lossy(),
        });
    }
    let half = T::lit(0.5);
    let m = pauli::<T>(0)
        .add(&pauli(1).scale(e.x))
        .add(&pauli(2).scale(e.y))
        .add(&pauli(3).scale(e.z))
        .scale(half);
    clip_into_density(m, T::tol(BLOCH_TOL))
}

/// ρ₂ = Σ_{αβ} c[α][β] σᵅ⊗σᵝ / 4.
///
/// Fails with [`Error::Unphysical`] when the reconstruction has an eigenvalue
/// below −1e-8. Smaller negative excursions are clipped and the spectrum is
/// renormalized.
pub fn reconstruct_two_site<T: Real>(e: &TwoSiteExpectations<T>) -> Result<Density<T>> {
    if (e.c[0][0] - T::one()).abs() > T::tol(TRACE_TOL) {
        return Err(Error::InvalidParameter(format!(
            "identity coefficient must be 1, got {}",
            e.c[0][0]
        )));
    }
    if e.c.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("non-finite coefficient".into()));
    }
    let mut m = CMatrix::zeros(4);
    for a in 0..4 {
        for b in 0..4 {
            if e.c[a][b] != T::zero() {
                m = m.add(&pauli_pair(a, b).scale(e.c[a][b]));
            }
        }
    }
    clip_into_density(m.scale(T::lit(0.25)), T::tol(RECONSTRUCTION_PSD_TOL))
}

fn clip_into_density<T: Real>(m: CMatrix<T>, tol: T) -> Result<Density<T>> {
    let eig = hermitian_eigen(&m)?;
    let min = eig.values[0];
    if min < -tol {
        return Err(Error::Unphysical {
            min_eigenvalue: min.to_f64_lossy(),
        });
    }
    if min >= -T::tol(PSD_TOL) {
        return Density::new(m);
    }
    let clipped: Vec<T> = eig.values.iter().map(|&v| v.max(T::zero())).collect();
    let total = clipped.iter().fold(T::zero(), |s, &v| s + v);
    let scaled: Vec<T> = clipped.iter().map(|&v| v / total).collect();
    let d = CMatrix::from_real_diagonal(&scaled);
    Density::new(eig.vectors.matmul(&d).matmul(&eig.vectors.adjoint()))
}

/// −Σ pᵢ log₂ pᵢ over a probability vector, with 0 log 0 = 0.
///
/// Entries in [−1e-10, 0) are clipped and the vector renormalized.
pub fn shannon_entropy_bits<T: Real>(probs: &[T]) -> Result<T> {
    let floor = -T::tol(PSD_TOL);
    if let Some(&bad) = probs.iter().find(|&&p| p < floor || !p.is_finite()) {
        return Err(Error::NotPositive {
            min_eigenvalue: bad.to_f64_lossy(),
        });
    }
    let clipped: Vec<T> = probs.iter().map(|&p| p.max(T::zero())).collect();
    let total = clipped.iter().fold(T::zero(), |s, &p| s + p);
    if total <= T::zero() {
        return Err(Error::TraceNotUnit { trace: 0.0 });
    }
    let s = clipped.iter().fold(T::zero(), |s, &p| {
        let q = p / total;
        if q > T::zero() {
            s - q * q.log2()
        } else {
            s
        }
    });
    Ok(s.max(T::zero()))
}

/// Binary entropy H₂(p) in bits.
pub fn binary_entropy<T: Real>(p: T) -> T {
    let q = T::one() - p;
    let term = |x: T| if x > T::zero() { -x * x.log2() } else { T::zero() };
    term(p) + term(q)
}

/// S(ρ) = −tr ρ log₂ ρ.
pub fn von_neumann_entropy<T: Real>(rho: &Density<T>) -> Result<T> {
    shannon_entropy_bits(&rho.eigenvalues()?)
}

/// Removes every off-diagonal entry.
pub fn dephase<T: Real>(rho: &Density<T>) -> Density<T> {
    Density {
        matrix: CMatrix::from_real_diagonal(&rho.diagonal()),
    }
}

/// C(ρ) = S(ρ_diag) − S(ρ) in the computational basis, in bits.
pub fn coherence<T: Real>(rho: &Density<T>) -> Result<T> {
    if rho.max_off_diagonal() == T::zero() {
        return Ok(T::zero());
    }
    let s_diag = shannon_entropy_bits(&rho.diagonal())?;
    let s = von_neumann_entropy(rho)?;
    let c = s_diag - s;
    if c < -T::tol(1e-12) {
        return Err(Error::NotPositive {
            min_eigenvalue: c.to_f64_lossy(),
        });
    }
    Ok(c.max(T::zero()))
}

/// Partial trace of an `n_sites`-qubit state onto `keep` (ascending site
/// order in the output). Site 0 is the most significant bit of the index.
pub fn reduce<T: Real>(rho: &Density<T>, n_sites: usize, keep: &[usize]) -> Result<Density<T>> {
    if rho.dim() != 1usize << n_sites {
        return Err(Error::Dimension(format!(
            "state of dimension {} is not {n_sites} qubits",
            rho.dim()
        )));
    }
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.len() != keep.len() || kept.iter().any(|&s| s >= n_sites) || kept.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "bad site list {keep:?} for {n_sites} sites"
        )));
    }
    let traced: Vec<usize> = (0..n_sites).filter(|s| !kept.contains(s)).collect();
    let bit = |site: usize| n_sites - 1 - site;
    let compose = |k_bits: usize, t_bits: usize| -> usize {
        let mut idx = 0usize;
        for (pos, &s) in kept.iter().enumerate() {
            if (k_bits >> (kept.len() - 1 - pos)) & 1 == 1 {
                idx |= 1 << bit(s);
            }
        }
        for (pos, &s) in traced.iter().enumerate() {
            if (t_bits >> (traced.len() - 1 - pos)) & 1 == 1 {
                idx |= 1 << bit(s);
            }
        }
        idx
    };
    let dk = 1usize << kept.len();
    let dt = 1usize << traced.len();
    let mut out = CMatrix::zeros(dk);
    for i in 0..dk {
        for j in 0..dk {
            let mut acc = Complex::new(T::zero(), T::zero());
            for t in 0..dt {
                acc = acc + rho.matrix[(compose(i, t), compose(j, t))];
            }
            out[(i, j)] = acc;
        }
    }
    Density::new(out)
}
