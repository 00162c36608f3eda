#![allow(dead_code)]

use cohprobe::discord::XState;
use cohprobe::linalg::CMatrix;
use cohprobe::quantum::{Density, HERMITIAN_TOL, PSD_TOL, TRACE_TOL};
use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, Gamma};

/// X state with a flat-Dirichlet diagonal and anti-diagonal entries drawn
/// uniformly inside the positivity disc.
pub fn random_x_state<R: Rng>(rng: &mut R) -> XState<f64> {
    let gamma = Gamma::new(1.0, 1.0).unwrap();
    let mut d: [f64; 4] = std::array::from_fn(|_| gamma.sample(rng));
    let total: f64 = d.iter().sum();
    d.iter_mut().for_each(|x| *x /= total);
    let tau = std::f64::consts::TAU;
    let r03 = Complex::from_polar(
        (d[0] * d[3]).sqrt() * rng.random::<f64>().sqrt(),
        tau * rng.random::<f64>(),
    );
    let r12 = Complex::from_polar(
        (d[1] * d[2]).sqrt() * rng.random::<f64>().sqrt(),
        tau * rng.random::<f64>(),
    );
    XState::from_entries(d, r03, r12).unwrap()
}

/// Mixture of random pure states with random weights.
pub fn random_density<R: Rng>(rng: &mut R, dim: usize, rank: usize) -> Density<f64> {
    let normal = rand_distr::StandardNormal;
    let mut m = CMatrix::zeros(dim);
    let mut weights: Vec<f64> = (0..rank).map(|_| rng.random::<f64>()).collect();
    let wsum: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= wsum);
    for w in weights {
        let v: Vec<Complex<f64>> = (0..dim)
            .map(|_| Complex::new(normal.sample(rng), normal.sample(rng)))
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi: Vec<Complex<f64>> = v.iter().map(|z| z / norm).collect();
        let proj = Density::pure(&psi).unwrap().matrix().scale(w);
        m = m.add(&proj);
    }
    Density::new(m.hermitian_part()).unwrap()
}

/// Checks the three defining properties of a density matrix directly.
pub fn assert_valid_state(rho: &Density<f64>, what: &str) {
    let m = rho.matrix();
    assert!(m.hermitian_defect() <= HERMITIAN_TOL, "{what}: not Hermitian");
    assert!((m.trace().re - 1.0).abs() <= TRACE_TOL, "{what}: trace {}", m.trace());
    let min = rho.eigenvalues().unwrap()[0];
    assert!(min >= -PSD_TOL, "{what}: eigenvalue {min}");
}
