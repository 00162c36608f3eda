//! Quantum discord of two-qubit states with projective measurements on the
//! second qubit.
//!
//! Writing `ρ = ¼(I + r·σ ⊗ I + I ⊗ s·σ + Σ Tᵢⱼ σᵢ ⊗ σⱼ)`, a measurement along
//! the unit vector `n` on qubit B yields outcome ± with probability
//! `(1 ± s·n)/2` and leaves qubit A with Bloch vector `(r ± T n)/(1 ± s·n)`.
//! Discord is `S(B) − S(AB) + min_n Σ p± S(A|±)`.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::optimize::{golden_max, golden_min};
use crate::quadrature::QuadratureSpec;
use crate::quantum::{binary_entropy, pauli_pair, reconstruct_two_site, reduce, von_neumann_entropy, Density};
use crate::scalar::Real;
use crate::tfim::thermal_correlators;

/// Entries outside the X pattern must be below this magnitude.
pub const X_PATTERN_TOL: f64 = 1e-12;

pub const MIN_ANGLE_GRID: usize = 181;

/// Largest disagreement tolerated between the reduced optimization and the
/// angle-grid search before the latter is trusted instead.
pub const CROSS_CHECK_TOL: f64 = 1e-6;

/// Temperatures accepted by [`discord_max_locus`].
pub const MAX_LOCUS_KBT: f64 = 0.7;

/// A two-qubit state whose only nonzero entries lie on the diagonal and the
/// anti-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct XState<T> {
    rho: Density<T>,
}

impl<T: Real> XState<T> {
    pub fn new(rho: Density<T>) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::Dimension(format!("X state of dimension {}", rho.dim())));
        }
        let tol = T::tol(X_PATTERN_TOL);
        for i in 0..4 {
            for j in 0..4 {
                if i != j && i + j != 3 && rho.entry(i, j).norm() > tol {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({i}, {j}) = {} breaks the X pattern",
                        rho.entry(i, j)
                    )));
                }
            }
        }
        Ok(Self { rho })
    }

    /// Builds the state from its diagonal and the two upper anti-diagonal
    /// entries ρ₀₃ and ρ₁₂.
    pub fn from_entries(diag: [T; 4], r03: Complex<T>, r12: Complex<T>) -> Result<Self> {
        let mut m = crate::linalg::CMatrix::from_real_diagonal(&diag);
        m[(0, 3)] = r03;
        m[(3, 0)] = r03.conj();
        m[(1, 2)] = r12;
        m[(2, 1)] = r12.conj();
        Self::new(Density::new(m)?)
    }

    pub fn state(&self) -> &Density<T> {
        &self.rho
    }

    pub fn into_state(self) -> Density<T> {
        self.rho
    }
}

/// Bloch data `(r, s, T)` of a two-qubit state.
#[derive(Debug, Clone, Copy)]
struct Bloch<T> {
    r: [T; 3],
    s: [T; 3],
    t: [[T; 3]; 3],
}

impl<T: Real> Bloch<T> {
    fn of(rho: &Density<T>) -> Result<Self> {
        let mut b = Bloch {
            r: [T::zero(); 3],
            s: [T::zero(); 3],
            t: [[T::zero(); 3]; 3],
        };
        for i in 0..3 {
            b.r[i] = rho.expectation(&pauli_pair(i + 1, 0))?;
            b.s[i] = rho.expectation(&pauli_pair(0, i + 1))?;
            for j in 0..3 {
                b.t[i][j] = rho.expectation(&pauli_pair(i + 1, j + 1))?;
            }
        }
        Ok(b)
    }

    /// Σ p± S(A|±) for a measurement along `n`.
    fn conditional_entropy(&self, n: [T; 3]) -> T {
        let sn = self.s[0] * n[0] + self.s[1] * n[1] + self.s[2] * n[2];
        let tn: [T; 3] = std::array::from_fn(|i| self.t[i][0] * n[0] + self.t[i][1] * n[1] + self.t[i][2] * n[2]);
        let half = T::lit(0.5);
        let mut total = T::zero();
        for sign in [T::one(), -T::one()] {
            let weight = T::one() + sign * sn;
            let p = weight * half;
            if p <= T::zero() {
                continue;
            }
            // |r ± T n| / (1 ± s·n), capped at the Bloch sphere
            let v: [T; 3] = std::array::from_fn(|i| self.r[i] + sign * tn[i]);
            let len = ((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() / weight).min(T::one());
            total = total + p * binary_entropy((T::one() + len) * half);
        }
        total
    }
}

fn direction<T: Real>(theta: T, phi: T) -> [T; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

fn discord_from<T: Real>(rho: &Density<T>, min_conditional: T) -> Result<T> {
    let sb = von_neumann_entropy(&reduce(rho, 2, &[1])?)?;
    let sab = von_neumann_entropy(rho)?;
    Ok((sb - sab + min_conditional).max(T::zero()))
}

/// Discord of an X state by the exact one-angle reduction.
///
/// For X states `s` and `r` point along z and `T` splits into an in-plane
/// 2×2 block plus `T_zz`. The azimuth enters only through `|M u|` with `M`
/// the in-plane block, which is maximal at the top singular value, so only
/// the polar angle remains to optimize.
pub fn discord_analytic<T: Real>(x: &XState<T>) -> Result<T> {
    let b = Bloch::of(&x.rho)?;
    let sigma = top_singular_value_2x2(b.t[0][0], b.t[0][1], b.t[1][0], b.t[1][1]);
    let (r3, s3, t33) = (b.r[2], b.s[2], b.t[2][2]);
    let half = T::lit(0.5);
    let cond = |c: f64| -> Result<f64> {
        let c = T::lit(c.clamp(0.0, 1.0));
        let sin = (T::one() - c * c).max(T::zero()).sqrt();
        let mut total = T::zero();
        for sign in [T::one(), -T::one()] {
            let weight = T::one() + sign * s3 * c;
            if weight <= T::zero() {
                continue;
            }
            let along = r3 + sign * t33 * c;
            let across = sigma * sin;
            let len = ((along * along + across * across).sqrt() / weight).min(T::one());
            total = total + weight * half * binary_entropy((T::one() + len) * half);
        }
        Ok(total.to_f64_lossy())
    };

    // dense scan, then golden-section inside the best bracket
    const SCAN: usize = 256;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..=SCAN {
        let v = cond(i as f64 / SCAN as f64)?;
        if v < best.1 {
            best = (i, v);
        }
    }
    let lo = best.0.saturating_sub(1) as f64 / SCAN as f64;
    let hi = (best.0 + 1).min(SCAN) as f64 / SCAN as f64;
    let (_, refined) = golden_min(cond, lo, hi, 1e-12)?;
    discord_from(&x.rho, T::lit(refined.min(best.1)))
}

fn top_singular_value_2x2<T: Real>(a: T, b: T, c: T, d: T) -> T {
    // σ_max² is the larger eigenvalue of MᵀM
    let p = a * a + c * c;
    let q = b * b + d * d;
    let r = a * b + c * d;
    let half = T::lit(0.5);
    let mean = (p + q) * half;
    let dev = (((p - q) * half).powi(2) + r * r).sqrt();
    (mean + dev).max(T::zero()).sqrt()
}

/// Discord of any two-qubit state by direct search over measurement axes.
///
/// A `grid_n × grid_n` grid over θ ∈ [0, π], φ ∈ [0, π) covers every axis up
/// to sign; the best few cells are then polished by a compass search.
pub fn discord_bruteforce<T: Real>(rho: &Density<T>, grid_n: usize) -> Result<T> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(format!(
            "discord needs a two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    if grid_n < MIN_ANGLE_GRID {
        return Err(Error::InvalidParameter(format!(
            "angle grid must have at least {MIN_ANGLE_GRID} points, got {grid_n}"
        )));
    }
    let b = Bloch::of(rho)?;
    let pi = std::f64::consts::PI;
    let dtheta = pi / (grid_n - 1) as f64;
    let dphi = pi / grid_n as f64;
    let eval = |theta: f64, phi: f64| {
        b.conditional_entropy(direction(T::lit(theta), T::lit(phi)))
            .to_f64_lossy()
    };

    let mut cells: Vec<(f64, f64, f64)> = Vec::with_capacity(grid_n * grid_n);
    for i in 0..grid_n {
        let theta = i as f64 * dtheta;
        for j in 0..grid_n {
            let phi = j as f64 * dphi;
            cells.push((eval(theta, phi), theta, phi));
        }
    }
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));
    let best = cells
        .iter()
        .take(4)
        .map(|&(v, theta, phi)| compass_min(eval, (theta, phi), v, dtheta.max(dphi)))
        .fold(f64::INFINITY, f64::min);
    discord_from(rho, T::lit(best))
}

fn compass_min(f: impl Fn(f64, f64) -> f64, start: (f64, f64), f0: f64, step: f64) -> f64 {
    let (mut x, mut y, mut best) = (start.0, start.1, f0);
    let mut h = step;
    while h > 1e-10 {
        let mut moved = false;
        for (dx, dy) in [
            (h, 0.0),
            (-h, 0.0),
            (0.0, h),
            (0.0, -h),
            (h, h),
            (-h, -h),
            (h, -h),
            (-h, h),
        ] {
            let v = f(x + dx, y + dy);
            if v < best {
                best = v;
                x += dx;
                y += dy;
                moved = true;
                break;
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    best
}

/// Discord of an X state, cross-checked against a coarse angle search.
///
/// The reduced optimization is exact, so the fallback only fires if it has
/// been handed a state it cannot represent.
pub fn discord<T: Real>(x: &XState<T>) -> Result<T> {
    let fast = discord_analytic(x)?;
    let slow = discord_bruteforce(&x.rho, MIN_ANGLE_GRID)?;
    if (fast - slow).abs() > T::tol(CROSS_CHECK_TOL) {
        Ok(slow)
    } else {
        Ok(fast)
    }
}

/// Exchanges the two qubits.
pub fn swap_parties<T: Real>(rho: &Density<T>) -> Result<Density<T>> {
    let perm = [0usize, 2, 1, 3];
    let m = crate::linalg::CMatrix::from_fn(4, |i, j| rho.entry(perm[i], perm[j]));
    Density::new(m)
}

/// Hadamard on both qubits: exchanges σˣ and σᶻ on each site.
pub fn hadamard_both<T: Real>(rho: &Density<T>) -> Result<Density<T>> {
    let h = T::FRAC_1_SQRT_2();
    let one = crate::linalg::CMatrix::from_fn(2, |i, j| Complex::new(if i == 1 && j == 1 { -h } else { h }, T::zero()));
    rho.conjugate(&one.kron(&one))
}

/// Nearest-neighbour Gibbs state of the Ising chain written as an X state
/// (σˣ and σᶻ exchanged on both sites).
pub fn ising_thermal_state(lambda: f64, kbt: f64, spec: &QuadratureSpec) -> Result<XState<f64>> {
    let obs = thermal_correlators(lambda, kbt, spec)?;
    XState::new(reconstruct_two_site(&obs.swapped_table())?)
}

pub fn ising_thermal_discord(lambda: f64, kbt: f64, spec: &QuadratureSpec) -> Result<f64> {
    discord(&ising_thermal_state(lambda, kbt, spec)?)
}

/// Location of the discord maximum at one temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscordPeak {
    pub kbt: f64,
    pub lambda: f64,
    pub discord: f64,
    /// Several grid points shared the maximal value; the smallest λ is kept.
    pub tie: bool,
    /// The maximum sits on the edge of the λ window.
    pub out_of_range: bool,
}

/// λ window and grid used by [`discord_max_locus`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct LocusGrid {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub step: f64,
    pub refine_tol: f64,
}

impl Default for LocusGrid {
    fn default() -> Self {
        Self {
            lambda_min: 0.0,
            lambda_max: 2.0,
            step: 0.01,
            refine_tol: 1e-5,
        }
    }
}

impl LocusGrid {
    fn nodes(&self) -> Result<Vec<f64>> {
        if !(self.lambda_min < self.lambda_max && self.step > 0.0 && self.refine_tol > 0.0) {
            return Err(Error::InvalidParameter(format!("invalid locus grid {self:?}")));
        }
        let n = ((self.lambda_max - self.lambda_min) / self.step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| self.lambda_min + i as f64 * self.step).collect())
    }
}

/// Argmax of `f` over the grid with golden-section polishing between the
/// neighbouring nodes. Ties within `1e-12` go to the smallest abscissa.
pub fn peak_on_grid<F>(f: F, nodes: &[f64], refine_tol: f64) -> Result<(f64, f64, bool, bool)>
where
    F: Fn(f64) -> Result<f64>,
{
    if nodes.len() < 3 {
        return Err(Error::InvalidParameter("need at least three grid nodes".into()));
    }
    let values = nodes.iter().map(|&x| f(x)).collect::<Result<Vec<_>>>()?;
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tie_tol = 1e-12 * max.abs().max(1.0);
    let hits: Vec<usize> = (0..values.len()).filter(|&i| max - values[i] <= tie_tol).collect();
    let i = hits[0];
    let tie = hits.len() > 1;
    let last = nodes.len() - 1;
    let out_of_range = i == 0 || i == last;
    if tie || out_of_range {
        return Ok((nodes[i], values[i], tie, out_of_range));
    }
    let (x, v) = golden_max(&f, nodes[i - 1], nodes[i + 1], refine_tol)?;
    Ok(if v >= values[i] {
        (x, v, false, false)
    } else {
        (nodes[i], values[i], false, false)
    })
}

/// Per-temperature λ of maximal discord.
pub fn discord_max_locus(kbts: &[f64], grid: &LocusGrid, spec: &QuadratureSpec) -> Result<Vec<DiscordPeak>> {
    use rayon::prelude::*;
    if let Some(&bad) = kbts.iter().find(|&&t| !(t > 0.0 && t <= MAX_LOCUS_KBT)) {
        return Err(Error::InvalidParameter(format!(
            "locus temperatures must lie in (0, {MAX_LOCUS_KBT}], got {bad}"
        )));
    }
    let nodes = grid.nodes()?;
    kbts.par_iter()
        .map(|&kbt| {
            let (lambda, discord, tie, out_of_range) = peak_on_grid(
                |l| {
                    ising_thermal_discord(l, kbt, spec).map_err(|e| Error::AtPoint {
                        param: l,
                        message: e.to_string(),
                    })
                },
                &nodes,
                grid.refine_tol,
            )?;
            Ok(DiscordPeak {
                kbt,
                lambda,
                discord,
                tie,
                out_of_range,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn bell_state_is_one_bit() {
        let x = XState::from_entries([0.5, 0.0, 0.0, 0.5], c(0.5), c(0.0)).unwrap();
        assert_abs_diff_eq!(discord_analytic(&x).unwrap(), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(discord_bruteforce(x.state(), 721).unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn uncorrelated_states_have_none() {
        let mixed = XState::<f64>::new(Density::maximally_mixed(4)).unwrap();
        assert_abs_diff_eq!(discord_analytic(&mixed).unwrap(), 0.0, epsilon = 1e-12);
        // diag(0.7, 0.3) ⊗ diag(0.6, 0.4)
        let product = XState::from_entries([0.42, 0.28, 0.18, 0.12], c(0.0), c(0.0)).unwrap();
        assert_abs_diff_eq!(discord_analytic(&product).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(discord_bruteforce(product.state(), 181).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn x_pattern_is_enforced() {
        let mut m = crate::linalg::CMatrix::<f64>::from_real_diagonal(&[0.25; 4]);
        m[(0, 1)] = c(0.1);
        m[(1, 0)] = c(0.1);
        assert!(XState::new(Density::new(m).unwrap()).is_err());
    }

    #[test]
    fn hot_ising_state_has_no_discord() {
        let d = ising_thermal_discord(0.8, 1e3, &QuadratureSpec::default()).unwrap();
        assert!(d < 1e-3, "{d}");
    }

    #[test]
    fn locus_rejects_hot_temperatures() {
        assert!(discord_max_locus(&[0.8], &LocusGrid::default(), &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn grid_peak_flags() {
        let nodes: Vec<f64> = (0..=20).map(|i| i as f64 * 0.1).collect();
        let (x, _, tie, edge) = peak_on_grid(|_| Ok(1.0), &nodes, 1e-6).unwrap();
        assert_eq!((x, tie, edge), (0.0, true, true));
        let (x, _, tie, edge) = peak_on_grid(Ok, &nodes, 1e-6).unwrap();
        assert_eq!((tie, edge), (false, true));
        assert_abs_diff_eq!(x, 2.0, epsilon = 1e-12);
        let (x, _, tie, edge) = peak_on_grid(|l| Ok(-(l - 1.234).powi(2)), &nodes, 1e-7).unwrap();
        assert!(!tie && !edge);
        assert_abs_diff_eq!(x, 1.234, epsilon = 1e-6);
    }
}
