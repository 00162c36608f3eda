//! Kitaev honeycomb model in the vortex-free sector: dispersion, gap and the
//! x-link spin correlator, with `J_x + J_y + J_z = 1` as the energy unit.
//!
//! The symmetric path `J_y = J_z = (1 − J_x)/2` crosses from the gapless
//! phase into the gapped phase at `J_x = 1/2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_1d, integrate_2d, QuadratureSpec};
use crate::quantum::{binary_entropy, coherence, reconstruct_two_site};
use crate::{DensityMatrix, TwoSiteExpectations};

pub const CRITICAL_JX: f64 = 0.5;

/// Tolerance floor for the Brillouin-zone integral when the spectrum is
/// gapless: the integrand is then discontinuous at the Dirac points.
pub const GAPLESS_TOL: f64 = 1e-8;

pub const MIN_GAP_GRID: usize = 64;

const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KitaevPoint {
    jx: f64,
    jy: f64,
    jz: f64,
}

impl KitaevPoint {
    pub fn new(jx: f64, jy: f64, jz: f64) -> Result<Self> {
        if [jx, jy, jz].iter().any(|j| !j.is_finite() || *j < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "couplings must be finite and non-negative, got ({jx}, {jy}, {jz})"
            )));
        }
        let sum = jx + jy + jz;
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidParameter(format!("couplings must sum to 1, got {sum}")));
        }
        Ok(Self { jx, jy, jz })
    }

    /// Point on the symmetric path `J_y = J_z = (1 − J_x)/2`.
    pub fn on_path(jx: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&jx) {
            return Err(Error::InvalidParameter(format!("path requires jx in [0, 1], got {jx}")));
        }
        let side = 0.5 * (1.0 - jx);
        Self::new(jx, side, side)
    }

    pub fn couplings(&self) -> (f64, f64, f64) {
        (self.jx, self.jy, self.jz)
    }

    /// True when the three couplings satisfy the triangle inequalities.
    pub fn is_gapless(&self) -> bool {
        let max = self.jx.max(self.jy).max(self.jz);
        max <= 1.0 - max
    }
}

/// `(ε, Δ)` at momentum `(ω_y, ω_z)`; `f = ε + iΔ`.
pub fn dispersion(p: &KitaevPoint, wy: f64, wz: f64) -> (f64, f64) {
    (
        p.jx + p.jy * wy.cos() + p.jz * wz.cos(),
        p.jy * wy.sin() + p.jz * wz.sin(),
    )
}

fn abs_f(p: &KitaevPoint, wy: f64, wz: f64) -> f64 {
    let (e, d) = dispersion(p, wy, wz);
    e.hypot(d)
}

/// Twice the minimum of `|f|` over the Brillouin zone.
///
/// A `grid_n × grid_n` scan locates the basin, then a compass search on the
/// best few cells polishes it.
pub fn gap(p: &KitaevPoint, grid_n: usize) -> Result<f64> {
    if grid_n < MIN_GAP_GRID {
        return Err(Error::InvalidParameter(format!(
            "gap grid must be >= {MIN_GAP_GRID}, got {grid_n}"
        )));
    }
    let step = 2.0 * PI / grid_n as f64;
    let node = |i: usize| -PI + i as f64 * step;
    let mut cells: Vec<(f64, f64, f64)> = Vec::with_capacity(grid_n * grid_n);
    for i in 0..=grid_n {
        for j in 0..=grid_n {
            let (y, z) = (node(i), node(j));
            cells.push((abs_f(p, y, z), y, z));
        }
    }
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));
    let best = cells
        .iter()
        .take(4)
        .map(|&(v, y, z)| compass_min(|a, b| abs_f(p, a, b), (y, z), v, step))
        .fold(f64::INFINITY, f64::min);
    Ok(2.0 * best)
}

fn compass_min(f: impl Fn(f64, f64) -> f64, start: (f64, f64), f0: f64, step: f64) -> f64 {
    let (mut y, mut z, mut best) = (start.0, start.1, f0);
    let mut h = step;
    while h > 1e-14 {
        let mut moved = false;
        for (dy, dz) in [
            (h, 0.0),
            (-h, 0.0),
            (0.0, h),
            (0.0, -h),
            (h, h),
            (-h, -h),
            (h, -h),
            (-h, h),
        ] {
            let v = f(y + dy, z + dz);
            if v < best {
                best = v;
                y += dy;
                z += dz;
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

fn link_integrand(p: &KitaevPoint, wy: f64, wz: f64) -> f64 {
    let (e, d) = dispersion(p, wy, wz);
    let norm = e.hypot(d);
    if norm == 0.0 {
        0.0
    } else {
        e / norm
    }
}

fn effective_spec(p: &KitaevPoint, spec: &QuadratureSpec) -> QuadratureSpec {
    if p.is_gapless() {
        spec.relaxed_to(GAPLESS_TOL)
    } else {
        *spec
    }
}

/// ⟨σˣσˣ⟩ on an x link: the Brillouin-zone average of `ε/|f|`.
///
/// The integrand is even under `ω → −ω`, so only half the zone is integrated.
/// At fixed `ω_y` the inner period is shifted so that the minimum of `|f|`
/// (where the integrand may jump) sits on the endpoints, out of reach of the
/// rule's blind spot near panel edges.
pub fn xx_link_correlator(p: &KitaevPoint, spec: &QuadratureSpec) -> Result<f64> {
    let eff = effective_spec(p, spec);
    let area = 2.0 * PI * PI;
    let scaled = QuadratureSpec {
        abs_tol: eff.abs_tol * area,
        ..eff
    };
    let integrand = |y: f64, s: f64| {
        let a = Complex64::new(p.jx, 0.0) + Complex64::from_polar(p.jy, y);
        // |f| is smallest at ω_z = arg A + π, i.e. s = ±π
        link_integrand(p, y, a.arg() + s)
    };
    let r = integrate_2d(integrand, (0.0, PI), (-PI, PI), &scaled)?;
    Ok((r.value / area).clamp(-1.0, 1.0))
}

/// Same correlator with the inner momentum integral reduced to one dimension.
///
/// Writing `f = A + J_z e^{iω_z}` with `A = J_x + J_y e^{iω_y}`, the inner
/// average of `Re f/|f|` is `cos(arg A)` times an integral over a single
/// angle with amplitudes `|A|` and `J_z`.
pub fn xx_link_correlator_reduced(p: &KitaevPoint, spec: &QuadratureSpec) -> Result<f64> {
    let eff = effective_spec(p, spec);
    let jz = p.jz;
    let inner = |wy: f64| -> Result<f64> {
        let a = Complex64::new(p.jx, 0.0) + Complex64::from_polar(p.jy, wy);
        let amp = a.norm();
        if amp == 0.0 {
            return Ok(0.0);
        }
        let cos_arg = a.re / amp;
        let r = integrate_1d(
            |t: f64| {
                let num = amp + jz * t.cos();
                let den = (amp * amp + jz * jz + 2.0 * amp * jz * t.cos()).max(0.0).sqrt();
                if den == 0.0 {
                    0.0
                } else {
                    num / den
                }
            },
            0.0,
            PI,
            &QuadratureSpec {
                abs_tol: 0.1 * eff.abs_tol,
                ..eff
            },
        )?;
        Ok(cos_arg * r.value / PI)
    };
    let r = crate::quadrature::integrate_1d_with(inner, 0.0, PI, &eff)?;
    Ok((r.value / PI).clamp(-1.0, 1.0))
}

/// Two-site table of an x link: only ⟨σˣσˣ⟩ survives in the vortex-free sector.
pub fn x_link_expectations(p: &KitaevPoint, spec: &QuadratureSpec) -> Result<TwoSiteExpectations> {
    Ok(TwoSiteExpectations::identity().with(1, 1, xx_link_correlator(p, spec)?))
}

pub fn x_link_state(p: &KitaevPoint, spec: &QuadratureSpec) -> Result<DensityMatrix> {
    reconstruct_two_site(&x_link_expectations(p, spec)?)
}

pub fn kitaev_coherence(p: &KitaevPoint, spec: &QuadratureSpec) -> Result<f64> {
    coherence(&x_link_state(p, spec)?)
}

/// Coherence of the x-link state for a given correlator `g`: the spectrum is
/// `(1 ± g)/4`, each twice, so `C = 1 − H₂((1 + g)/2)`.
pub fn closed_form_coherence(g: f64) -> f64 {
    1.0 - binary_entropy(0.5 * (1.0 + g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn dispersion_examples() {
        let p = KitaevPoint::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(dispersion(&p, 0.3, -2.0), (1.0, 0.0));
        let q = KitaevPoint::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
        let (e, d) = dispersion(&q, 0.0, 0.0);
        assert_abs_diff_eq!(e, 1.0, epsilon = 1e-15);
        assert_eq!(d, 0.0);
        let c = KitaevPoint::on_path(0.5).unwrap();
        let (e, d) = dispersion(&c, PI, PI);
        assert_abs_diff_eq!(e, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn point_validation() {
        assert!(KitaevPoint::new(0.5, 0.5, 0.1).is_err());
        assert!(KitaevPoint::new(1.2, -0.1, -0.1).is_err());
        assert!(KitaevPoint::on_path(1.5).is_err());
        assert!(KitaevPoint::on_path(0.3).unwrap().is_gapless());
        assert!(!KitaevPoint::on_path(0.7).unwrap().is_gapless());
    }

    #[test]
    fn gap_examples() {
        assert_abs_diff_eq!(
            gap(&KitaevPoint::on_path(0.75).unwrap(), 256).unwrap(),
            1.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            gap(&KitaevPoint::on_path(1.0).unwrap(), 256).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        for jx in [0.1, 0.3, 0.5] {
            assert!(gap(&KitaevPoint::on_path(jx).unwrap(), 256).unwrap() < 1e-6);
        }
        assert!(gap(&KitaevPoint::on_path(0.3).unwrap(), 32).is_err());
    }

    #[test]
    fn saturated_link() {
        let p = KitaevPoint::on_path(1.0).unwrap();
        assert_abs_diff_eq!(xx_link_correlator(&p, &spec()).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(kitaev_coherence(&p, &spec()).unwrap(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn reduced_form_agrees() {
        for jx in [0.0, 0.2, 1.0 / 3.0, 0.5, 0.75] {
            let p = KitaevPoint::on_path(jx).unwrap();
            let full = xx_link_correlator(&p, &spec()).unwrap();
            let reduced = xx_link_correlator_reduced(&p, &spec()).unwrap();
            assert_abs_diff_eq!(full, reduced, epsilon = 1e-8);
        }
    }

    #[test]
    fn coherence_matches_closed_form() {
        for jx in [0.0, 1.0 / 3.0, 0.6] {
            let p = KitaevPoint::on_path(jx).unwrap();
            let g = xx_link_correlator(&p, &spec()).unwrap();
            assert_abs_diff_eq!(
                kitaev_coherence(&p, &spec()).unwrap(),
                closed_form_coherence(g),
                epsilon = 1e-9
            );
        }
    }
}
