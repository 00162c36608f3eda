//! Finite-difference susceptibility χ = ∂C/∂λ, parameter sweeps, extremum
//! localization and the two-segment crossover fit.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kitaev::{kitaev_coherence, KitaevPoint};
use crate::optimize::golden_max;
use crate::quadrature::QuadratureSpec;
use crate::tfim::{one_site_coherence, TfimPoint};
use crate::xx::{xx_coherence, XxPoint, YyTreatment};

pub const DEFAULT_DIFF_STEP: f64 = 1e-4;

/// Growth factor of |χ| under halving of the difference step above which a
/// non-analytic point is suspected.
pub const SINGULAR_GROWTH: f64 = 5.0;

pub const LOCATE_TOL: f64 = 1e-5;

/// Symmetric difference quotient `(f(x+h) − f(x−h)) / 2h`.
pub fn central_difference<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    check_step(h)?;
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}

/// Richardson combination of central differences at `h` and `h/2`, O(h⁴).
pub fn richardson_difference<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let coarse = central_difference(&mut f, x, h)?;
    let fine = central_difference(&mut f, x, 0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Second-order one-sided difference; `h < 0` looks to the left.
pub fn one_sided_difference<F>(mut f: F, x: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    check_step(h.abs())?;
    Ok((-3.0 * f(x)? + 4.0 * f(x + h)? - f(x + 2.0 * h)?) / (2.0 * h))
}

fn check_step(h: f64) -> Result<()> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "difference step must be positive, got {h}"
        )))
    }
}

/// Parameter grid and differentiation settings of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub param_min: f64,
    pub param_max: f64,
    pub step: f64,
    pub diff_step: f64,
    /// Use Richardson extrapolation for χ.
    pub refine: bool,
}

impl SweepSpec {
    pub fn new(param_min: f64, param_max: f64, step: f64) -> Result<Self> {
        let spec = Self {
            param_min,
            param_max,
            step,
            diff_step: DEFAULT_DIFF_STEP.min(step),
            refine: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_diff_step(mut self, diff_step: f64) -> Result<Self> {
        self.diff_step = diff_step;
        self.validate()?;
        Ok(self)
    }

    pub fn refined(mut self, refine: bool) -> Self {
        self.refine = refine;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.param_min, self.param_max, self.step, self.diff_step]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.param_min >= self.param_max {
            return Err(Error::InvalidParameter(format!(
                "sweep needs finite param_min < param_max, got [{}, {}]",
                self.param_min, self.param_max
            )));
        }
        if !(self.step > 0.0 && self.diff_step > 0.0 && self.diff_step <= self.step) {
            return Err(Error::InvalidParameter(format!(
                "sweep needs 0 < diff_step <= step, got step {} and diff_step {}",
                self.step, self.diff_step
            )));
        }
        Ok(())
    }

    /// Grid nodes `param_min + i·step`, including `param_max` when it lands
    /// on the grid up to rounding.
    pub fn nodes(&self) -> Vec<f64> {
        let span = (self.param_max - self.param_min) / self.step;
        let n = (span + 1e-9).floor() as usize;
        (0..=n).map(|i| self.param_min + i as f64 * self.step).collect()
    }
}

/// One-parameter family of states whose coherence is swept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelFamily {
    /// One-site, symmetry-broken ground state, λ = J/B.
    TfimSymmetryBroken,
    /// One-site, thermal ground state, λ = J/B.
    TfimThermalGround,
    /// One-site Gibbs state, λ = field in units of the coupling.
    TfimGibbs { kbt: f64 },
    /// Nearest-neighbour pair, λ = field.
    Xx { yy: YyTreatment },
    /// x link on the symmetric path, parameter J_x.
    KitaevPath,
}

impl ModelFamily {
    pub fn name(&self) -> &'static str {
        match self {
            Self::TfimSymmetryBroken => "tfim-symmetry-broken",
            Self::TfimThermalGround => "tfim-thermal-ground",
            Self::TfimGibbs { .. } => "tfim-gibbs",
            Self::Xx { .. } => "xx",
            Self::KitaevPath => "kitaev-path",
        }
    }

    /// Closed parameter domain.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            Self::KitaevPath => (0.0, 1.0),
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn kbt(&self) -> Option<f64> {
        match self {
            Self::TfimGibbs { kbt } => Some(*kbt),
            _ => None,
        }
    }

    pub fn coherence(&self, param: f64, quad: &QuadratureSpec) -> Result<f64> {
        match *self {
            Self::TfimSymmetryBroken => one_site_coherence(&TfimPoint::symmetry_broken(param)?, quad),
            Self::TfimThermalGround => one_site_coherence(&TfimPoint::thermal_ground(param)?, quad),
            Self::TfimGibbs { kbt } => one_site_coherence(&TfimPoint::gibbs(param, kbt)?, quad),
            Self::Xx { yy } => xx_coherence(&XxPoint::new(param)?, yy),
            Self::KitaevPath => kitaev_coherence(&KitaevPoint::on_path(param)?, quad),
        }
    }

    /// χ at `param` with difference step `h`, falling back to a one-sided
    /// stencil when the symmetric one would leave the domain.
    pub fn susceptibility(&self, param: f64, h: f64, refine: bool, quad: &QuadratureSpec) -> Result<f64> {
        let f = |x: f64| self.coherence(x, quad);
        let (lo, hi) = self.domain();
        if param - h < lo {
            one_sided_difference(f, param, h)
        } else if param + h > hi {
            one_sided_difference(f, param, -h)
        } else if refine {
            richardson_difference(f, param, h)
        } else {
            central_difference(f, param, h)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub param: f64,
    pub coherence: Option<f64>,
    pub chi: Option<f64>,
    /// Diagnostic when the model could not be evaluated here.
    pub error: Option<String>,
}

impl Sample {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SusceptibilityCurve {
    pub model: ModelFamily,
    pub spec: SweepSpec,
    pub quadrature: QuadratureSpec,
    pub samples: Vec<Sample>,
}

impl SusceptibilityCurve {
    pub fn failures(&self) -> impl Iterator<Item = &Sample> {
        self.samples.iter().filter(|s| !s.is_ok())
    }

    /// `(param, χ)` pairs of the samples that evaluated.
    pub fn chi_points(&self) -> Vec<(f64, f64)> {
        self.samples
            .iter()
            .filter_map(|s| s.chi.map(|c| (s.param, c)))
            .collect()
    }

    /// Sample with the largest |χ|; ties go to the smallest parameter.
    pub fn extremal_abs_chi(&self) -> Option<(f64, f64)> {
        self.chi_points()
            .into_iter()
            .fold(None, |best: Option<(f64, f64)>, (p, c)| match best {
                Some((_, b)) if b.abs() >= c.abs() => best,
                _ => Some((p, c)),
            })
    }
}

/// Evaluates coherence and χ on every grid node. Points are independent and
/// evaluated in parallel; the curve is assembled in grid order, so the result
/// does not depend on scheduling. A failing point is recorded and skipped.
pub fn sweep(model: ModelFamily, spec: &SweepSpec, quad: &QuadratureSpec) -> Result<SusceptibilityCurve> {
    spec.validate()?;
    quad.validate()?;
    let samples = spec
        .nodes()
        .into_par_iter()
        .map(|param| {
            let evaluated = model
                .coherence(param, quad)
                .and_then(|c| Ok((c, model.susceptibility(param, spec.diff_step, spec.refine, quad)?)));
            match evaluated {
                Ok((c, chi)) => Sample {
                    param,
                    coherence: Some(c),
                    chi: Some(chi),
                    error: None,
                },
                Err(e) => Sample {
                    param,
                    coherence: None,
                    chi: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    Ok(SusceptibilityCurve {
        model,
        spec: *spec,
        quadrature: *quad,
        samples,
    })
}

/// Behaviour of χ under halving of the difference step at the extremal sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularityReport {
    pub param: f64,
    pub chi: f64,
    pub chi_halved: f64,
    pub growth: f64,
    /// |χ| grew by at least [`SINGULAR_GROWTH`].
    pub suspected: bool,
}

pub fn singularity_report(curve: &SusceptibilityCurve, h: f64) -> Result<SingularityReport> {
    let (param, _) = curve
        .extremal_abs_chi()
        .ok_or_else(|| Error::InvalidParameter("curve has no evaluated samples".into()))?;
    let chi = curve.model.susceptibility(param, h, false, &curve.quadrature)?;
    let chi_halved = curve.model.susceptibility(param, 0.5 * h, false, &curve.quadrature)?;
    let growth = chi_halved.abs() / chi.abs();
    Ok(SingularityReport {
        param,
        chi,
        chi_halved,
        growth,
        suspected: growth >= SINGULAR_GROWTH,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiMaximum {
    pub lambda: f64,
    pub chi: f64,
    pub tie: bool,
}

/// Grid argmax of χ refined by golden-section on `chi` between the
/// neighbouring nodes, to `tol` in the parameter.
///
/// Ties within 1e-12 go to the smallest parameter and are flagged. A maximum
/// on the first or last sample is reported as [`Error::BoundaryMaximum`].
pub fn locate_maximum<F>(points: &[(f64, f64)], chi: F, tol: f64) -> Result<ChiMaximum>
where
    F: Fn(f64) -> Result<f64>,
{
    if points.len() < 5 {
        return Err(Error::InvalidParameter(format!(
            "need at least 5 samples to locate a maximum, got {}",
            points.len()
        )));
    }
    let max = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let tie_tol = 1e-12 * max.abs().max(1.0);
    let hits: Vec<usize> = (0..points.len()).filter(|&i| max - points[i].1 <= tie_tol).collect();
    let i = hits[0];
    if i == 0 || i == points.len() - 1 {
        return Err(Error::BoundaryMaximum { at: points[i].0 });
    }
    if hits.len() > 1 {
        return Ok(ChiMaximum {
            lambda: points[i].0,
            chi: points[i].1,
            tie: true,
        });
    }
    let (lambda, value) = golden_max(&chi, points[i - 1].0, points[i + 1].0, tol)?;
    Ok(if value >= points[i].1 {
        ChiMaximum {
            lambda,
            chi: value,
            tie: false,
        }
    } else {
        ChiMaximum {
            lambda: points[i].0,
            chi: points[i].1,
            tie: false,
        }
    })
}

/// Location λ_M of the maximum of χ along a swept curve.
pub fn locate_chi_maximum(curve: &SusceptibilityCurve) -> Result<ChiMaximum> {
    let spec = curve.spec;
    locate_maximum(
        &curve.chi_points(),
        |x| {
            curve
                .model
                .susceptibility(x, spec.diff_step, spec.refine, &curve.quadrature)
        },
        LOCATE_TOL,
    )
}

/// Two-segment continuous piecewise-linear fit of a crossover locus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverFit {
    /// `(kBT, λ_M)` sorted by temperature.
    pub locus: Vec<(f64, f64)>,
    /// dλ_M/d(kBT) below the knee.
    pub slope: f64,
    /// λ_M extrapolated to zero temperature.
    pub intercept: f64,
    pub knee_kbt: f64,
    /// dλ_M/d(kBT) above the knee.
    pub upper_slope: f64,
    /// Residual sum of squares.
    pub fit_residual: f64,
}

pub const MIN_SEGMENT_POINTS: usize = 3;

/// Least-squares hinge fit `λ = a + b·T` below the knee `k` and
/// `λ = a + b·k + c·(T − k)` above, with the knee free.
///
/// For each split of the sorted points the two sides are fitted separately;
/// when those lines cross inside the gap between the split points, that is
/// the constrained optimum for the split. Otherwise the optimum has the knee
/// on one of the two bounding points, and both are tried. The best split
/// wins.
pub fn fit_crossover(locus: &[(f64, f64)]) -> Result<CrossoverFit> {
    let mut pts: Vec<(f64, f64)> = locus.to_vec();
    if pts.iter().any(|(t, l)| !t.is_finite() || !l.is_finite()) {
        return Err(Error::DegenerateFit("locus contains non-finite values".into()));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = pts.len();
    if n < 2 * MIN_SEGMENT_POINTS {
        return Err(Error::DegenerateFit(format!(
            "need at least {} points for two segments, got {n}",
            2 * MIN_SEGMENT_POINTS
        )));
    }

    let mut best: Option<(f64, f64, f64, f64, f64)> = None; // (rss, a, b, c, k)
    let mut consider = |cand: Option<(f64, f64, f64, f64, f64)>| {
        if let Some(c) = cand {
            if best.is_none_or(|b| c.0 < b.0) {
                best = Some(c);
            }
        }
    };
    for split in MIN_SEGMENT_POINTS..=(n - MIN_SEGMENT_POINTS) {
        let (left, right) = pts.split_at(split);
        let (t_lo, t_hi) = (left[left.len() - 1].0, right[0].0);
        if let (Some((a1, b1)), Some((a2, b2))) = (line_fit(left), line_fit(right)) {
            if b1 != b2 {
                let k = (a2 - a1) / (b1 - b2);
                if k >= t_lo && k <= t_hi {
                    consider(Some((rss_hinge(&pts, a1, b1, b2, k), a1, b1, b2, k)));
                    continue;
                }
            }
        }
        for k in [t_lo, t_hi] {
            consider(hinge_at(&pts, k));
        }
    }
    let (rss, a, b, c, k) = best.ok_or_else(|| Error::DegenerateFit("every split is degenerate".into()))?;
    let below = pts.iter().filter(|p| p.0 <= k).count();
    let above = n - below;
    if below < MIN_SEGMENT_POINTS || above < MIN_SEGMENT_POINTS - 1 {
        return Err(Error::DegenerateFit(format!(
            "knee at {k} leaves {below} points below and {above} above"
        )));
    }
    Ok(CrossoverFit {
        locus: pts,
        slope: b,
        intercept: a,
        knee_kbt: k,
        upper_slope: c,
        fit_residual: rss,
    })
}

fn line_fit(pts: &[(f64, f64)]) -> Option<(f64, f64)> {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let b = sxy / sxx;
    Some((my - b * mx, b))
}

fn hinge_value(a: f64, b: f64, c: f64, k: f64, t: f64) -> f64 {
    if t <= k {
        a + b * t
    } else {
        a + b * k + c * (t - k)
    }
}

fn rss_hinge(pts: &[(f64, f64)], a: f64, b: f64, c: f64, k: f64) -> f64 {
    pts.iter().map(|&(t, l)| (l - hinge_value(a, b, c, k, t)).powi(2)).sum()
}

/// Least squares with the knee fixed at `k`: regress on `[1, min(t,k), max(t−k,0)]`.
fn hinge_at(pts: &[(f64, f64)], k: f64) -> Option<(f64, f64, f64, f64, f64)> {
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for &(t, l) in pts {
        let row = [1.0, t.min(k), (t - k).max(0.0)];
        for i in 0..3 {
            aty[i] += row[i] * l;
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
        }
    }
    let [a, b, c] = solve3(ata, aty)?;
    Some((rss_hinge(pts, a, b, c, k), a, b, c, k))
}

#[allow(clippy::needless_range_loop)]
fn solve3(mut m: [[f64; 3]; 3], mut v: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-14 {
            return None;
        }
        m.swap(col, pivot);
        v.swap(col, pivot);
        for row in (col + 1)..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            v[row] -= f * v[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = ((row + 1)..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (v[row] - s) / m[row][row];
    }
    Some(x)
}

/// λ window and resolution for [`crossover_locus`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocusSweep {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub step: f64,
    pub diff_step: f64,
}

impl Default for LocusSweep {
    fn default() -> Self {
        Self {
            lambda_min: 0.5,
            lambda_max: 2.0,
            step: 0.01,
            diff_step: DEFAULT_DIFF_STEP,
        }
    }
}

/// λ_M(T) of the one-site Ising Gibbs coherence at each temperature.
pub fn crossover_locus(kbts: &[f64], window: &LocusSweep, quad: &QuadratureSpec) -> Result<Vec<(f64, ChiMaximum)>> {
    let spec = SweepSpec::new(window.lambda_min, window.lambda_max, window.step)?.with_diff_step(window.diff_step)?;
    kbts.iter()
        .map(|&kbt| {
            let curve = sweep(ModelFamily::TfimGibbs { kbt }, &spec, quad)?;
            if let Some(bad) = curve.failures().next() {
                return Err(Error::AtPoint {
                    param: bad.param,
                    message: bad.error.clone().unwrap_or_default(),
                });
            }
            Ok((kbt, locate_chi_maximum(&curve)?))
        })
        .collect()
}
