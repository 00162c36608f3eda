//! Transverse-field Ising chain in the thermodynamic limit.
//!
//! Two parameter conventions are in use and are never converted silently:
//!
//! * [`Convention::CouplingOverField`]: `H = −J Σ σᶻσᶻ − B Σ σˣ`, λ = J/B. Used for
//!   the zero-temperature symmetry-broken and thermal ground states.
//! * [`Convention::FieldOverCoupling`]: `H = −Σ σᶻσᶻ − λ Σ σˣ`, energies in units
//!   of the coupling. Used for Gibbs states.
//!
//! The critical point is λ = 1 in both.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_1d, QuadratureSpec};
use crate::quantum::{reconstruct_one_site, reconstruct_two_site, OneSiteExpectations, TwoSiteExpectations};
use crate::DensityMatrix;

pub const CRITICAL_LAMBDA: f64 = 1.0;

/// Below this temperature the thermal integrals are not evaluated; use the
/// zero-temperature formulas instead.
pub const MIN_THERMAL_KBT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Convention {
    CouplingOverField,
    FieldOverCoupling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum StateKind {
    SymmetryBroken,
    ThermalGround,
    Gibbs,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfimPoint {
    lambda: f64,
    convention: Convention,
    kbt: f64,
    state_kind: StateKind,
}

impl TfimPoint {
    pub fn new(lambda: f64, convention: Convention, kbt: f64, state_kind: StateKind) -> Result<Self> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and >= 0, got {lambda}"
            )));
        }
        if !(kbt.is_finite() && kbt >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "kBT must be finite and >= 0, got {kbt}"
            )));
        }
        match state_kind {
            StateKind::Gibbs => {
                if kbt <= 0.0 {
                    return Err(Error::InvalidParameter("Gibbs state requires kBT > 0".into()));
                }
                if convention != Convention::FieldOverCoupling {
                    return Err(Error::InvalidParameter(
                        "Gibbs states use the field-over-coupling convention".into(),
                    ));
                }
            }
            StateKind::SymmetryBroken | StateKind::ThermalGround => {
                if kbt != 0.0 {
                    return Err(Error::InvalidParameter(format!("{state_kind:?} requires kBT = 0")));
                }
                if convention != Convention::CouplingOverField {
                    return Err(Error::InvalidParameter(
                        "zero-temperature states use the coupling-over-field convention".into(),
                    ));
                }
            }
        }
        Ok(Self {
            lambda,
            convention,
            kbt,
            state_kind,
        })
    }

    pub fn symmetry_broken(lambda: f64) -> Result<Self> {
        Self::new(lambda, Convention::CouplingOverField, 0.0, StateKind::SymmetryBroken)
    }

    pub fn thermal_ground(lambda: f64) -> Result<Self> {
        Self::new(lambda, Convention::CouplingOverField, 0.0, StateKind::ThermalGround)
    }

    pub fn gibbs(lambda: f64, kbt: f64) -> Result<Self> {
        Self::new(lambda, Convention::FieldOverCoupling, kbt, StateKind::Gibbs)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn kbt(&self) -> f64 {
        self.kbt
    }

    pub fn state_kind(&self) -> StateKind {
        self.state_kind
    }
}

/// Thermal one- and two-site correlators of the chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfimObservables {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
    pub gxx: f64,
    pub gyy: f64,
    pub gzz: f64,
    pub g_plus: f64,
    pub g_minus: f64,
}

impl TfimObservables {
    /// Nearest-neighbour table in the computational basis.
    pub fn two_site_table(&self) -> TwoSiteExpectations<f64> {
        TwoSiteExpectations::identity()
            .with(1, 1, self.gxx)
            .with(2, 2, self.gyy)
            .with(3, 3, self.gzz)
            .with(1, 0, self.sx)
            .with(0, 1, self.sx)
    }

    /// The same state after exchanging σˣ and σᶻ on both sites: an X state.
    pub fn swapped_table(&self) -> TwoSiteExpectations<f64> {
        TwoSiteExpectations::identity()
            .with(3, 3, self.gxx)
            .with(2, 2, self.gyy)
            .with(1, 1, self.gzz)
            .with(3, 0, self.sx)
            .with(0, 3, self.sx)
    }
}

/// Spontaneous magnetization ⟨σᶻ⟩ of the symmetry-broken ground state, λ = J/B.
pub fn ground_sz(lambda: f64) -> f64 {
    if lambda <= 1.0 {
        0.0
    } else {
        (1.0 - lambda.powi(-2)).powf(0.125)
    }
}

/// Ground-state transverse magnetization ⟨σˣ⟩, λ = J/B.
pub fn ground_sx(lambda: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidParameter(format!("lambda must be >= 0, got {lambda}")));
    }
    let integrand = |phi: f64| {
        let c = phi.cos();
        let d2 = 1.0 + lambda * lambda + 2.0 * lambda * c;
        if d2 <= 0.0 {
            // only reachable at λ = 1, φ = π where the ratio tends to 0
            0.0
        } else {
            (1.0 + lambda * c) / d2.sqrt()
        }
    };
    Ok(integrate_1d(integrand, 0.0, PI, spec)?.value / PI)
}

fn omega(lambda: f64, phi: f64) -> f64 {
    (1.0 + lambda * lambda + 2.0 * lambda * phi.cos()).max(0.0).sqrt()
}

/// tanh(ω/kBT)/ω, continuous at ω = 0.
fn thermal_weight(w: f64, kbt: f64) -> f64 {
    if w == 0.0 {
        1.0 / kbt
    } else {
        (w / kbt).tanh() / w
    }
}

fn check_thermal(lambda: f64, kbt: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidParameter(format!("lambda must be >= 0, got {lambda}")));
    }
    if !(kbt.is_finite() && kbt >= MIN_THERMAL_KBT) {
        return Err(Error::InvalidParameter(format!(
            "thermal formulas need kBT >= {MIN_THERMAL_KBT}, got {kbt}"
        )));
    }
    Ok(())
}

/// Thermal ⟨σˣ⟩ = (1/π) ∫₀^π (λ + cos φ) tanh(ω_φ/kBT)/ω_φ dφ, λ = field.
pub fn thermal_sx(lambda: f64, kbt: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_thermal(lambda, kbt)?;
    let integrand = |phi: f64| (lambda + phi.cos()) * thermal_weight(omega(lambda, phi), kbt);
    Ok(integrate_1d(integrand, 0.0, PI, spec)?.value / PI)
}

/// One- and two-site thermal correlators.
///
/// ⟨σʸσʸ⟩ = G₊, ⟨σᶻσᶻ⟩ = G₋ and ⟨σˣσˣ⟩ = ⟨σˣ⟩² − G₊G₋ with
///
/// G± = (1/π) ∫₀^π cos φ (λ + cos φ) w dφ ∓ (1/π) ∫₀^π sin²φ w dφ,  w = tanh(ω_φ/kBT)/ω_φ.
pub fn thermal_correlators(lambda: f64, kbt: f64, spec: &QuadratureSpec) -> Result<TfimObservables> {
    check_thermal(lambda, kbt)?;
    let sx = thermal_sx(lambda, kbt, spec)?;
    let weight = |phi: f64| thermal_weight(omega(lambda, phi), kbt);
    let even = integrate_1d(|phi: f64| phi.cos() * (lambda + phi.cos()) * weight(phi), 0.0, PI, spec)?.value / PI;
    let odd = integrate_1d(|phi: f64| phi.sin().powi(2) * weight(phi), 0.0, PI, spec)?.value / PI;
    let g_plus = even - odd;
    let g_minus = even + odd;
    Ok(TfimObservables {
        sx,
        sy: 0.0,
        sz: 0.0,
        gxx: sx * sx - g_plus * g_minus,
        gyy: g_plus,
        gzz: g_minus,
        g_plus,
        g_minus,
    })
}

/// Nearest-neighbour Gibbs state as an X-form expectation table (σˣ ↔ σᶻ
/// exchanged on both sites). Fails if the table is not a physical state.
pub fn thermal_two_site(lambda: f64, kbt: f64, spec: &QuadratureSpec) -> Result<TwoSiteExpectations<f64>> {
    let table = thermal_correlators(lambda, kbt, spec)?.swapped_table();
    reconstruct_two_site(&table)?;
    Ok(table)
}

/// One-site expectations for any supported state.
pub fn one_site_expectations(p: &TfimPoint, spec: &QuadratureSpec) -> Result<OneSiteExpectations<f64>> {
    Ok(match p.state_kind {
        StateKind::SymmetryBroken => OneSiteExpectations::new(ground_sx(p.lambda, spec)?, 0.0, ground_sz(p.lambda)),
        StateKind::ThermalGround => OneSiteExpectations::new(ground_sx(p.lambda, spec)?, 0.0, 0.0),
        StateKind::Gibbs => OneSiteExpectations::new(thermal_sx(p.lambda, p.kbt, spec)?, 0.0, 0.0),
    })
}

pub fn one_site_state(p: &TfimPoint, spec: &QuadratureSpec) -> Result<DensityMatrix> {
    reconstruct_one_site(&one_site_expectations(p, spec)?)
}

/// One-site coherence in bits.
pub fn one_site_coherence(p: &TfimPoint, spec: &QuadratureSpec) -> Result<f64> {
    crate::quantum::coherence(&one_site_state(p, spec)?)
}
