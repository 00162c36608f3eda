//! Spin-½ XX chain `H = −½ Σ (σˣσˣ + σʸσʸ) − λ Σ σᶻ` in the thermodynamic limit.
//!
//! For λ ≥ 1 the ground state is fully polarized and carries no coherence.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quantum::{coherence, reconstruct_one_site, reconstruct_two_site, OneSiteExpectations};
use crate::{DensityMatrix, TwoSiteExpectations};

pub const CRITICAL_LAMBDA: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxPoint {
    lambda: f64,
}

impl XxPoint {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and >= 0, got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// How the ⟨σʸσʸ⟩ coefficient enters the two-site state.
///
/// The U(1) symmetry of the chain forces ⟨σʸσʸ⟩ = ⟨σˣσˣ⟩. Leaving it out
/// gives a table that is not a valid state deep in the gapless phase, so
/// `Omitted` exists only to compare against that variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub enum YyTreatment {
    #[default]
    Symmetric,
    Omitted,
}

/// Nonzero ground-state correlators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxCorrelators {
    pub sz: f64,
    pub gzz: f64,
    pub gxx: f64,
}

pub fn correlators(p: &XxPoint) -> XxCorrelators {
    // arccos clamps to 0 in the polarized phase
    let k = p.lambda.min(1.0).acos();
    let sz = 1.0 - 2.0 * k / PI;
    let l2 = p.lambda.min(1.0).powi(2);
    XxCorrelators {
        sz,
        gzz: sz * sz - 4.0 * (1.0 - l2) / (PI * PI),
        gxx: -2.0 * k.sin() / PI,
    }
}

pub fn xx_expectations(p: &XxPoint, yy: YyTreatment) -> TwoSiteExpectations {
    let c = correlators(p);
    let gyy = match yy {
        YyTreatment::Symmetric => c.gxx,
        YyTreatment::Omitted => 0.0,
    };
    TwoSiteExpectations::identity()
        .with(3, 0, c.sz)
        .with(0, 3, c.sz)
        .with(3, 3, c.gzz)
        .with(1, 1, c.gxx)
        .with(2, 2, gyy)
}

pub fn two_site_state(p: &XxPoint, yy: YyTreatment) -> Result<DensityMatrix> {
    reconstruct_two_site(&xx_expectations(p, yy))
}

/// Coherence of two adjacent spins.
pub fn xx_coherence(p: &XxPoint, yy: YyTreatment) -> Result<f64> {
    coherence(&two_site_state(p, yy)?)
}

/// One-site state is diagonal at every λ, so this is always zero.
pub fn one_site_coherence(p: &XxPoint) -> Result<f64> {
    let rho = reconstruct_one_site(&OneSiteExpectations::new(0.0, 0.0, correlators(p).sz))?;
    coherence(&rho)
}
