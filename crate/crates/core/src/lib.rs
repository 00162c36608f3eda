//! Coherence-susceptibility toolkit for exactly solvable spin models.
//!
//! The density-matrix, quadrature and discord layers are generic over the
//! floating-point type (see [`scalar::Real`]); the model layers work in `f64`
//! and use the aliases below.

pub mod discord;
pub mod ed;
pub mod error;
pub mod kitaev;
pub mod linalg;
pub mod optimize;
pub mod quadrature;
pub mod quantum;
pub mod scalar;
pub mod scan;
pub mod tfim;
pub mod xx;

pub use error::{Error, Result};
pub use quadrature::QuadratureSpec;
pub use scalar::Real;

pub type DensityMatrix = quantum::Density<f64>;
pub type DensityMatrixF32 = quantum::Density<f32>;
pub type OneSiteExpectations = quantum::OneSiteExpectations<f64>;
pub type TwoSiteExpectations = quantum::TwoSiteExpectations<f64>;
pub type ComplexMatrix = linalg::CMatrix<f64>;
pub type XState = discord::XState<f64>;

/// Version string recorded in output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
