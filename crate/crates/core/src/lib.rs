//! Beta-function integral identities over a bounded interval and the
//! generalized arcsine distribution built on them.
//!
//! * [`special`]: log-gamma, beta, the regularized incomplete beta and its inverse.
//! * [`quadrature`]: tanh-sinh integration, used as an independent check.
//! * [`identities`]: closed forms for shifted and split beta integrals.
//! * [`distribution`]: density, CDF, quantile, moments and sampling.
//! * [`arcsine_law`]: argmax time of a simple random walk and KS tests.

pub mod arcsine_law;
pub mod distribution;
pub mod error;
pub mod identities;
pub mod quadrature;
pub mod rng;
pub mod special;

pub use distribution::{GeneralizedBetaDist, MomentMethod, MomentRow, MomentTable};
pub use error::{Error, Result};
pub use identities::{Identity, IdentityReport, ShapeParams, SupportInterval};
pub use quadrature::{QuadratureEstimate, TanhSinh};
