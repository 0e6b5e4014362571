//! Extreme claim amounts for portfolios of independent risks whose severities
//! follow the transmuted-G family `F_λ = F (1 + λ (1 - F))`, together with
//! majorization tools and grid-based checks of the usual stochastic, hazard
//! rate, reversed hazard rate and dispersive orders.
//!
//! A risk `i` produces a claim with probability `p_i`; the claim size has the
//! transmuted distribution with parameter `λ_i` over a common baseline `F`.
//! The smallest and largest claims have atoms at zero which every routine
//! handles explicitly.

// Validation writes `!(x > 0.0)` on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baseline;
pub mod claims;
pub mod error;
pub mod grid;
pub mod majorization;
pub mod monte_carlo;
pub mod orders;
pub mod theorems;
pub mod transmuted;

pub use baseline::{Baseline, Density, DfrReport, Table};
pub use claims::{ExtremeDistribution, ExtremeKind, Portfolio, SmallestHazard};
pub use error::{Error, Result};
pub use grid::GridSpec;
pub use majorization::{HFunction, ParamMatrix, TTransform};
pub use orders::{check_order, OrderKind, OrderVerdict, Witness};
pub use theorems::{Condition, TheoremId, TheoremVerdict};
pub use transmuted::TransmutedParams;
