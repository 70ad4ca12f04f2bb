//! Casimir energies of massless scalar fields in rectangular cavities.
//!
//! Two independent routes are provided:
//!
//! * [`cutoff`] and [`arbitrary`]: exponential cut-off regularization, which
//!   yields a sum of parallel-plate terms plus a remainder written as
//!   exponentially convergent sums of modified Bessel functions;
//! * [`epstein`]: zeta-function regularization through homogeneous Epstein
//!   zeta functions, exact in even dimensions up to 8 and an analytic part
//!   plus a small Bessel remainder in dimensions 3, 5 and 7.
//!
//! [`oracle`] holds brute-force lattice sums and representation counts used
//! to check the closed forms, and [`verify`] bundles those checks into a
//! report.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arbitrary;
pub mod cutoff;
pub mod epstein;
pub mod error;
mod lattice;
pub mod oracle;
pub mod specfun;
pub mod truncation;
pub mod verify;

pub use cutoff::{BoundaryCondition, CavitySpec, EnergyBreakdown};
pub use error::{Error, Result};
pub use truncation::TruncationPolicy;
