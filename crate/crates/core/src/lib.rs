//! Numerical core for a one-dimensional two-phase tumour growth model with a
//! moving outer boundary.
//!
//! Two solution strategies are provided:
//!
//! - [`scheme_a`]: the extended-domain method. The volume fraction is
//!   transported on a fixed interval `(0, L)` that contains the tumour for the
//!   whole run, and the boundary is recovered each step by thresholding.
//! - [`scheme_b`]: the classical approach, mapping the tumour onto `(0, 1)`
//!   through `xi = x / l(t)` and integrating the radius ODE explicitly.
//!
//! Transport uses cell-centred finite volumes ([`fv`]), the velocity and
//! oxygen equations use P1 finite elements ([`fem`]), and [`oracle`] holds the
//! closed-form solution of the frozen-coefficient test case together with an
//! independent characteristic integrator.
//!
//! The crate is `no_std` and only needs `alloc`; transcendental functions come
//! from `libm`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod fem;
pub mod front;
pub mod fv;
pub mod grid;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod scheme_a;
pub mod scheme_b;

pub use error::SolverError;
pub use fem::{OxygenStepping, TruncatedMesh};
pub use front::FrontEstimate;
pub use fv::{Limiter, TransportMethod};
pub use grid::{CellField, Grid, NodalField, TimeControl};
pub use model::{Bounds, ModelParams, TractionMode};
pub use oracle::Case1Profile;
pub use scheme_a::{CaseMode, Diagnostics, ExtendedConfig, SimulationState, Trajectory};
pub use scheme_b::{ScaledConfig, ScaledState, ScaledTrajectory};
