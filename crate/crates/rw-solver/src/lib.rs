//! Time-domain solver for the coupled spin-1/spin-2 wave system on a
//! subextremal Kerr-Newman exterior.
//!
//! The solver evolves the pair of charge-sector and gravitational-sector
//! master fields in first-order-in-time form on a uniform tortoise grid,
//! with a spectral (spin-weighted multipole) angular representation at
//! fixed azimuthal number `m`, a fourth-order finite-difference radial
//! operator in divergence form, and classical Runge-Kutta time stepping.
//! A quadrature-exact energy monitor tracks the conserved quadratic form
//! of the static-limit system and its near-conservation for slow rotation.
//!
//! Module map:
//!
//! * [`coeffs`] — closed-form coefficient functions of the equations;
//! * [`tortoise`] — the `r ↔ r*` map;
//! * [`angular`] — quadrature, spin-weighted bases, operator matrices;
//! * [`operators`] — assembled discrete operators for one `m`-mode;
//! * [`state`] — the evolved field state;
//! * [`step`] — right-hand side and Runge-Kutta stepping;
//! * [`energy`] — the energy monitor;
//! * [`config`] — run configuration parsing and validation;
//! * [`evolve`] — the end-to-end driver with output artifacts;
//! * [`symcoef`] — numeric realization of symbolically assembled scalars;
//! * [`reconstruct`] — auxiliary-field transport for the lower-order terms.

pub mod angular;
pub mod coeffs;
pub mod config;
pub mod energy;
pub mod error;
pub mod evolve;
pub mod operators;
pub mod reconstruct;
pub mod state;
pub mod step;
pub mod symcoef;
pub mod tortoise;

pub use coeffs::KnParams;
pub use config::{GridSpec, InitSpec, OutputSpec, SolverConfig};
pub use error::SolverError;
pub use evolve::{evolve, EvolveSummary};
pub use operators::ModeOperators;
pub use state::FieldState;
pub use tortoise::TortoiseMap;
