//! The individual checks, one module per theme.

pub mod background;
pub mod commutators;
pub mod lot;
pub mod potentials;
pub mod projections;
pub mod reduced;
pub mod transport;
pub mod wavepow;
