//! Symbolic verification suite for the exact background and operator
//! identities behind the coupled wave system.
//!
//! Every check is deterministic and fully symbolic in the black-hole
//! parameters: each verifies a batch of rational-function identities and
//! produces a [`CheckReport`] with the residuals of any failures. Each
//! check also ships a fault-injected twin (one deliberate sign flip in one
//! named coefficient) that must fail, guarding against checks that pass
//! vacuously.
//!
//! The suite runs data-parallel via `rayon` when the default `parallel`
//! feature is enabled, with a sequential fallback otherwise; reports are
//! merged sorted by check name either way.

pub mod checks;
pub mod ctx;
pub mod positivity;
pub mod report;

pub use positivity::{
    positivity_violations, standard_parameter_grid, PositivitySample,
};
pub use report::{CheckReport, CheckStatus, Checker, Residual};

use symrat::SymError;

type CheckFn = fn() -> Result<CheckReport, SymError>;

/// Every check in the suite, by stable name.
pub fn all_checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("background", checks::background::check_background),
        ("commutators", checks::commutators::check_commutators),
        ("lot_structure", checks::lot::check_lot_structure),
        ("potentials", checks::potentials::check_potentials),
        (
            "projection_identities",
            checks::projections::check_projection_identities,
        ),
        ("q_transport", checks::transport::check_q_transport),
        ("reduced_equations", checks::reduced::check_reduced_equations),
        ("wave_power_lemma", checks::wavepow::check_wave_power_lemma),
    ]
}

/// The fault-injected twins, by the name of the check they sabotage.
pub fn all_faulted_checks() -> Vec<(&'static str, CheckFn)> {
    vec![
        ("background", checks::background::check_background_faulted),
        ("commutators", checks::commutators::check_commutators_faulted),
        ("lot_structure", checks::lot::check_lot_structure_faulted),
        ("potentials", checks::potentials::check_potentials_faulted),
        (
            "projection_identities",
            checks::projections::check_projection_identities_faulted,
        ),
        ("q_transport", checks::transport::check_q_transport_faulted),
        (
            "reduced_equations",
            checks::reduced::check_reduced_equations_faulted,
        ),
        ("wave_power_lemma", checks::wavepow::check_wave_power_lemma_faulted),
    ]
}

/// Runs the whole suite and returns the reports sorted by name. With
/// `parallel = true` the checks run data-parallel when the `parallel`
/// feature is enabled (sequentially otherwise).
pub fn run_all(parallel: bool) -> Result<Vec<CheckReport>, SymError> {
    let fns = all_checks();
    let mut reports: Vec<CheckReport> = if parallel {
        run_parallel(&fns)?
    } else {
        fns.iter().map(|(_, f)| f()).collect::<Result<_, _>>()?
    };
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(reports)
}

#[cfg(feature = "parallel")]
fn run_parallel(fns: &[(&'static str, CheckFn)]) -> Result<Vec<CheckReport>, SymError> {
    use rayon::prelude::*;
    fns.par_iter().map(|(_, f)| f()).collect()
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(fns: &[(&'static str, CheckFn)]) -> Result<Vec<CheckReport>, SymError> {
    fns.iter().map(|(_, f)| f()).collect()
}
