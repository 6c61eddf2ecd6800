//! Check reports and the accumulator used to build them.

use std::time::Instant;

use kn_geometry::FrameTensor;
use serde::Serialize;
use symrat::SymExpr;

/// Outcome of one named check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One failed identity inside a check: which identity, and the nonzero
/// residual expression (or a short diagnostic for numeric claims).
#[derive(Clone, Debug, Serialize)]
pub struct Residual {
    pub identity: String,
    pub expr: String,
}

/// Result of one check: every check verifies a batch of exact identities
/// and reports pass/fail with the residuals of any failures.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    /// Stable check name (reports are merged sorted by this).
    pub name: String,
    /// What the check verifies, in operator language.
    pub statement: String,
    pub status: CheckStatus,
    /// Empty exactly when the check passes.
    pub residuals: Vec<Residual>,
    /// Number of individual identities verified.
    pub identities_checked: usize,
    /// Wall-clock time for the whole check, in milliseconds.
    pub wall_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Builder that accumulates identity verdicts into a [`CheckReport`].
pub struct Checker {
    name: String,
    statement: String,
    residuals: Vec<Residual>,
    count: usize,
    start: Instant,
}

impl Checker {
    pub fn new(name: &str, statement: &str) -> Checker {
        Checker {
            name: name.to_string(),
            statement: statement.to_string(),
            residuals: Vec::new(),
            count: 0,
            start: Instant::now(),
        }
    }

    /// Asserts that `e` is identically zero.
    pub fn zero(&mut self, identity: &str, e: &SymExpr) {
        self.count += 1;
        if !e.is_zero() {
            self.residuals.push(Residual {
                identity: identity.to_string(),
                expr: e.to_string(),
            });
        }
    }

    /// Asserts that two expressions agree identically.
    pub fn eq(&mut self, identity: &str, lhs: &SymExpr, rhs: &SymExpr) {
        self.zero(identity, &(lhs.clone() - rhs.clone()));
    }

    /// Asserts that every component of a frame tensor vanishes (counts as
    /// one identity; the residual names the offending component).
    pub fn zero_tensor(&mut self, identity: &str, t: &FrameTensor) {
        self.count += 1;
        for (k, c) in t.comps.iter().enumerate() {
            if !c.is_zero() {
                self.residuals.push(Residual {
                    identity: format!("{identity} [component {k}]"),
                    expr: c.to_string(),
                });
            }
        }
    }

    /// Asserts componentwise agreement of two frame tensors.
    pub fn eq_tensor(&mut self, identity: &str, lhs: &FrameTensor, rhs: &FrameTensor) {
        self.zero_tensor(identity, &lhs.sub(rhs));
    }

    /// Records an externally evaluated claim (used for numeric sampling).
    pub fn claim(&mut self, identity: &str, ok: bool, detail: &str) {
        self.count += 1;
        if !ok {
            self.residuals.push(Residual {
                identity: identity.to_string(),
                expr: detail.to_string(),
            });
        }
    }

    pub fn finish(self) -> CheckReport {
        let status = if self.residuals.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckReport {
            name: self.name,
            statement: self.statement,
            status,
            residuals: self.residuals,
            identities_checked: self.count,
            wall_ms: self.start.elapsed().as_millis(),
        }
    }
}
