//! Error type shared by the expression kernel.

use thiserror::Error;

/// Everything that can go wrong while building, transforming, or evaluating
/// an exact expression.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SymError {
    /// An operation received an expression outside its domain (for example a
    /// substitution target appearing in a denominator factor).
    #[error("malformed expression: {0}")]
    MalformedExpression(String),

    /// Exact evaluation hit a vanishing denominator factor.
    #[error("evaluation pole: denominator factor `{factor}` vanishes at the given point")]
    EvaluationPole { factor: String },

    /// A derivative would need a jet component beyond the stored order.
    #[error("jet order exceeded: derivative of `{var}` is not stored")]
    JetOrderExceeded { var: String },

    /// Evaluation needs a variable that was not assigned.
    #[error("missing assignment for variable `{var}`")]
    MissingAssignment { var: String },

    /// The text form could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Division by the zero expression.
    #[error("division by zero expression")]
    DivisionByZero,

    /// A parameter set violates its admissibility constraints.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
