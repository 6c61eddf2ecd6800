//! Exact background geometry of the charged rotating black hole and the
//! frame-operator machinery built on it.
//!
//! Everything in this crate is exact: the metric, tetrad, connection, and
//! curvature are rational expressions in `(r, cosθ, sinθ)` and the
//! parameters `(M, a, Q)`, built on the [`symrat`] kernel. The crate
//! provides:
//!
//! - the metric and its Christoffel, curvature, and conformal tensors;
//! - the principal null/horizontal tetrad with its rotation coefficients;
//! - the catalog of connection and curvature scalars in two independent
//!   builds (closed forms vs. computed from the metric), which downstream
//!   identity checks compare entry by entry;
//! - the electromagnetic background `F = dA` and the field-equation
//!   residual;
//! - frame tensors of rank ≤ 2 with the full set of weighted derivative
//!   operators, acting on mode amplitudes (`∂_t → −iω`, `∂_φ → i·m`);
//! - coordinate wave operators (`□_g` and the spin/conformally weighted
//!   scalar operator) on mode amplitudes.

pub mod catalog;
pub mod em;
pub mod frame;
pub mod metric;
pub mod potentials;
pub mod scalar_op;
pub mod tetrad;

pub use catalog::{horizontal_connection, Background, BackgroundCatalog};
pub use frame::{dot, dot_into, otimes, wedge, FrameOps, FrameTensor};
pub use metric::{coord_diff, invert_sym4, Mat4, Metric, DIM};
pub use potentials::{potential_base, potential_v1, potential_v2};
pub use scalar_op::{box_scalar, scalar_teukolsky};
pub use tetrad::{Tetrad, E1, E2, E3, E4};
