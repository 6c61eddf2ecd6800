//! Numeric realization of symbolically assembled scalars (placeholder).
