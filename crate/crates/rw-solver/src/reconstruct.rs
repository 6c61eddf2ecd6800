//! Auxiliary-field transport (placeholder).
