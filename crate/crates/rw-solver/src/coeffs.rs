//! Closed-form coefficient functions of the coupled wave system.
//!
//! Both equations are used in the horizon-regular first-order-in-time form
//! obtained by scaling the `|q|²`-weighted equations by `Δ/(r² + a²)`
//! (`|q|² = r² + a²cos²θ`, `Δ = r² − 2Mr + a² + Q²`, `w = r² + a²`):
//!
//! ```text
//! M̃(r, x) ∂_t²ψ = ∂_{r*}(w ∂_{r*}ψ)
//!               + (Δ/w)[ ∂_θ² + (x/s)∂_θ − ((m + k·x)/s)² ]ψ
//!               + (a²m²/w) ψ + (Δ/w) R_k ψ
//!               + (Δ/w)(−2k·a·x)(i∂_tψ) − (2a(2Mr − Q²)m/w)(i∂_tψ)
//!               − (Δ/w) · (coupling to the partner field),
//! ```
//!
//! with spin weight `k = 1` for the charge-sector field `p` and `k = 2`
//! for the gravitational field `u`, mode convention `e^{i(mφ − ωt)}`, and
//! mass density
//!
//! ```text
//! M̃ = (w² − a²Δ)/w + (a²Δ/w)·x²  > 0,
//! ```
//!
//! finite and positive up to the horizon.  The angular bracket acts
//! diagonally on the spin-k basis with eigenvalue `−(ℓ(ℓ+1) − k²)`; the
//! residual potentials `R_k` and the coupling coefficients below carry the
//! remaining `(r, x)` dependence.  In the static limit `a = 0` the
//! residuals reduce to `R_k = −r²V_k` with the familiar long-range
//! potentials `V₁ = (r² − 2Mr + 6Q²)/r⁴`, `V₂ = (4r² − 8Mr + 6Q²)/r⁴`.
//!
//! Every formula in this module is pinned against an independent symbolic
//! assembly of the equations in `tests/coeff_oracle.rs`.

use num_complex::Complex64;

/// Background parameters `(M, a, Q)` of a subextremal (or flat) exterior.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KnParams {
    /// Mass `M`.
    pub mass: f64,
    /// Specific angular momentum `a`.
    pub spin: f64,
    /// Charge `Q`.
    pub charge: f64,
}

impl KnParams {
    /// Horizon function `Δ(r)`.
    pub fn delta(&self, r: f64) -> f64 {
        r * r - 2.0 * self.mass * r + self.spin * self.spin + self.charge * self.charge
    }

    /// Cylindrical radius function `w(r) = r² + a²`.
    pub fn w(&self, r: f64) -> f64 {
        r * r + self.spin * self.spin
    }

    /// Horizon-regular scaling factor `Δ/w`.
    pub fn horizon_factor(&self, r: f64) -> f64 {
        self.delta(r) / self.w(r)
    }

    /// `x`-independent part of the mass density, `(w² − a²Δ)/w`.
    pub fn mass_c0(&self, r: f64) -> f64 {
        let w = self.w(r);
        (w * w - self.spin * self.spin * self.delta(r)) / w
    }

    /// Coefficient of `x²` in the mass density, `a²Δ/w`.
    pub fn mass_c2(&self, r: f64) -> f64 {
        self.spin * self.spin * self.delta(r) / self.w(r)
    }

    /// Mass density `M̃(r, x)`.
    pub fn mass_density(&self, r: f64, x: f64) -> f64 {
        self.mass_c0(r) + self.mass_c2(r) * x * x
    }

    /// Largest radial characteristic speed in `(t, r*)` at radius `r`,
    /// `w/√(w² − a²Δ) ≥ 1` (equality at the rotation axis and at `a = 0`).
    pub fn max_wave_speed(&self, r: f64) -> f64 {
        let w = self.w(r);
        w / (w * w - self.spin * self.spin * self.delta(r)).sqrt()
    }

    /// Scalar potential `a²m²/w` (the `x`-free part of the frame-dragging
    /// contribution to the azimuthal potential).
    pub fn azimuthal_potential(&self, r: f64, m: i32) -> f64 {
        let mf = m as f64;
        self.spin * self.spin * mf * mf / self.w(r)
    }

    /// Coefficient of `x·(i∂_t)` in the scaled equation, `−2k·a·Δ/w`.
    pub fn frame_dragging_x(&self, r: f64, spin_weight: i32) -> f64 {
        -2.0 * spin_weight as f64 * self.spin * self.horizon_factor(r)
    }

    /// Scalar coefficient of `i∂_t`, `−2a(2Mr − Q²)m/w`.
    pub fn frame_dragging_scalar(&self, r: f64, m: i32) -> f64 {
        -2.0 * self.spin * (2.0 * self.mass * r - self.charge * self.charge) * m as f64
            / self.w(r)
    }

    /// Residual potential `R₁(r, x)` of the spin-1 equation (enters the
    /// `|q|²`-weighted equation as `+R₁ψ`; `−R₁ = r²V₁` at `a = 0`).
    pub fn residual_r1(&self, r: f64, x: f64) -> f64 {
        let (a2, q2, m) = (self.spin * self.spin, self.charge * self.charge, self.mass);
        let x2 = x * x;
        let r2 = r * r;
        let qa2 = r2 + a2 * x2;
        (-a2 * a2 * x2 * x2 + 2.0 * x2 * a2 * (r2 - r * m + a2 - 2.0 * q2)
            - r2 * r2
            + 2.0 * r2 * r * m
            - 2.0 * r2 * a2
            - 6.0 * r2 * q2)
            / (qa2 * qa2)
    }

    /// Residual potential `R₂(r, x)` of the spin-2 equation
    /// (`−R₂ = r²V₂` at `a = 0`).
    pub fn residual_r2(&self, r: f64, x: f64) -> f64 {
        let (a2, q2, m) = (self.spin * self.spin, self.charge * self.charge, self.mass);
        let x2 = x * x;
        let r2 = r * r;
        let qa2 = r2 + a2 * x2;
        (-4.0 * a2 * a2 * x2 * x2
            + x2 * a2 * (8.0 * r2 - 8.0 * r * m + 8.0 * a2 + 2.0 * q2)
            - 4.0 * r2 * r2
            + 8.0 * r2 * r * m
            - 8.0 * r2 * a2
            - 6.0 * r2 * q2)
            / (qa2 * qa2)
    }

    /// Static-limit potential `V₁ = (r² − 2Mr + 6Q²)/r⁴`.
    pub fn potential_v1(&self, r: f64) -> f64 {
        (r * r - 2.0 * self.mass * r + 6.0 * self.charge * self.charge) / r.powi(4)
    }

    /// Static-limit potential `V₂ = (4r² − 8Mr + 6Q²)/r⁴`.
    pub fn potential_v2(&self, r: f64) -> f64 {
        (4.0 * r * r - 8.0 * self.mass * r + 6.0 * self.charge * self.charge) / r.powi(4)
    }

    fn q_c(&self, r: f64, x: f64) -> Complex64 {
        Complex64::new(r, self.spin * x)
    }

    /// Coupling coefficients in the spin-1 equation, applied to the spin-2
    /// field in the `|q|²`-weighted form:
    /// `α_θ·∂_θu + α_m·(m·u) + α_t·(i∂_t u) + α₀·u`.
    ///
    /// Returns `(α_θ, α_m, α_t, α₀)` at `(r, x)` with `s = sin θ`.
    pub fn coupling_to_spin2(&self, r: f64, x: f64, s: f64) -> [Complex64; 4] {
        let q = self.q_c(r, x);
        let qb = q.conj();
        let q2c = 8.0 * self.charge * self.charge * qb / (q * q);
        [
            q2c,
            q2c / s,
            -s * self.spin * q2c,
            16.0 * self.charge * self.charge * x * self.w(r) / (s * q * q * q),
        ]
    }

    /// Coupling coefficients in the spin-2 equation, applied to the spin-1
    /// field: `β_θ·∂_θp + β_m·(m·p) + β_t·(i∂_t p) + β₀·p`.
    ///
    /// Returns `(β_θ, β_m, β_t, β₀)`.
    pub fn coupling_to_spin1(&self, r: f64, x: f64, s: f64) -> [Complex64; 4] {
        let q = self.q_c(r, x);
        let qb = q.conj();
        let base = -q / (2.0 * qb * qb);
        [
            base,
            -base / s,
            s * self.spin * base,
            Complex64::new(x * self.w(r), 3.0 * r * self.spin * s * s) / (2.0 * s * qb * qb * qb),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_limit_residuals_match_long_range_potentials() {
        let p = KnParams {
            mass: 1.0,
            spin: 0.0,
            charge: 0.3,
        };
        for r in [2.2, 3.0, 10.0] {
            for x in [-0.7, 0.0, 0.4] {
                assert!((p.residual_r1(r, x) + r * r * p.potential_v1(r)).abs() < 1e-13);
                assert!((p.residual_r2(r, x) + r * r * p.potential_v2(r)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn mass_density_is_positive_and_horizon_finite() {
        let p = KnParams {
            mass: 1.0,
            spin: 0.9,
            charge: 0.3,
        };
        let r_plus = 1.0 + (1.0 - 0.81 - 0.09f64).sqrt();
        for r in [r_plus + 1e-12, r_plus + 0.5, 3.0, 100.0] {
            for x in [-1.0, -0.3, 0.0, 1.0] {
                let m = p.mass_density(r, x);
                assert!(m.is_finite() && m > 0.0, "r = {r}, x = {x}: {m}");
            }
        }
        assert!((p.max_wave_speed(100.0) - 1.0).abs() < 1e-3);
        assert!(p.max_wave_speed(r_plus + 0.1) >= 1.0);
    }

    #[test]
    fn coupling_adjointness_weight_at_static_limit() {
        // At a = 0 the two coupling families are proportional,
        // conj(α_i) = ±16Q²·β_i, with the minus sign on the θ-derivative
        // entry (whose adjoint picks up a sign under integration by
        // parts).  This is the algebraic seed of the conserved-energy
        // weight.
        let p = KnParams {
            mass: 1.0,
            spin: 0.0,
            charge: 0.45,
        };
        let (r, x) = (3.3, 0.25f64);
        let s = (1.0 - x * x).sqrt();
        let alpha = p.coupling_to_spin2(r, x, s);
        let beta = p.coupling_to_spin1(r, x, s);
        let weight = 16.0 * p.charge * p.charge;
        for (i, sign) in [(0, -1.0), (1, 1.0), (2, 1.0)] {
            assert!(
                (alpha[i].conj() - sign * weight * beta[i]).norm() < 1e-13,
                "entry {i}"
            );
        }
    }
}
