//! The catalog of background connection and curvature scalars, in two
//! independent builds: closed forms and values computed from the metric.

use crate::em;
use crate::metric::{Mat4, Metric};
use crate::tetrad::{Tetrad, E1, E2, E3, E4};
use symrat::{SymError, SymExpr, Var};

/// Metric, tetrad, and derived connection data computed once.
pub struct Background {
    pub metric: Metric,
    pub tetrad: Tetrad,
    /// Christoffel symbols `Γ^μ_{νλ}`.
    pub gamma: [Mat4; 4],
    /// Frame rotation coefficients `γ_{abc} = g(D_{e_a} e_b, e_c)`.
    pub rot: [Mat4; 4],
}

impl Background {
    pub fn new() -> Result<Background, SymError> {
        let metric = Metric::kerr_newman();
        let tetrad = Tetrad::kerr_newman();
        let gamma = metric.christoffel()?;
        let rot = tetrad.rotation_coefficients(&metric, &gamma)?;
        Ok(Background {
            metric,
            tetrad,
            gamma,
            rot,
        })
    }
}

/// All background scalars used by the wave-operator machinery. Horizontal
/// one-forms are stored as real component pairs `[·₁, ·₂]`.
#[derive(Clone, Debug)]
pub struct BackgroundCatalog {
    // Real connection scalars.
    pub trchi: SymExpr,
    pub atrchi: SymExpr,
    pub trchib: SymExpr,
    pub atrchib: SymExpr,
    pub omega_bar: SymExpr,
    pub omega: SymExpr,
    /// Traceless symmetric shear parts `[χ̂₁₁, χ̂₁₂]` (vanish on this
    /// background); likewise for the incoming shear.
    pub chihat: [SymExpr; 2],
    pub chibhat: [SymExpr; 2],
    pub xi: [SymExpr; 2],
    pub xib: [SymExpr; 2],
    pub zeta: [SymExpr; 2],
    pub eta: [SymExpr; 2],
    pub etab: [SymExpr; 2],
    // Curvature scalars.
    pub rho: SymExpr,
    pub star_rho: SymExpr,
    pub rho_f: SymExpr,
    pub star_rho_f: SymExpr,
    /// Frame components that vanish on a type-D background: the extreme
    /// conformal components `W(e_a, e₄, e_b, e₄)`, `W(e_a, e₃, e_b, e₃)`
    /// (packed `[11, 12]`) and the middle one-form pieces
    /// `W(e_a, e₄, e₃, e₄)`, `W(e_a, e₃, e₃, e₄)`.
    pub weyl_alpha: [SymExpr; 2],
    pub weyl_alphab: [SymExpr; 2],
    pub weyl_beta: [SymExpr; 2],
    pub weyl_betab: [SymExpr; 2],
    pub beta_f: [SymExpr; 2],
    pub betab_f: [SymExpr; 2],
}

fn q3() -> SymExpr {
    // |q|³ = |q|²·|q| with the formal marker.
    SymExpr::q_mod_sq() * SymExpr::qa()
}

impl BackgroundCatalog {
    /// The hand-entered closed forms.
    pub fn closed_form() -> BackgroundCatalog {
        let r = SymExpr::var(Var::R);
        let x = SymExpr::var(Var::X);
        let s = SymExpr::sin_theta();
        let a = SymExpr::var(Var::A);
        let m = SymExpr::var(Var::M);
        let qc = SymExpr::var(Var::Q);
        let q2 = SymExpr::q_mod_sq();
        let q4 = q2.clone() * q2.clone();
        let q6 = q4.clone() * q2.clone();
        let delta = SymExpr::delta();
        let two = SymExpr::int(2);
        let zero2 = || [SymExpr::zero(), SymExpr::zero()];

        let trchi = two.clone() * r.clone() / q2.clone();
        let atrchi = two.clone() * a.clone() * x.clone() / q2.clone();
        let trchib = -two.clone() * r.clone() * delta.clone() / q4.clone();
        let atrchib = two.clone() * a.clone() * delta.clone() * x.clone() / q4.clone();
        let omega_bar = (a.clone() * a.clone() * x.clone() * x.clone()
            * (r.clone() - m.clone())
            + m.clone() * r.clone() * r.clone()
            - a.clone() * a.clone() * r.clone()
            - qc.clone() * qc.clone() * r.clone())
            / q4.clone();

        let e1 = -a.clone() * a.clone() * s.clone() * x.clone() / q3();
        let e2 = a.clone() * s.clone() * r.clone() / q3();
        let eta = [e1.clone(), e2.clone()];
        let etab = [e1.clone(), -e2.clone()];
        // ζ = −η̱.
        let zeta = [-e1, e2];

        let rho = (-two.clone() * m.clone() * r.clone() * r.clone() * r.clone()
            + two.clone() * qc.clone() * qc.clone() * r.clone() * r.clone()
            + SymExpr::int(6) * m.clone() * a.clone() * a.clone() * x.clone() * x.clone()
                * r.clone()
            - two.clone() * qc.clone() * qc.clone() * a.clone() * a.clone() * x.clone()
                * x.clone())
            / q6.clone();
        let star_rho = (a.clone() * x.clone() / q6)
            * (SymExpr::int(6) * m.clone() * r.clone() * r.clone()
                - SymExpr::int(4) * qc.clone() * qc.clone() * r.clone()
                - two.clone() * m * a.clone() * a.clone() * x.clone() * x.clone());
        let rho_f = qc.clone()
            * (r.clone() * r.clone() - a.clone() * a.clone() * x.clone() * x.clone())
            / q4.clone();
        let star_rho_f = two * a * qc * r * x / q4;

        BackgroundCatalog {
            trchi,
            atrchi,
            trchib,
            atrchib,
            omega_bar,
            omega: SymExpr::zero(),
            chihat: zero2(),
            chibhat: zero2(),
            xi: zero2(),
            xib: zero2(),
            zeta,
            eta,
            etab,
            rho,
            star_rho,
            rho_f,
            star_rho_f,
            weyl_alpha: zero2(),
            weyl_alphab: zero2(),
            weyl_beta: zero2(),
            weyl_betab: zero2(),
            beta_f: zero2(),
            betab_f: zero2(),
        }
    }

    /// Everything computed from the metric: connection scalars from the
    /// rotation coefficients, curvature scalars from the conformal tensor,
    /// and field scalars from `F = dA`.
    pub fn computed(bg: &Background) -> Result<BackgroundCatalog, SymError> {
        let rot = &bg.rot;
        let half = SymExpr::rat(1, 2);
        let quarter = SymExpr::rat(1, 4);

        // Second-fundamental-form components χ_{ab} = γ_{a4b}, χ̱_{ab} = γ_{a3b}.
        let chi = |a: usize, b: usize| rot[a][E4][b].clone();
        let chib = |a: usize, b: usize| rot[a][E3][b].clone();
        let trchi = chi(E1, E1) + chi(E2, E2);
        let atrchi = chi(E1, E2) - chi(E2, E1);
        let trchib = chib(E1, E1) + chib(E2, E2);
        let atrchib = chib(E1, E2) - chib(E2, E1);
        let chihat = [
            half.clone() * (chi(E1, E1) - chi(E2, E2)),
            half.clone() * (chi(E1, E2) + chi(E2, E1)),
        ];
        let chibhat = [
            half.clone() * (chib(E1, E1) - chib(E2, E2)),
            half.clone() * (chib(E1, E2) + chib(E2, E1)),
        ];
        // D_a e₄ = χ_{ab} e_b − ζ_a e₄  ⇒  ζ_a = ½ γ_{a43}.
        let zeta = [
            half.clone() * rot[E1][E4][E3].clone(),
            half.clone() * rot[E2][E4][E3].clone(),
        ];
        // D₃ e₄ = 2ω̱ e₄ + 2η_b e_b  ⇒  η_b = ½ γ_{34b}, ω̱ = −¼ γ_{343}.
        let eta = [
            half.clone() * rot[E3][E4][E1].clone(),
            half.clone() * rot[E3][E4][E2].clone(),
        ];
        let omega_bar = -quarter.clone() * rot[E3][E4][E3].clone();
        // D₄ e₃ = 2ω e₃ + 2η̱_b e_b  ⇒  η̱_b = ½ γ_{43b}, ω = −¼ γ_{434}.
        let etab = [
            half.clone() * rot[E4][E3][E1].clone(),
            half.clone() * rot[E4][E3][E2].clone(),
        ];
        let omega = -quarter * rot[E4][E3][E4].clone();
        // D₄ e₄ = −2ω e₄ + 2ξ_b e_b; D₃ e₃ = −2ω̱ e₃ + 2ξ̱_b e_b.
        let xi = [
            half.clone() * rot[E4][E4][E1].clone(),
            half.clone() * rot[E4][E4][E2].clone(),
        ];
        let xib = [
            half.clone() * rot[E3][E3][E1].clone(),
            half * rot[E3][E3][E2].clone(),
        ];

        // Curvature scalars from the conformal tensor.
        let gamma = &bg.gamma;
        let riemann = bg.metric.riemann(gamma)?;
        let ricci = bg.metric.ricci(&riemann);
        let rs = bg.metric.scalar_curvature(&ricci);
        let weyl = bg.metric.weyl(&riemann, &ricci, &rs);
        let t = &bg.tetrad;
        // W(e_a, e₃, e_b, e₄) = −ρ δ_{ab} + *ρ ∈_{ab}.
        let rho = -t.contract4(&weyl, E1, E3, E1, E4);
        let star_rho = t.contract4(&weyl, E1, E3, E2, E4);
        let weyl_alpha = [
            t.contract4(&weyl, E1, E4, E1, E4),
            t.contract4(&weyl, E1, E4, E2, E4),
        ];
        let weyl_alphab = [
            t.contract4(&weyl, E1, E3, E1, E3),
            t.contract4(&weyl, E1, E3, E2, E3),
        ];
        let weyl_beta = [
            t.contract4(&weyl, E1, E4, E3, E4),
            t.contract4(&weyl, E2, E4, E3, E4),
        ];
        let weyl_betab = [
            t.contract4(&weyl, E1, E3, E3, E4),
            t.contract4(&weyl, E2, E3, E3, E4),
        ];

        // Field scalars: ρ^F = ½F(e₃,e₄), F_{ab} = −∈_{ab} *ρ^F,
        // β^F_a = ½F(e_a, e₄), β̱^F_a = ½F(e_a, e₃).
        let f = em::field_strength(&em::potential())?;
        let fr = |a: usize, b: usize| t.contract2(&f, a, b);
        let rho_f = SymExpr::rat(1, 2) * fr(E3, E4);
        let star_rho_f = -fr(E1, E2);
        let beta_f = [
            SymExpr::rat(1, 2) * fr(E1, E4),
            SymExpr::rat(1, 2) * fr(E2, E4),
        ];
        let betab_f = [
            SymExpr::rat(1, 2) * fr(E1, E3),
            SymExpr::rat(1, 2) * fr(E2, E3),
        ];

        Ok(BackgroundCatalog {
            trchi,
            atrchi,
            trchib,
            atrchib,
            omega_bar,
            omega,
            chihat,
            chibhat,
            xi,
            xib,
            zeta,
            eta,
            etab,
            rho,
            star_rho,
            rho_f,
            star_rho_f,
            weyl_alpha,
            weyl_alphab,
            weyl_beta,
            weyl_betab,
            beta_f,
            betab_f,
        })
    }

    /// All entries as named scalars, for pairwise comparison and reporting.
    pub fn entries(&self) -> Vec<(&'static str, SymExpr)> {
        let mut out: Vec<(&'static str, SymExpr)> = vec![
            ("trchi", self.trchi.clone()),
            ("atrchi", self.atrchi.clone()),
            ("trchib", self.trchib.clone()),
            ("atrchib", self.atrchib.clone()),
            ("omega_bar", self.omega_bar.clone()),
            ("omega", self.omega.clone()),
            ("rho", self.rho.clone()),
            ("star_rho", self.star_rho.clone()),
            ("rho_f", self.rho_f.clone()),
            ("star_rho_f", self.star_rho_f.clone()),
        ];
        let pairs: [(&'static str, &[SymExpr; 2]); 11] = [
            ("chihat", &self.chihat),
            ("chibhat", &self.chibhat),
            ("xi", &self.xi),
            ("xib", &self.xib),
            ("zeta", &self.zeta),
            ("eta", &self.eta),
            ("etab", &self.etab),
            ("weyl_alpha", &self.weyl_alpha),
            ("weyl_alphab", &self.weyl_alphab),
            ("weyl_beta", &self.weyl_beta),
            ("weyl_betab", &self.weyl_betab),
        ];
        for (name, p) in pairs {
            // Component suffixes are folded into one report line per pair by
            // emitting both with the same label; callers index by position.
            out.push((name, p[0].clone()));
            out.push((name, p[1].clone()));
        }
        out.push(("beta_f", self.beta_f[0].clone()));
        out.push(("beta_f", self.beta_f[1].clone()));
        out.push(("betab_f", self.betab_f[0].clone()));
        out.push(("betab_f", self.betab_f[1].clone()));
        out
    }

    // ---- complexified combinations -----------------------------------

    /// `trX = trχ − i·ᵃtrχ = 2/q`.
    pub fn tr_x(&self) -> SymExpr {
        self.trchi.clone() - SymExpr::i() * self.atrchi.clone()
    }

    /// `tr X̱ = trχ̱ − i·ᵃtrχ̱ = −2Δ/(q q̄²)`.
    pub fn tr_xb(&self) -> SymExpr {
        self.trchib.clone() - SymExpr::i() * self.atrchib.clone()
    }

    /// Complex pair `[ξ₁ + iξ₂, ξ₂ − iξ₁]` of a real horizontal one-form:
    /// the anti-self-dual combination `ξ + i*ξ` with `*ξ₁ = ξ₂, *ξ₂ = −ξ₁`.
    pub fn complex_pair(p: &[SymExpr; 2]) -> [SymExpr; 2] {
        [
            p[0].clone() + SymExpr::i() * p[1].clone(),
            p[1].clone() - SymExpr::i() * p[0].clone(),
        ]
    }

    /// `H = η + i*η` (components).
    pub fn h(&self) -> [SymExpr; 2] {
        Self::complex_pair(&self.eta)
    }

    /// `H̱ = η̱ + i*η̱`.
    pub fn hb(&self) -> [SymExpr; 2] {
        Self::complex_pair(&self.etab)
    }

    /// `Z = ζ + i*ζ`.
    pub fn z(&self) -> [SymExpr; 2] {
        Self::complex_pair(&self.zeta)
    }

    /// `P^F = ρ^F + i·*ρ^F = Q/q̄²`.
    pub fn p_f(&self) -> SymExpr {
        self.rho_f.clone() + SymExpr::i() * self.star_rho_f.clone()
    }

    /// `P = ρ + i·*ρ = −2M/q³ + 2Q²/(q³q̄)`.
    pub fn p(&self) -> SymExpr {
        self.rho.clone() + SymExpr::i() * self.star_rho.clone()
    }
}

/// The horizontal rotation one-form `Λ_μ = g(D_{e_μ} e₁, e₂)` over all four
/// frame directions (`μ` in the frame-label order `e₁, e₂, e₃, e₄`); this is
/// the connection of the horizontal bundle used by the frame operators.
pub fn horizontal_connection(bg: &Background) -> [SymExpr; 4] {
    core::array::from_fn(|mu| bg.rot[mu][E1][E2].clone())
}
