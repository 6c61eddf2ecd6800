//! Assembled discrete operators for one azimuthal mode.
//!
//! Radial direction: a uniform `r*` grid with fourth-order centered
//! differences; the second-order radial operator is kept in divergence
//! form `D₁(w·D₁ψ)` with `w = r² + a²`, which is what makes the discrete
//! energy of the uncoupled static-limit system conserved for fields
//! supported away from the boundary rows.
//!
//! Angular direction: spectral multipole coefficients on the spin-1 and
//! spin-2 bases of [`crate::angular`].  All θ-dependent coefficients act
//! through small dense per-radius matrices assembled by quadrature, whose
//! order is validated by re-assembly at higher order.
//!
//! The evolved spin-2 variable is `√2` times the component field; the
//! couplings carry the matching `1/√2` and `√2` factors.  With this
//! normalization the two coupling operators are exact mutual adjoints
//! with relative weight `8Q²` in the static limit, so the monitored total
//! energy uses the field weights `(1, 8Q²)` and a single cross term.

use num_complex::Complex64;

use crate::angular::{AngularGrid, SpinBasis};
use crate::coeffs::KnParams;
use crate::config::GridSpec;
use crate::error::SolverError;
use crate::tortoise::TortoiseMap;

/// Stability margin of the classical Runge-Kutta scheme on the imaginary
/// axis, used for the angular-stiffness time-step cap.
const RK4_IMAGINARY_LIMIT: f64 = 2.5;

/// Relative tolerance for the quadrature-order validation.
const QUADRATURE_TOL: f64 = 1e-9;

/// Per-field discrete operators (all real; the couplings are separate).
#[derive(Clone, Debug)]
pub struct FieldOps {
    /// Spin weight (1 for `p`, 2 for `u`).
    pub spin_weight: i32,
    /// Smallest retained multipole.
    pub lmin: i32,
    /// Number of retained multipoles.
    pub n: usize,
    /// Mass matrices `M̃`, `n_r` blocks of `n × n`.
    pub mass: Vec<f64>,
    /// Inverse mass matrices, `n_r` blocks of `n × n`.
    pub inv_mass: Vec<f64>,
    /// Potential blocks `A` (angular eigenvalues, azimuthal and residual
    /// potentials, horizon-regular scaling included): the acceleration is
    /// `M̃⁻¹[D₁(w D₁ψ) + Aψ + iF·∂_tψ − coupling]`.
    pub stiff: Vec<f64>,
    /// First-order blocks `F` (frame dragging; zero at `a = 0`).
    pub first_order: Vec<f64>,
}

impl FieldOps {
    /// Block `j` of the mass matrix.
    pub fn mass_block(&self, j: usize) -> &[f64] {
        &self.mass[j * self.n * self.n..(j + 1) * self.n * self.n]
    }

    /// Block `j` of the inverse mass matrix.
    pub fn inv_mass_block(&self, j: usize) -> &[f64] {
        &self.inv_mass[j * self.n * self.n..(j + 1) * self.n * self.n]
    }

    /// Block `j` of the potential matrix.
    pub fn stiff_block(&self, j: usize) -> &[f64] {
        &self.stiff[j * self.n * self.n..(j + 1) * self.n * self.n]
    }

    /// Block `j` of the first-order matrix.
    pub fn first_order_block(&self, j: usize) -> &[f64] {
        &self.first_order[j * self.n * self.n..(j + 1) * self.n * self.n]
    }
}

/// All discrete operators needed to evolve one `m`-mode.
#[derive(Clone, Debug)]
pub struct ModeOperators {
    /// Background parameters.
    pub params: KnParams,
    /// Grid specification.
    pub grid: GridSpec,
    /// Tortoise map used to place the radial nodes.
    pub map: TortoiseMap,
    /// Boyer-Lindquist radius at each node.
    pub r: Vec<f64>,
    /// Radial flux weight `w = r² + a²` at each node.
    pub w: Vec<f64>,
    /// Horizon-regular factor `Δ/w` at each node.
    pub hf: Vec<f64>,
    /// Spin-1 field operators.
    pub p: FieldOps,
    /// Spin-2 field operators.
    pub u: FieldOps,
    /// Coupling into the `p`-equation (applied to `u`): zeroth/θ/m part,
    /// `n_r` blocks of `n_p × n_u`.
    pub cm_pu: Vec<Complex64>,
    /// Coupling into the `p`-equation applied to `i∂_t u`.
    pub ct_pu: Vec<Complex64>,
    /// Coupling into the `u`-equation (applied to `p`), `n_u × n_p`.
    pub cm_up: Vec<Complex64>,
    /// Coupling into the `u`-equation applied to `i∂_t p`.
    pub ct_up: Vec<Complex64>,
    /// Stable time step for the grid.
    pub dt: f64,
}

impl ModeOperators {
    /// Builds every discrete operator for the given background and grid.
    pub fn build(params: KnParams, grid: &GridSpec) -> Result<Self, SolverError> {
        let map = TortoiseMap::new(params.mass, params.spin, params.charge)?;
        if map.r_plus == 0.0 && grid.rstar_min <= 0.0 {
            return Err(SolverError::Config(format!(
                "flat background needs rstar_min > 0, got {}",
                grid.rstar_min
            )));
        }
        let n_r = grid.n_r;
        let r: Vec<f64> = (0..n_r).map(|j| map.r_from_star(grid.rstar(j))).collect();
        let w: Vec<f64> = r.iter().map(|&rj| params.w(rj)).collect();
        let hf: Vec<f64> = r.iter().map(|&rj| params.horizon_factor(rj)).collect();

        let n_quad = 16usize.max(2 * (grid.l_max as usize + 4));
        let coarse = Assembly::new(&params, grid, &r, &hf, n_quad)?;
        let fine = Assembly::new(&params, grid, &r, &hf, n_quad + 8)?;
        coarse.compare(&fine)?;
        let Assembly {
            p, u, cm_pu, ct_pu, cm_up, ct_up, ..
        } = fine;

        let dt = stable_dt(&params, grid, &r, &p, &u);
        Ok(Self {
            params,
            grid: grid.clone(),
            map,
            r,
            w,
            hf,
            p,
            u,
            cm_pu,
            ct_pu,
            cm_up,
            ct_up,
            dt,
        })
    }

    /// Coupling block `j` of an `nrow × ncol` family.
    pub fn coupling_block<'a>(
        &self,
        family: &'a [Complex64],
        j: usize,
    ) -> &'a [Complex64] {
        let stride = family.len() / self.grid.n_r;
        &family[j * stride..(j + 1) * stride]
    }
}

/// One complete assembly pass at a fixed quadrature order.
struct Assembly {
    p: FieldOps,
    u: FieldOps,
    cm_pu: Vec<Complex64>,
    ct_pu: Vec<Complex64>,
    cm_up: Vec<Complex64>,
    ct_up: Vec<Complex64>,
}

impl Assembly {
    fn new(
        params: &KnParams,
        grid: &GridSpec,
        r: &[f64],
        hf: &[f64],
        n_quad: usize,
    ) -> Result<Self, SolverError> {
        let ang = AngularGrid::new(n_quad);
        let bp = ang.spin_basis(1, grid.m, grid.l_max);
        let bu = ang.spin_basis(2, grid.m, grid.l_max);
        if bp.is_empty() || bu.is_empty() {
            return Err(SolverError::Config(format!(
                "band limit l_max = {} retains no multipoles for m = {}",
                grid.l_max, grid.m
            )));
        }
        let p = field_ops(params, grid, r, hf, &ang, &bp, |p, rj, x| p.residual_r1(rj, x))?;
        let u = field_ops(params, grid, r, hf, &ang, &bu, |p, rj, x| p.residual_r2(rj, x))?;

        // Couplings.  The evolved spin-2 variable is √2 × the component
        // field, hence the 1/√2 and √2 factors here.
        let sq2 = std::f64::consts::SQRT_2;
        let mf = grid.m as f64;
        let (np, nu, n_r) = (bp.len(), bu.len(), grid.n_r);
        let mut cm_pu = vec![Complex64::new(0.0, 0.0); n_r * np * nu];
        let mut ct_pu = vec![Complex64::new(0.0, 0.0); n_r * np * nu];
        let mut cm_up = vec![Complex64::new(0.0, 0.0); n_r * nu * np];
        let mut ct_up = vec![Complex64::new(0.0, 0.0); n_r * nu * np];
        for j in 0..n_r {
            let rj = r[j];
            let alpha = |k: usize, x: f64| {
                params.coupling_to_spin2(rj, x, (1.0 - x * x).sqrt())[k]
            };
            let beta = |k: usize, x: f64| {
                params.coupling_to_spin1(rj, x, (1.0 - x * x).sqrt())[k]
            };
            let mut zero_pu = ang.op_matrix(&bp, &bu, true, |_, x| alpha(0, x) / sq2);
            let mul_pu = ang.op_matrix(&bp, &bu, false, |_, x| {
                (mf * alpha(1, x) + alpha(3, x)) / sq2
            });
            for (z, m) in zero_pu.iter_mut().zip(&mul_pu) {
                *z += m;
            }
            let t_pu = ang.op_matrix(&bp, &bu, false, |_, x| alpha(2, x) / sq2);
            let mut zero_up = ang.op_matrix(&bu, &bp, true, |_, x| sq2 * beta(0, x));
            let mul_up = ang.op_matrix(&bu, &bp, false, |_, x| {
                sq2 * (mf * beta(1, x) + beta(3, x))
            });
            for (z, m) in zero_up.iter_mut().zip(&mul_up) {
                *z += m;
            }
            let t_up = ang.op_matrix(&bu, &bp, false, |_, x| sq2 * beta(2, x));
            cm_pu[j * np * nu..(j + 1) * np * nu].copy_from_slice(&zero_pu);
            ct_pu[j * np * nu..(j + 1) * np * nu].copy_from_slice(&t_pu);
            cm_up[j * nu * np..(j + 1) * nu * np].copy_from_slice(&zero_up);
            ct_up[j * nu * np..(j + 1) * nu * np].copy_from_slice(&t_up);
        }
        Ok(Self {
            p,
            u,
            cm_pu,
            ct_pu,
            cm_up,
            ct_up,
        })
    }

    /// Compares two assemblies elementwise; disagreement means the
    /// quadrature has not converged at the requested band limit.
    fn compare(&self, other: &Assembly) -> Result<(), SolverError> {
        let check_f = |name: &str, a: &[f64], b: &[f64]| {
            let scale = 1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (x, y) in a.iter().zip(b) {
                if (x - y).abs() > QUADRATURE_TOL * scale {
                    return Err(SolverError::Quadrature(format!(
                        "{name}: order-doubling residual {} exceeds tolerance",
                        (x - y).abs() / scale
                    )));
                }
            }
            Ok(())
        };
        let check_c = |name: &str, a: &[Complex64], b: &[Complex64]| {
            let scale = 1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.norm()));
            for (x, y) in a.iter().zip(b) {
                if (x - y).norm() > QUADRATURE_TOL * scale {
                    return Err(SolverError::Quadrature(format!(
                        "{name}: order-doubling residual {} exceeds tolerance",
                        (x - y).norm() / scale
                    )));
                }
            }
            Ok(())
        };
        check_f("mass", &self.p.inv_mass, &other.p.inv_mass)?;
        check_f("potential (spin 1)", &self.p.stiff, &other.p.stiff)?;
        check_f("potential (spin 2)", &self.u.stiff, &other.u.stiff)?;
        check_f("first order (spin 1)", &self.p.first_order, &other.p.first_order)?;
        check_f("first order (spin 2)", &self.u.first_order, &other.u.first_order)?;
        check_c("coupling into spin 1", &self.cm_pu, &other.cm_pu)?;
        check_c("coupling into spin 2", &self.cm_up, &other.cm_up)?;
        check_c("velocity coupling into spin 1", &self.ct_pu, &other.ct_pu)?;
        check_c("velocity coupling into spin 2", &self.ct_up, &other.ct_up)?;
        Ok(())
    }
}

/// Builds the per-field real operator blocks.
fn field_ops(
    params: &KnParams,
    grid: &GridSpec,
    r: &[f64],
    hf: &[f64],
    ang: &AngularGrid,
    basis: &SpinBasis,
    residual: impl Fn(&KnParams, f64, f64) -> f64,
) -> Result<FieldOps, SolverError> {
    let n = basis.len();
    let n_r = grid.n_r;
    let k = basis.spin;
    // r-independent moment matrices of x and x² in this basis.
    let xmat = real_matrix(ang, basis, |x| x);
    let x2mat = real_matrix(ang, basis, |x| x * x);
    let mut mass = vec![0.0; n_r * n * n];
    let mut inv_mass = vec![0.0; n_r * n * n];
    let mut stiff = vec![0.0; n_r * n * n];
    let mut first_order = vec![0.0; n_r * n * n];
    let mut scratch = vec![0.0; n * n];
    for j in 0..n_r {
        let rj = r[j];
        let block = j * n * n;
        // Mass matrix M̃ = c₀·I + c₂·x² and its inverse.
        let (c0, c2) = (params.mass_c0(rj), params.mass_c2(rj));
        for a in 0..n {
            for b in 0..n {
                scratch[a * n + b] = c2 * x2mat[a * n + b] + if a == b { c0 } else { 0.0 };
            }
        }
        mass[block..block + n * n].copy_from_slice(&scratch);
        invert_dense(&mut scratch, &mut inv_mass[block..block + n * n], n).map_err(|_| {
            SolverError::Config(format!("mass matrix singular at r = {rj}"))
        })?;
        // Potential block: −(Δ/w)(ℓ(ℓ+1)−k²) + a²m²/w + (Δ/w)·R_k.
        let rmat = real_matrix(ang, basis, |x| residual(params, rj, x));
        let az = params.azimuthal_potential(rj, grid.m);
        for a in 0..n {
            for b in 0..n {
                let mut v = hf[j] * rmat[a * n + b];
                if a == b {
                    v += az - hf[j] * basis.eigenvalue(a);
                }
                stiff[block + a * n + b] = v;
            }
        }
        // First-order block: (Δ/w)(−2k·a·x) + scalar frame dragging.
        let fx = params.frame_dragging_x(rj, k);
        let fs = params.frame_dragging_scalar(rj, grid.m);
        for a in 0..n {
            for b in 0..n {
                first_order[block + a * n + b] =
                    fx * xmat[a * n + b] + if a == b { fs } else { 0.0 };
            }
        }
    }
    Ok(FieldOps {
        spin_weight: k,
        lmin: basis.lmin,
        n,
        mass,
        inv_mass,
        stiff,
        first_order,
    })
}

/// Real multiplication-operator matrix in a single basis.
fn real_matrix(ang: &AngularGrid, basis: &SpinBasis, f: impl Fn(f64) -> f64) -> Vec<f64> {
    ang.op_matrix(basis, basis, false, |_, x| Complex64::new(f(x), 0.0))
        .into_iter()
        .map(|c| c.re)
        .collect()
}

/// Gauss-Jordan inverse with partial pivoting; `a` is destroyed.
fn invert_dense(a: &mut [f64], out: &mut [f64], n: usize) -> Result<(), ()> {
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = if i == j { 1.0 } else { 0.0 };
        }
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i * n + col]
                    .abs()
                    .partial_cmp(&a[j * n + col].abs())
                    .unwrap()
            })
            .ok_or(())?;
        if a[pivot * n + col].abs() < 1e-300 {
            return Err(());
        }
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
                out.swap(col * n + j, pivot * n + j);
            }
        }
        let inv = 1.0 / a[col * n + col];
        for j in 0..n {
            a[col * n + j] *= inv;
            out[col * n + j] *= inv;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let factor = a[i * n + col];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                a[i * n + j] -= factor * a[col * n + j];
                out[i * n + j] -= factor * out[col * n + j];
            }
        }
    }
    Ok(())
}

/// Time step from the radial CFL bound and an angular-stiffness cap.
fn stable_dt(params: &KnParams, grid: &GridSpec, r: &[f64], p: &FieldOps, u: &FieldOps) -> f64 {
    let c_max = r
        .iter()
        .fold(1.0f64, |m, &rj| m.max(params.max_wave_speed(rj)));
    let radial = grid.cfl * grid.h() / c_max;
    let mut omega_sq = 0.0f64;
    for f in [p, u] {
        let n = f.n;
        for j in 0..grid.n_r {
            let s_norm = max_row_sum(f.stiff_block(j), n) + max_row_sum(f.first_order_block(j), n);
            let m_norm = max_row_sum(f.inv_mass_block(j), n);
            omega_sq = omega_sq.max(s_norm * m_norm);
        }
    }
    let angular = RK4_IMAGINARY_LIMIT / omega_sq.sqrt().max(1e-300);
    radial.min(angular)
}

fn max_row_sum(block: &[f64], n: usize) -> f64 {
    (0..n).fold(0.0f64, |m, a| {
        m.max((0..n).map(|b| block[a * n + b].abs()).sum())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n_r: usize, l_max: i32, m: i32) -> GridSpec {
        GridSpec {
            rstar_min: -60.0,
            rstar_max: 60.0,
            n_r,
            l_max,
            m,
            cfl: 0.4,
        }
    }

    #[test]
    fn static_limit_first_order_blocks_vanish() {
        let params = KnParams {
            mass: 1.0,
            spin: 0.0,
            charge: 0.3,
        };
        let ops = ModeOperators::build(params, &grid(32, 4, 1)).unwrap();
        for v in ops.p.first_order.iter().chain(&ops.u.first_order) {
            assert_eq!(*v, 0.0);
        }
        for v in ops.ct_pu.iter().chain(&ops.ct_up) {
            assert_eq!(*v, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn static_limit_potential_blocks_are_diagonal_long_range() {
        // At a = 0 the potential block must be the diagonal
        // −(Δ/r²)[ℓ(ℓ+1) − k² + r²V_k].
        let params = KnParams {
            mass: 1.0,
            spin: 0.0,
            charge: 0.3,
        };
        let ops = ModeOperators::build(params, &grid(48, 5, 0)).unwrap();
        for j in [0, 17, 47] {
            let rj = ops.r[j];
            let f = ops.hf[j];
            for (field, v, k) in [
                (&ops.p, params.potential_v1(rj), 1.0),
                (&ops.u, params.potential_v2(rj), 2.0),
            ] {
                let block = field.stiff_block(j);
                for a in 0..field.n {
                    let l = (field.lmin + a as i32) as f64;
                    for b in 0..field.n {
                        let expect = if a == b {
                            -f * (l * (l + 1.0) - k * k + rj * rj * v)
                        } else {
                            0.0
                        };
                        assert!(
                            (block[a * field.n + b] - expect).abs() < 1e-10 * (1.0 + expect.abs()),
                            "j = {j}, ({a},{b}): {} vs {expect}",
                            block[a * field.n + b]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn schwarzschild_limit_reproduces_regge_wheeler_potentials() {
        // Independent oracle: at a = Q = 0 the per-multipole equation for
        // ψ = r·field must carry the classical potentials
        //   spin 1:  (1 − 2M/r)·ℓ(ℓ+1)/r²
        //   spin 2:  (1 − 2M/r)·[ℓ(ℓ+1)/r² − 6M/r³].
        // In our variables the potential diagonal is −f[ℓ(ℓ+1) − k² + r²V_k]
        // with M̃ = r²; transforming to ψ = r·field adds f·(2M/r − k² + …):
        // check the combination −diag/r² − 2M f/r³ against the oracle.
        let params = KnParams {
            mass: 1.0,
            spin: 0.0,
            charge: 0.0,
        };
        let ops = ModeOperators::build(params, &grid(48, 4, 0)).unwrap();
        for j in [3, 25, 40] {
            let rj = ops.r[j];
            let f = 1.0 - 2.0 * params.mass / rj;
            for (field, k) in [(&ops.p, 1.0f64), (&ops.u, 2.0)] {
                let block = field.stiff_block(j);
                for a in 0..field.n {
                    let l = (field.lmin + a as i32) as f64;
                    let rw = if k == 1.0 {
                        f * l * (l + 1.0) / (rj * rj)
                    } else {
                        f * (l * (l + 1.0) / (rj * rj) - 6.0 * params.mass / rj.powi(3))
                    };
                    let ours = -block[a * field.n + a] / (rj * rj)
                        + 2.0 * params.mass * f / rj.powi(3);
                    assert!(
                        (ours - rw).abs() < 1e-12 * (1.0 + rw.abs()),
                        "spin {k}, l = {l}: {ours} vs {rw}"
                    );
                }
            }
        }
    }

    #[test]
    fn static_limit_couplings_are_single_multipole_adjoint_pairs() {
        let params = KnParams {
            mass: 1.0,
            spin: 0.0,
            charge: 0.3,
        };
        let ops = ModeOperators::build(params, &grid(32, 5, 1)).unwrap();
        let (np, nu) = (ops.p.n, ops.u.n);
        let mu = 8.0 * params.charge * params.charge;
        for j in [0, 15, 31] {
            let pu = ops.coupling_block(&ops.cm_pu, j);
            let up = ops.coupling_block(&ops.cm_up, j);
            for a in 0..np {
                let la = ops.p.lmin + a as i32;
                for b in 0..nu {
                    let lb = ops.u.lmin + b as i32;
                    // Real entries, nonzero only on matching multipoles.
                    assert!(pu[a * nu + b].im.abs() < 1e-12);
                    assert!(up[b * np + a].im.abs() < 1e-12);
                    if la != lb {
                        assert!(pu[a * nu + b].norm() < 1e-12, "({la},{lb})");
                        assert!(up[b * np + a].norm() < 1e-12, "({la},{lb})");
                    } else {
                        // Mutual adjointness with weight 8Q².
                        let lhs = pu[a * nu + b].re;
                        let rhs = mu * up[b * np + a].re;
                        assert!(
                            (lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()),
                            "l = {la}: {lhs} vs {rhs}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn flat_grid_must_stay_at_positive_radius() {
        let params = KnParams {
            mass: 0.0,
            spin: 0.0,
            charge: 0.0,
        };
        assert!(ModeOperators::build(params, &grid(32, 3, 0)).is_err());
        let ok = GridSpec {
            rstar_min: 1.0,
            rstar_max: 61.0,
            n_r: 32,
            l_max: 3,
            m: 0,
            cfl: 0.4,
        };
        assert!(ModeOperators::build(params, &ok).is_ok());
    }

    #[test]
    fn inverse_mass_blocks_invert_the_mass_matrix() {
        let params = KnParams {
            mass: 1.0,
            spin: 0.7,
            charge: 0.2,
        };
        let ops = ModeOperators::build(params, &grid(24, 4, 0)).unwrap();
        // Rebuild M̃ from the quadrature layer and check M·M⁻¹ = I.
        let ang = AngularGrid::new(32);
        let basis = ang.spin_basis(1, 0, 4);
        let x2 = real_matrix(&ang, &basis, |x| x * x);
        let n = ops.p.n;
        for j in [0, 11, 23] {
            let rj = ops.r[j];
            let (c0, c2) = (params.mass_c0(rj), params.mass_c2(rj));
            let inv = ops.p.inv_mass_block(j);
            for a in 0..n {
                for b in 0..n {
                    let mut acc = 0.0;
                    for k in 0..n {
                        let m_ak = c2 * x2[a * n + k] + if a == k { c0 } else { 0.0 };
                        acc += m_ak * inv[k * n + b];
                    }
                    let expect = if a == b { 1.0 } else { 0.0 };
                    assert!((acc - expect).abs() < 1e-11, "({a},{b}): {acc}");
                }
            }
        }
    }

    #[test]
    fn time_step_respects_radial_cfl() {
        let params = KnParams {
            mass: 1.0,
            spin: 0.1,
            charge: 0.3,
        };
        let g = grid(256, 4, 1);
        let ops = ModeOperators::build(params, &g).unwrap();
        assert!(ops.dt > 0.0);
        assert!(ops.dt <= g.cfl * g.h() + 1e-15);
    }
}
