//! Right-hand side assembly and classical Runge-Kutta stepping.
//!
//! The semi-discrete system is linear:
//!
//! ```text
//! ∂_t p = v_p
//! ∂_t v_p = M̃_p⁻¹[ D₁(w D₁p) + A_p p + i F_p v_p − (Δ/w)(C_pu u + T_pu·i v_u) ]
//! ```
//!
//! and likewise for `u` with the transposed coupling family.  The radial
//! derivative is a fourth-order centered stencil with one-sided closure
//! rows; radiation (Sommerfeld) conditions replace the momentum equation
//! at the two outermost nodes by pure advection `∂_t v = ±∂_{r*}v`.
//!
//! With the `parallel` feature the right-hand side is evaluated over
//! disjoint radial chunks with rayon; there are no cross-chunk
//! reductions, so results are bitwise identical to the sequential build.

use num_complex::Complex64;

use crate::operators::ModeOperators;
use crate::state::FieldState;

/// Radial rows per parallel work item.
const CHUNK: usize = 64;

/// Scratch storage reused across steps.
pub struct Workspace {
    d1_p: Vec<Complex64>,
    d2_p: Vec<Complex64>,
    d1_u: Vec<Complex64>,
    d2_u: Vec<Complex64>,
    stage: FieldState,
    k: FieldState,
    acc: FieldState,
}

impl Workspace {
    /// Allocates scratch arrays for the given operators.
    pub fn new(ops: &ModeOperators) -> Self {
        let zero = FieldState::zero(ops);
        Self {
            d1_p: vec![Complex64::new(0.0, 0.0); zero.p.len()],
            d2_p: vec![Complex64::new(0.0, 0.0); zero.p.len()],
            d1_u: vec![Complex64::new(0.0, 0.0); zero.u.len()],
            d2_u: vec![Complex64::new(0.0, 0.0); zero.u.len()],
            stage: zero.clone(),
            k: zero.clone(),
            acc: zero,
        }
    }
}

/// Runs `body(j0, rows)` over the radial blocks of `out`, where `rows`
/// is the sub-slice for nodes `j0 .. j0 + rows.len()/stride`.
fn over_chunks<F>(out: &mut [Complex64], stride: usize, body: F)
where
    F: Fn(usize, &mut [Complex64]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        out.par_chunks_mut(CHUNK * stride)
            .enumerate()
            .for_each(|(ci, rows)| body(ci * CHUNK, rows));
    }
    #[cfg(not(feature = "parallel"))]
    {
        for (ci, rows) in out.chunks_mut(CHUNK * stride).enumerate() {
            body(ci * CHUNK, rows);
        }
    }
}

/// Fourth-order first derivative on the uniform grid, one-sided at the
/// edges; `src` and `out` are `n_r × stride`.
fn d1(src: &[Complex64], out: &mut [Complex64], n_r: usize, stride: usize, h: f64) {
    let c = 1.0 / (12.0 * h);
    let at = |j: usize, l: usize| src[j * stride + l];
    over_chunks(out, stride, |j0, rows| {
        for (dj, row) in rows.chunks_mut(stride).enumerate() {
            let j = j0 + dj;
            for (l, slot) in row.iter_mut().enumerate() {
                *slot = c * if j >= 2 && j + 2 < n_r {
                    at(j - 2, l) - 8.0 * at(j - 1, l) + 8.0 * at(j + 1, l) - at(j + 2, l)
                } else if j == 0 {
                    -25.0 * at(0, l) + 48.0 * at(1, l) - 36.0 * at(2, l) + 16.0 * at(3, l)
                        - 3.0 * at(4, l)
                } else if j == 1 {
                    -3.0 * at(0, l) - 10.0 * at(1, l) + 18.0 * at(2, l) - 6.0 * at(3, l)
                        + at(4, l)
                } else if j == n_r - 2 {
                    3.0 * at(n_r - 1, l) + 10.0 * at(n_r - 2, l) - 18.0 * at(n_r - 3, l)
                        + 6.0 * at(n_r - 4, l)
                        - at(n_r - 5, l)
                } else {
                    25.0 * at(n_r - 1, l) - 48.0 * at(n_r - 2, l) + 36.0 * at(n_r - 3, l)
                        - 16.0 * at(n_r - 4, l)
                        + 3.0 * at(n_r - 5, l)
                };
            }
        }
    });
}

/// `y += M·x` for a real `n × n` block on complex vectors.
#[inline]
fn real_matvec(m: &[f64], x: &[Complex64], y: &mut [Complex64], n: usize) {
    for a in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for b in 0..n {
            acc += m[a * n + b] * x[b];
        }
        y[a] += acc;
    }
}

/// Evaluates the right-hand side of the system into `out`.
pub fn rhs(ops: &ModeOperators, state: &FieldState, out: &mut FieldState, ws: &mut Workspace) {
    rhs_core(
        ops,
        state,
        out,
        &mut ws.d1_p,
        &mut ws.d2_p,
        &mut ws.d1_u,
        &mut ws.d2_u,
    );
}

#[allow(clippy::too_many_arguments)]
fn rhs_core(
    ops: &ModeOperators,
    state: &FieldState,
    out: &mut FieldState,
    d1_p: &mut [Complex64],
    d2_p: &mut [Complex64],
    d1_u: &mut [Complex64],
    d2_u: &mut [Complex64],
) {
    let n_r = ops.grid.n_r;
    let h = ops.grid.h();
    let (np, nu) = (ops.p.n, ops.u.n);

    // Radial divergence-form terms for both fields.
    d1(&state.p, d1_p, n_r, np, h);
    d1(&state.u, d1_u, n_r, nu, h);
    let w = &ops.w;
    for (d1f, stride) in [(&mut *d1_p, np), (&mut *d1_u, nu)] {
        over_chunks(d1f, stride, |j0, rows| {
            for (dj, row) in rows.chunks_mut(stride).enumerate() {
                let wj = w[j0 + dj];
                for v in row {
                    *v *= wj;
                }
            }
        });
    }
    d1(d1_p, d2_p, n_r, np, h);
    d1(d1_u, d2_u, n_r, nu, h);

    out.t = 1.0;
    out.p.copy_from_slice(&state.vp);
    out.u.copy_from_slice(&state.vu);

    let i = Complex64::new(0.0, 1.0);
    // Momentum equation for p.
    {
        let d2 = &*d2_p;
        over_chunks(&mut out.vp, np, |j0, rows| {
            let mut force = vec![Complex64::new(0.0, 0.0); np];
            for (dj, row) in rows.chunks_mut(np).enumerate() {
                let j = j0 + dj;
                force.copy_from_slice(&d2[j * np..(j + 1) * np]);
                real_matvec(ops.p.stiff_block(j), &state.p[j * np..(j + 1) * np], &mut force, np);
                if ops.params.spin != 0.0 {
                    let f = ops.p.first_order_block(j);
                    let v = &state.vp[j * np..(j + 1) * np];
                    for a in 0..np {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for b in 0..np {
                            acc += f[a * np + b] * v[b];
                        }
                        force[a] += i * acc;
                    }
                }
                if ops.params.charge != 0.0 {
                    let cm = ops.coupling_block(&ops.cm_pu, j);
                    let ct = ops.coupling_block(&ops.ct_pu, j);
                    let uu = &state.u[j * nu..(j + 1) * nu];
                    let vv = &state.vu[j * nu..(j + 1) * nu];
                    for a in 0..np {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for b in 0..nu {
                            acc += cm[a * nu + b] * uu[b] + ct[a * nu + b] * (i * vv[b]);
                        }
                        force[a] -= ops.hf[j] * acc;
                    }
                }
                for slot in row.iter_mut() {
                    *slot = Complex64::new(0.0, 0.0);
                }
                real_matvec(ops.p.inv_mass_block(j), &force, row, np);
            }
        });
    }
    // Momentum equation for u.
    {
        let d2 = &*d2_u;
        over_chunks(&mut out.vu, nu, |j0, rows| {
            let mut force = vec![Complex64::new(0.0, 0.0); nu];
            for (dj, row) in rows.chunks_mut(nu).enumerate() {
                let j = j0 + dj;
                force.copy_from_slice(&d2[j * nu..(j + 1) * nu]);
                real_matvec(ops.u.stiff_block(j), &state.u[j * nu..(j + 1) * nu], &mut force, nu);
                if ops.params.spin != 0.0 {
                    let f = ops.u.first_order_block(j);
                    let v = &state.vu[j * nu..(j + 1) * nu];
                    for a in 0..nu {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for b in 0..nu {
                            acc += f[a * nu + b] * v[b];
                        }
                        force[a] += i * acc;
                    }
                }
                {
                    let cm = ops.coupling_block(&ops.cm_up, j);
                    let ct = ops.coupling_block(&ops.ct_up, j);
                    let pp = &state.p[j * np..(j + 1) * np];
                    let vv = &state.vp[j * np..(j + 1) * np];
                    for a in 0..nu {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for b in 0..np {
                            acc += cm[a * np + b] * pp[b] + ct[a * np + b] * (i * vv[b]);
                        }
                        force[a] -= ops.hf[j] * acc;
                    }
                }
                for slot in row.iter_mut() {
                    *slot = Complex64::new(0.0, 0.0);
                }
                real_matvec(ops.u.inv_mass_block(j), &force, row, nu);
            }
        });
    }

    // Radiation boundary rows: ∂_t v = +∂_{r*}v at the inner edge,
    // −∂_{r*}v at the outer edge (outgoing advection of the momentum).
    let c = 1.0 / (12.0 * h);
    let edge = |v: &[Complex64], out_v: &mut [Complex64], stride: usize| {
        for l in 0..stride {
            out_v[l] = c
                * (-25.0 * v[l] + 48.0 * v[stride + l] - 36.0 * v[2 * stride + l]
                    + 16.0 * v[3 * stride + l]
                    - 3.0 * v[4 * stride + l]);
            let top = (n_r - 1) * stride;
            out_v[top + l] = -c
                * (25.0 * v[top + l] - 48.0 * v[top - stride + l] + 36.0 * v[top - 2 * stride + l]
                    - 16.0 * v[top - 3 * stride + l]
                    + 3.0 * v[top - 4 * stride + l]);
        }
    };
    edge(&state.vp, &mut out.vp, np);
    edge(&state.vu, &mut out.vu, nu);
}

/// Advances the state by one classical Runge-Kutta step of size `dt`.
pub fn rk4_step(ops: &ModeOperators, state: &mut FieldState, dt: f64, ws: &mut Workspace) {
    let t0 = state.t;
    ws.acc.t = 0.0;
    for v in ws
        .acc
        .p
        .iter_mut()
        .chain(&mut ws.acc.u)
        .chain(&mut ws.acc.vp)
        .chain(&mut ws.acc.vu)
    {
        *v = Complex64::new(0.0, 0.0);
    }
    let coeffs = [(0.0, 1.0), (0.5, 2.0), (0.5, 2.0), (1.0, 1.0)];
    for (c, wgt) in coeffs {
        ws.stage.clone_from(state);
        if c != 0.0 {
            ws.stage.axpy(c * dt, &ws.k);
        }
        rhs_core(
            ops,
            &ws.stage,
            &mut ws.k,
            &mut ws.d1_p,
            &mut ws.d2_p,
            &mut ws.d1_u,
            &mut ws.d2_u,
        );
        ws.acc.axpy(wgt / 6.0, &ws.k);
    }
    state.axpy(dt, &ws.acc);
    state.t = t0 + dt;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::KnParams;
    use crate::config::GridSpec;

    fn setup(a: f64, q: f64, m: i32) -> (ModeOperators, Workspace) {
        let params = KnParams {
            mass: 1.0,
            spin: a,
            charge: q,
        };
        let grid = GridSpec {
            rstar_min: -40.0,
            rstar_max: 40.0,
            n_r: 128,
            l_max: 4,
            m,
            cfl: 0.4,
        };
        let ops = ModeOperators::build(params, &grid).unwrap();
        let ws = Workspace::new(&ops);
        (ops, ws)
    }

    fn pseudo_random_state(ops: &ModeOperators, seed: u64) -> FieldState {
        // Deterministic xorshift fill; no randomness crate needed.
        let mut s = seed.max(1);
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s as f64 / u64::MAX as f64) - 0.5
        };
        let mut state = FieldState::zero(ops);
        for v in state
            .p
            .iter_mut()
            .chain(&mut state.u)
            .chain(&mut state.vp)
            .chain(&mut state.vu)
        {
            *v = Complex64::new(next(), next());
        }
        state
    }

    #[test]
    fn zero_state_stays_zero() {
        let (ops, mut ws) = setup(0.1, 0.3, 1);
        let mut state = FieldState::zero(&ops);
        let mut out = FieldState::zero(&ops);
        rhs(&ops, &state, &mut out, &mut ws);
        assert_eq!(out.max_abs(), 0.0);
        rk4_step(&ops, &mut state, ops.dt, &mut ws);
        assert_eq!(state.max_abs(), 0.0);
        assert!((state.t - ops.dt).abs() < 1e-15);
    }

    #[test]
    fn right_hand_side_is_linear() {
        let (ops, mut ws) = setup(0.1, 0.3, 2);
        let x = pseudo_random_state(&ops, 7);
        let y = pseudo_random_state(&ops, 99);
        let (a, b) = (0.37, -1.25);
        let mut combo = FieldState::zero(&ops);
        combo.clone_from(&x);
        for v in combo
            .p
            .iter_mut()
            .chain(&mut combo.u)
            .chain(&mut combo.vp)
            .chain(&mut combo.vu)
        {
            *v *= a;
        }
        combo.axpy(b, &y);
        combo.t = 0.0;
        let mut fx = FieldState::zero(&ops);
        let mut fy = FieldState::zero(&ops);
        let mut fc = FieldState::zero(&ops);
        rhs(&ops, &x, &mut fx, &mut ws);
        rhs(&ops, &y, &mut fy, &mut ws);
        rhs(&ops, &combo, &mut fc, &mut ws);
        let scale = fx.max_abs().max(fy.max_abs());
        for (c, (xx, yy)) in fc
            .vp
            .iter()
            .chain(&fc.vu)
            .zip(fx.vp.iter().chain(&fx.vu).zip(fy.vp.iter().chain(&fy.vu)))
        {
            assert!((c - (a * xx + b * yy)).norm() < 1e-12 * scale);
        }
    }

    #[test]
    fn axisymmetric_static_real_data_stays_real() {
        let (ops, mut ws) = setup(0.0, 0.3, 0);
        let mut state = FieldState::zero(&ops);
        for j in 0..ops.grid.n_r {
            let rs = ops.grid.rstar(j);
            let g = (-(rs / 5.0).powi(2)).exp();
            state.p[j * ops.p.n] = Complex64::new(g, 0.0);
            state.u[j * ops.u.n] = Complex64::new(0.5 * g, 0.0);
        }
        for _ in 0..25 {
            rk4_step(&ops, &mut state, ops.dt, &mut ws);
        }
        assert!(state.is_finite());
        assert!(state.max_imag() < 1e-14 * state.max_abs().max(1.0));
        assert!(state.max_abs() > 0.0);
    }

    #[test]
    fn first_derivative_is_fourth_order_exact_on_quartics() {
        // D₁ must differentiate polynomials of degree ≤ 4 exactly,
        // including the one-sided closure rows.
        let n_r = 32;
        let h = 0.173;
        let src: Vec<Complex64> = (0..n_r)
            .map(|j| {
                let x = j as f64 * h;
                Complex64::new(
                    1.0 + x * (0.5 + x * (-0.25 + x * (0.125 + 0.0625 * x))),
                    0.0,
                )
            })
            .collect();
        let mut out = vec![Complex64::new(0.0, 0.0); n_r];
        d1(&src, &mut out, n_r, 1, h);
        for j in 0..n_r {
            let x = j as f64 * h;
            let exact = 0.5 + x * (-0.5 + x * (0.375 + 0.25 * x));
            assert!((out[j].re - exact).abs() < 1e-11, "j = {j}");
        }
    }
}
