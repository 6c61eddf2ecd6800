//! Deterministic numeric sampling of the two potentials outside the
//! horizon.
//!
//! The potentials are exact rational functions; sampling evaluates them at
//! pseudo-random exact rational points `(r, cosθ)` with `r ∈ (r₊, 100M]`
//! and `θ ∈ (0, π)`, using a fixed-seed linear congruential generator so
//! runs are reproducible.

use kn_geometry::{potential_v1, potential_v2};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use symrat::{GaussQ, ParamSet, SymError, SymExpr};

/// Outcome of one sampling run over both potentials.
#[derive(Clone, Copy, Debug)]
pub struct PositivitySample {
    pub samples: usize,
    pub violations: usize,
    /// Smallest real value seen across both potentials.
    pub min_value: f64,
    /// Largest imaginary part seen in absolute value (should be zero up to
    /// rounding; the expressions are real).
    pub max_imag: f64,
}

fn lcg(state: &mut u64) -> u64 {
    *state = state
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    *state
}

/// Uniform exact rational in `[2⁻⁵³, 1]`.
fn unit_rat(state: &mut u64) -> BigRational {
    let mantissa = ((lcg(state) >> 11) as i64).max(1);
    BigRational::new(mantissa.into(), (1i64 << 53).into())
}

/// Samples both potentials at `n` points outside the horizon and counts
/// sign violations of the real part. `parallel` switches between the
/// data-parallel and sequential evaluation paths.
pub fn positivity_violations(
    params: &ParamSet,
    n: usize,
    seed: u64,
    parallel: bool,
) -> Result<PositivitySample, SymError> {
    let v1 = potential_v1();
    let v2 = potential_v2();
    let r_plus = params.outer_horizon_f64();
    let r_max = 100.0 * params.mass().to_f64().unwrap();

    // Draw the points sequentially so the stream is identical in both
    // evaluation modes; evaluation itself is the parallel part.
    let mut state = seed ^ 0x9e3779b97f4a7c15;
    let mut points: Vec<(BigRational, BigRational)> = Vec::with_capacity(n);
    for _ in 0..n {
        let u = unit_rat(&mut state);
        let v = unit_rat(&mut state);
        // r = r₊ + u·(100M − r₊) as an exact rational built from the
        // double-precision horizon radius.
        let rp = BigRational::from_float(r_plus).unwrap();
        let span = BigRational::from_float(r_max - r_plus).unwrap();
        let r = &rp + u * span;
        // x = 2v − 1 ∈ (−1, 1).
        let x = BigRational::from_integer(2.into()) * v - BigRational::from_integer(1.into());
        points.push((r, x));
    }

    let eval_point = |(r, x): &(BigRational, BigRational)| -> Result<(f64, f64), SymError> {
        let assign = params.assignment(r.clone(), x.clone());
        let (a1, b1) = v1.eval_numeric(&assign)?;
        let (a2, b2) = v2.eval_numeric(&assign)?;
        Ok((a1.min(a2), b1.abs().max(b2.abs())))
    };

    let results: Result<Vec<(f64, f64)>, SymError> = if parallel {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            points.par_iter().map(eval_point).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            points.iter().map(eval_point).collect()
        }
    } else {
        points.iter().map(eval_point).collect()
    };
    let results = results?;

    let mut out = PositivitySample {
        samples: n,
        violations: 0,
        min_value: f64::INFINITY,
        max_imag: 0.0,
    };
    for (re, im) in results {
        if re <= 0.0 {
            out.violations += 1;
        }
        out.min_value = out.min_value.min(re);
        out.max_imag = out.max_imag.max(im);
    }
    Ok(out)
}

/// The standard sampling grid of `(a, Q)` pairs (in units of `M = 1`) used
/// by the acceptance gate; all subextremal.
pub fn standard_parameter_grid() -> Result<Vec<ParamSet>, SymError> {
    let mut out = Vec::new();
    for a in [(0i64, 1i64), (1, 10), (3, 10)] {
        for q in [(0i64, 1i64), (3, 10), (3, 5)] {
            out.push(ParamSet::new(
                symrat::rat(1, 1),
                symrat::rat(a.0, a.1),
                symrat::rat(q.0, q.1),
            )?);
        }
    }
    Ok(out)
}

/// Exact evaluation helper used in tests: the spin-1 potential at a
/// rational point, as a Gaussian rational when the point is rational.
pub fn potential_value_exact(
    e: &SymExpr,
    params: &ParamSet,
    r: BigRational,
    x: BigRational,
) -> Result<Option<GaussQ>, SymError> {
    let val = e.eval_exact(&params.assignment(r, x))?;
    Ok(val.as_rational())
}
