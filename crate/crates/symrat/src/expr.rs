//! Rational expressions: a reduced polynomial numerator over a multiset of
//! polynomial denominator factors, with exact calculus.

use crate::coeff::GaussQ;
use crate::error::SymError;
use crate::poly::Poly;
use crate::var::{Coord, Var};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A quotient `num / Π fᵢ^{kᵢ}` of reduced polynomials.
///
/// Denominator factors are kept as an explicit multiset rather than one
/// expanded product so that cancellation stays cheap and factor-aware.
/// [`SymExpr::normalize`] cancels every cancellable factor and sorts the
/// remainder into a canonical order with monic (graded-lex) factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymExpr {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

/// Logarithmic derivatives `f⁻¹ ∂f` of the power family `f = q^{ν₁} q̄^{ν₂}`
/// with `q = r + i·a·x`.
#[derive(Clone, Debug)]
pub struct LogDerivatives {
    /// `f⁻¹ ∂_r f = ν₁/q + ν₂/q̄`.
    pub d_r: SymExpr,
    /// `f⁻¹ ∂_θ f = (−i·a·ν₁·s)/q + (i·a·ν₂·s)/q̄`.
    pub d_theta: SymExpr,
}

/// Logarithmic derivatives of `f = q^{ν₁} q̄^{ν₂}`, valid for arbitrary
/// (including fractional) exponents since only `f⁻¹∂f` is formed.
pub fn log_power_derivatives(nu1: &SymExpr, nu2: &SymExpr) -> LogDerivatives {
    let q = SymExpr::q();
    let qb = SymExpr::qbar();
    let a = SymExpr::var(Var::A);
    let s = SymExpr::var(Var::S);
    let i = SymExpr::i();
    let d_r = nu1.clone() / q.clone() + nu2.clone() / qb.clone();
    let d_theta = -(i.clone() * a.clone() * s.clone() * nu1.clone()) / q
        + (i * a * s * nu2.clone()) / qb;
    LogDerivatives { d_r, d_theta }
}

impl SymExpr {
    // ---- constructors -------------------------------------------------

    pub fn from_poly(p: Poly) -> SymExpr {
        SymExpr {
            num: p.reduce(),
            den: Vec::new(),
        }
    }

    pub fn zero() -> SymExpr {
        SymExpr::from_poly(Poly::zero())
    }

    pub fn one() -> SymExpr {
        SymExpr::from_poly(Poly::one())
    }

    /// The imaginary unit.
    pub fn i() -> SymExpr {
        SymExpr::from_poly(Poly::constant(GaussQ::i()))
    }

    pub fn int(n: i64) -> SymExpr {
        SymExpr::from_poly(Poly::int(n))
    }

    pub fn rat(n: i64, d: i64) -> SymExpr {
        SymExpr::from_poly(Poly::rat(n, d))
    }

    pub fn constant(c: GaussQ) -> SymExpr {
        SymExpr::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> SymExpr {
        SymExpr::from_poly(Poly::var(v))
    }

    /// `q = r + i·a·x`.
    pub fn q() -> SymExpr {
        SymExpr::from_poly(q_poly())
    }

    /// `q̄ = r − i·a·x`.
    pub fn qbar() -> SymExpr {
        SymExpr::from_poly(q_poly().conj())
    }

    /// The formal `|q|` marker (`qa² = r² + a²x²`).
    pub fn qa() -> SymExpr {
        SymExpr::var(Var::Qa)
    }

    /// `|q|² = r² + a²x²` as a plain polynomial.
    pub fn q_mod_sq() -> SymExpr {
        SymExpr::from_poly(Poly::qa_squared_rule())
    }

    /// `Δ = r² − 2Mr + a² + Q²`.
    pub fn delta() -> SymExpr {
        SymExpr::from_poly(delta_poly())
    }

    /// `sin θ`.
    pub fn sin_theta() -> SymExpr {
        SymExpr::var(Var::S)
    }

    /// `cos θ`.
    pub fn cos_theta() -> SymExpr {
        SymExpr::var(Var::X)
    }

    // ---- accessors ----------------------------------------------------

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    /// The denominator as one expanded polynomial.
    pub fn denominator_poly(&self) -> Poly {
        let mut d = Poly::one();
        for (f, k) in &self.den {
            for _ in 0..*k {
                d = &d * f;
            }
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The exact constant value, if this expression is a constant.
    pub fn as_constant(&self) -> Option<GaussQ> {
        if !self.den.is_empty() {
            return None;
        }
        self.num.as_constant()
    }

    // ---- normal form --------------------------------------------------

    /// Cancel every cancellable denominator factor out of the numerator,
    /// make the remaining factors monic, and sort them canonically.
    pub fn normalize(&self) -> SymExpr {
        let mut out = self.clone();
        out.cancel();
        out.canonical_den();
        out
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (f, k) in self.den.iter_mut() {
            while *k > 0 {
                match quotient_div(&self.num, f) {
                    Some(q) => {
                        self.num = q;
                        *k -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, k)| *k > 0);
    }

    fn canonical_den(&mut self) {
        // Fold constant factors into the numerator and make the rest monic.
        let mut scale = GaussQ::one();
        let mut den: Vec<(Poly, u32)> = Vec::new();
        for (f, k) in self.den.drain(..) {
            if let Some(c) = f.as_constant() {
                // 1/c^k
                let inv = c.inv();
                for _ in 0..k {
                    scale = &scale * &inv;
                }
                continue;
            }
            let mut f = f;
            let lc = f.make_monic();
            if !lc.is_one() {
                let inv = lc.inv();
                for _ in 0..k {
                    scale = &scale * &inv;
                }
            }
            den.push((f, k));
        }
        if !scale.is_one() {
            self.num = self.num.scale(&scale);
        }
        // Merge duplicate factors, then sort.
        den.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (f, k) in den {
            match merged.last_mut() {
                Some((g, kk)) if *g == f => *kk += k,
                _ => merged.push((f, k)),
            }
        }
        self.den = merged;
    }

    // ---- arithmetic helpers -------------------------------------------

    /// Multiplicative inverse. Factors the old numerator against the small
    /// registry of structural factors (`s`, `r`, `1∓x`, `Δ`, `q`, `q̄`,
    /// `|q|`); anything left over becomes an opaque monic factor.
    pub fn checked_inv(&self) -> Result<SymExpr, SymError> {
        if self.num.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        let new_num = self.denominator_poly();
        let mut n = self.num.clone();
        let mut den: Vec<(Poly, u32)> = Vec::new();
        for f in registry_factors() {
            let mut k = 0u32;
            while let Some(q) = quotient_div(&n, &f) {
                n = q;
                k += 1;
            }
            if k > 0 {
                den.push((f, k));
            }
        }
        let mut out = SymExpr { num: new_num, den };
        if let Some(c) = n.as_constant() {
            out.num = out.num.scale(&c.inv());
        } else {
            let lc = n.make_monic();
            if !lc.is_one() {
                out.num = out.num.scale(&lc.inv());
            }
            out.den.push((n, 1));
        }
        Ok(out.normalize())
    }

    pub fn checked_div(&self, rhs: &SymExpr) -> Result<SymExpr, SymError> {
        Ok(self.clone() * rhs.checked_inv()?)
    }

    /// Integer power; negative exponents invert (panicking on zero base).
    pub fn pow(&self, n: i32) -> SymExpr {
        let base = if n < 0 {
            self.checked_inv().expect("pow of zero with negative exponent")
        } else {
            self.clone()
        };
        let mut out = SymExpr::one();
        for _ in 0..n.unsigned_abs() {
            out = out * base.clone();
        }
        out
    }

    /// Complex conjugation: `i → −i` on coefficients (all symbols are real).
    pub fn conj(&self) -> SymExpr {
        SymExpr {
            num: self.num.conj(),
            den: self.den.iter().map(|(f, k)| (f.conj(), *k)).collect(),
        }
        .normalize()
    }

    /// Semantic equality, decided exactly by cross-multiplied subtraction.
    pub fn equal(&self, other: &SymExpr) -> bool {
        (self.clone() - other.clone()).num.is_zero()
    }

    // ---- calculus -----------------------------------------------------

    /// Partial derivative in the coordinate direction (`∂_r` or `∂_θ`),
    /// chaining through `x = cos θ`, `s = sin θ`, `qa = |q|`, and the jet
    /// symbols. Errors if a jet component beyond the stored order is needed.
    pub fn diff(&self, c: Coord) -> Result<SymExpr, SymError> {
        let inv_den = SymExpr {
            num: Poly::one(),
            den: self.den.clone(),
        };
        let mut out = diff_poly(&self.num, c)? * inv_den;
        for (f, k) in &self.den {
            let df = diff_poly(f, c)?;
            if df.is_zero() {
                continue;
            }
            let ratio = df.checked_div(&SymExpr::from_poly(f.clone()))?;
            out = out - SymExpr::int(*k as i64) * self.clone() * ratio;
        }
        Ok(out.normalize())
    }

    // ---- substitution -------------------------------------------------

    /// Substitute a symbol by an exact constant (used for parameter
    /// specializations such as `a = 0`). Errors with a pole if a denominator
    /// factor vanishes identically under the substitution.
    pub fn subst_const(&self, v: Var, value: GaussQ) -> Result<SymExpr, SymError> {
        let val = Poly::constant(value);
        let num = self.num.subst(v, &val);
        let mut den = Vec::new();
        for (f, k) in &self.den {
            let g = f.subst(v, &val);
            if g.is_zero() {
                return Err(SymError::EvaluationPole {
                    factor: f.to_string(),
                });
            }
            den.push((g, *k));
        }
        Ok(SymExpr { num, den }.normalize())
    }

    /// Substitute a symbol by a full expression. The symbol must not occur
    /// in any denominator factor (jet symbols never do).
    pub fn subst_var(&self, v: Var, value: &SymExpr) -> Result<SymExpr, SymError> {
        if let Some(c) = value.as_constant() {
            return self.subst_const(v, c);
        }
        for (f, _) in &self.den {
            if f.contains_var(v) {
                return Err(SymError::MalformedExpression(format!(
                    "substitution target `{}` occurs in a denominator factor",
                    v.name()
                )));
            }
        }
        let deg = self.num.degree_in(v);
        // Horner evaluation in the substituted symbol.
        let mut acc = SymExpr::zero();
        for k in (0..=deg).rev() {
            let coeff = SymExpr {
                num: self.num.coeff_of(v, k),
                den: self.den.clone(),
            };
            acc = acc * value.clone() + coeff;
        }
        Ok(acc.normalize())
    }

    // ---- evaluation ---------------------------------------------------

    /// Exact evaluation over the rank-4 algebra `ℚ(i)[s, qa]` with
    /// `s² = 1 − x²` and `qa² = r² + a²x²` induced by the assignment.
    /// `s` and `qa` must not be assigned directly.
    pub fn eval_exact(&self, assign: &HashMap<Var, GaussQ>) -> Result<AlgVal, SymError> {
        let ctx = AlgCtx::from_assignment(assign)?;
        let num = ctx.eval_poly(&self.num, assign)?;
        let mut acc = num;
        for (f, k) in &self.den {
            let fv = ctx.eval_poly(f, assign)?;
            if fv.is_zero() {
                return Err(SymError::EvaluationPole {
                    factor: f.to_string(),
                });
            }
            let inv = fv.inv();
            for _ in 0..*k {
                acc = acc.mul(&inv);
            }
        }
        Ok(acc)
    }

    /// Double-precision complex value of the exact evaluation.
    pub fn eval_numeric(&self, assign: &HashMap<Var, GaussQ>) -> Result<(f64, f64), SymError> {
        Ok(self.eval_exact(assign)?.to_complex_f64())
    }
}

// ---- structural polynomials -------------------------------------------

fn q_poly() -> Poly {
    Poly::var(Var::R)
        + Poly::constant(GaussQ::i()) * Poly::var(Var::A) * Poly::var(Var::X)
}

fn delta_poly() -> Poly {
    Poly::var(Var::R) * Poly::var(Var::R) - Poly::int(2) * Poly::var(Var::M) * Poly::var(Var::R)
        + Poly::var(Var::A) * Poly::var(Var::A)
        + Poly::var(Var::Q) * Poly::var(Var::Q)
}

/// Structural factors tried (in order) when inverting an expression. Real
/// products like `r² + a²x²` split into `q·q̄` because `q`, `q̄` come before
/// the formal `|q|` marker.
fn registry_factors() -> Vec<Poly> {
    vec![
        Poly::var(Var::S),
        Poly::var(Var::R),
        Poly::one() - Poly::var(Var::X),
        Poly::one() + Poly::var(Var::X),
        delta_poly(),
        q_poly(),
        q_poly().conj(),
        Poly::var(Var::Qa),
    ]
}

// ---- quotient-ring exact division --------------------------------------

/// Exact division `n / f` in the quotient ring, or `None`.
///
/// Reduced polynomials decompose as a free rank-4 module
/// `c00 + c10·s + c01·qa + c11·s·qa` over the `s, qa`-free subring, which
/// turns division by `s` or `qa` into free-ring divisibility of components
/// by `1 − x²` resp. `r² + a²x²`; division by an `s, qa`-free polynomial is
/// componentwise. Factors mixing `s`/`qa` with other symbols are not
/// cancelled (soundness is unaffected; only canonicality could suffer).
fn quotient_div(n: &Poly, f: &Poly) -> Option<Poly> {
    if n.is_zero() {
        return Some(Poly::zero());
    }
    let s_var = Var::S;
    let qa_var = Var::Qa;
    if *f == Poly::var(s_var) {
        let [c00, c10, c01, c11] = n.split_s_qa();
        let rule = Poly::s_squared_rule();
        let d10 = c00.exact_div_free(&rule)?;
        let d11 = c01.exact_div_free(&rule)?;
        return Some(Poly::join_s_qa([c10, d10, c11, d11]));
    }
    if *f == Poly::var(qa_var) {
        let [c00, c10, c01, c11] = n.split_s_qa();
        let rule = Poly::qa_squared_rule();
        let d01 = c00.exact_div_free(&rule)?;
        let d11 = c10.exact_div_free(&rule)?;
        return Some(Poly::join_s_qa([c01, c11, d01, d11]));
    }
    if !f.contains_var(s_var) && !f.contains_var(qa_var) {
        let [c00, c10, c01, c11] = n.split_s_qa();
        let d00 = c00.exact_div_free(f)?;
        let d10 = c10.exact_div_free(f)?;
        let d01 = c01.exact_div_free(f)?;
        let d11 = c11.exact_div_free(f)?;
        return Some(Poly::join_s_qa([d00, d10, d01, d11]));
    }
    None
}

// ---- calculus helpers ---------------------------------------------------

/// Total derivative of a polynomial in the given coordinate direction.
fn diff_poly(p: &Poly, c: Coord) -> Result<SymExpr, SymError> {
    let mut out = SymExpr::zero();
    for v in p.vars_used() {
        let dv = match var_derivative(v, c) {
            Ok(None) => continue,
            Ok(Some(e)) => e,
            Err(e) => {
                // Only an error if the symbol genuinely needs differentiating.
                if p.partial(v).is_zero() {
                    continue;
                }
                return Err(e);
            }
        };
        let partial = p.partial(v);
        if partial.is_zero() {
            continue;
        }
        out = out + SymExpr::from_poly(partial) * dv;
    }
    Ok(out)
}

/// The coordinate derivative of a single symbol; `None` for constants.
fn var_derivative(v: Var, c: Coord) -> Result<Option<SymExpr>, SymError> {
    use Var::*;
    let jet_overflow = |v: Var| {
        Err(SymError::JetOrderExceeded {
            var: v.name().to_string(),
        })
    };
    Ok(match c {
        Coord::R => match v {
            R => Some(SymExpr::one()),
            X | S => None,
            // d|q|/dr = r/|q|
            Qa => Some(
                SymExpr::var(R)
                    .checked_div(&SymExpr::var(Qa))
                    .expect("qa is nonzero"),
            ),
            M | A | Q | Nu1 | Nu2 | Om | Mm => None,
            P00 => Some(SymExpr::var(P10)),
            P10 => Some(SymExpr::var(P20)),
            P01 => Some(SymExpr::var(P11)),
            P20 | P11 | P02 => return jet_overflow(v),
            C00 => Some(SymExpr::var(C10)),
            C10 | C01 => return jet_overflow(v),
        },
        Coord::Theta => match v {
            R => None,
            X => Some(-SymExpr::var(S)),
            S => Some(SymExpr::var(X)),
            // d|q|/dθ = −a²·x·s/|q|
            Qa => Some(
                (-SymExpr::var(A).pow(2) * SymExpr::var(X) * SymExpr::var(S))
                    .checked_div(&SymExpr::var(Qa))
                    .expect("qa is nonzero"),
            ),
            M | A | Q | Nu1 | Nu2 | Om | Mm => None,
            P00 => Some(SymExpr::var(P01)),
            P10 => Some(SymExpr::var(P11)),
            P01 => Some(SymExpr::var(P02)),
            P20 | P11 | P02 => return jet_overflow(v),
            C00 => Some(SymExpr::var(C01)),
            C10 | C01 => return jet_overflow(v),
        },
    })
}

// ---- exact evaluation algebra -------------------------------------------

/// A value `c00 + c10·√vs + c01·√vq + c11·√vs·√vq` with exact Gaussian
/// rational components; `vs = 1 − x²`, `vq = r² + a²x²` at the evaluation
/// point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgVal {
    pub c: [GaussQ; 4],
    pub vs: BigRational,
    pub vq: BigRational,
}

impl AlgVal {
    fn scalar(v: GaussQ, vs: BigRational, vq: BigRational) -> AlgVal {
        AlgVal {
            c: [v, GaussQ::zero(), GaussQ::zero(), GaussQ::zero()],
            vs,
            vq,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }

    /// `Some(value)` iff no radical component survives.
    pub fn as_rational(&self) -> Option<GaussQ> {
        if self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, o: &AlgVal) -> AlgVal {
        let mut c = self.c.clone();
        for i in 0..4 {
            c[i] += &o.c[i];
        }
        AlgVal {
            c,
            vs: self.vs.clone(),
            vq: self.vq.clone(),
        }
    }

    pub fn mul(&self, o: &AlgVal) -> AlgVal {
        let vs = GaussQ::from_real(self.vs.clone());
        let vq = GaussQ::from_real(self.vq.clone());
        let a = &self.c;
        let b = &o.c;
        // Basis {1, s, qa, s·qa} with s² = vs, qa² = vq.
        let c0 = &(&a[0] * &b[0]) * &GaussQ::one()
            + &(&a[1] * &b[1]) * &vs
            + &(&a[2] * &b[2]) * &vq
            + &(&(&a[3] * &b[3]) * &vs) * &vq;
        let c1 = &a[0] * &b[1] + &a[1] * &b[0] + &(&a[2] * &b[3]) * &vq + &(&a[3] * &b[2]) * &vq;
        let c2 = &a[0] * &b[2] + &a[2] * &b[0] + &(&a[1] * &b[3]) * &vs + &(&a[3] * &b[1]) * &vs;
        let c3 = &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1];
        AlgVal {
            c: [c0, c1, c2, c3],
            vs: self.vs.clone(),
            vq: self.vq.clone(),
        }
    }

    /// Multiplicative inverse via successive radical conjugations.
    pub fn inv(&self) -> AlgVal {
        // z = A + B·s with A, B ∈ ℚ(i)[qa]; z·(A − B·s) = A² − B²·vs.
        let vs = GaussQ::from_real(self.vs.clone());
        let vq = GaussQ::from_real(self.vq.clone());
        let (a0, a1) = (&self.c[0], &self.c[2]); // A = a0 + a1·qa
        let (b0, b1) = (&self.c[1], &self.c[3]); // B = b0 + b1·qa
        // A² − vs·B² = d0 + d1·qa
        let d0 = a0 * a0 + &(a1 * a1) * &vq - &(b0 * b0) * &vs - &(&(b1 * b1) * &vs) * &vq;
        let d1 = &(a0 * a1) * &GaussQ::from_int(2) - &(&(b0 * b1) * &vs) * &GaussQ::from_int(2);
        // (d0 + d1·qa)⁻¹ = (d0 − d1·qa)/(d0² − d1²·vq)
        let nrm = &d0 * &d0 - &(&d1 * &d1) * &vq;
        assert!(!nrm.is_zero(), "inverse of zero algebraic value");
        let nrm_inv = nrm.inv();
        let e0 = &d0 * &nrm_inv;
        let e1 = -(&d1 * &nrm_inv);
        // z⁻¹ = (A − B·s)·(e0 + e1·qa)
        let conj = AlgVal {
            c: [a0.clone(), -b0.clone(), a1.clone(), -b1.clone()],
            vs: self.vs.clone(),
            vq: self.vq.clone(),
        };
        let factor = AlgVal {
            c: [e0, GaussQ::zero(), e1, GaussQ::zero()],
            vs: self.vs.clone(),
            vq: self.vq.clone(),
        };
        conj.mul(&factor)
    }

    /// Complex double-precision value (square roots taken nonnegative).
    pub fn to_complex_f64(&self) -> (f64, f64) {
        fn rad(v: &BigRational) -> f64 {
            let (n, _) = GaussQ::from_real(v.clone()).to_f64();
            n.max(0.0).sqrt()
        }
        let s = rad(&self.vs);
        let q = rad(&self.vq);
        let w = [1.0, s, q, s * q];
        let mut re = 0.0;
        let mut im = 0.0;
        for i in 0..4 {
            let (cr, ci) = self.c[i].to_f64();
            re += cr * w[i];
            im += ci * w[i];
        }
        (re, im)
    }
}

/// Evaluation context: the radical base values induced by the assignment.
struct AlgCtx {
    vs: BigRational,
    vq: BigRational,
}

impl AlgCtx {
    fn from_assignment(assign: &HashMap<Var, GaussQ>) -> Result<AlgCtx, SymError> {
        let real = |v: Var| -> Result<BigRational, SymError> {
            match assign.get(&v) {
                Some(c) if c.is_real() => Ok(c.re.clone()),
                Some(_) => Err(SymError::MalformedExpression(format!(
                    "assignment for `{}` must be real",
                    v.name()
                ))),
                None => Ok(BigRational::zero()),
            }
        };
        let x = real(Var::X)?;
        let r = real(Var::R)?;
        let a = real(Var::A)?;
        let vs = BigRational::from_integer(1.into()) - &x * &x;
        if vs.is_negative() {
            return Err(SymError::MalformedExpression(
                "x = cos θ must satisfy |x| ≤ 1".into(),
            ));
        }
        let vq = &r * &r + &a * &a * &x * &x;
        Ok(AlgCtx { vs, vq })
    }

    fn eval_poly(
        &self,
        p: &Poly,
        assign: &HashMap<Var, GaussQ>,
    ) -> Result<AlgVal, SymError> {
        let mut acc = AlgVal::scalar(GaussQ::zero(), self.vs.clone(), self.vq.clone());
        for (m, coeff) in &p.terms {
            let mut scalar = coeff.clone();
            let mut slot = 0usize;
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                match v {
                    Var::S => {
                        debug_assert!(e == 1);
                        slot |= 1;
                    }
                    Var::Qa => {
                        debug_assert!(e == 1);
                        slot |= 2;
                    }
                    _ => {
                        let val = assign.get(&v).ok_or_else(|| SymError::MissingAssignment {
                            var: v.name().to_string(),
                        })?;
                        for _ in 0..e {
                            scalar *= val;
                        }
                    }
                }
            }
            let mut c = [
                GaussQ::zero(),
                GaussQ::zero(),
                GaussQ::zero(),
                GaussQ::zero(),
            ];
            c[slot] = scalar;
            acc = acc.add(&AlgVal {
                c,
                vs: self.vs.clone(),
                vq: self.vq.clone(),
            });
        }
        Ok(acc)
    }
}

// ---- operators ----------------------------------------------------------

/// The least common multiple of two factor multisets, with the cofactors to
/// multiply into each numerator.
fn den_lcm(
    d1: &[(Poly, u32)],
    d2: &[(Poly, u32)],
) -> (Vec<(Poly, u32)>, Vec<(Poly, u32)>, Vec<(Poly, u32)>) {
    let mut lcm: Vec<(Poly, u32)> = d1.to_vec();
    let mut extra1: Vec<(Poly, u32)> = Vec::new();
    for (f, k2) in d2 {
        match lcm.iter_mut().find(|(g, _)| g == f) {
            Some((_, k1)) => {
                if *k2 > *k1 {
                    extra1.push((f.clone(), *k2 - *k1));
                    *k1 = *k2;
                }
            }
            None => {
                extra1.push((f.clone(), *k2));
                lcm.push((f.clone(), *k2));
            }
        }
    }
    let mut extra2: Vec<(Poly, u32)> = Vec::new();
    for (f, kl) in &lcm {
        let k2 = d2
            .iter()
            .find(|(g, _)| g == f)
            .map(|(_, k)| *k)
            .unwrap_or(0);
        if *kl > k2 {
            extra2.push((f.clone(), *kl - k2));
        }
    }
    (lcm, extra1, extra2)
}

fn mul_factors(mut p: Poly, factors: &[(Poly, u32)]) -> Poly {
    for (f, k) in factors {
        for _ in 0..*k {
            p = &p * f;
        }
    }
    p
}

impl Add for SymExpr {
    type Output = SymExpr;
    fn add(self, rhs: SymExpr) -> SymExpr {
        let (lcm, extra1, extra2) = den_lcm(&self.den, &rhs.den);
        let n1 = mul_factors(self.num, &extra1);
        let n2 = mul_factors(rhs.num, &extra2);
        let mut out = SymExpr {
            num: n1 + n2,
            den: lcm,
        };
        out.cancel();
        out
    }
}

impl Sub for SymExpr {
    type Output = SymExpr;
    fn sub(self, rhs: SymExpr) -> SymExpr {
        self + (-rhs)
    }
}

impl Neg for SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        SymExpr {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for SymExpr {
    type Output = SymExpr;
    fn mul(self, rhs: SymExpr) -> SymExpr {
        let mut den = self.den;
        for (f, k) in rhs.den {
            match den.iter_mut().find(|(g, _)| *g == f) {
                Some((_, kk)) => *kk += k,
                None => den.push((f, k)),
            }
        }
        let mut out = SymExpr {
            num: &self.num * &rhs.num,
            den,
        };
        out.cancel();
        out
    }
}

impl Div for SymExpr {
    type Output = SymExpr;
    /// Panics on a zero divisor; use [`SymExpr::checked_div`] to handle it.
    fn div(self, rhs: SymExpr) -> SymExpr {
        self.checked_div(&rhs).expect("division by zero expression")
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::text::write_expr(f, self)
    }
}
