//! Sparse multivariate polynomials over the Gaussian rationals, kept reduced
//! modulo `s² = 1 − x²` and `qa² = r² + a²x²`.

use crate::coeff::GaussQ;
use crate::var::{Var, NUM_VARS};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A monomial: exponent vector over the fixed variable set, ordered
/// graded-lexicographically (total degree first, then lexicographic).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub [u16; NUM_VARS]);

impl Mono {
    pub fn one() -> Mono {
        Mono([0; NUM_VARS])
    }

    pub fn var(v: Var) -> Mono {
        let mut e = [0; NUM_VARS];
        e[v.index()] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0u16; NUM_VARS];
        for i in 0..NUM_VARS {
            e[i] = self.0[i]
                .checked_add(other.0[i])
                .expect("monomial exponent overflow");
        }
        Mono(e)
    }

    /// Exact monomial quotient, or `None` if any exponent would go negative.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut e = [0u16; NUM_VARS];
        for i in 0..NUM_VARS {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Mono(e))
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial; the map never stores zero coefficients, and every
/// stored monomial has `s`- and `qa`-degree ≤ 1 (the reduced normal form).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    pub terms: BTreeMap<Mono, GaussQ>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Poly {
        Poly::constant(GaussQ::one())
    }

    pub fn constant(c: GaussQ) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(v), GaussQ::one());
        Poly { terms }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(GaussQ::from_int(n))
    }

    pub fn rat(n: i64, d: i64) -> Poly {
        Poly::constant(GaussQ::from_rat(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| *m == Mono::one())
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussQ> {
        if self.terms.is_empty() {
            Some(GaussQ::zero())
        } else if self.is_constant() {
            self.terms.get(&Mono::one()).cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading (graded-lex greatest) term.
    pub fn leading(&self) -> Option<(&Mono, &GaussQ)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    fn insert_term(&mut self, m: Mono, c: GaussQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Reduce modulo `s² = 1 − x²` and `qa² = r² + a²x²` to the normal form
    /// with `s`- and `qa`-degree ≤ 1 per monomial.
    pub fn reduce(&self) -> Poly {
        let needs = self
            .terms
            .keys()
            .any(|m| m.exp(Var::S) > 1 || m.exp(Var::Qa) > 1);
        if !needs {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let es = m.exp(Var::S);
            let eqa = m.exp(Var::Qa);
            if es <= 1 && eqa <= 1 {
                out.insert_term(*m, c.clone());
                continue;
            }
            let mut base = *m;
            base.0[Var::S.index()] = es % 2;
            base.0[Var::Qa.index()] = eqa % 2;
            // (1 − x²)^{es/2} · (r² + a²x²)^{eqa/2}, expanded in the free
            // ring (neither factor contains s or qa).
            let mut expand = Poly::one();
            for _ in 0..(es / 2) {
                expand = expand.mul_free(&Poly::s_squared_rule());
            }
            for _ in 0..(eqa / 2) {
                expand = expand.mul_free(&Poly::qa_squared_rule());
            }
            for (em, ec) in &expand.terms {
                out.insert_term(base.mul(em), c * ec);
            }
        }
        out
    }

    /// `1 − x²`, the value of `s²`.
    pub fn s_squared_rule() -> Poly {
        Poly::one() - Poly::var(Var::X) * Poly::var(Var::X)
    }

    /// `r² + a²x²`, the value of `qa²`.
    pub fn qa_squared_rule() -> Poly {
        Poly::var(Var::R) * Poly::var(Var::R)
            + Poly::var(Var::A) * Poly::var(Var::A) * Poly::var(Var::X) * Poly::var(Var::X)
    }

    /// Product without the quotient-ring reduction (internal use only).
    fn mul_free(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Complex conjugation: `i → −i` on coefficients; variables are real.
    pub fn conj(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.conj()))
                .collect(),
        }
    }

    /// Scale by a coefficient.
    pub fn scale(&self, c: &GaussQ) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    /// Divide through by the graded-lex leading coefficient; returns the
    /// removed coefficient. No-op on zero.
    pub fn make_monic(&mut self) -> GaussQ {
        match self.leading() {
            None => GaussQ::one(),
            Some((_, lc)) => {
                let lc = lc.clone();
                if lc.is_one() {
                    return lc;
                }
                let inv = lc.inv();
                *self = self.scale(&inv);
                lc
            }
        }
    }

    /// Substitute `v := value` (value must not contain `v`); result reduced.
    pub fn subst(&self, v: Var, value: &Poly) -> Poly {
        assert!(
            !value.contains_var(v),
            "substitution value must not contain the substituted variable"
        );
        let deg = self.degree_in(v);
        // Precompute powers of the replacement.
        let mut pows: Vec<Poly> = Vec::with_capacity(deg as usize + 1);
        pows.push(Poly::one());
        for k in 1..=deg {
            let p = &pows[(k - 1) as usize] * value;
            pows.push(p);
        }
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut base = *m;
            base.0[v.index()] = 0;
            for (pm, pc) in &pows[e as usize].terms {
                out.insert_term(base.mul(pm), c * pc);
            }
        }
        out.reduce()
    }

    /// Evaluate with a total assignment. Missing variables that actually
    /// occur yield `None`.
    pub fn eval(&self, assign: &dyn Fn(Var) -> Option<GaussQ>) -> Option<GaussQ> {
        let mut acc = GaussQ::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = assign(Var::from_index(i))?;
                for _ in 0..e {
                    term *= &v;
                }
            }
            acc += &term;
        }
        Some(acc)
    }

    /// Exact division in the free polynomial ring (no quotient relations):
    /// returns `Some(q)` with `self = q·d` or `None`.
    ///
    /// Correct for divisors free of `s` and `qa` applied to reduced
    /// dividends; quotient-aware division for `s`/`qa` factors lives at the
    /// rational-expression level.
    pub fn exact_div_free(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = d.leading().unwrap();
        let dm = *dm;
        let dc_inv = dc.inv();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&dm)?;
            let qc = rc * &dc_inv;
            quot.insert_term(qm, qc.clone());
            // rem -= (qc·qm)·d
            for (m, c) in &d.terms {
                let prod = &qc * c;
                rem.insert_term(qm.mul(m), -prod);
            }
        }
        Some(quot)
    }

    /// Split into the rank-4 module components over the `s`,`qa`-free
    /// subring: `self = c00 + c10·s + c01·qa + c11·s·qa`.
    pub fn split_s_qa(&self) -> [Poly; 4] {
        let mut out = [Poly::zero(), Poly::zero(), Poly::zero(), Poly::zero()];
        for (m, c) in &self.terms {
            let es = m.exp(Var::S);
            let eq = m.exp(Var::Qa);
            debug_assert!(es <= 1 && eq <= 1, "split on unreduced polynomial");
            let mut base = *m;
            base.0[Var::S.index()] = 0;
            base.0[Var::Qa.index()] = 0;
            let idx = (es + 2 * eq) as usize;
            let slot = match idx {
                0 => 0,
                1 => 1,
                2 => 2,
                _ => 3,
            };
            out[slot].insert_term(base, c.clone());
        }
        out
    }

    /// Rebuild from `split_s_qa` components.
    pub fn join_s_qa(parts: [Poly; 4]) -> Poly {
        let s = Poly::var(Var::S);
        let qa = Poly::var(Var::Qa);
        let [c00, c10, c01, c11] = parts;
        c00 + c10 * s.clone() + c01 * qa.clone() + c11 * s * qa
    }

    /// Coefficient of `v^k` as a polynomial with the `v`-exponent removed.
    pub fn coeff_of(&self, v: Var, k: u16) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == k {
                let mut base = *m;
                base.0[v.index()] = 0;
                out.insert_term(base, c.clone());
            }
        }
        out
    }

    /// Formal partial derivative with respect to a single symbol (no chain
    /// rule; the calculus layer composes these with coordinate rules).
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut base = *m;
            base.0[v.index()] = e - 1;
            out.insert_term(base, c * &GaussQ::from_int(e as i64));
        }
        out
    }

    /// Variables actually present.
    pub fn vars_used(&self) -> Vec<Var> {
        let mut seen = [false; NUM_VARS];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        Var::ALL
            .iter()
            .copied()
            .filter(|v| seen[v.index()])
            .collect()
    }
}

impl Ord for Poly {
    /// Arbitrary total order used to sort denominator factors canonically:
    /// term count, then termwise (monomial, coefficient) comparison.
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms
            .len()
            .cmp(&other.terms.len())
            .then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.insert_term(m, c);
        }
        out
    }
}

impl<'a> Add<&'a Poly> for Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self;
        for (m, c) in &rhs.terms {
            out.insert_term(*m, c.clone());
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.insert_term(m, -c);
        }
        out
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        (&self) * (&rhs)
    }
}

impl<'a, 'b> Mul<&'b Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_free(rhs).reduce()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        // Display from the leading term downward.
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if !c.is_one() || m.total_degree() == 0 {
                factors.push(format!("{c}"));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = Var::from_index(i);
                if e == 1 {
                    factors.push(v.name().to_string());
                } else {
                    factors.push(format!("{}^{}", v.name(), e));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
