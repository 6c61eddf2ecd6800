//! The fixed variable vocabulary and its ordering.

use std::fmt;

/// Number of symbols a monomial exponent vector carries.
pub const NUM_VARS: usize = 20;

/// A symbol of the expression ring.
///
/// The first three are coordinates (`x = cos θ`, `s = sin θ`), `Qa` is the
/// formal `|q|` marker with `Qa² = r² + a²x²`, then come the physical
/// parameters, the exponent symbols `ν₁, ν₂` of `q`-power families, the mode
/// frequency `ω` and azimuthal integer `m`, and finally the jet symbols of
/// one generic amplitude `ψ` (to second order in `(r, θ)`) and one generic
/// scalar weight `C` (to first order).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[repr(u8)]
pub enum Var {
    R = 0,
    X = 1,
    S = 2,
    /// Formal `|q|` marker; `Qa² = r² + a²·x²`.
    Qa = 3,
    M = 4,
    A = 5,
    Q = 6,
    Nu1 = 7,
    Nu2 = 8,
    /// Mode frequency ω (the phase is `e^{i(mφ − ωt)}`).
    Om = 9,
    /// Azimuthal integer m.
    Mm = 10,
    /// Generic amplitude ψ and its (r, θ)-jet to second order.
    P00 = 11,
    P10 = 12,
    P01 = 13,
    P20 = 14,
    P11 = 15,
    P02 = 16,
    /// Generic scalar weight C and its (r, θ)-jet to first order.
    C00 = 17,
    C10 = 18,
    C01 = 19,
}

/// A coordinate direction for differentiation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Coord {
    R,
    Theta,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [
        Var::R,
        Var::X,
        Var::S,
        Var::Qa,
        Var::M,
        Var::A,
        Var::Q,
        Var::Nu1,
        Var::Nu2,
        Var::Om,
        Var::Mm,
        Var::P00,
        Var::P10,
        Var::P01,
        Var::P20,
        Var::P11,
        Var::P02,
        Var::C00,
        Var::C10,
        Var::C01,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    /// The canonical spelling used by the text form.
    pub fn name(self) -> &'static str {
        match self {
            Var::R => "r",
            Var::X => "x",
            Var::S => "s",
            Var::Qa => "qa",
            Var::M => "M",
            Var::A => "a",
            Var::Q => "Q",
            Var::Nu1 => "nu1",
            Var::Nu2 => "nu2",
            Var::Om => "omega",
            Var::Mm => "m",
            Var::P00 => "psi",
            Var::P10 => "psi_r",
            Var::P01 => "psi_t",
            Var::P20 => "psi_rr",
            Var::P11 => "psi_rt",
            Var::P02 => "psi_tt",
            Var::C00 => "cw",
            Var::C10 => "cw_r",
            Var::C01 => "cw_t",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
