//! Gaussian rational coefficients: `a + b·i` with `a, b ∈ ℚ` exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussQ { re, im }
    }

    pub fn zero() -> Self {
        GaussQ {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        GaussQ {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        GaussQ {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ {
            re: BigRational::from(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rat(n: i64, d: i64) -> Self {
        GaussQ {
            re: BigRational::new(BigInt::from(n), BigInt::from(d)),
            im: BigRational::zero(),
        }
    }

    pub fn from_real(re: BigRational) -> Self {
        GaussQ {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate: `i → −i`.
    pub fn conj(&self) -> Self {
        GaussQ {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Squared modulus `re² + im²` (a nonnegative rational).
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero GaussQ");
        GaussQ {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    /// Approximate double-precision value (diagnostics and numeric export).
    pub fn to_f64(&self) -> (f64, f64) {
        fn f(r: &BigRational) -> f64 {
            let n = r.numer();
            let d = r.denom();
            // Scale down huge integers pairwise to stay in range.
            let bits = n.bits().max(d.bits());
            if bits > 900 {
                let shift = bits - 900;
                let n2 = n >> shift;
                let d2 = d >> shift;
                approx_ratio(&n2, &d2)
            } else {
                approx_ratio(n, d)
            }
        }
        fn approx_ratio(n: &BigInt, d: &BigInt) -> f64 {
            let nf = bigint_to_f64(n);
            let df = bigint_to_f64(d);
            nf / df
        }
        fn bigint_to_f64(v: &BigInt) -> f64 {
            // `to_string` round-trip is exact enough for ≤ 900-bit inputs
            // already range-reduced above.
            v.to_string().parse::<f64>().unwrap_or(f64::NAN)
        }
        (f(&self.re), f(&self.im))
    }
}

impl Ord for GaussQ {
    /// Arbitrary total order (real part, then imaginary part); used only to
    /// sort terms and factors into a canonical layout.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re
            .cmp(&other.re)
            .then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussQ {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            if self.im.is_one() {
                write!(f, "I")
            } else if (-&self.im).is_one() {
                write!(f, "-I")
            } else {
                write!(f, "{}*I", self.im)
            }
        } else if self.im.is_negative() {
            write!(f, "({}-{}*I)", self.re, -&self.im)
        } else {
            write!(f, "({}+{}*I)", self.re, self.im)
        }
    }
}

impl Add for GaussQ {
    type Output = GaussQ;
    fn add(self, rhs: GaussQ) -> GaussQ {
        GaussQ {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> AddAssign<&'a GaussQ> for GaussQ {
    fn add_assign(&mut self, rhs: &GaussQ) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for GaussQ {
    type Output = GaussQ;
    fn sub(self, rhs: GaussQ) -> GaussQ {
        GaussQ {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> SubAssign<&'a GaussQ> for GaussQ {
    fn sub_assign(&mut self, rhs: &GaussQ) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Neg for GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for GaussQ {
    type Output = GaussQ;
    fn mul(self, rhs: GaussQ) -> GaussQ {
        (&self).mul(&rhs)
    }
}

impl<'a, 'b> Mul<&'b GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn mul(self, rhs: &GaussQ) -> GaussQ {
        GaussQ {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> MulAssign<&'a GaussQ> for GaussQ {
    fn mul_assign(&mut self, rhs: &GaussQ) {
        let out = (&*self).mul(rhs);
        *self = out;
    }
}

impl Div for GaussQ {
    type Output = GaussQ;
    fn div(self, rhs: GaussQ) -> GaussQ {
        (&self).mul(&rhs.inv())
    }
}
