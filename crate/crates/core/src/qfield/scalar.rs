//! Scalar coefficient domain: exact arbitrary-precision rationals or complex
//! doubles, tagged by mode. Mixed-mode arithmetic is rejected, never coerced.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arithmetic mode shared by every value of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Arbitrary-precision rationals; all identity verifiers run here.
    Exact,
    /// Complex doubles; used by the simulator and limit studies.
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Float => write!(f, "float"),
        }
    }
}

/// A coefficient: exact rational or complex double.
///
/// `BigRational` keeps a canonical reduced representation with positive
/// denominator, so exact equality is structural equality.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(Complex64),
}

impl Scalar {
    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::zero()),
            Mode::Float => Scalar::Float(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::one()),
            Mode::Float => Scalar::Float(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn from_int(n: i64, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::from_integer(BigInt::from(n))),
            Mode::Float => Scalar::Float(Complex64::new(n as f64, 0.0)),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_f64(re: f64) -> Self {
        Scalar::Float(Complex64::new(re, 0.0))
    }

    pub fn from_complex(v: Complex64) -> Self {
        Scalar::Float(v)
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Exact(_) => true,
            Scalar::Float(c) => c.re.is_finite() && c.im.is_finite(),
        }
    }

    /// Multiplicative inverse. Panics on zero; gate with `is_zero` first.
    pub fn recip(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                assert!(!r.is_zero(), "division by exact zero");
                Scalar::Exact(r.recip())
            }
            Scalar::Float(c) => Scalar::Float(Complex64::new(1.0, 0.0) / c),
        }
    }

    /// Integer power by binary exponentiation; deterministic in float mode.
    pub fn pow(&self, e: i64) -> Scalar {
        if e == 0 {
            return Scalar::one(self.mode());
        }
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = Scalar::one(self.mode());
        let mut cur = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &cur;
            }
            cur = &cur * &cur;
            k >>= 1;
        }
        acc
    }

    /// Magnitude as f64 (modulus in float mode, |value| in exact mode).
    pub fn magnitude(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(&r.abs()),
            Scalar::Float(c) => c.norm(),
        }
    }

    /// Lossy conversion to a complex double.
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(rational_to_f64(r), 0.0),
            Scalar::Float(c) => *c,
        }
    }

    /// Same value re-tagged as a float-mode scalar (lossy in exact mode).
    pub fn to_float_mode(&self) -> Scalar {
        Scalar::Float(self.to_complex())
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Parses an exact rational from `p` or `p/q` notation.
    pub fn parse_rational(text: &str) -> Result<Scalar> {
        let r: BigRational = text
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad rational {text:?}: {e}")))?;
        Ok(Scalar::Exact(r))
    }

    pub(crate) fn expect_same_mode(&self, other: &Scalar, context: &'static str) {
        assert!(
            self.mode() == other.mode(),
            "scalar mode mismatch ({} vs {}) in {}",
            self.mode(),
            other.mode(),
            context
        );
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    // Good enough for diagnostics; exact paths never round-trip through here.
    let num = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let den = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
    num / den
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(c) => {
                if c.im == 0.0 {
                    write!(f, "{}", c.re)
                } else {
                    write!(f, "{}{:+}i", c.re, c.im)
                }
            }
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt, $name:literal) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.expect_same_mode(rhs, $name);
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $op b),
                    _ => unreachable!(),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +, "add");
scalar_binop!(Sub, sub, -, "sub");
scalar_binop!(Mul, mul, *, "mul");

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.expect_same_mode(rhs, "div");
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "division by exact zero");
                Scalar::Exact(a / b)
            }
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => unreachable!(),
        }
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        &self / rhs
    }
}

impl Div<Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(c) => Scalar::Float(-c),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// The deformation parameter. Valid values exclude 0 and ±1; exact-mode values
/// are rationals, which are then automatically not roots of unity.
#[derive(Clone, Debug, PartialEq)]
pub struct QParam {
    value: Scalar,
}

impl QParam {
    pub fn new(value: Scalar) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::InvalidQ("q must be nonzero".into()));
        }
        let one = Scalar::one(value.mode());
        if value == one || value == -&one {
            return Err(Error::InvalidQ("q must differ from 1 and -1".into()));
        }
        Ok(QParam { value })
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        QParam::new(Scalar::from_ratio(num, den))
    }

    pub fn from_f64(re: f64) -> Result<Self> {
        QParam::new(Scalar::from_f64(re))
    }

    pub fn scalar(&self) -> &Scalar {
        &self.value
    }

    pub fn mode(&self) -> Mode {
        self.value.mode()
    }

    /// q^e as a scalar.
    pub fn pow(&self, e: i64) -> Scalar {
        self.value.pow(e)
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
