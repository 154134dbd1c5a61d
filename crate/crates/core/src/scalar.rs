//! Complex scalars in two arithmetic modes.
//!
//! [`Exact`] is the Gaussian-rational field `Q(j)`, used wherever an identity
//! has to be certified without rounding. [`Float`] is ordinary double-precision
//! complex arithmetic, used for sampling and finite differences. The mode is a
//! property of the type, so the two can never meet inside one expression.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact Gaussian rational `a + b·j`.
pub type Exact = Complex<BigRational>;

/// Double-precision complex number.
pub type Float = Complex64;

/// Arithmetic mode carried by a scalar type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown arithmetic mode `{other}`")),
        }
    }
}

/// A complex field element usable by every algebraic routine in the crate.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    /// The complex imaginary unit, written `j` in literals.
    fn j() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Builds a scalar from exact rational real and imaginary parts. Float mode rounds.
    fn from_rationals(re: &BigRational, im: &BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn is_real(&self) -> bool;
    fn modulus(&self) -> f64;
    fn to_c64(&self) -> Complex64;
    /// Principal square root: nonnegative real part, and `+j·√|z|` on the
    /// negative real axis. `None` when exact mode has no rational root.
    fn sqrt(&self) -> Option<Self>;
    /// Literal text form accepted by [`crate::literal::parse_complex`].
    fn to_literal(&self) -> String;
    /// Exact real and imaginary parts; `None` for non-finite floats.
    fn to_rationals(&self) -> Option<(BigRational, BigRational)>;

    /// Zero in exact mode, or within `tol` of zero in float mode.
    fn is_negligible(&self, tol: f64) -> bool {
        match Self::MODE {
            Mode::Exact => self.is_zero(),
            Mode::Float => self.modulus() <= tol,
        }
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

pub(crate) fn rational_literal(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn join_literal(re: String, im: String, re_zero: bool, im_zero: bool) -> String {
    if im_zero {
        return re;
    }
    if re_zero {
        return format!("{im}j");
    }
    if let Some(stripped) = im.strip_prefix('-') {
        format!("{re}-{stripped}j")
    } else {
        format!("{re}+{im}j")
    }
}

impl Scalar for Exact {
    fn to_rationals(&self) -> Option<(BigRational, BigRational)> {
        Some((self.re.clone(), self.im.clone()))
    }

    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }

    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }

    fn j() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Complex::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    fn from_rationals(re: &BigRational, im: &BigRational) -> Self {
        Complex::new(re.clone(), im.clone())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn sqrt(&self) -> Option<Self> {
        let (a, b) = (&self.re, &self.im);
        if b.is_zero() {
            return if a.is_negative() {
                Some(Complex::new(BigRational::zero(), rational_sqrt(&-a)?))
            } else {
                Some(Complex::new(rational_sqrt(a)?, BigRational::zero()))
            };
        }
        let r = rational_sqrt(&(a * a + b * b))?;
        let two = BigRational::from_integer(BigInt::from(2));
        let x = rational_sqrt(&((&r + a) / &two))?;
        let y = rational_sqrt(&((&r - a) / &two))?;
        Some(Complex::new(x, if b.is_negative() { -y } else { y }))
    }

    fn to_literal(&self) -> String {
        join_literal(
            rational_literal(&self.re),
            rational_literal(&self.im),
            self.re.is_zero(),
            self.im.is_zero(),
        )
    }
}

impl Scalar for Float {
    fn to_rationals(&self) -> Option<(BigRational, BigRational)> {
        Some((
            BigRational::from_float(self.re)?,
            BigRational::from_float(self.im)?,
        ))
    }

    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn j() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn from_rationals(re: &BigRational, im: &BigRational) -> Self {
        Complex64::new(
            re.to_f64().unwrap_or(f64::NAN),
            im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn is_real(&self) -> bool {
        self.im == 0.0
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn sqrt(&self) -> Option<Self> {
        // num-complex puts -0.0 imaginary parts on the lower branch.
        if self.im == 0.0 && self.re < 0.0 {
            return Some(Complex64::new(0.0, (-self.re).sqrt()));
        }
        Some(Complex64::sqrt(*self))
    }

    fn to_literal(&self) -> String {
        join_literal(
            format!("{}", self.re),
            format!("{}", self.im),
            self.re == 0.0,
            self.im == 0.0,
        )
    }
}
