//! Exact scalar fields: arbitrary-precision rationals and Gaussian rationals.
//!
//! Both implement [`Scalar`], which is all the linear algebra in this crate
//! needs. Text syntax is shared with the `.lie` file format: `-3`, `3/2`,
//! `3/2+1/4i`, `-i`, `2i`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Field operations shared by [`Rational`] and [`GaussianRational`].
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_rational(r: &Rational) -> Self;
    fn conj(&self) -> Self;
    fn real_part(&self) -> Rational;
    fn imag_part(&self) -> Rational;

    fn is_real(&self) -> bool {
        self.imag_part().is_zero()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn real_part(&self) -> Rational {
        self.clone()
    }

    fn imag_part(&self) -> Rational {
        Rational::zero()
    }
}

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // to_f64 only fails on overflow of both parts; fall back to a ratio of floats
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_f64_parts(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sqr();
        assert!(!n.is_zero(), "division by zero in ℚ(i)");
        let num = self * rhs.conj();
        Self::new(num.re / &n, num.im / n)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Scalar for GaussianRational {
    fn from_rational(r: &Rational) -> Self {
        Self::from(r.clone())
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    fn real_part(&self) -> Rational {
        self.re.clone()
    }

    fn imag_part(&self) -> Rational {
        self.im.clone()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn imag(f: &mut fmt::Formatter<'_>, im: &Rational) -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else if (-im).is_one() {
                write!(f, "-i")
            } else {
                write!(f, "{im}i")
            }
        }
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => imag(f, &self.im),
            (false, false) => {
                write!(f, "{}", self.re)?;
                if self.im.is_positive() {
                    write!(f, "+")?;
                }
                imag(f, &self.im)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("empty scalar")]
    Empty,
    #[error("malformed scalar `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("expected a rational, found complex scalar `{0}`")]
    NotReal(String),
}

fn parse_unsigned_rational(s: &str, whole: &str) -> Result<Rational, ScalarParseError> {
    let bad = || ScalarParseError::Malformed(whole.to_string());
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    match s.split_once('/') {
        None if digits(s) => Ok(Rational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((n, d)) if digits(n) && digits(d) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ScalarParseError::ZeroDenominator(whole.to_string()));
            }
            Ok(Rational::new(n, d))
        }
        _ => Err(bad()),
    }
}

fn parse_signed_rational(s: &str, whole: &str) -> Result<Rational, ScalarParseError> {
    if let Some(rest) = s.strip_prefix('-') {
        Ok(-parse_unsigned_rational(rest, whole)?)
    } else if let Some(rest) = s.strip_prefix('+') {
        parse_unsigned_rational(rest, whole)
    } else {
        parse_unsigned_rational(s, whole)
    }
}

/// Imaginary coefficient text without the trailing `i`: empty, `+` and `-`
/// stand for ±1.
fn parse_imag_coefficient(s: &str, whole: &str) -> Result<Rational, ScalarParseError> {
    match s {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => parse_signed_rational(s, whole),
    }
}

/// Parses `-3`, `3/2`, `2i`, `-i`, `3/2+1/4i`, `1-i`. Whitespace is ignored.
pub fn parse_gaussian(text: &str) -> Result<GaussianRational, ScalarParseError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(GaussianRational::from(parse_signed_rational(&s, text)?));
    };
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(idx, _)| idx)
        .last();
    match split {
        Some(idx) => {
            let re = parse_signed_rational(&body[..idx], text)?;
            let im = parse_imag_coefficient(&body[idx..], text)?;
            Ok(GaussianRational::new(re, im))
        }
        None => Ok(GaussianRational::new(
            Rational::zero(),
            parse_imag_coefficient(body, text)?,
        )),
    }
}

pub fn parse_rational(text: &str) -> Result<Rational, ScalarParseError> {
    let z = parse_gaussian(text)?;
    if z.is_real() {
        Ok(z.re)
    } else {
        Err(ScalarParseError::NotReal(text.to_string()))
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_gaussian(s)
    }
}
