use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// Commutative ring with unity, closed under the owned and by-reference
/// operators the polynomial and matrix code relies on.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_bigint(value: &BigInt) -> Self;

    fn from_i64(value: i64) -> Self {
        Self::from_bigint(&BigInt::from(value))
    }
}

pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Ring for BigInt {
    fn from_bigint(value: &BigInt) -> Self {
        value.clone()
    }
}

impl Ring for BigRational {
    fn from_bigint(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Canonical exact text form `num/den`, used by the dump format and JSON.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer. The result is reduced.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Human-readable form: integers without a denominator.
pub fn display_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Natural log of |r| without overflowing `f64` on huge operands.
pub fn ln_abs(r: &Rational) -> f64 {
    ln_abs_int(r.numer()) - ln_abs_int(r.denom())
}

pub(crate) fn ln_abs_int(v: &BigInt) -> f64 {
    let (mantissa, exp) = split_f64(v);
    mantissa.abs().ln() + exp as f64 * std::f64::consts::LN_2
}

/// Writes `v = mantissa * 2^exp` with a mantissa that fits an `f64`.
pub(crate) fn split_f64(v: &BigInt) -> (f64, i64) {
    let bits = v.bits() as i64;
    if bits <= 1000 {
        return (f64_of(v), 0);
    }
    let shift = bits - 64;
    let top: BigInt = v.abs() >> (shift as usize);
    let m = f64_of(&top);
    (if v.is_negative() { -m } else { m }, shift)
}

fn f64_of(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}
