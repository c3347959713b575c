use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::{display_rational, Field, Rational, Ring};

/// Operand length from which multiplication switches to Karatsuba.
pub const KARATSUBA_THRESHOLD: usize = 32;

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `x^i`.
///
/// The zero polynomial is the empty vector, so the leading coefficient is
/// always nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: T, exp: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); exp + 1];
        coeffs[exp] = c;
        UniPoly { coeffs }
    }

    /// `x^exp - 1`
    pub fn x_pow_minus_one(exp: usize) -> Self {
        let mut p = Self::monomial(T::one(), exp);
        p = p - Self::one();
        p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * at + c)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Substitutes `x -> x^m`.
    pub fn dilate(&self, m: usize) -> Self {
        assert!(m >= 1, "dilation factor must be positive");
        if m == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        UniPoly { coeffs }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Truncates to the terms of degree below `len`.
    pub fn truncate(&self, len: usize) -> Self {
        Self::new(self.coeffs.iter().take(len).cloned().collect())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> UniPoly<T> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlen = divisor.coeffs.len();
        assert!(dlen > 0, "polynomial division by zero");
        if self.coeffs.len() < dlen {
            return (Self::zero(), self.clone());
        }
        let lead_inv = divisor.coeffs[dlen - 1]
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dlen - 1].clone() * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * d;
            }
            quot[i] = c;
        }
        rem.truncate(dlen - 1);
        (Self::new(quot), Self::new(rem))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl UniPoly<BigInt> {
    pub fn to_rational(&self) -> UniPoly<Rational> {
        self.map(|c| Rational::from_integer(c.clone()))
    }
}

fn add_slices<T: Ring>(a: &[T], b: &[T]) -> Vec<T> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = o.clone() + s;
    }
    out
}

fn schoolbook<T: Ring>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y;
        }
    }
    out
}

fn mul_slices<T: Ring>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (short, long) = (a.len().min(b.len()), a.len().max(b.len()));
    if short < KARATSUBA_THRESHOLD || 2 * short < long {
        return schoolbook(a, b);
    }
    let m = long.div_ceil(2);
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let z0 = mul_slices(a0, b0);
    let z2 = mul_slices(a1, b1);
    let mut z1 = mul_slices(&add_slices(a0, a1), &add_slices(b0, b1));
    for (i, c) in z0.iter().enumerate() {
        z1[i] = z1[i].clone() - c;
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] = z1[i].clone() - c;
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, c) in z0.into_iter().enumerate() {
        out[i] = out[i].clone() + c;
    }
    for (i, c) in z1.into_iter().enumerate() {
        if i + m < out.len() {
            out[i + m] = out[i + m].clone() + c;
        }
    }
    for (i, c) in z2.into_iter().enumerate() {
        out[i + 2 * m] = out[i + 2 * m].clone() + c;
    }
    out
}

impl<T: Ring> Add<&UniPoly<T>> for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn add(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        UniPoly::new(add_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl<T: Ring> Sub<&UniPoly<T>> for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn sub(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), T::zero());
        }
        for (o, r) in out.iter_mut().zip(&rhs.coeffs) {
            *o = o.clone() - r;
        }
        UniPoly::new(out)
    }
}

impl<T: Ring> Mul<&UniPoly<T>> for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn mul(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        UniPoly::new(mul_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl<T: Ring> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn neg(self) -> UniPoly<T> {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Ring> Neg for UniPoly<T> {
    type Output = UniPoly<T>;
    fn neg(self) -> UniPoly<T> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Ring> $tr<UniPoly<T>> for UniPoly<T> {
            type Output = UniPoly<T>;
            fn $method(self, rhs: UniPoly<T>) -> UniPoly<T> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, T: Ring> $tr<&'a UniPoly<T>> for UniPoly<T> {
            type Output = UniPoly<T>;
            fn $method(self, rhs: &'a UniPoly<T>) -> UniPoly<T> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Ring> Zero for UniPoly<T> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for UniPoly<T> {
    fn one() -> Self {
        UniPoly::constant(T::one())
    }
}

impl<T: Ring> Ring for UniPoly<T> {
    fn from_bigint(value: &BigInt) -> Self {
        UniPoly::constant(T::from_bigint(value))
    }
}

/// Scalars that know how to print themselves as polynomial coefficients.
pub trait CoeffFormat {
    /// Returns `(negative, magnitude text, magnitude is one)`; `magnitude`
    /// is wrapped in parentheses when it is a sum.
    fn coeff_parts(&self) -> (bool, String, bool);
}

impl CoeffFormat for BigInt {
    fn coeff_parts(&self) -> (bool, String, bool) {
        let mag = self.abs();
        (self.is_negative(), mag.to_string(), mag.is_one())
    }
}

impl CoeffFormat for Rational {
    fn coeff_parts(&self) -> (bool, String, bool) {
        let mag = self.abs();
        (self.is_negative(), display_rational(&mag), mag.is_one())
    }
}

/// Ascending-order human-readable rendering, e.g. `1 + q + 2*q^2`.
pub fn format_terms<'a, C: CoeffFormat + 'a>(
    terms: impl IntoIterator<Item = (&'a C, String)>,
) -> String {
    let mut out = String::new();
    for (c, monomial) in terms {
        let (neg, mag, is_one) = c.coeff_parts();
        let body = match (monomial.is_empty(), is_one) {
            (true, _) => mag,
            (false, true) => monomial,
            (false, false) => format!("{mag}*{monomial}"),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn power_name(var: &str, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{exp}"),
    }
}

impl<T: Ring + CoeffFormat> UniPoly<T> {
    pub fn format_var(&self, var: &str) -> String {
        format_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (c, power_name(var, i))),
        )
    }
}
