//! Exact arithmetic in the cyclotomic fields Q(ζ_s).
//!
//! An element is stored as its residue modulo the s-th cyclotomic
//! polynomial, a polynomial of degree below φ(s) with rational
//! coefficients. That residue is canonical, so equality of two values of
//! the same order is equality of residues. Values of different orders are
//! combined by embedding both into Q(ζ_lcm) through ζ_s = ζ_{ms}^m.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{display_rational, Field, Rational, Ring};
use super::ntheory::{divisors, euler_phi};
use super::poly::{CoeffFormat, UniPoly};
use crate::error::{Error, Result};

/// The s-th cyclotomic polynomial Φ_s, monic of degree φ(s).
///
/// Obtained by dividing `x^s - 1` by Φ_d for every proper divisor `d` of
/// `s`, recursively.
pub fn cyclotomic_poly(s: u64) -> UniPoly<BigInt> {
    assert!(s >= 1, "cyclotomic order must be positive");
    let mut memo = HashMap::new();
    cyclotomic_memo(s, &mut memo)
}

fn cyclotomic_memo(s: u64, memo: &mut HashMap<u64, UniPoly<BigInt>>) -> UniPoly<BigInt> {
    if let Some(p) = memo.get(&s) {
        return p.clone();
    }
    let mut acc = UniPoly::<BigInt>::x_pow_minus_one(s as usize);
    for d in divisors(s) {
        if d == s {
            continue;
        }
        let phi_d = cyclotomic_memo(d, memo);
        acc = div_monic_int(&acc, &phi_d);
    }
    memo.insert(s, acc.clone());
    acc
}

/// Exact division by a monic integer polynomial.
fn div_monic_int(a: &UniPoly<BigInt>, d: &UniPoly<BigInt>) -> UniPoly<BigInt> {
    let dl = d.coeffs().len();
    let mut rem = a.coeffs().to_vec();
    if rem.len() < dl {
        return UniPoly::zero();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.coeffs().iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(
        rem.iter().all(|c| c.is_zero()),
        "inexact cyclotomic division"
    );
    UniPoly::new(quot)
}

/// Exact element of Q(ζ_order).
#[derive(Clone)]
pub struct CyclotomicNumber {
    order: u64,
    modulus: Arc<UniPoly<Rational>>,
    residue: UniPoly<Rational>,
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicNumber[s={}]({})", self.order, self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.residue.format_var("z"))
    }
}

fn modulus_for(order: u64) -> Arc<UniPoly<Rational>> {
    Arc::new(cyclotomic_poly(order).to_rational())
}

impl CyclotomicNumber {
    /// Builds `residue(ζ_order)`, reducing the residue modulo Φ_order.
    pub fn from_poly(order: u64, residue: UniPoly<Rational>) -> Self {
        Self::with_modulus(order, modulus_for(order), residue)
    }

    fn with_modulus(
        order: u64,
        modulus: Arc<UniPoly<Rational>>,
        residue: UniPoly<Rational>,
    ) -> Self {
        let residue = if residue.coeffs().len() >= modulus.coeffs().len() {
            residue.div_rem(&modulus).1
        } else {
            residue
        };
        CyclotomicNumber {
            order,
            modulus,
            residue,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_rational_in(1, r)
    }

    /// The rational `r` viewed as an element of Q(ζ_order).
    pub fn from_rational_in(order: u64, r: Rational) -> Self {
        Self::from_poly(order, UniPoly::constant(r))
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    /// The primitive root ζ_order = e^{2πi/order}.
    pub fn zeta(order: u64) -> Self {
        assert!(order >= 1, "order must be positive");
        Self::from_poly(order, UniPoly::monomial(Rational::one(), 1))
    }

    /// Builds a value from its power-basis coordinates (lowest first).
    pub fn from_coords(order: u64, coords: Vec<Rational>) -> Result<Self> {
        let phi = euler_phi(order) as usize;
        if coords.len() != phi {
            return Err(Error::InvalidArgument(format!(
                "expected {phi} coordinates for order {order}, got {}",
                coords.len()
            )));
        }
        Ok(Self::from_poly(order, UniPoly::new(coords)))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn residue(&self) -> &UniPoly<Rational> {
        &self.residue
    }

    /// Power-basis coordinates, exactly φ(order) of them.
    pub fn coords(&self) -> Vec<Rational> {
        let phi = self.modulus.degree().unwrap_or(0);
        (0..phi).map(|i| self.residue.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.residue.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.residue.coeffs()[0].clone()),
            Some(_) => None,
        }
    }

    /// Re-expresses the value in Q(ζ_target); `order` must divide `target`.
    pub fn embed(&self, target: u64) -> Self {
        assert!(
            target.is_multiple_of(self.order),
            "order {} does not divide {target}",
            self.order
        );
        if target == self.order {
            return self.clone();
        }
        Self::from_exponents(target, self.dilated_terms(target / self.order, target))
    }

    fn dilated_terms(&self, factor: u64, modulo: u64) -> Vec<(u64, Rational)> {
        self.residue
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| ((i as u64 * factor) % modulo, c.clone()))
            .collect()
    }

    fn from_exponents(order: u64, terms: Vec<(u64, Rational)>) -> Self {
        let mut cs = vec![Rational::zero(); order as usize];
        for (e, c) in terms {
            cs[e as usize] += c;
        }
        Self::from_poly(order, UniPoly::new(cs))
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = self.order.lcm(&other.order);
        (self.embed_beside(other, l), other.embed_beside(self, l))
    }

    /// Embeds into Q(ζ_target), borrowing `other`'s modulus when it already
    /// lives there.
    fn embed_beside(&self, other: &Self, target: u64) -> Self {
        if self.order == target {
            return self.clone();
        }
        match self.as_rational() {
            Some(r) if other.order == target => CyclotomicNumber {
                order: target,
                modulus: other.modulus.clone(),
                residue: UniPoly::constant(r),
            },
            _ => self.embed(target),
        }
    }

    fn combine(
        &self,
        other: &Self,
        op: impl Fn(&UniPoly<Rational>, &UniPoly<Rational>) -> UniPoly<Rational>,
    ) -> Self {
        if self.order == other.order {
            return Self::with_modulus(
                self.order,
                self.modulus.clone(),
                op(&self.residue, &other.residue),
            );
        }
        let (a, b) = self.aligned(other);
        Self::with_modulus(a.order, a.modulus.clone(), op(&a.residue, &b.residue))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// Φ_order.
    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::with_modulus(
                self.order,
                self.modulus.clone(),
                UniPoly::constant(r.recip()),
            ));
        }
        // Invariant: r_i ≡ s_i * residue (mod Φ).
        let (mut r0, mut r1) = ((*self.modulus).clone(), self.residue.clone());
        let (mut s0, mut s1) = (UniPoly::<Rational>::zero(), UniPoly::<Rational>::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // Φ is irreducible, so the gcd r0 is a nonzero constant.
        let c = r0.coeffs()[0].recip();
        Ok(Self::with_modulus(
            self.order,
            self.modulus.clone(),
            s0.scale(&c),
        ))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::with_modulus(self.order, self.modulus.clone(), UniPoly::one());
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

    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.try_inv()?.pow(exp.unsigned_abs()))
        }
    }

    /// Complex conjugate: ζ -> ζ^{s-1}.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let s = self.order;
        let terms = self
            .residue
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| ((s - i as u64 % s) % s, c.clone()))
            .collect();
        Self::from_exponents(s, terms)
    }

    /// `q * conj(q)`, the squared absolute value as a field element.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    pub fn is_one(&self) -> bool {
        self.residue.degree() == Some(0) && self.residue.coeffs()[0].is_one()
    }

    /// True iff `q^L = 1` for `L = lcm(2, order)`. The torsion units of
    /// Q(ζ_s) are ±ζ_s^k, so no other exponent needs checking.
    pub fn is_root_of_unity(&self) -> Result<bool> {
        Ok(self.root_of_unity_order()?.is_some())
    }

    /// Minimal `m` with `q^m = 1`, if any.
    pub fn root_of_unity_order(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(Error::ZeroQ);
        }
        let l = self.order.lcm(&2);
        if !self.pow(l).is_one() {
            return Ok(None);
        }
        Ok(divisors(l).into_iter().find(|&m| self.pow(m).is_one()))
    }

    /// Image in the prime field F_p under ζ_{big_order} -> `root`, where
    /// `root` has multiplicative order `big_order` mod `p` and this
    /// element's order divides `big_order`. `None` when a denominator
    /// vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64, big_order: u64, root: u64) -> Option<u64> {
        use super::ntheory::{mul_mod, pow_mod};
        let w = pow_mod(root, big_order / self.order, p);
        let mut acc = 0u64;
        for c in self.residue.coeffs().iter().rev() {
            acc = (mul_mod(acc, w, p) + rational_mod(c, p)?) % p;
        }
        Some(acc)
    }
}

pub(crate) fn rational_mod(r: &Rational, p: u64) -> Option<u64> {
    use num_traits::ToPrimitive;
    let pb = BigInt::from(p);
    let n = r.numer().mod_floor(&pb).to_u64()?;
    let d = r.denom().mod_floor(&pb).to_u64()?;
    let dinv = super::ntheory::inv_mod(d, p)?;
    Some(super::ntheory::mul_mod(n, dinv, p))
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.residue == other.residue;
        }
        let (a, b) = self.aligned(other);
        a.residue == b.residue
    }
}

impl Eq for CyclotomicNumber {}

impl Add<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Mul<&CyclotomicNumber> for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        if let (Some(a), Some(b)) = (self.as_rational(), rhs.as_rational()) {
            let order = self.order.lcm(&rhs.order);
            let modulus = if order == self.order {
                self.modulus.clone()
            } else if order == rhs.order {
                rhs.modulus.clone()
            } else {
                modulus_for(order)
            };
            return CyclotomicNumber {
                order,
                modulus,
                residue: UniPoly::constant(a * b),
            };
        }
        self.combine(rhs, |a, b| a * b)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            modulus: self.modulus.clone(),
            residue: -&self.residue,
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &'a CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Zero for CyclotomicNumber {
    fn zero() -> Self {
        CyclotomicNumber::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
}

impl One for CyclotomicNumber {
    fn one() -> Self {
        CyclotomicNumber::from_int(1)
    }
}

impl Ring for CyclotomicNumber {
    fn from_bigint(value: &BigInt) -> Self {
        CyclotomicNumber::from_rational(Rational::from_integer(value.clone()))
    }
}

impl Field for CyclotomicNumber {
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

impl CoeffFormat for CyclotomicNumber {
    fn coeff_parts(&self) -> (bool, String, bool) {
        match self.as_rational() {
            Some(r) => r.coeff_parts(),
            None => (false, format!("({self})"), false),
        }
    }
}

/// Rational-coordinate display used in text output, e.g. `3/5 + 4/5*z`.
pub fn display_cyclotomic(c: &CyclotomicNumber) -> String {
    match c.as_rational() {
        Some(r) => display_rational(&r),
        None => c.to_string(),
    }
}
