//! Deciding |q| against 1 for q in a cyclotomic field.
//!
//! Equality is decided exactly through `q * conj(q) = 1`. Otherwise the real
//! number |q|^2 = Σ w_k cos(2πk/s) is enclosed in an interval using
//! fixed-point arithmetic whose rounding errors are counted explicitly, and
//! the precision doubles until the interval excludes 1.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::CyclotomicNumber;
use super::field::Rational;
use crate::error::{Error, Result};

pub const DEFAULT_START_BITS: u64 = 64;
pub const DEFAULT_MAX_BITS: u64 = 4096;

/// Environment variable overriding the precision cap.
pub const MAX_PRECISION_ENV: &str = "QPOLYA_MAX_PRECISION";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AbsClass {
    Less,
    Equal,
    Greater,
}

impl AbsClass {
    pub fn as_str(self) -> &'static str {
        match self {
            AbsClass::Less => "less",
            AbsClass::Equal => "equal",
            AbsClass::Greater => "greater",
        }
    }
}

/// Precision schedule for the numeric fallback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionBudget {
    pub start_bits: u64,
    pub max_bits: u64,
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        PrecisionBudget {
            start_bits: DEFAULT_START_BITS,
            max_bits: DEFAULT_MAX_BITS,
        }
    }
}

impl PrecisionBudget {
    /// Default schedule with the cap taken from `QPOLYA_MAX_PRECISION` when
    /// it is set to a positive integer.
    pub fn from_env() -> Self {
        let mut budget = Self::default();
        if let Some(cap) = std::env::var(MAX_PRECISION_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
        {
            budget.max_bits = cap;
        }
        budget
    }
}

pub fn compare_abs_to_one(q: &CyclotomicNumber, budget: PrecisionBudget) -> Result<AbsClass> {
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    let norm = q.norm_sq();
    if let Some(r) = norm.as_rational() {
        return Ok(classify(r.cmp(&Rational::one())));
    }
    numeric_classify(&norm, q.order(), budget)
}

/// The interval path alone, without the exact equality shortcut. Used to
/// cross-check the exact path; on |q| = 1 it can only end undecided.
pub fn compare_abs_to_one_numeric(
    q: &CyclotomicNumber,
    budget: PrecisionBudget,
) -> Result<AbsClass> {
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    numeric_classify(&q.norm_sq(), q.order(), budget)
}

fn classify(o: Ordering) -> AbsClass {
    match o {
        Ordering::Less => AbsClass::Less,
        Ordering::Equal => AbsClass::Equal,
        Ordering::Greater => AbsClass::Greater,
    }
}

fn numeric_classify(
    norm: &CyclotomicNumber,
    order: u64,
    budget: PrecisionBudget,
) -> Result<AbsClass> {
    let norm = norm.embed(order.max(norm.order()));
    let s = norm.order();
    let weights = norm.coords();
    let mut bits = budget.start_bits.max(8);
    loop {
        let (center, radius) = real_part_interval(&weights, s, bits);
        let diff = center - Rational::one();
        if diff > radius {
            return Ok(AbsClass::Greater);
        }
        if -diff > radius {
            return Ok(AbsClass::Less);
        }
        if bits >= budget.max_bits {
            return Err(Error::Undecided { bits });
        }
        bits = (bits * 2).min(budget.max_bits);
    }
}

/// Encloses Σ w_k cos(2πk/s) as `center ± radius`.
fn real_part_interval(weights: &[Rational], s: u64, bits: u64) -> (Rational, Rational) {
    let w = bits;
    let (pi, pi_err) = pi_fixed(w);
    let scale = BigInt::one() << (w as usize);
    let mut center = Rational::zero();
    let mut abs_sum = Rational::zero();
    let mut worst_err = BigInt::zero();
    for (k, wk) in weights.iter().enumerate() {
        if wk.is_zero() {
            continue;
        }
        let (c, err) = cos_two_pi_fraction(k as u64, s, w, &pi, &pi_err);
        center += wk * Rational::new(c, scale.clone());
        abs_sum += wk.abs();
        if err > worst_err {
            worst_err = err;
        }
    }
    let radius = abs_sum * Rational::new(worst_err, scale);
    (center, radius)
}

fn atan_inv_fixed(m: u64, w: u64) -> (BigInt, BigInt) {
    let m2 = BigInt::from(m * m);
    let mut power = (BigInt::one() << (w as usize)) / BigInt::from(m);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m2;
        k += 1;
    }
    // Each term is off by < 3 ulps; the alternating tail adds < 1.
    (sum, BigInt::from(3 * (k + 1) + 1))
}

/// π·2^w rounded, with an error bound in ulps (Machin's formula).
fn pi_fixed(w: u64) -> (BigInt, BigInt) {
    let (a5, e5) = atan_inv_fixed(5, w);
    let (a239, e239) = atan_inv_fixed(239, w);
    let pi = a5 * 16 - a239 * 4;
    let err = e5 * 16 + e239 * 4;
    (pi, err)
}

/// cos(2πk/s)·2^w with an error bound in ulps.
fn cos_two_pi_fraction(k: u64, s: u64, w: u64, pi: &BigInt, pi_err: &BigInt) -> (BigInt, BigInt) {
    let k = k % s;
    let k = k.min(s - k);
    if k == 0 {
        return (BigInt::one() << (w as usize), BigInt::zero());
    }
    // θ = 2πk/s ∈ (0, π]; the factor 2k/s is at most 1.
    let theta = (pi * BigInt::from(2 * k)) / BigInt::from(s);
    let theta_err = pi_err + 1;
    let theta_sq = (&theta * &theta) >> (w as usize);
    let mut term = BigInt::one() << (w as usize);
    let mut sum = term.clone();
    let mut m: u64 = 0;
    while !term.is_zero() {
        m += 1;
        term = ((&term * &theta_sq) >> (w as usize)) / BigInt::from((2 * m - 1) * (2 * m));
        if m % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
    }
    // Rounding in the recurrence: at most 35·m ulps per term, m terms.
    let series_err = BigInt::from(35 * (m + 1) * (m + 1) + 2);
    (sum, series_err + theta_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rational};
    use crate::arith::poly::UniPoly;

    fn cyc(order: u64, cs: &[Rational]) -> CyclotomicNumber {
        CyclotomicNumber::from_poly(order, UniPoly::new(cs.to_vec()))
    }

    #[test]
    fn pi_is_accurate() {
        let (pi, err) = pi_fixed(128);
        // 3.14159265358979323846264338327950288 to ~38 digits.
        let approx = Rational::new(pi, BigInt::one() << 128usize);
        let reference = Rational::new(
            "314159265358979323846264338327950288".parse().unwrap(),
            BigInt::from(10).pow(35),
        );
        let gap = (approx - reference).abs();
        assert!(gap < Rational::new(BigInt::one(), BigInt::from(10).pow(33)));
        assert!(err < BigInt::from(4096));
    }

    #[test]
    fn cosine_of_sixty_degrees() {
        let (pi, pe) = pi_fixed(96);
        let (c, err) = cos_two_pi_fraction(1, 6, 96, &pi, &pe);
        let half = BigInt::one() << 95usize;
        assert!((c - half).abs() <= err);
    }

    #[test]
    fn classification_examples() {
        let budget = PrecisionBudget::default();
        assert_eq!(
            compare_abs_to_one(&CyclotomicNumber::from_int(2), budget),
            Ok(AbsClass::Greater)
        );
        let unit = cyc(4, &[rational(3, 5), rational(4, 5)]);
        assert_eq!(compare_abs_to_one(&unit, budget), Ok(AbsClass::Equal));
        let small = cyc(4, &[rational(1, 2), rational(1, 3)]);
        assert_eq!(compare_abs_to_one(&small, budget), Ok(AbsClass::Less));
    }

    #[test]
    fn genuinely_numeric_cases() {
        let budget = PrecisionBudget::default();
        // |1 + ζ_5| = 2cos(π/5) ≈ 1.618
        let golden = cyc(5, &[int(1), int(1)]);
        assert_eq!(compare_abs_to_one(&golden, budget), Ok(AbsClass::Greater));
        // |1 + ζ_5^2| = 2cos(2π/5) ≈ 0.618
        let small = cyc(5, &[int(1), int(0), int(1)]);
        assert_eq!(compare_abs_to_one(&small, budget), Ok(AbsClass::Less));
        // |1 + ζ_3| = 1 exactly: the numeric path alone never decides.
        let unit = cyc(3, &[int(1), int(1)]);
        assert_eq!(compare_abs_to_one(&unit, budget), Ok(AbsClass::Equal));
        assert!(matches!(
            compare_abs_to_one_numeric(
                &unit,
                PrecisionBudget {
                    start_bits: 64,
                    max_bits: 256
                }
            ),
            Err(Error::Undecided { .. })
        ));
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(
            compare_abs_to_one(&CyclotomicNumber::zero(), PrecisionBudget::default()),
            Err(Error::ZeroQ)
        );
    }
}
