//! Guessing algebraic equations and P-recurrences from series prefixes.
//!
//! Both guessers set up an exact linear system over the cyclotomic field,
//! take the first kernel vector (which has the earliest possible last
//! nonzero unknown) and re-verify the result on terms that were not used
//! to build the system.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::linalg::certifies_full_column_rank;
use crate::arith::{nullspace, BiPoly, CyclotomicNumber, Field, UniPoly};
use crate::error::{Error, Result};

type Cyc = CyclotomicNumber;

/// Outcome of checking a guessed object against a prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    /// Every checked coefficient (or recurrence window) vanished.
    Verified { checked: usize },
    /// Index of the first nonzero coefficient (or residual).
    FailsAt(usize),
}

impl Verification {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verification::Verified { .. })
    }
}

/// `P(x, z)` with `P(x, h(x)) ≡ 0 mod x^verified_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgEquation {
    pub poly: BiPoly<Cyc>,
    pub dx: usize,
    pub dz: usize,
    pub verified_order: usize,
}

impl AlgEquation {
    pub fn z_degree(&self) -> usize {
        self.poly.degree_y().unwrap_or(0)
    }

    pub fn x_degree(&self) -> usize {
        self.poly.degree_x().unwrap_or(0)
    }
}

impl fmt::Display for AlgEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.format_vars("x", "z"))
    }
}

/// `Σ_{i=0}^r c_i(j) u_{j+i} = 0` for all `j ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PRecurrence {
    coeffs: Vec<UniPoly<Cyc>>,
}

impl PRecurrence {
    pub fn new(coeffs: Vec<UniPoly<Cyc>>) -> Result<Self> {
        match (coeffs.first(), coeffs.last()) {
            (Some(c0), Some(cr)) if !c0.is_zero() && !cr.is_zero() => Ok(PRecurrence { coeffs }),
            (None, _) => Err(Error::InvalidArgument(
                "a recurrence needs at least one coefficient".into(),
            )),
            _ => Err(Error::InvalidArgument(
                "recurrence coefficients c_0 and c_r must be nonzero".into(),
            )),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(UniPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[UniPoly<Cyc>] {
        &self.coeffs
    }

    /// `Σ c_i(j) u_{j+i}`; needs `terms.len() > j + r`.
    pub fn residual(&self, terms: &[Cyc], j: usize) -> Cyc {
        let jj = Cyc::from_int(j as i64);
        self.coeffs
            .iter()
            .enumerate()
            .fold(Cyc::zero(), |acc, (i, c)| acc + c.eval(&jj) * &terms[j + i])
    }
}

impl fmt::Display for PRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let shift = if i == 0 {
                    "u(j)".to_string()
                } else {
                    format!("u(j+{i})")
                };
                format!("({})*{shift}", c.format_var("j"))
            })
            .collect();
        write!(f, "{} = 0", parts.join(" + "))
    }
}

pub fn algebraic_guard(dx: usize, dz: usize) -> usize {
    dx + dz + 5
}

/// Minimum prefix length accepted by [`guess_algebraic`].
pub fn algebraic_min_terms(dx: usize, dz: usize) -> usize {
    (dx + 1) * (dz + 1) + algebraic_guard(dx, dz)
}

pub const RECURRENCE_GUARD: usize = 5;

/// Minimum number of terms accepted by [`guess_precurrence`].
pub fn recurrence_min_terms(r: usize, d: usize) -> usize {
    (r + 1) * (d + 1) + r + 10
}

/// Coefficients `0..len` of `a * b`.
fn truncated_mul(a: &[Cyc], b: &[Cyc], len: usize) -> Vec<Cyc> {
    (0..len)
        .map(|m| {
            let mut acc = Cyc::zero();
            for i in 0..=m.min(a.len().saturating_sub(1)) {
                if m - i < b.len() && !a[i].is_zero() && !b[m - i].is_zero() {
                    acc = acc + &a[i] * &b[m - i];
                }
            }
            acc
        })
        .collect()
}

/// `h^0, h^1, ..., h^dz`, each truncated to `len` coefficients.
fn truncated_powers(h: &[Cyc], dz: usize, len: usize) -> Vec<Vec<Cyc>> {
    let mut powers = Vec::with_capacity(dz + 1);
    let mut one = vec![Cyc::zero(); len];
    if len > 0 {
        one[0] = Cyc::one();
    }
    powers.push(one);
    for j in 1..=dz {
        let next = truncated_mul(&powers[j - 1], h, len);
        powers.push(next);
    }
    powers
}

/// First kernel vector of the system, trusting a modular full-rank
/// certificate to skip exact elimination when the kernel is trivial.
fn first_kernel_vector(matrix: &[Vec<Cyc>], cols: usize) -> Option<Vec<Cyc>> {
    if certifies_full_column_rank(matrix, cols) {
        return None;
    }
    nullspace(matrix, cols).into_iter().next()
}

fn kernel_basis(matrix: &[Vec<Cyc>], cols: usize) -> Vec<Vec<Cyc>> {
    if certifies_full_column_rank(matrix, cols) {
        return Vec::new();
    }
    nullspace(matrix, cols)
}

pub fn guess_algebraic(terms: &[Cyc], dx: usize, dz: usize) -> Result<Option<AlgEquation>> {
    if dz == 0 {
        return Err(Error::InvalidArgument(
            "the z-degree bound must be at least 1".into(),
        ));
    }
    let required = algebraic_min_terms(dx, dz);
    if terms.len() < required {
        return Err(Error::PrefixTooShort {
            required,
            actual: terms.len(),
        });
    }
    let n = terms.len();
    let eqs = n - algebraic_guard(dx, dz);
    let powers = truncated_powers(terms, dz, eqs);
    // unknown p_{i,j} (coefficient of x^i z^j) sits in column j*(dx+1) + i
    let cols = (dx + 1) * (dz + 1);
    let matrix: Vec<Vec<Cyc>> = (0..eqs)
        .map(|m| {
            let mut row = Vec::with_capacity(cols);
            for power in &powers {
                for i in 0..=dx {
                    row.push(if m >= i {
                        power[m - i].clone()
                    } else {
                        Cyc::zero()
                    });
                }
            }
            row
        })
        .collect();
    let Some(v) = first_kernel_vector(&matrix, cols) else {
        return Ok(None);
    };
    let poly = BiPoly::from_terms(
        v.into_iter()
            .enumerate()
            .map(|(c, val)| ((c % (dx + 1), c / (dx + 1)), val)),
    );
    let Some(poly) = normalize_equation(&poly) else {
        return Ok(None);
    };
    match check_equation(&poly, terms) {
        Verification::Verified { checked } => Ok(Some(AlgEquation {
            poly,
            dx,
            dz,
            verified_order: checked,
        })),
        Verification::FailsAt(_) => Ok(None),
    }
}

/// Strips powers of z and the common x-content, then scales so that the
/// lowest x-coefficient of the top z-coefficient is 1. `None` if nothing
/// with positive z-degree remains.
pub fn normalize_equation(poly: &BiPoly<Cyc>) -> Option<BiPoly<Cyc>> {
    let ys = poly.y_coeffs();
    let low = ys.iter().position(|c| !c.is_zero())?;
    let ys = &ys[low..];
    if ys.len() < 2 {
        return None;
    }
    let content = ys
        .iter()
        .filter(|c| !c.is_zero())
        .fold(UniPoly::<Cyc>::zero(), |g, c| g.gcd(c));
    let ys: Vec<UniPoly<Cyc>> = ys
        .iter()
        .map(|c| {
            c.exact_div(&content)
                .expect("content divides every coefficient")
        })
        .collect();
    let top = ys.last().expect("nonempty");
    let lead = top.coeffs().iter().find(|c| !c.is_zero())?.inv()?;
    let ys: Vec<UniPoly<Cyc>> = ys.iter().map(|c| c.scale(&lead)).collect();
    Some(BiPoly::from_y_coeffs(&ys))
}

fn check_equation(poly: &BiPoly<Cyc>, terms: &[Cyc]) -> Verification {
    let n = terms.len();
    let dz = poly.degree_y().unwrap_or(0);
    let powers = truncated_powers(terms, dz, n);
    let mut total = vec![Cyc::zero(); n];
    for (&(i, j), c) in poly.terms() {
        for m in i..n {
            let t = &powers[j][m - i];
            if !t.is_zero() {
                total[m] = &total[m] + &(c * t);
            }
        }
    }
    match total.iter().position(|t| !t.is_zero()) {
        Some(idx) => Verification::FailsAt(idx),
        None => Verification::Verified { checked: n },
    }
}

/// Computes `P(x, h) mod x^N` for the `N` given terms.
pub fn verify_algebraic(eq: &AlgEquation, terms: &[Cyc]) -> Verification {
    check_equation(&eq.poly, terms)
}

pub fn guess_precurrence(terms: &[Cyc], r: usize, d: usize) -> Result<Option<PRecurrence>> {
    let required = recurrence_min_terms(r, d);
    if terms.len() < required {
        return Err(Error::PrefixTooShort {
            required,
            actual: terms.len(),
        });
    }
    let cols = (r + 1) * (d + 1);
    let eqs = cols + RECURRENCE_GUARD;
    // unknown: coefficient of j^e in c_i, column i*(d+1) + e
    let matrix: Vec<Vec<Cyc>> = (0..eqs)
        .map(|j| {
            let jj = Cyc::from_int(j as i64);
            let mut row = Vec::with_capacity(cols);
            for i in 0..=r {
                let mut p = terms[j + i].clone();
                for _ in 0..=d {
                    row.push(p.clone());
                    p = p * &jj;
                }
            }
            row
        })
        .collect();
    let basis = kernel_basis(&matrix, cols);
    let split = |v: &[Cyc]| -> Vec<UniPoly<Cyc>> {
        v.chunks(d + 1).map(|c| UniPoly::new(c.to_vec())).collect()
    };
    let Some(v) = basis.iter().find(|v| v[..=d].iter().any(|c| !c.is_zero())) else {
        return Ok(None);
    };
    let mut coeffs = split(v);
    while coeffs.last().is_some_and(UniPoly::is_zero) {
        coeffs.pop();
    }
    let lead = coeffs
        .last()
        .and_then(|c| c.leading())
        .and_then(Field::inv)
        .ok_or_else(|| {
            Error::Inconsistency("kernel vector without a leading coefficient".into())
        })?;
    let coeffs = coeffs.iter().map(|c| c.scale(&lead)).collect();
    let rec = PRecurrence::new(coeffs)?;
    match verify_precurrence(&rec, terms)? {
        Verification::Verified { .. } => Ok(Some(rec)),
        Verification::FailsAt(_) => Ok(None),
    }
}

pub fn verify_precurrence(rec: &PRecurrence, terms: &[Cyc]) -> Result<Verification> {
    let r = rec.order();
    if terms.len() <= r {
        return Err(Error::PrefixTooShort {
            required: r + 1,
            actual: terms.len(),
        });
    }
    let windows = terms.len() - r;
    Ok(
        match (0..windows).find(|&j| !rec.residual(terms, j).is_zero()) {
            Some(j) => Verification::FailsAt(j),
            None => Verification::Verified { checked: windows },
        },
    )
}
