//! Lines through the q-Pascal triangle and their generating series
//! `h_q(x) = Σ_j [n+aj choose k+bj]_q x^j`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::field::{format_rational, parse_rational};
use crate::arith::ntheory::euler_phi;
use crate::arith::{CyclotomicNumber, Rational, Ring, UniPoly};
use crate::error::{Error, Result};
use crate::qcomb::{binomial, QBinomialTable, QEvaluator};

/// Admissibility conditions, in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `n >= k >= 0`
    KRange,
    /// `a > b > 0`
    SlopeRange,
    /// `gcd(a, b) = 1`
    Coprime,
    /// `n - k < a - b` or `k < b`
    CollectsLine,
}

impl Condition {
    pub fn describe(self) -> &'static str {
        match self {
            Condition::KRange => "n >= k >= 0",
            Condition::SlopeRange => "a > b > 0",
            Condition::Coprime => "gcd(a, b) = 1",
            Condition::CollectsLine => "n - k < a - b or k < b",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

/// Returns the first violated condition, or `None` when admissible.
pub fn is_admissible(n: i64, k: i64, a: i64, b: i64) -> Option<Condition> {
    if !(n >= k && k >= 0) {
        return Some(Condition::KRange);
    }
    if !(a > b && b > 0) {
        return Some(Condition::SlopeRange);
    }
    if a.gcd(&b) != 1 {
        return Some(Condition::Coprime);
    }
    if !(n - k < a - b || k < b) {
        return Some(Condition::CollectsLine);
    }
    None
}

/// An admissible quadruple `(n, k, a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LineSpec {
    n: i64,
    k: i64,
    a: i64,
    b: i64,
}

impl LineSpec {
    pub fn new(n: i64, k: i64, a: i64, b: i64) -> Result<Self> {
        match is_admissible(n, k, a, b) {
            None => Ok(LineSpec { n, k, a, b }),
            Some(c) => Err(Error::Inadmissible {
                n,
                k,
                a,
                b,
                condition: c.describe(),
            }),
        }
    }

    /// The generating function of the central q-binomials, `(0, 0, 2, 1)`.
    pub fn central() -> Self {
        LineSpec {
            n: 0,
            k: 0,
            a: 2,
            b: 1,
        }
    }

    pub fn n(&self) -> i64 {
        self.n
    }
    pub fn k(&self) -> i64 {
        self.k
    }
    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }

    /// `(n + a j, k + b j)`
    pub fn point(&self, j: i64) -> (i64, i64) {
        (self.n + self.a * j, self.k + self.b * j)
    }
}

impl fmt::Display for LineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n, self.k, self.a, self.b)
    }
}

/// Exact coefficients `u_0 .. u_{N-1}` of `h_q(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPrefix {
    pub spec: LineSpec,
    /// Order of the cyclotomic field the coefficients live in.
    pub order: u64,
    /// The value of q, when known. Dumps do not record it.
    pub q: Option<CyclotomicNumber>,
    pub terms: Vec<CyclotomicNumber>,
}

impl SeriesPrefix {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn prefix(spec: &LineSpec, q: &CyclotomicNumber, len: usize) -> Result<SeriesPrefix> {
    if len == 0 {
        return Err(Error::InvalidArgument(
            "a prefix needs at least one term".into(),
        ));
    }
    let mut ev = QEvaluator::new(q)?;
    let order = q.order();
    let terms = (0..len as i64)
        .map(|j| {
            let (x, y) = spec.point(j);
            ev.eval(x, y).map(|t| t.embed(order))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesPrefix {
        spec: *spec,
        order,
        q: Some(q.clone()),
        terms,
    })
}

/// `[n+aj choose k+bj]_q` as a polynomial in q.
pub fn symbolic_coefficient(spec: &LineSpec, j: i64) -> Result<UniPoly<BigInt>> {
    let (x, y) = spec.point(j);
    crate::qcomb::q_binomial(x, y)
}

fn factor_product(start: i64, count: i64) -> UniPoly<BigInt> {
    // Π_{ℓ=1}^{count} (q^{start+ℓ} - 1)
    (1..=count).fold(UniPoly::one(), |acc, l| {
        &acc * &UniPoly::x_pow_minus_one((start + l) as usize)
    })
}

/// Numerator and denominator of `u_{j+1} / u_j` as polynomials in q.
pub fn ratio_factors(spec: &LineSpec, j: i64) -> (UniPoly<BigInt>, UniPoly<BigInt>) {
    let (n, k, a, b) = (spec.n, spec.k, spec.a, spec.b);
    let num = factor_product(n + a * j, a);
    let den = &factor_product(k + b * j, b) * &factor_product(n - k + (a - b) * j, a - b);
    (num, den)
}

/// Checks `u_{j+1}(q) · D_j(q) = u_j(q) · N_j(q)` as an identity in Z[q].
pub fn ratio_identity_check(spec: &LineSpec, j: i64) -> Result<bool> {
    let mut table = QBinomialTable::new();
    ratio_identity_check_with(spec, j, &mut table)
}

pub fn ratio_identity_check_with(
    spec: &LineSpec,
    j: i64,
    table: &mut QBinomialTable,
) -> Result<bool> {
    if j < 0 {
        return Err(Error::InvalidArgument(format!("negative index j = {j}")));
    }
    let (x0, y0) = spec.point(j);
    let (x1, y1) = spec.point(j + 1);
    let u0 = table.get(x0, y0)?.clone();
    let u1 = table.get(x1, y1)?.clone();
    let (num, den) = ratio_factors(spec, j);
    Ok(&u1 * &den == &u0 * &num)
}

/// One of the `s` pieces of `h_ω(x)` for ω of order `s`: the terms with
/// `j ≡ residue (mod s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasComponent {
    pub residue: u64,
    /// The constant residual q-binomial (possibly zero).
    pub scalar: CyclotomicNumber,
    /// `(n', k') = (⌊(n+ar)/s⌋, ⌊(k+br)/s⌋)`
    pub shifted: (i64, i64),
    pub stride: u64,
    pub slope: (i64, i64),
}

impl LucasComponent {
    /// Coefficient of `x^{ℓs + r}`: `scalar · C(n' + aℓ, k' + bℓ)`.
    pub fn coefficient(&self, l: u64) -> CyclotomicNumber {
        let (np, kp) = self.shifted;
        let (a, b) = self.slope;
        let c = binomial((np + a * l as i64) as u64, (kp + b * l as i64) as u64);
        &self.scalar * &CyclotomicNumber::from_bigint(&c)
    }

    /// Exponent of x carrying [`Self::coefficient`]`(l)`.
    pub fn exponent(&self, l: u64) -> u64 {
        l * self.stride + self.residue
    }
}

pub fn lucas_decomposition(
    spec: &LineSpec,
    omega: &CyclotomicNumber,
) -> Result<Vec<LucasComponent>> {
    let s = omega.root_of_unity_order()?.ok_or(Error::NotRootOfUnity)?;
    let mut ev = QEvaluator::new(omega)?;
    let si = s as i64;
    (0..si)
        .map(|r| {
            let (x, y) = spec.point(r);
            let (xr, yr) = (x.rem_euclid(si), y.rem_euclid(si));
            let scalar = if yr > xr {
                CyclotomicNumber::from_rational_in(omega.order(), Rational::zero())
            } else {
                ev.eval(xr, yr)?
            };
            Ok(LucasComponent {
                residue: r as u64,
                scalar,
                shifted: (x.div_euclid(si), y.div_euclid(si)),
                stride: s,
                slope: (spec.a, spec.b),
            })
        })
        .collect()
}

/// Sums the component contributions into the first `len` coefficients.
pub fn reassemble(components: &[LucasComponent], len: usize) -> Vec<CyclotomicNumber> {
    let mut out = vec![CyclotomicNumber::zero(); len];
    for c in components {
        let mut l = 0;
        while (c.exponent(l) as usize) < len {
            let e = c.exponent(l) as usize;
            out[e] = &out[e] + &c.coefficient(l);
            l += 1;
        }
    }
    out
}

/// Line-oriented text dump of a prefix:
///
/// ```text
/// s=<order> n=<n> k=<k> a=<a> b=<b> N=<N>
/// <num/den>,<num/den>,...     one line per coefficient, φ(s) entries
/// ```
pub fn dump_prefix(prefix: &SeriesPrefix) -> String {
    let spec = prefix.spec;
    let mut out = format!(
        "s={} n={} k={} a={} b={} N={}\n",
        prefix.order,
        spec.n,
        spec.k,
        spec.a,
        spec.b,
        prefix.terms.len()
    );
    for t in &prefix.terms {
        let line: Vec<String> = t
            .embed(prefix.order)
            .coords()
            .iter()
            .map(format_rational)
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn dump_err(line: usize, message: impl Into<String>) -> Error {
    Error::Dump {
        line,
        message: message.into(),
    }
}

pub fn load_prefix(text: &str) -> Result<SeriesPrefix> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| dump_err(1, "empty input"))?;
    let mut fields = [None::<i64>; 6];
    let keys = ["s", "n", "k", "a", "b", "N"];
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != keys.len() {
        return Err(dump_err(1, "header must have the fields s n k a b N"));
    }
    for (part, (slot, key)) in parts.iter().zip(fields.iter_mut().zip(keys)) {
        let value = part
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| dump_err(1, format!("expected `{key}=` in header")))?;
        *slot = Some(
            value
                .parse()
                .map_err(|_| dump_err(1, format!("bad integer for {key}: {value:?}")))?,
        );
    }
    let [s, n, k, a, b, len] = fields.map(|f| f.expect("all header fields parsed"));
    if s < 1 || len < 0 {
        return Err(dump_err(1, "order must be positive and N non-negative"));
    }
    let order = s as u64;
    let spec = LineSpec::new(n, k, a, b)?;
    let phi = euler_phi(order) as usize;
    let mut terms = Vec::with_capacity(len as usize);
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        if terms.len() == len as usize {
            if line.trim().is_empty() {
                continue;
            }
            return Err(dump_err(lineno, "more coefficient lines than N"));
        }
        let coords = line
            .split(',')
            .map(|c| {
                parse_rational(c).ok_or_else(|| dump_err(lineno, format!("bad rational {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != phi {
            return Err(dump_err(
                lineno,
                format!("expected {phi} coordinates, found {}", coords.len()),
            ));
        }
        terms.push(CyclotomicNumber::from_coords(order, coords)?);
    }
    if terms.len() != len as usize {
        return Err(dump_err(
            terms.len() + 2,
            format!("expected {len} coefficient lines"),
        ));
    }
    Ok(SeriesPrefix {
        spec,
        order,
        q: None,
        terms,
    })
}
