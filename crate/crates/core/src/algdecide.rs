//! Deciding algebraicity of `h_q(x)`, plus the finite zero test, the
//! generalized Vandermonde determinant and the refutation polynomial built
//! from a candidate recurrence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::field::{display_rational, int, ln_abs, Rational};
use crate::arith::ntheory::euler_phi;
use crate::arith::{
    compare_abs_to_one, cyclotomic_poly, poly_det, AbsClass, BiPoly, CyclotomicNumber,
    PrecisionBudget, UniPoly,
};
use crate::error::{Error, Result};
use crate::guess::{
    algebraic_min_terms, guess_algebraic, guess_precurrence, recurrence_min_terms,
    verify_algebraic, AlgEquation, PRecurrence, Verification,
};
use crate::lineseries::{prefix, LineSpec};

type Cyc = CyclotomicNumber;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideConfig {
    /// Largest diagonal bound `t` tried for `(dx, dz) = (t, t)`.
    pub max_degree: usize,
    /// Minimum number of terms handed to the guesser.
    pub verify_terms: usize,
    /// Largest bound used for the supplementary guesses attached to a
    /// root-of-unity refutation.
    pub certificate_guess_cap: usize,
    pub precision: PrecisionBudget,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig {
            max_degree: 8,
            verify_terms: 60,
            certificate_guess_cap: 2,
            precision: PrecisionBudget::from_env(),
        }
    }
}

impl DecideConfig {
    /// Terms used at diagonal bound `t`.
    pub fn terms_at(&self, t: usize) -> usize {
        self.verify_terms
            .max(2 * (t + 1) * (t + 1))
            .max(algebraic_min_terms(t, t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuessKind {
    Algebraic,
    Recurrence,
}

impl GuessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GuessKind::Algebraic => "algebraic",
            GuessKind::Recurrence => "recurrence",
        }
    }
}

/// A guess that was run and came back empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptyGuess {
    pub kind: GuessKind,
    pub bounds: (usize, usize),
    pub terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `deg_q u_j` grows like `b(a-b) j^2` while `|q| > 1`.
    DegreeGrowth {
        degree_poly: UniPoly<BigInt>,
        leading: BigInt,
        abs_class: AbsClass,
    },
    /// `q^L != 1` for `L = lcm(2, s)`, so q is not a root of unity.
    NotRootOfUnity {
        exponent: u64,
        abs_class: AbsClass,
        searched: Vec<EmptyGuess>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Algebraic {
        equation: AlgEquation,
        /// Diagonal bound at which the equation was found.
        bound: usize,
        /// Length of the fresh prefix the equation was re-verified on.
        reverified: usize,
    },
    Transcendental {
        certificate: Certificate,
    },
    Undecided {
        max_degree: usize,
        terms: usize,
    },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::Algebraic { .. } => "algebraic",
            Verdict::Transcendental { .. } => "transcendental",
            Verdict::Undecided { .. } => "undecided",
        }
    }
}

pub fn decide(spec: &LineSpec, q: &Cyc, config: &DecideConfig) -> Result<Verdict> {
    match q.root_of_unity_order()? {
        Some(_) => decide_root_of_unity(spec, q, config),
        None => refute(spec, q, config),
    }
}

fn decide_root_of_unity(spec: &LineSpec, q: &Cyc, config: &DecideConfig) -> Result<Verdict> {
    let mut cache: Option<Vec<Cyc>> = None;
    let mut last_terms = 0;
    for t in 1..=config.max_degree {
        let n = config.terms_at(t);
        last_terms = n;
        let terms = match &cache {
            Some(c) if c.len() >= n => c[..n].to_vec(),
            _ => {
                let p = prefix(spec, q, n)?.terms;
                cache = Some(p.clone());
                p
            }
        };
        let Some(mut equation) = guess_algebraic(&terms, t, t)? else {
            continue;
        };
        let fresh = prefix(spec, q, 2 * n)?.terms;
        if let Verification::Verified { checked } = verify_algebraic(&equation, &fresh) {
            equation.verified_order = checked;
            return Ok(Verdict::Algebraic {
                equation,
                bound: t,
                reverified: checked,
            });
        }
        cache = Some(fresh);
    }
    Ok(Verdict::Undecided {
        max_degree: config.max_degree,
        terms: last_terms,
    })
}

fn refute(spec: &LineSpec, q: &Cyc, config: &DecideConfig) -> Result<Verdict> {
    let abs_class = compare_abs_to_one(q, config.precision)?;
    if abs_class == AbsClass::Greater {
        let degree_poly = degree_growth(spec);
        let leading = degree_poly.leading().cloned().unwrap_or_default();
        return Ok(Verdict::Transcendental {
            certificate: Certificate::DegreeGrowth {
                degree_poly,
                leading,
                abs_class,
            },
        });
    }
    let cap = config.certificate_guess_cap;
    let mut searched = Vec::new();
    if cap > 0 {
        let len = algebraic_min_terms(cap, cap).max(recurrence_min_terms(cap, cap));
        let terms = prefix(spec, q, len)?.terms;
        for t in 1..=cap {
            if let Some(eq) = guess_algebraic(&terms, t, t)? {
                return Err(Error::Inconsistency(format!(
                    "q is not a root of unity yet {eq} annihilates {len} terms"
                )));
            }
            searched.push(EmptyGuess {
                kind: GuessKind::Algebraic,
                bounds: (t, t),
                terms: len,
            });
        }
        for t in 1..=cap {
            if let Some(rec) = guess_precurrence(&terms, t, t)? {
                return Err(Error::Inconsistency(format!(
                    "q is not a root of unity yet {rec} holds on {len} terms"
                )));
            }
            searched.push(EmptyGuess {
                kind: GuessKind::Recurrence,
                bounds: (t, t),
                terms: len,
            });
        }
    }
    Ok(Verdict::Transcendental {
        certificate: Certificate::NotRootOfUnity {
            exponent: q.order().lcm(&2),
            abs_class,
            searched,
        },
    })
}

/// `(k + bj)(n - k + (a-b)j)` as a polynomial in `j`.
pub fn degree_growth(spec: &LineSpec) -> UniPoly<BigInt> {
    let (n, k, a, b) = (spec.n(), spec.k(), spec.a(), spec.b());
    let lin = |c0: i64, c1: i64| UniPoly::new(vec![BigInt::from(c0), BigInt::from(c1)]);
    &lin(k, b) * &lin(n - k, a - b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    /// `(j, ln|u_j| / j^2)` for `j = 1..N`.
    pub ratios: Vec<(usize, f64)>,
    /// `(j, u_j > 2^{j^2})`, only for the central line at q = 2.
    pub exact: Option<Vec<(usize, bool)>>,
}

impl GrowthReport {
    pub fn exact_passes(&self) -> Option<bool> {
        self.exact.as_ref().map(|v| v.iter().all(|&(_, ok)| ok))
    }
}

/// `ln|c|` computed from the coordinates in f64 after factoring out the
/// largest magnitude.
pub fn ln_abs_cyc(c: &Cyc) -> f64 {
    if let Some(r) = c.as_rational() {
        return ln_abs(&r);
    }
    let s = c.order() as f64;
    let coords = c.coords();
    let logs: Vec<(usize, f64, f64)> = coords
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, ln_abs(x), if x.is_negative() { -1.0 } else { 1.0 }))
        .collect();
    let top = logs
        .iter()
        .map(|&(_, l, _)| l)
        .fold(f64::NEG_INFINITY, f64::max);
    let (mut re, mut im) = (0.0, 0.0);
    for (k, l, sign) in logs {
        let m = sign * (l - top).exp();
        let theta = 2.0 * std::f64::consts::PI * k as f64 / s;
        re += m * theta.cos();
        im += m * theta.sin();
    }
    top + re.hypot(im).ln()
}

pub fn growth_report(
    spec: &LineSpec,
    q: &Cyc,
    len: usize,
    budget: PrecisionBudget,
) -> Result<GrowthReport> {
    let class = compare_abs_to_one(q, budget)?;
    if class != AbsClass::Greater {
        return Err(Error::InvalidArgument(format!(
            "the growth report needs |q| > 1, found |q| {} than 1",
            class.as_str()
        )));
    }
    let terms = prefix(spec, q, len + 1)?.terms;
    let ratios = (1..=len)
        .map(|j| (j, ln_abs_cyc(&terms[j]) / (j * j) as f64))
        .collect();
    let exact = (*spec == LineSpec::central() && *q == Cyc::from_int(2)).then(|| {
        (1..=len)
            .map(|j| {
                let bound = Rational::from_integer(BigInt::one() << (j * j));
                let u = terms[j].as_rational().expect("rational at q = 2");
                (j, u > bound)
            })
            .collect()
    });
    Ok(GrowthReport { ratios, exact })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroTest {
    /// All `samples` values `p(j, q^j)` vanished.
    IdenticallyZero {
        samples: usize,
    },
    Witness {
        j: usize,
        value: Cyc,
    },
}

/// Evaluates `p(j, q^j)` for `j = 1..(d+1)(d+2)/2`, where `d` is the total
/// degree of `p`. Requires that q is not a root of unity of order `<= d`.
pub fn zero_test_via_samples(p: &BiPoly<Cyc>, q: &Cyc) -> Result<ZeroTest> {
    let d = p.total_degree().unwrap_or(0);
    if let Some(order) = q.root_of_unity_order()? {
        if order as usize <= d {
            return Err(Error::SmallRootOfUnity { order, degree: d });
        }
    }
    let samples = (d + 1) * (d + 2) / 2;
    let mut y = Cyc::one();
    for j in 1..=samples {
        y = &y * q;
        let value = p.eval(&Cyc::from_int(j as i64), &y);
        if !value.is_zero() {
            return Ok(ZeroTest::Witness { j, value });
        }
    }
    if !p.is_zero() {
        return Err(Error::Inconsistency(format!(
            "nonzero polynomial of total degree {d} vanished at all {samples} samples"
        )));
    }
    Ok(ZeroTest::IdenticallyZero { samples })
}

pub const VANDERMONDE_MAX_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VandermondeFactorization {
    pub det: UniPoly<Rational>,
    pub constant: Rational,
    pub z_power: usize,
    /// `s -> multiplicity of Φ_s`.
    pub cyclotomic: BTreeMap<u64, usize>,
}

impl VandermondeFactorization {
    /// `c * z^e * Phi_s^m * ...`
    pub fn factored(&self) -> String {
        let mut parts = vec![display_rational(&self.constant)];
        if self.z_power > 0 {
            parts.push(if self.z_power == 1 {
                "z".into()
            } else {
                format!("z^{}", self.z_power)
            });
        }
        for (s, m) in &self.cyclotomic {
            parts.push(if *m == 1 {
                format!("Phi_{s}")
            } else {
                format!("Phi_{s}^{m}")
            });
        }
        parts.join(" * ")
    }
}

/// Row exponents `(i, j)` with `i + j <= d`, by total degree, then by
/// decreasing `i`.
pub fn vandermonde_rows(d: usize) -> Vec<(usize, usize)> {
    (0..=d)
        .flat_map(|t| (0..=t).rev().map(move |i| (i, t - i)))
        .collect()
}

/// The matrix `(n^i z^{nj})` over rows `(i, j)` and columns `n = 1..D`.
pub fn vandermonde_matrix(d: usize) -> Vec<Vec<UniPoly<Rational>>> {
    let rows = vandermonde_rows(d);
    let size = rows.len();
    rows.iter()
        .map(|&(i, j)| {
            (1..=size)
                .map(|n| {
                    UniPoly::monomial(Rational::from_integer(BigInt::from(n).pow(i as u32)), n * j)
                })
                .collect()
        })
        .collect()
}

pub fn vandermonde_det(d: usize) -> Result<VandermondeFactorization> {
    vandermonde_det_capped(d, VANDERMONDE_MAX_DEGREE)
}

pub fn vandermonde_det_capped(d: usize, cap: usize) -> Result<VandermondeFactorization> {
    if d > cap {
        return Err(Error::CapExceeded {
            what: "d",
            value: d,
            cap,
        });
    }
    let det = poly_det(&vandermonde_matrix(d));
    factor_cyclotomic(&det).map(|(constant, z_power, cyclotomic)| VandermondeFactorization {
        det,
        constant,
        z_power,
        cyclotomic,
    })
}

type CyclotomicFactors = (Rational, usize, BTreeMap<u64, usize>);

/// Splits `p` as `c * z^e * Π Φ_s^{m_s}`; a non-constant remainder is an
/// inconsistency.
pub fn factor_cyclotomic(p: &UniPoly<Rational>) -> Result<CyclotomicFactors> {
    if p.is_zero() {
        return Err(Error::Inconsistency(
            "determinant vanishes identically".into(),
        ));
    }
    let z_power = p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut rest = UniPoly::new(p.coeffs()[z_power..].to_vec());
    let mut factors = BTreeMap::new();
    let deg = rest.degree().unwrap_or(0) as u64;
    for s in 1..=(2 * deg * deg + 2) {
        let phi = euler_phi(s);
        if phi > rest.degree().unwrap_or(0) as u64 {
            continue;
        }
        let cyc = cyclotomic_poly(s).to_rational();
        while let Some(qt) = rest.exact_div(&cyc) {
            rest = qt;
            *factors.entry(s).or_insert(0) += 1;
        }
    }
    match rest.degree() {
        Some(0) => Ok((rest.coeffs()[0].clone(), z_power, factors)),
        _ => Err(Error::Inconsistency(format!(
            "non-constant residue {} after removing cyclotomic factors",
            rest.format_var("z")
        ))),
    }
}

/// `Π (y^m q^{e0+ℓ} - 1)` over `ℓ` in `lo..=hi`, as a polynomial in y.
fn factor_run(m: i64, e0: i64, lo: i64, hi: i64, q: &Cyc) -> UniPoly<Cyc> {
    (lo..=hi).fold(UniPoly::one(), |acc, l| {
        let e = e0 + l;
        let qe = if e >= 0 {
            q.pow(e as u64)
        } else {
            q.powi(e).expect("q is nonzero")
        };
        let mut cs = vec![Cyc::zero(); m as usize + 1];
        cs[0] = -Cyc::one();
        cs[m as usize] = &cs[m as usize] + &qe;
        &acc * &UniPoly::new(cs)
    })
}

/// `P_i(y)` for a recurrence of order `r`.
pub fn theorem4_factor(spec: &LineSpec, q: &Cyc, r: usize, i: usize) -> UniPoly<Cyc> {
    let (n, k, a, b) = (spec.n(), spec.k(), spec.a(), spec.b());
    let (r, i) = (r as i64, i as i64);
    let num = factor_run(a, n, 1, i * a, q);
    let den_b = factor_run(b, k, i * b + 1, r * b, q);
    let den_ab = factor_run(a - b, n - k, i * (a - b) + 1, r * (a - b), q);
    &(&num * &den_b) * &den_ab
}

/// `p(x, y) = Σ_{i=0}^r c_i(x) P_i(y)`.
pub fn build_theorem4_polynomial(
    spec: &LineSpec,
    q: &Cyc,
    rec: &PRecurrence,
) -> Result<BiPoly<Cyc>> {
    if q.is_zero() {
        return Err(Error::ZeroQ);
    }
    let r = rec.order();
    let mut p = BiPoly::zero();
    for (i, c) in rec.coeffs().iter().enumerate() {
        p = &p + &BiPoly::product_of(c, &theorem4_factor(spec, q, r, i));
    }
    Ok(p)
}

/// `P_i` with q kept symbolic: keys are `(deg_y, deg_q)`.
pub fn theorem4_factor_symbolic(spec: &LineSpec, r: usize, i: usize) -> BiPoly<BigInt> {
    let (n, k, a, b) = (spec.n(), spec.k(), spec.a(), spec.b());
    let (r, i) = (r as i64, i as i64);
    let run = |m: i64, e0: i64, lo: i64, hi: i64| {
        (lo..=hi).fold(BiPoly::<BigInt>::one(), |acc, l| {
            let f = BiPoly::from_terms([
                ((m as usize, (e0 + l) as usize), BigInt::one()),
                ((0, 0), -BigInt::one()),
            ]);
            &acc * &f
        })
    };
    let p = run(a, n, 1, i * a);
    let p = &p * &run(b, k, i * b + 1, r * b);
    &p * &run(a - b, n - k, i * (a - b) + 1, r * (a - b))
}

/// Highest y-power terms of the symbolic expansion of `P_r`.
pub fn symbolic_leading_terms(spec: &LineSpec, r: usize) -> Vec<((usize, usize), BigInt)> {
    let p = theorem4_factor_symbolic(spec, r, r);
    let top = p.degree_x().unwrap_or(0);
    p.terms()
        .filter(|((y, _), _)| *y == top)
        .map(|(e, c)| (*e, c.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingReport {
    /// `(i, deg_y P_i)` for `i = 0..=r`.
    pub degrees: Vec<(usize, u64)>,
    /// y-degree and q-exponent of the leading term of `P_r`.
    pub leading_y: u64,
    pub leading_q: u64,
}

/// Checks factor by factor that `deg_y P_i = ia^2 + (r-i)b^2 + (r-i)(a-b)^2`,
/// that the maximum over `i` is attained only at `i = r`, and that `P_r`
/// leads with `q^{ran + ra(ra+1)/2} y^{a^2 r}`.
pub fn leading_monomial_check(spec: &LineSpec, r: usize) -> Result<LeadingReport> {
    leading_monomial_check_raw(
        spec.n() as u64,
        spec.k() as u64,
        spec.a() as u64,
        spec.b() as u64,
        r,
    )
}

/// [`leading_monomial_check`] without the admissibility requirement; needs
/// `n >= k` and `a > b > 0`.
pub fn leading_monomial_check_raw(
    n: u64,
    k: u64,
    a: u64,
    b: u64,
    r: usize,
) -> Result<LeadingReport> {
    if r == 0 {
        return Err(Error::InvalidArgument(
            "the order r must be at least 1".into(),
        ));
    }
    if n < k || a <= b || b == 0 {
        return Err(Error::InvalidArgument(format!(
            "need n >= k and a > b > 0, got ({n}, {k}, {a}, {b})"
        )));
    }
    let r64 = r as u64;
    // each factor y^m q^e - 1 contributes m to the degree and q^e to the lead
    let run = |m: u64, e0: u64, lo: u64, hi: u64| -> (u64, u64) {
        (lo..=hi).fold((0, 0), |(d, e), l| (d + m, e + e0 + l))
    };
    let mut degrees = Vec::with_capacity(r + 1);
    let mut leads = Vec::with_capacity(r + 1);
    for i in 0..=r64 {
        let parts = [
            run(a, n, 1, i * a),
            run(b, k, i * b + 1, r64 * b),
            run(a - b, n - k, i * (a - b) + 1, r64 * (a - b)),
        ];
        let deg: u64 = parts.iter().map(|p| p.0).sum();
        let formula = i * a * a + (r64 - i) * b * b + (r64 - i) * (a - b) * (a - b);
        if deg != formula {
            return Err(Error::Inconsistency(format!(
                "deg_y P_{i} = {deg} but the closed form gives {formula}"
            )));
        }
        degrees.push((i as usize, deg));
        leads.push(parts.iter().map(|p| p.1).sum::<u64>());
    }
    let top = degrees[r].1;
    if let Some(&(i, d)) = degrees[..r].iter().find(|&&(_, d)| d >= top) {
        return Err(Error::Inconsistency(format!(
            "deg_y P_{i} = {d} is not below deg_y P_r = {top}"
        )));
    }
    let expected_q = r64 * a * n + r64 * a * (r64 * a + 1) / 2;
    if top != a * a * r64 || leads[r] != expected_q {
        return Err(Error::Inconsistency(format!(
            "P_r leads with q^{} y^{top}, expected q^{expected_q} y^{}",
            leads[r],
            a * a * r64
        )));
    }
    Ok(LeadingReport {
        degrees,
        leading_y: top,
        leading_q: leads[r],
    })
}

/// The denominator `Den_r(y)` cleared when building `p`, evaluated at `y`.
pub fn theorem4_denominator(spec: &LineSpec, q: &Cyc, r: usize, y: &Cyc) -> Cyc {
    let (n, k, a, b) = (spec.n(), spec.k(), spec.a(), spec.b());
    let r = r as i64;
    let db = factor_run(b, k, 1, r * b, q);
    let dab = factor_run(a - b, n - k, 1, r * (a - b), q);
    &db.eval(y) * &dab.eval(y)
}

/// Integer `c` as a field element.
pub fn cyc_int(c: i64) -> Cyc {
    Cyc::from_rational(int(c))
}
