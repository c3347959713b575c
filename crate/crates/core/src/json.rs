//! Exact JSON encodings. Rationals are `"num/den"` strings, univariate
//! polynomials are coefficient arrays indexed by exponent, bivariate ones
//! are arrays of `{i, j, coeff}` and field elements are
//! `{"order": s, "coords": [...]}` in the power basis of Q(ζ_s).

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algdecide::{
    Certificate, EmptyGuess, LeadingReport, VandermondeFactorization, Verdict, ZeroTest,
};
use crate::arith::cyclotomic::display_cyclotomic;
use crate::arith::field::format_rational;
use crate::arith::{BiPoly, CyclotomicNumber, Rational, UniPoly};
use crate::error::Error;
use crate::guess::{AlgEquation, PRecurrence};
use crate::lineseries::{LineSpec, LucasComponent, SeriesPrefix};

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn integer(v: &BigInt) -> Value {
    Value::String(format!("{v}/1"))
}

pub fn cyclotomic(c: &CyclotomicNumber) -> Value {
    json!({
        "order": c.order(),
        "coords": c.coords().iter().map(rational).collect::<Vec<_>>(),
    })
}

pub fn int_poly(p: &UniPoly<BigInt>) -> Value {
    Value::Array(p.coeffs().iter().map(integer).collect())
}

pub fn rational_poly(p: &UniPoly<Rational>) -> Value {
    Value::Array(p.coeffs().iter().map(rational).collect())
}

pub fn cyclotomic_poly(p: &UniPoly<CyclotomicNumber>) -> Value {
    Value::Array(p.coeffs().iter().map(cyclotomic).collect())
}

pub fn bipoly(p: &BiPoly<CyclotomicNumber>) -> Value {
    Value::Array(
        p.terms()
            .map(|(&(i, j), c)| json!({"i": i, "j": j, "coeff": cyclotomic(c)}))
            .collect(),
    )
}

pub fn spec(s: &LineSpec) -> Value {
    json!({"n": s.n(), "k": s.k(), "a": s.a(), "b": s.b()})
}

pub fn series(p: &SeriesPrefix) -> Value {
    json!({
        "spec": spec(&p.spec),
        "order": p.order,
        "q": p.q.as_ref().map(cyclotomic),
        "terms": p.terms.iter().map(cyclotomic).collect::<Vec<_>>(),
        "text": p.terms.iter().map(display_cyclotomic).collect::<Vec<_>>(),
    })
}

pub fn equation(eq: &AlgEquation) -> Value {
    json!({
        "poly": bipoly(&eq.poly),
        "text": eq.to_string(),
        "dx": eq.dx,
        "dz": eq.dz,
        "verified_order": eq.verified_order,
    })
}

pub fn recurrence(rec: &PRecurrence) -> Value {
    json!({
        "order": rec.order(),
        "degree": rec.degree(),
        "coeffs": rec.coeffs().iter().map(cyclotomic_poly).collect::<Vec<_>>(),
        "text": rec.to_string(),
    })
}

fn empty_guess(g: &EmptyGuess) -> Value {
    json!({
        "kind": g.kind.as_str(),
        "bounds": [g.bounds.0, g.bounds.1],
        "terms": g.terms,
        "found": Value::Null,
    })
}

pub fn certificate(c: &Certificate) -> Value {
    match c {
        Certificate::DegreeGrowth {
            degree_poly,
            leading,
            abs_class,
        } => json!({
            "kind": "degree_growth",
            "degree_poly": degree_poly.format_var("j"),
            "degree_coeffs": int_poly(degree_poly),
            "leading": integer(leading),
            "abs_class": abs_class.as_str(),
        }),
        Certificate::NotRootOfUnity {
            exponent,
            abs_class,
            searched,
        } => json!({
            "kind": "not_root_of_unity",
            "exponent": exponent,
            "abs_class": abs_class.as_str(),
            "searched": searched.iter().map(empty_guess).collect::<Vec<_>>(),
        }),
    }
}

pub fn verdict(v: &Verdict) -> Value {
    match v {
        Verdict::Algebraic {
            equation: eq,
            bound,
            reverified,
        } => json!({
            "verdict": v.tag(),
            "equation": equation(eq),
            "bound": bound,
            "reverified": reverified,
        }),
        Verdict::Transcendental { certificate: c } => json!({
            "verdict": v.tag(),
            "certificate": certificate(c),
        }),
        Verdict::Undecided { max_degree, terms } => json!({
            "verdict": v.tag(),
            "max_degree": max_degree,
            "terms": terms,
        }),
    }
}

pub fn lucas_component(c: &LucasComponent) -> Value {
    json!({
        "residue": c.residue,
        "scalar": cyclotomic(&c.scalar),
        "shifted": [c.shifted.0, c.shifted.1],
        "stride": c.stride,
    })
}

pub fn vandermonde(f: &VandermondeFactorization) -> Value {
    json!({
        "det": rational_poly(&f.det),
        "text": f.det.format_var("z"),
        "factored": f.factored(),
        "constant": rational(&f.constant),
        "z_power": f.z_power,
        "cyclotomic": f
            .cyclotomic
            .iter()
            .map(|(s, m)| json!({"order": s, "multiplicity": m}))
            .collect::<Vec<_>>(),
    })
}

pub fn zero_test(z: &ZeroTest) -> Value {
    match z {
        ZeroTest::IdenticallyZero { samples } => json!({"zero": true, "samples": samples}),
        ZeroTest::Witness { j, value } => {
            json!({"zero": false, "witness": j, "value": cyclotomic(value)})
        }
    }
}

pub fn leading_report(r: &LeadingReport) -> Value {
    json!({
        "degrees": r.degrees.iter().map(|(i, d)| json!({"i": i, "degree": d})).collect::<Vec<_>>(),
        "leading_y": r.leading_y,
        "leading_q": r.leading_q,
    })
}

pub fn error(e: &Error) -> Value {
    json!({"error": {"code": e.code(), "message": e.to_string()}})
}
