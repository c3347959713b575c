//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qpolya::algdecide::{
    build_theorem4_polynomial, decide, growth_report, leading_monomial_check_raw,
    symbolic_leading_terms, vandermonde_det, zero_test_via_samples, Certificate, DecideConfig,
    Verdict, ZeroTest,
};
use qpolya::arith::field::{int, rational};
use qpolya::arith::{AbsClass, BiPoly, CyclotomicNumber, PrecisionBudget, Rational, UniPoly};
use qpolya::guess::{
    guess_algebraic, guess_precurrence, verify_algebraic, PRecurrence, Verification,
};
use qpolya::lineseries::{
    dump_prefix, load_prefix, lucas_decomposition, prefix, ratio_identity_check_with, reassemble,
    LineSpec,
};
use qpolya::qcomb::{path_area_distribution, q_binomial, q_lucas_eval, QBinomialTable};

type Cyc = CyclotomicNumber;
type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cyc(order: u64, cs: &[Rational]) -> Cyc {
    Cyc::from_poly(order, UniPoly::new(cs.to_vec()))
}

fn unit_circle_q() -> Cyc {
    cyc(4, &[rational(3, 5), rational(4, 5)])
}

fn line(n: i64, k: i64, a: i64, b: i64) -> LineSpec {
    LineSpec::new(n, k, a, b).expect("admissible")
}

fn xz(terms: &[((usize, usize), Cyc)]) -> BiPoly<Cyc> {
    BiPoly::from_terms(terms.iter().cloned())
}

/// `Σ c_e ω^e` by reducing exponents mod s first: an evaluation that shares
/// nothing with the Lucas reduction.
fn direct_eval(p: &UniPoly<BigInt>, s: u64) -> Cyc {
    let mut acc = vec![BigInt::zero(); s as usize];
    for (e, c) in p.coeffs().iter().enumerate() {
        acc[e % s as usize] += c;
    }
    Cyc::from_poly(
        s,
        UniPoly::new(acc.into_iter().map(Rational::from_integer).collect()),
    )
}

fn c1_flagship_coefficients() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_qpolya"))
        .args(["series", "0", "0", "2", "1", "--q", "2", "--terms", "5"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(
        out.status.success() && text.trim() == "1, 3, 35, 1395, 200787",
        || format!("cli printed {text:?}"),
    )?;
    let p = prefix(&LineSpec::central(), &Cyc::from_int(2), 5).map_err(|e| e.to_string())?;
    let expected: Vec<Cyc> = [1, 3, 35, 1395, 200787]
        .iter()
        .map(|&v| Cyc::from_int(v))
        .collect();
    ensure(p.terms == expected, || {
        format!("library gave {:?}", p.terms)
    })
}

fn c2_growth_bound() -> Outcome {
    let rep = growth_report(
        &LineSpec::central(),
        &Cyc::from_int(2),
        8,
        PrecisionBudget::default(),
    )
    .map_err(|e| e.to_string())?;
    let exact = rep.exact.ok_or("no exact comparison at q = 2")?;
    ensure(exact.len() == 8 && exact.iter().all(|&(_, ok)| ok), || {
        format!("{exact:?}")
    })
}

fn c3_path_oracle() -> Outcome {
    for total in 0..=10usize {
        for x in 0..=total {
            let y = total - x;
            let paths = path_area_distribution(x, y).map_err(|e| e.to_string())?;
            let qb = q_binomial(total as i64, x as i64).map_err(|e| e.to_string())?;
            ensure(paths.distribution == qb, || {
                format!("mismatch at ({x}, {y})")
            })?;
        }
    }
    Ok(())
}

fn c4_q_lucas() -> Outcome {
    let mut table = QBinomialTable::new();
    for s in [2u64, 3, 4, 5, 6, 8, 12] {
        let omega = Cyc::zeta(s);
        for x in 0..=24i64 {
            for y in 0..=24i64 {
                let lucas = q_lucas_eval(x, y, &omega).map_err(|e| e.to_string())?;
                let direct = if y > x {
                    Cyc::zero()
                } else {
                    direct_eval(table.get(x, y).map_err(|e| e.to_string())?, s)
                };
                ensure(lucas == direct, || {
                    format!("s={s} x={x} y={y}: {lucas} vs {direct}")
                })?;
            }
        }
    }
    Ok(())
}

fn algebraic(v: Verdict) -> Result<qpolya::guess::AlgEquation, String> {
    match v {
        Verdict::Algebraic { equation, .. } => Ok(equation),
        other => Err(format!(
            "expected an algebraic verdict, got {}",
            other.tag()
        )),
    }
}

fn c5_root_of_unity_side() -> Outcome {
    let config = DecideConfig::default();
    let spec = LineSpec::central();
    let at_one = algebraic(decide(&spec, &Cyc::one(), &config).map_err(|e| e.to_string())?)?;
    // (1 - 4x) z^2 - 1
    let expected = xz(&[
        ((0, 0), Cyc::from_int(-1)),
        ((0, 2), Cyc::one()),
        ((1, 2), Cyc::from_int(-4)),
    ]);
    ensure(at_one.poly == expected, || format!("q = 1 gave {at_one}"))?;
    ensure(at_one.verified_order >= 60, || {
        format!("verified to {}", at_one.verified_order)
    })?;

    let at_minus =
        algebraic(decide(&spec, &Cyc::from_int(-1), &config).map_err(|e| e.to_string())?)?;
    let substituted = BiPoly::from_terms(
        at_one
            .poly
            .terms()
            .map(|(&(i, j), c)| ((2 * i, j), c.clone())),
    );
    ensure(at_minus.poly == substituted, || {
        format!("q = -1 gave {at_minus}")
    })?;
    ensure(at_minus.verified_order >= 60, || {
        format!("verified to {}", at_minus.verified_order)
    })?;

    let w = Cyc::zeta(3);
    let at_w = algebraic(decide(&spec, &w, &config).map_err(|e| e.to_string())?)?;
    let fresh = prefix(&spec, &w, 60).map_err(|e| e.to_string())?;
    ensure(
        verify_algebraic(&at_w, &fresh.terms) == Verification::Verified { checked: 60 },
        || format!("{at_w} fails on 60 fresh terms"),
    )
}

fn c6_transcendental_side() -> Outcome {
    let spec = LineSpec::central();
    let two = Cyc::from_int(2);
    match decide(&spec, &two, &DecideConfig::default()).map_err(|e| e.to_string())? {
        Verdict::Transcendental {
            certificate: Certificate::DegreeGrowth { .. },
        } => {}
        other => return Err(format!("q = 2 gave {other:?}")),
    }
    let p80 = prefix(&spec, &two, 80).map_err(|e| e.to_string())?;
    // the kernel only grows with the bounds, so (6, 6) covers every smaller pair
    let alg = guess_algebraic(&p80.terms, 6, 6).map_err(|e| e.to_string())?;
    ensure(alg.is_none(), || {
        format!("spurious equation {}", alg.unwrap())
    })?;
    let rec = guess_precurrence(&p80.terms[..60], 4, 4).map_err(|e| e.to_string())?;
    ensure(rec.is_none(), || {
        format!("spurious recurrence {}", rec.unwrap())
    })?;

    let q = unit_circle_q();
    ensure(q.norm_sq().is_one(), || "q * conj(q) != 1".into())?;
    ensure(!q.pow(4).is_one(), || "q^4 = 1".into())?;
    match decide(&spec, &q, &DecideConfig::default()).map_err(|e| e.to_string())? {
        Verdict::Transcendental {
            certificate:
                Certificate::NotRootOfUnity {
                    abs_class: AbsClass::Equal,
                    exponent: 4,
                    ..
                },
        } => Ok(()),
        other => Err(format!("(3+4i)/5 gave {other:?}")),
    }
}

fn three_specs() -> [LineSpec; 3] {
    [LineSpec::central(), line(1, 0, 3, 2), line(2, 1, 3, 1)]
}

fn c7_ratio_identity() -> Outcome {
    let mut table = QBinomialTable::new();
    for spec in three_specs() {
        for j in 0..=10 {
            let ok = ratio_identity_check_with(&spec, j, &mut table).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{spec} fails at j = {j}"))?;
        }
    }
    Ok(())
}

fn c8_lucas_reassembly() -> Outcome {
    for s in [2u64, 3, 4] {
        let omega = Cyc::zeta(s);
        for spec in three_specs() {
            let comps = lucas_decomposition(&spec, &omega).map_err(|e| e.to_string())?;
            let direct = prefix(&spec, &omega, 40).map_err(|e| e.to_string())?;
            ensure(
                comps.len() == s as usize && reassemble(&comps, 40) == direct.terms,
                || format!("{spec} at s = {s}"),
            )?;
        }
    }
    Ok(())
}

/// (constant, z-power, [(s, multiplicity)])
type Frozen = (i64, usize, &'static [(u64, usize)]);

fn c9_vandermonde() -> Outcome {
    let d1 = vandermonde_det(1).map_err(|e| e.to_string())?;
    let z_zm1_sq = UniPoly::new(vec![int(0), int(1), int(-2), int(1)]);
    ensure(d1.det == z_zm1_sq, || {
        format!("d = 1 gave {}", d1.det.format_var("z"))
    })?;
    // (constant, z-power, [(s, multiplicity)]) from exact sampling and
    // interpolation of the determinant
    let frozen: [Frozen; 4] = [
        (1, 0, &[]),
        (1, 1, &[(1, 2)]),
        (-2, 7, &[(1, 11), (2, 3)]),
        (-24, 28, &[(1, 35), (2, 11), (3, 4)]),
    ];
    for (d, (c, e, mult)) in frozen.iter().enumerate() {
        let f = vandermonde_det(d).map_err(|e| e.to_string())?;
        let got: Vec<(u64, usize)> = f.cyclotomic.iter().map(|(&s, &m)| (s, m)).collect();
        ensure(
            f.constant == int(*c) && f.z_power == *e && got == *mult,
            || format!("d = {d}: {} * z^{} * {got:?}", f.constant, f.z_power),
        )?;
    }
    Ok(())
}

fn c10_zero_test() -> Outcome {
    let two = Cyc::from_int(2);
    match zero_test_via_samples(&BiPoly::zero(), &two).map_err(|e| e.to_string())? {
        ZeroTest::IdenticallyZero { .. } => {}
        other => return Err(format!("zero polynomial gave {other:?}")),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut runs = 0;
    while runs < 200 {
        let d = rng.gen_range(0..=4usize);
        let mut p = BiPoly::zero();
        for i in 0..=d {
            for j in 0..=d - i {
                if rng.gen_bool(0.5) {
                    p.add_term((i, j), Cyc::from_int(rng.gen_range(-5..=5)));
                }
            }
        }
        if p.is_zero() {
            continue;
        }
        runs += 1;
        match zero_test_via_samples(&p, &two).map_err(|e| e.to_string())? {
            ZeroTest::Witness { j, .. } if j <= 15 => {}
            other => return Err(format!("{} gave {other:?}", p.format_vars("x", "y"))),
        }
    }
    Ok(())
}

fn c11_refutation_polynomial() -> Outcome {
    for a in 2..=6u64 {
        for b in 1..a {
            for r in 1..=5 {
                leading_monomial_check_raw(0, 0, a, b, r)
                    .map_err(|e| format!("a={a} b={b} r={r}: {e}"))?;
            }
        }
    }
    for (a, b, r) in [(2i64, 1i64, 1usize), (3, 1, 2), (3, 2, 2)] {
        for (n, k) in [(0i64, 0i64), (1, 0)] {
            let spec = line(n, k, a, b);
            let ra = r as i64 * a;
            let qexp = (ra * n + ra * (ra + 1) / 2) as usize;
            let ydeg = (a * a) as usize * r;
            let lead = symbolic_leading_terms(&spec, r);
            ensure(lead == vec![((ydeg, qexp), BigInt::one())], || {
                format!("{spec} r={r}: leading terms {lead:?}")
            })?;
        }
    }
    // the false candidate (j+1) u_{j+1} - (4j+2) u_j
    let rec = PRecurrence::new(vec![
        UniPoly::new(vec![Cyc::from_int(-2), Cyc::from_int(-4)]),
        UniPoly::new(vec![Cyc::one(), Cyc::one()]),
    ])
    .map_err(|e| e.to_string())?;
    let spec = LineSpec::central();
    let three = Cyc::from_int(3);
    let p = build_theorem4_polynomial(&spec, &three, &rec).map_err(|e| e.to_string())?;
    let terms = prefix(&spec, &three, 10).map_err(|e| e.to_string())?.terms;
    for j in 0..=8usize {
        let residual_zero = rec.residual(&terms, j).is_zero();
        let p_zero = p
            .eval(&Cyc::from_int(j as i64), &three.pow(j as u64))
            .is_zero();
        ensure(residual_zero == p_zero, || {
            format!("disagreement at j = {j}")
        })?;
    }
    Ok(())
}

fn c12_persistence() -> Outcome {
    let specs = [
        LineSpec::central(),
        line(1, 0, 3, 2),
        line(2, 1, 3, 1),
        line(0, 0, 3, 1),
        line(1, 1, 3, 1),
    ];
    let qs = [Cyc::from_int(2), unit_circle_q(), Cyc::zeta(3)];
    for spec in specs {
        for q in &qs {
            let p = prefix(&spec, q, 12).map_err(|e| e.to_string())?;
            let text = dump_prefix(&p);
            let back = load_prefix(&text).map_err(|e| e.to_string())?;
            ensure(dump_prefix(&back) == text && back.terms == p.terms, || {
                format!("{spec} at q = {q}")
            })?;
        }
    }
    Ok(())
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("coefficients at q = 2", 1, c1_flagship_coefficients),
        ("growth bound u_j > 2^(j^2), j <= 8", 5, c2_growth_bound),
        ("path area oracle, x + y <= 10", 30, c3_path_oracle),
        ("q-Lucas against direct evaluation", 60, c4_q_lucas),
        ("decision at roots of unity", 120, c5_root_of_unity_side),
        ("decision off roots of unity", 120, c6_transcendental_side),
        ("ratio identity, j <= 10", 30, c7_ratio_identity),
        ("Lucas decomposition reassembly", 60, c8_lucas_reassembly),
        ("generalized Vandermonde determinant", 60, c9_vandermonde),
        ("finite zero test", 30, c10_zero_test),
        (
            "refutation polynomial machinery",
            60,
            c11_refutation_polynomial,
        ),
        ("prefix dump round trip", 5, c12_persistence),
    ];
    let mut failures = 0;
    for (idx, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(*limit), || {
                format!("took {:.2}s, limit {limit}s", elapsed.as_secs_f64())
            })
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({:.2}s)", idx + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                failures += 1;
                println!(
                    "FAIL {:>2} {name} ({:.2}s): {msg}",
                    idx + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
