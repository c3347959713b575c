use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use qpolya::arith::{CyclotomicNumber, UniPoly};
use qpolya::lineseries::{
    dump_prefix, is_admissible, load_prefix, lucas_decomposition, prefix,
    ratio_identity_check_with, reassemble, symbolic_coefficient, Condition, LineSpec,
};
use qpolya::qcomb::{binomial, q_binomial, q_binomial_eval, QBinomialTable};
use qpolya::Error;

type Cyc = CyclotomicNumber;

fn specs() -> Vec<LineSpec> {
    [
        (0, 0, 2, 1),
        (1, 0, 3, 2),
        (2, 1, 3, 1),
        (0, 0, 3, 1),
        (1, 1, 3, 1),
        (0, 0, 5, 2),
    ]
    .iter()
    .map(|&(n, k, a, b)| LineSpec::new(n, k, a, b).unwrap())
    .collect()
}

fn horner(p: &UniPoly<BigInt>, q: &Cyc) -> Cyc {
    p.coeffs().iter().rev().fold(Cyc::zero(), |acc, c| {
        &(&acc * q) + &Cyc::from_rational(c.clone().into())
    })
}

#[test]
fn ratio_identity_on_every_spec() {
    let mut table = QBinomialTable::new();
    for spec in specs() {
        for j in 0..=10 {
            assert!(
                ratio_identity_check_with(&spec, j, &mut table).unwrap(),
                "{spec} j={j}"
            );
        }
    }
}

#[test]
fn degree_formula() {
    for spec in specs() {
        for j in 0..=10 {
            let (k, b, n, a) = (spec.k(), spec.b(), spec.n(), spec.a());
            let expected = ((k + b * j) * (n - k + (a - b) * j)) as usize;
            assert_eq!(
                symbolic_coefficient(&spec, j).unwrap().degree(),
                Some(expected)
            );
        }
    }
}

#[test]
fn reassembly_for_small_orders() {
    for s in [2, 3, 4] {
        for spec in specs().into_iter().take(3) {
            let w = Cyc::zeta(s);
            let comps = lucas_decomposition(&spec, &w).unwrap();
            assert_eq!(reassemble(&comps, 40), prefix(&spec, &w, 40).unwrap().terms);
        }
    }
}

#[test]
fn reassembly_for_other_roots() {
    // -ζ_3 has order 6 and lives in Q(ζ_3)
    let w = -Cyc::zeta(3);
    let spec = LineSpec::new(1, 0, 3, 2).unwrap();
    let comps = lucas_decomposition(&spec, &w).unwrap();
    assert_eq!(comps.len(), 6);
    assert_eq!(reassemble(&comps, 30), prefix(&spec, &w, 30).unwrap().terms);
}

#[test]
fn component_scalars_match_residual_binomials() {
    let spec = LineSpec::new(2, 1, 3, 1).unwrap();
    let w = Cyc::zeta(4);
    for c in lucas_decomposition(&spec, &w).unwrap() {
        let (x, y) = spec.point(c.residue as i64);
        let residual = if y % 4 > x % 4 {
            Cyc::zero()
        } else {
            q_binomial_eval(x % 4, y % 4, &w).unwrap()
        };
        assert_eq!(c.scalar, residual);
        assert_eq!(c.shifted, (x / 4, y / 4));
        assert_eq!(
            c.coefficient(0),
            &residual * &Cyc::from_rational(binomial((x / 4) as u64, (y / 4) as u64).into())
        );
    }
}

#[test]
fn two_evaluations_agree_at_roots_of_unity() {
    let mut table = QBinomialTable::new();
    for s in [3, 4, 5] {
        let w = Cyc::zeta(s);
        for spec in specs().into_iter().take(3) {
            let direct = prefix(&spec, &w, 30).unwrap().terms;
            for (j, u) in direct.iter().enumerate() {
                let (x, y) = spec.point(j as i64);
                assert_eq!(
                    *u,
                    horner(table.get(x, y).unwrap(), &w),
                    "{spec} s={s} j={j}"
                );
            }
        }
    }
}

#[test]
fn admissibility_order_of_checks() {
    assert_eq!(is_admissible(-1, 0, 0, 0), Some(Condition::KRange));
    assert_eq!(is_admissible(0, 0, 1, 1), Some(Condition::SlopeRange));
    assert_eq!(is_admissible(0, 0, 6, 3), Some(Condition::Coprime));
    assert!(matches!(
        prefix(&LineSpec::central(), &Cyc::zero(), 3),
        Err(Error::ZeroQ)
    ));
}

proptest! {
    #[test]
    fn prefix_matches_product_formula(num in 2i64..6, den in 1i64..4, j in 0i64..8) {
        let q = Cyc::from_rational(qpolya::arith::field::rational(num, den));
        let spec = LineSpec::central();
        let terms = prefix(&spec, &q, (j + 1) as usize).unwrap().terms;
        let (x, y) = spec.point(j);
        prop_assert_eq!(&terms[j as usize], &horner(&q_binomial(x, y).unwrap(), &q));
    }

    #[test]
    fn dumps_round_trip(idx in 0usize..6, order in proptest::sample::select(vec![1u64, 3, 4, 5]), len in 1usize..10) {
        let spec = specs()[idx];
        let q = &Cyc::zeta(order) + &Cyc::from_int(1);
        let p = prefix(&spec, &q, len).unwrap();
        let text = dump_prefix(&p);
        let back = load_prefix(&text).unwrap();
        prop_assert_eq!(dump_prefix(&back), text);
        prop_assert_eq!(back.terms, p.terms);
    }
}
