//! Randomized invariants: scalar field laws, convolution support bounds, the
//! twisted Leibniz rule and its integration-by-parts consequence, operator
//! composition associativity, and serialization round-trips.

use proptest::prelude::*;

use qvir_core::laurent::{DiagKind, LaurentField};
use qvir_core::qfield::{Mode, QParam, Scalar};
use qvir_core::qop::{normalize, Factor};

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=12).prop_map(|(num, den)| Scalar::from_ratio(num, den))
}

fn q_strategy() -> impl Strategy<Value = QParam> {
    (2i64..=40, 1i64..=9, proptest::bool::ANY).prop_filter_map(
        "q must avoid 0 and +/-1",
        |(num, den, negate)| {
            let signed = if negate { -num } else { num };
            QParam::new(Scalar::from_ratio(signed, den)).ok()
        },
    )
}

fn field_strategy() -> impl Strategy<Value = LaurentField> {
    proptest::collection::vec(((-8i64..=8), scalar_strategy()), 0..6)
        .prop_map(|pairs| LaurentField::from_pairs(Mode::Exact, &pairs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_scalar_field_laws(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Scalar::one(Mode::Exact));
        }
    }

    #[test]
    fn convolution_support_is_contained_in_the_sumset(f in field_strategy(), g in field_strategy()) {
        let product = f.mul(&g);
        for (n, _) in product.iter() {
            let mut witnessed = false;
            for (a, _) in f.iter() {
                for (b, _) in g.iter() {
                    if a + b == n {
                        witnessed = true;
                    }
                }
            }
            prop_assert!(witnessed, "mode {} outside the support sumset", n);
        }
    }

    #[test]
    fn twisted_leibniz_rule(f in field_strategy(), h in field_strategy(), q in q_strategy()) {
        let lhs = f.mul(&h).dq_apply(&q);
        let rhs = f
            .tau_apply(1, &q)
            .mul(&h.dq_apply(&q))
            .add(&f.dq_apply(&q).mul(&h.tau_apply(-1, &q)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integration_by_parts(f in field_strategy(), h in field_strategy(), q in q_strategy()) {
        let lhs = f.tau_apply(1, &q).mul(&h.dq_apply(&q)).residue_integral();
        let rhs = f.dq_apply(&q).mul(&h.tau_apply(-1, &q)).residue_integral();
        prop_assert_eq!(lhs, -rhs);
    }

    #[test]
    fn tau_conjugation_inverts(f in field_strategy(), q in q_strategy(), k in -5i64..=5) {
        prop_assert_eq!(f.tau_apply(k, &q).tau_apply(-k, &q), f);
    }

    #[test]
    fn diagonal_inverses_invert(f in field_strategy(), q in q_strategy()) {
        for kind in [DiagKind::TauPlusTauInv, DiagKind::OnePlusTau, DiagKind::Gamma] {
            let inverted = f.diag_inverse(kind, &q).unwrap();
            prop_assert_eq!(inverted.diag_forward(kind, &q), f.clone());
        }
    }

    #[test]
    fn json_round_trip(f in field_strategy()) {
        prop_assert_eq!(LaurentField::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn normalized_words_apply_like_their_factors(
        f in field_strategy(),
        coeff in field_strategy(),
        k in -3i64..=3,
        q in q_strategy(),
    ) {
        // word: mul(coeff) tau^k dq, applied both as a normal form and
        // factor by factor
        let word = [Factor::Mul(coeff.clone()), Factor::Tau(k), Factor::Dq];
        let op = normalize(&word, &q);
        let direct = coeff.mul(&f.dq_apply(&q).tau_apply(k, &q));
        prop_assert_eq!(op.apply(&f, &q), direct);
    }

    #[test]
    fn composition_is_associative_under_application(
        f in field_strategy(),
        a in field_strategy(),
        b in field_strategy(),
        q in q_strategy(),
    ) {
        let left = normalize(&[Factor::Mul(a.clone()), Factor::Dq], &q);
        let right = normalize(&[Factor::Tau(2), Factor::Mul(b.clone())], &q);
        let composed = left.compose(&right, &q);
        prop_assert_eq!(
            composed.apply(&f, &q),
            left.apply(&right.apply(&f, &q), &q)
        );
    }
}
