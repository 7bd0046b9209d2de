mod common;

use common::{all_words, OrderOracle};
use parafree_core::words::{check_admissible, enumerate_words, BoundMode};
use parafree_core::{Alphabet, OrderSpec, Word};
use proptest::prelude::*;

fn main_alphabet() -> Alphabet {
    Alphabet::new([("x1", 1), ("x2", 1), ("y1", 3), ("y2", 3)]).unwrap()
}

fn orders() -> Vec<(OrderSpec, OrderOracle)> {
    vec![
        (OrderSpec::deg_lex(vec![0, 1, 2, 3]).unwrap(), OrderOracle::deg_lex(vec![0, 1, 2, 3])),
        (OrderSpec::deg_lex(vec![3, 1, 0, 2]).unwrap(), OrderOracle::deg_lex(vec![3, 1, 0, 2])),
        (
            OrderSpec::theta_lex(vec![2, 3, 0, 1], vec![1, 1, 3, 3]).unwrap(),
            OrderOracle::theta_lex(vec![2, 3, 0, 1], vec![1, 1, 3, 3]),
        ),
        (
            OrderSpec::theta_lex(vec![0, 3, 1, 2], vec![2, 1, 5, 1]).unwrap(),
            OrderOracle::theta_lex(vec![0, 3, 1, 2], vec![2, 1, 5, 1]),
        ),
    ]
}

#[test]
fn comparison_agrees_with_definition() {
    let words = all_words(4, 3);
    for (spec, oracle) in orders() {
        for u in &words {
            for v in &words {
                let got = spec.cmp_words(&Word::from_letters(u), &Word::from_letters(v));
                assert_eq!(got, oracle.cmp(u, v), "{u:?} vs {v:?}");
            }
        }
    }
}

#[test]
fn admissible_orders_pass_exhaustive_check() {
    let a = main_alphabet();
    for (spec, _) in orders() {
        let report = check_admissible(&spec, &a, 4);
        assert!(report.passed, "{}: {:?}", report.order, report.violations);
        assert!(report.pairs_checked > 0);
        assert!(spec.is_admissible() && spec.is_n_order());
    }
}

#[test]
fn lex_is_flagged() {
    let a = Alphabet::unweighted(["x", "y"]).unwrap();
    let lex = OrderSpec::lex(vec![0, 1]).unwrap();
    assert!(!lex.is_n_order());
    let report = check_admissible(&lex, &a, 4);
    assert_eq!(report.passed, lex.is_admissible());
}

#[test]
fn enumeration_matches_brute_force() {
    let a = main_alphabet();
    for bound in 0..=6u64 {
        let got = enumerate_words(&a, bound, BoundMode::ByWeight).unwrap();
        let expected = all_words(4, bound as usize)
            .into_iter()
            .filter(|w| w.iter().map(|&l| a.weight(l) as u64).sum::<u64>() <= bound)
            .count();
        assert_eq!(got.len(), expected, "bound {bound}");
    }
    assert_eq!(enumerate_words(&a, 3, BoundMode::ByLength).unwrap().len(), 85);
}

proptest! {
    #[test]
    fn orders_are_translation_invariant(
        u in common::strategies::word(4, 6),
        v in common::strategies::word(4, 6),
        a in common::strategies::word(4, 4),
        b in common::strategies::word(4, 4),
    ) {
        for (spec, _) in orders() {
            let before = spec.cmp_words(&u, &v);
            let after = spec.cmp_words(&u.sandwich(&a, &b), &v.sandwich(&a, &b));
            prop_assert_eq!(before, after);
            prop_assert!(u.is_one() || spec.cmp_words(&Word::one(), &u).is_lt());
        }
    }

    #[test]
    fn keys_round_trip(w in common::strategies::word(4, 8)) {
        for (spec, _) in orders() {
            prop_assert_eq!(spec.word_of(&spec.key(&w)), w.clone());
        }
    }
}
