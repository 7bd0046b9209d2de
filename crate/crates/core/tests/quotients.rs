mod common;

use common::{quotient_dims, to_dense};
use parafree_core::bundled::{bundled, BUNDLED};
use parafree_core::certify::{build_parafree_presentation, ParafreeFamily};
use parafree_core::expr::parse_poly;
use parafree_core::gsbases::complete_classical;
use parafree_core::presentation::Presentation;
use parafree_core::quotients::{
    build_truncated_quotient, dimension_table, gr1_dependence, hopf_h2_graded, paraequivalence_check, DEFAULT_MAX_ROWS,
};
use parafree_core::{Alphabet, CoefficientField, OrderSpec, Poly, Word};
use proptest::prelude::*;

#[test]
fn dimensions_match_dense_oracle() {
    for b in BUNDLED {
        let Ok(p) = b.presentation() else { continue };
        let dense: Vec<_> = p.relations().iter().map(to_dense).collect();
        let letters = p.alphabet().len() as u8;
        for row in dimension_table(&p, 4, DEFAULT_MAX_ROWS).unwrap() {
            let (dim, gr) = quotient_dims(&dense, letters, row.n);
            assert_eq!((row.dim, row.filtration_dims.clone()), (dim, gr), "{} n = {}", b.name, row.n);
        }
    }
}

#[test]
fn main_example_is_paraequivalent_to_free() {
    let p = bundled("main").unwrap().presentation().unwrap();
    for row in dimension_table(&p, 7, DEFAULT_MAX_ROWS).unwrap() {
        assert_eq!(row.dim, (1 << row.n) - 1);
        assert_eq!(row.filtration_dims, (0..row.n).map(|k| 1 << k).collect::<Vec<_>>());
    }
}

#[test]
fn completion_agrees_with_quotient() {
    let p = bundled("main").unwrap().presentation().unwrap();
    for n in 1..=4 {
        let c = complete_classical(p.relations(), p.alphabet(), p.order_max(), n, DEFAULT_MAX_ROWS).unwrap();
        let q = build_truncated_quotient(&p, n).unwrap();
        assert_eq!(c.normal_words, q.basis());
        for r in &c.rules {
            assert!(q.normal_form(r).is_zero());
        }
    }
}

#[test]
fn quotient_multiplication() {
    let p = bundled("main").unwrap().presentation().unwrap();
    let q = build_truncated_quotient(&p, 4).unwrap();
    let f = CoefficientField::Rational;
    for r in p.relations() {
        assert!(q.normal_form(r).is_zero());
    }
    let basis: Vec<Poly> = q.basis().iter().map(|w| Poly::word(f, w.clone())).collect();
    for a in &basis {
        for b in &basis {
            assert_eq!(q.mul(a, b), q.normal_form(&a.mul(b)));
        }
        assert_eq!(q.augmentation(a).is_zero(), !a.support().any(Word::is_one));
    }
}

fn free(names: &[&str]) -> Presentation {
    let a = Alphabet::unweighted(names.iter().copied()).unwrap();
    Presentation::free(a, CoefficientField::Rational).unwrap()
}

#[test]
fn hopf_formula() {
    let kxy = bundled("kxy").unwrap().presentation().unwrap();
    let h: Vec<usize> = (1..=4).map(|d| hopf_h2_graded(&kxy, d).unwrap()).collect();
    assert_eq!(h, [0, 1, 0, 0]);
    for names in [&["x"][..], &["x", "y"], &["x", "y", "z"]] {
        let p = free(names);
        for d in 1..=6 {
            assert_eq!(hopf_h2_graded(&p, d).unwrap(), 0);
        }
    }
    let main = bundled("main").unwrap().presentation().unwrap();
    assert!(hopf_h2_graded(&main, 2).is_err());
}

#[test]
fn gr1_rank_detects_dependence() {
    let p = bundled("counterexample-two").unwrap().presentation().unwrap();
    let a = p.alphabet();
    let x3 = parse_poly("x3", a, p.field()).unwrap();
    let x4 = parse_poly("x4", a, p.field()).unwrap();
    assert_eq!(gr1_dependence(&p, &[x3.clone(), x4.clone()]).unwrap(), 1);
    let x1 = parse_poly("x1", a, p.field()).unwrap();
    assert_eq!(gr1_dependence(&p, &[x1, x3]).unwrap(), 2);
}

fn family(members: &[&str]) -> Presentation {
    let m = members.len();
    let names: Vec<(String, u32)> = [("x1".to_string(), 1), ("x2".to_string(), 1)]
        .into_iter()
        .chain((1..=m).map(|i| (format!("y{i}"), 3)))
        .collect();
    let a = Alphabet::new(names).unwrap();
    let f = CoefficientField::Rational;
    let n = a.len() as u8;
    let fam = ParafreeFamily {
        alphabet: a.clone(),
        field: f,
        x_letters: vec![0, 1],
        members: members.iter().enumerate().map(|(i, s)| (2 + i as u8, parse_poly(s, &a, f).unwrap())).collect(),
    };
    let precedence: Vec<u8> = (0..n).collect();
    let weights = a.weights();
    build_parafree_presentation(
        &fam,
        OrderSpec::deg_lex(precedence.clone()).unwrap(),
        OrderSpec::theta_lex(precedence, weights).unwrap(),
    )
    .unwrap()
}

#[test]
fn parafree_presentations_are_paraequivalent() {
    for members in [
        &["x1*x2 + y1^2", "x2*x1 + y2^2"][..],
        &["x1*x2 + y1^2"],
        &["x1*x2*x1 - y1^3"],
        &["x2*y1 + y1*x1 + y1^2"],
        &["x1 + y1*y2", "x2*y1 - y2^2"],
    ] {
        let p = family(members);
        for n in 1..=5 {
            let r = paraequivalence_check(&p, 2, n).unwrap();
            assert!(r.passed, "{members:?} n = {n}: {:?}", r.filtration_dims);
        }
    }
}

fn acyclic_term() -> impl Strategy<Value = String> {
    let x_term = prop::collection::vec(prop::sample::select(vec!["x1", "x2", "y1"]), 1..=3)
        .prop_filter("contains x", |ls| ls.iter().any(|l| l.starts_with('x')));
    let y_term = (2usize..=3).prop_map(|k| vec!["y1"; k]);
    (prop_oneof![x_term, y_term], -2i64..=2).prop_map(|(ls, c)| format!("{c}*{}", ls.join("*")))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_acyclic_families_are_paraequivalent(terms in prop::collection::vec(acyclic_term(), 1..=4)) {
        let p_y = terms.join(" + ");
        let p = family(&[p_y.as_str()]);
        for n in 1..=4 {
            let r = paraequivalence_check(&p, 2, n).unwrap();
            prop_assert!(r.passed, "p_y = {} n = {}: {:?}", p_y, n, r.filtration_dims);
        }
    }
}
