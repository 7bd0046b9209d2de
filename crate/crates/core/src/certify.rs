//! Residual-nilpotence certificates, acyclic polynomials and the standard
//! parafree presentations built from them.
//!
//! A presentation `k<X>/(R)` is certified residually nilpotent when `R` is a
//! Gröbner–Shirshov basis for an admissible order `<=`, the image of `R` in
//! the power series algebra is a Gröbner–Shirshov basis for an admissible
//! N-order `<<`, and every relation has the same maximal term under `<=` as
//! minimal term under `<<`. A failed certificate refutes only this
//! hypothesis, never residual nilpotence itself.

use serde::Serialize;

use crate::error::Error;
use crate::expr::parse_poly;
use crate::field::CoefficientField;
use crate::gsbases::{check_classical, check_series, GsCheck, GsVerdict};
use crate::poly::{LeadMode, Poly};
use crate::presentation::Presentation;
use crate::rewrite::RewriteSystem;
use crate::words::{Alphabet, Letter, OrderSpec, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingPair {
    pub relation: usize,
    pub max_term: Word,
    pub min_term: Word,
}

impl LeadingPair {
    pub fn matches(&self) -> bool {
        self.max_term == self.min_term
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Refutation {
    LeadingMismatch { relation: usize },
    ClassicalNotGs,
    SeriesNotGs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedResiduallyNilpotent,
    RefutedHypothesis { refutations: Vec<Refutation> },
    Inconclusive { weight_bound: u64 },
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub leading: Vec<LeadingPair>,
    pub classical: GsCheck,
    pub series: GsCheck,
    pub classical_system: RewriteSystem,
    pub series_system: RewriteSystem,
    pub verdict: Verdict,
}

/// Runs both Gröbner–Shirshov checks (concurrently) and the leading-term
/// comparison, then assembles the verdict.
pub fn certify_residual_nilpotence(
    p: &Presentation,
    weight_bound: u64,
    record_steps: bool,
) -> Result<Certificate, Error> {
    let classical_system = RewriteSystem::new(p.relations().to_vec(), p.order_max().clone(), LeadMode::Max)?;
    let series_system = RewriteSystem::new(p.relations().to_vec(), p.order_min().clone(), LeadMode::Min)?;
    let leading: Vec<LeadingPair> = classical_system
        .leads()
        .iter()
        .zip(series_system.leads())
        .enumerate()
        .map(|(relation, (max_term, min_term))| LeadingPair {
            relation,
            max_term: max_term.clone(),
            min_term: min_term.clone(),
        })
        .collect();
    let (classical, series) = rayon::join(
        || check_classical(&classical_system, record_steps),
        || check_series(&series_system, weight_bound, record_steps),
    );
    let series = series?;

    let mut refutations: Vec<Refutation> =
        leading.iter().filter(|l| !l.matches()).map(|l| Refutation::LeadingMismatch { relation: l.relation }).collect();
    if !classical.is_gs() {
        refutations.push(Refutation::ClassicalNotGs);
    }
    if matches!(series.verdict, GsVerdict::NotGroebnerShirshov { .. }) {
        refutations.push(Refutation::SeriesNotGs);
    }
    let verdict = if !refutations.is_empty() {
        Verdict::RefutedHypothesis { refutations }
    } else if let GsVerdict::GroebnerShirshovUpToBound { weight_bound } = series.verdict {
        Verdict::Inconclusive { weight_bound }
    } else {
        Verdict::CertifiedResiduallyNilpotent
    };
    if verdict == Verdict::CertifiedResiduallyNilpotent {
        assert!(classical.is_gs() && series.is_gs() && leading.iter().all(LeadingPair::matches));
    }
    Ok(Certificate { leading, classical, series, classical_system, series_system, verdict })
}

/// The part of `p` with no letter from `x_letters` must have zero constant
/// term and no single-letter terms.
pub fn check_acyclic(p: &Poly, x_letters: &[Letter]) -> bool {
    p.terms()
        .filter(|(w, _)| !w.letters().iter().any(|l| x_letters.contains(l)))
        .all(|(w, c)| c.is_zero() || w.len() >= 2)
}

/// Generators `X ⊔ Y` and one polynomial `p_y` for each `y` in `Y`.
#[derive(Clone, Debug)]
pub struct ParafreeFamily {
    pub alphabet: Alphabet,
    pub field: CoefficientField,
    pub x_letters: Vec<Letter>,
    pub members: Vec<(Letter, Poly)>,
}

/// Presentation with relations `y - p_y`, each made monic for `order_max`.
pub fn build_parafree_presentation(
    family: &ParafreeFamily,
    order_max: OrderSpec,
    order_min: OrderSpec,
) -> Result<Presentation, Error> {
    let mut relations = Vec::with_capacity(family.members.len());
    for (y, p) in &family.members {
        if family.x_letters.contains(y) {
            return Err(Error::Precondition(format!("{} is a base generator", family.alphabet.name(*y))));
        }
        if !check_acyclic(p, &family.x_letters) {
            return Err(Error::Precondition(format!(
                "p_{} = {} is not acyclic",
                family.alphabet.name(*y),
                p.render(&family.alphabet, Some(&order_max))
            )));
        }
        let r = Poly::letter(family.field, *y).sub(p);
        if r.is_zero() {
            return Err(Error::Precondition(format!("relation for {} is zero", family.alphabet.name(*y))));
        }
        relations.push(r.make_monic(&order_max, LeadMode::Max)?);
    }
    Ok(Presentation::new(family.alphabet.clone(), family.field, relations, order_max, order_min)?
        .with_parafree_rank(family.x_letters.len()))
}

/// Shortest nonempty `u'` with `u = u' u'' u'`, if any.
pub fn border_witness(u: &Word) -> Option<Word> {
    (1..=u.len() / 2).find(|&k| u.prefix(k) == u.suffix_from(u.len() - k)).map(|k| u.prefix(k))
}

#[derive(Clone, Debug)]
pub struct FamilyExample {
    pub presentation: Presentation,
    pub certificate: Certificate,
}

/// `k<x1..xn, y1..ym | u = phi>` with deg-lex `x1 > .. > xn > y1 > .. > ym`
/// and the theta-lex order with the same precedence, `theta(x) = 1` and
/// `theta(y_i) = y_weights[i]` (default `|u| + 1`).
pub fn generate_family_example(
    n: usize,
    m: usize,
    u: &str,
    phi: &str,
    y_weights: Option<Vec<u32>>,
    weight_bound: u64,
) -> Result<FamilyExample, Error> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).chain((1..=m).map(|i| format!("y{i}"))).collect();
    let plain = Alphabet::unweighted(names.clone())?;
    let field = CoefficientField::Rational;
    let u_poly = parse_poly(u, &plain, field)?;
    let u_word = match u_poly.terms().next() {
        Some((w, c)) if u_poly.len() == 1 && c.is_one() => w.clone(),
        _ => return Err(Error::Precondition(format!("u = {u} must be a single word"))),
    };
    if u_word.is_one() {
        return Err(Error::Precondition("u must not be the empty word".into()));
    }
    if u_word.letters().iter().any(|&l| usize::from(l) >= n) {
        return Err(Error::Precondition(format!("u = {u} must be a word in x1..x{n}")));
    }
    if let Some(w) = border_witness(&u_word) {
        return Err(Error::Precondition(format!(
            "u = {} decomposes as u'u''u' with u' = {}",
            plain.render(&u_word),
            plain.render(&w)
        )));
    }
    let phi_poly = parse_poly(phi, &plain, field)?;
    for (v, _) in phi_poly.terms() {
        if v.letters().iter().any(|&l| usize::from(l) < n) {
            return Err(Error::Precondition(format!("phi has monomial {} outside k<Y>", plain.render(v))));
        }
        if v.is_one() {
            return Err(Error::Precondition("phi must have zero constant term".into()));
        }
        if v.len() > u_word.len() {
            return Err(Error::Precondition(format!("phi has monomial {} above u in deg-lex", plain.render(v))));
        }
    }
    let weights = y_weights.unwrap_or_else(|| vec![u_word.len() as u32 + 1; m]);
    if weights.len() != m {
        return Err(Error::Precondition(format!("expected {m} y-weights, got {}", weights.len())));
    }
    if let Some(i) = weights.iter().position(|&w| (w as usize) <= u_word.len()) {
        return Err(Error::Precondition(format!(
            "theta(y{}) = {} must exceed |u| = {}",
            i + 1,
            weights[i],
            u_word.len()
        )));
    }
    let letter_weights: Vec<u32> = std::iter::repeat_n(1, n).chain(weights.iter().copied()).collect();
    let alphabet = Alphabet::new(names.into_iter().zip(letter_weights.iter().copied()))?;
    let precedence: Vec<Letter> = (0..(n + m) as Letter).collect();
    let order_max = OrderSpec::deg_lex(precedence.clone())?;
    let order_min = OrderSpec::theta_lex(precedence, letter_weights)?;
    let r = Poly::word(field, u_word).sub(&phi_poly);
    let presentation = Presentation::new(alphabet, field, vec![r], order_max, order_min)?;
    let certificate = certify_residual_nilpotence(&presentation, weight_bound, false)?;
    Ok(FamilyExample { presentation, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alphabet() -> Alphabet {
        Alphabet::new([("x1", 1), ("x2", 1), ("y1", 3), ("y2", 3)]).unwrap()
    }

    fn p(a: &Alphabet, s: &str) -> Poly {
        parse_poly(s, a, CoefficientField::Rational).unwrap()
    }

    #[test]
    fn acyclicity() {
        let a = alphabet();
        assert!(check_acyclic(&p(&a, "x1*x2 + y1^2"), &[0, 1]));
        assert!(!check_acyclic(&p(&a, "y1"), &[0, 1]));
        assert!(check_acyclic(&p(&a, "x1*y1 + y2*y1"), &[0, 1]));
        assert!(check_acyclic(&p(&a, "x1*y1 + y2*y1 + x2"), &[0, 1]));
    }

    #[test]
    fn main_example_is_certified() {
        let a = alphabet();
        let order_max = OrderSpec::deg_lex(vec![0, 1, 2, 3]).unwrap();
        let order_min = OrderSpec::theta_lex(vec![2, 3, 0, 1], vec![1, 1, 3, 3]).unwrap();
        let family = ParafreeFamily {
            alphabet: a.clone(),
            field: CoefficientField::Rational,
            x_letters: vec![0, 1],
            members: vec![(2, p(&a, "x1*x2 + y1^2")), (3, p(&a, "x2*x1 + y2^2"))],
        };
        let para = build_parafree_presentation(&family, order_max.clone(), order_min.clone()).unwrap();
        assert_eq!(para.render_relations(), ["x1*x2 + y1^2 - y1", "x2*x1 + y2^2 - y2"]);
        assert_eq!(para.parafree_rank(), Some(2));

        let mut rels = para.relations().to_vec();
        rels.push(p(&a, "x1*y2 - y1*x1"));
        rels.push(p(&a, "x2*y1 - y2*x2"));
        let main = Presentation::new(a.clone(), CoefficientField::Rational, rels, order_max, order_min).unwrap();
        let cert = certify_residual_nilpotence(&main, 30, true).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedResiduallyNilpotent);
        let leads: Vec<String> = cert.leading.iter().map(|l| a.render(&l.min_term)).collect();
        assert_eq!(leads, ["x1*x2", "x2*x1", "x1*y2", "x2*y1"]);
    }

    #[test]
    fn mismatch_refutes_hypothesis() {
        let a = Alphabet::unweighted(["x1", "x2"]).unwrap();
        let o = OrderSpec::deg_lex(vec![0, 1]).unwrap();
        let th = OrderSpec::theta_lex(vec![0, 1], vec![1, 1]).unwrap();
        let pres = Presentation::parse(a, CoefficientField::Rational, &["x1*x2 - x1"], o, th).unwrap();
        let cert = certify_residual_nilpotence(&pres, 30, false).unwrap();
        assert!(matches!(
            cert.verdict,
            Verdict::RefutedHypothesis { ref refutations } if refutations.contains(&Refutation::LeadingMismatch { relation: 0 })
        ));
    }

    #[test]
    fn non_n_order_is_rejected() {
        let a = Alphabet::unweighted(["x", "y"]).unwrap();
        let o = OrderSpec::deg_lex(vec![0, 1]).unwrap();
        let lex = OrderSpec::lex(vec![0, 1]).unwrap();
        let pres = Presentation::parse(a, CoefficientField::Rational, &["x*y - y*x"], o, lex).unwrap();
        assert!(certify_residual_nilpotence(&pres, 30, false).is_err());
    }

    #[test]
    fn family_generator() {
        let ex = generate_family_example(2, 1, "x1*x2", "y1 - y1^2", None, 30).unwrap();
        assert_eq!(ex.certificate.verdict, Verdict::CertifiedResiduallyNilpotent);
        assert_eq!(ex.presentation.render_relations(), ["x1*x2 + y1^2 - y1"]);

        let ex = generate_family_example(3, 0, "x1*x2*x3", "0", None, 30).unwrap();
        assert_eq!(ex.certificate.verdict, Verdict::CertifiedResiduallyNilpotent);

        let err = generate_family_example(1, 1, "x1*x1", "y1*y1", None, 30).unwrap_err();
        assert!(err.to_string().contains("u' = x1"), "{err}");
        assert!(generate_family_example(2, 1, "x1*x2", "y1", Some(vec![2]), 30).is_err());
        assert!(generate_family_example(2, 1, "x1*x2", "y1^3", None, 30).is_err());
    }

    #[test]
    fn border_witnesses() {
        let a = Alphabet::unweighted(["a", "b"]).unwrap();
        let w = |s: &str| a.word(s).unwrap();
        assert_eq!(border_witness(&w("a*b*a")), Some(w("a")));
        assert_eq!(border_witness(&w("a*a*a")), Some(w("a")));
        assert_eq!(border_witness(&w("a*b*a*b")), Some(w("a*b")));
        assert_eq!(border_witness(&w("a*a*b")), None);
        assert_eq!(border_witness(&w("a")), None);
    }
}
