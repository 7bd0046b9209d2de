//! Compositions of rules and the Gröbner–Shirshov checks built on them.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, OrderError};
use crate::field::CoefficientField;
use crate::poly::{LeadMode, Poly};
use crate::quotients::ideal_closure;
use crate::rewrite::{reduce_max, reduce_min, ReduceOptions, ReductionResult, ReductionStatus, RewriteSystem};
use crate::words::{enumerate_filtered, find_factor_occurrences, Alphabet, BoundMode, OrderSpec, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompositionKind {
    /// `L_i = a w`, `L_j = w b`: the ambiguity is `a w b`.
    Intersection,
    /// `L_i = u L_j v`.
    Inclusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub kind: CompositionKind,
    pub i: usize,
    pub j: usize,
    pub ambiguity: Word,
    /// Intersection: the overlap length. Inclusion: the offset of `L_j`
    /// inside `L_i`.
    pub offset: usize,
    pub poly: Poly,
}

/// All compositions of the system's rules with respect to its lead mode.
///
/// Intersections include self-overlaps. Inclusions are taken for `i != j`;
/// when two rules share a leading word the pair is listed once, with `i < j`.
/// The list is sorted by ambiguity word under the system's order, then by
/// kind, indices and offset.
pub fn compositions(sys: &RewriteSystem) -> Vec<Composition> {
    let rules = sys.rules();
    let leads = sys.leads();
    let field = rules.first().map(Poly::field);
    let mut out = Vec::new();
    for (i, li) in leads.iter().enumerate() {
        for (j, lj) in leads.iter().enumerate() {
            // intersection: suffix of L_i of length k equals prefix of L_j
            for k in 1..li.len().min(lj.len()) {
                if li.suffix_from(li.len() - k) != lj.prefix(k) {
                    continue;
                }
                let a = li.prefix(li.len() - k);
                let b = lj.suffix_from(k);
                let one = field.expect("rules exist").one();
                let poly = rules[i].sandwich(&one, &Word::one(), &b).sub(&rules[j].sandwich(&one, &a, &Word::one()));
                out.push(Composition {
                    kind: CompositionKind::Intersection,
                    i,
                    j,
                    ambiguity: li.concat(&b),
                    offset: k,
                    poly,
                });
            }
            if i == j || lj.len() > li.len() || (li == lj && i > j) {
                continue;
            }
            for pos in find_factor_occurrences(li, lj) {
                let one = field.expect("rules exist").one();
                let u = li.prefix(pos);
                let v = li.suffix_from(pos + lj.len());
                let poly = rules[i].sub(&rules[j].sandwich(&one, &u, &v));
                out.push(Composition {
                    kind: CompositionKind::Inclusion,
                    i,
                    j,
                    ambiguity: li.clone(),
                    offset: pos,
                    poly,
                });
            }
        }
    }
    let order = sys.order();
    out.sort_by(|a, b| {
        order
            .cmp_words(&a.ambiguity, &b.ambiguity)
            .then((a.kind, a.i, a.j, a.offset).cmp(&(b.kind, b.i, b.j, b.offset)))
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GsVerdict {
    GroebnerShirshov,
    /// Some composition has a nonzero normal form (classical) or an
    /// irreducible least term below the bound (series).
    NotGroebnerShirshov {
        first_failure: usize,
    },
    /// Series only: no composition failed, but some reached the bound.
    GroebnerShirshovUpToBound {
        weight_bound: u64,
    },
}

#[derive(Clone, Debug)]
pub struct CompositionOutcome {
    pub composition: Composition,
    pub reduction: ReductionResult,
}

#[derive(Clone, Debug)]
pub struct GsCheck {
    pub mode: LeadMode,
    pub outcomes: Vec<CompositionOutcome>,
    pub verdict: GsVerdict,
}

impl GsCheck {
    pub fn is_gs(&self) -> bool {
        self.verdict == GsVerdict::GroebnerShirshov
    }

    pub fn failures(&self) -> impl Iterator<Item = &CompositionOutcome> {
        self.outcomes.iter().filter(|o| {
            matches!(o.reduction.status, ReductionStatus::NormalForm | ReductionStatus::IrreducibleMinTermBelowBound)
        })
    }
}

/// Classical check: every composition must reduce to zero under max-term
/// rewriting.
pub fn check_classical(sys: &RewriteSystem, record_steps: bool) -> GsCheck {
    assert_eq!(sys.mode(), LeadMode::Max);
    let opts = ReduceOptions { record_steps, truncation: None };
    let outcomes: Vec<CompositionOutcome> = compositions(sys)
        .into_par_iter()
        .map(|c| {
            let reduction = reduce_max(&c.poly, sys, &opts);
            CompositionOutcome { composition: c, reduction }
        })
        .collect();
    let verdict = match outcomes.iter().position(|o| o.reduction.status != ReductionStatus::ReducedToZero) {
        Some(first_failure) => GsVerdict::NotGroebnerShirshov { first_failure },
        None => GsVerdict::GroebnerShirshov,
    };
    GsCheck { mode: LeadMode::Max, outcomes, verdict }
}

/// Series check: every composition must be trivial under min-term rewriting
/// up to `weight_bound`. An irreducible least term below the bound is a
/// definitive failure; reaching the bound is success only up to the bound.
pub fn check_series(sys: &RewriteSystem, weight_bound: u64, record_steps: bool) -> Result<GsCheck, Error> {
    assert_eq!(sys.mode(), LeadMode::Min);
    let outcomes = compositions(sys)
        .into_par_iter()
        .map(|c| {
            let reduction = reduce_min(&c.poly, sys, weight_bound, record_steps)?;
            Ok(CompositionOutcome { composition: c, reduction })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let first_failure =
        outcomes.iter().position(|o| o.reduction.status == ReductionStatus::IrreducibleMinTermBelowBound);
    let verdict = match first_failure {
        Some(first_failure) => GsVerdict::NotGroebnerShirshov { first_failure },
        None if outcomes.iter().any(|o| o.reduction.status == ReductionStatus::TruncatedAtBound) => {
            GsVerdict::GroebnerShirshovUpToBound { weight_bound }
        }
        None => GsVerdict::GroebnerShirshov,
    };
    Ok(GsCheck { mode: LeadMode::Min, outcomes, verdict })
}

/// Words within `bound` that contain no element of `leading` as a factor.
pub fn normal_words(leading: &[Word], alphabet: &Alphabet, bound: u64, mode: BoundMode) -> Result<Vec<Word>, Error> {
    // a new word can only gain a forbidden factor at its end
    enumerate_filtered(alphabet, bound, mode, |w| !leading.iter().any(|l| w.letters().ends_with(l.letters())))
}

#[derive(Clone, Debug)]
pub struct Completion {
    /// Monic rules of length below the cap; together with every word of
    /// length `degree_cap` they are a reduced Gröbner–Shirshov basis of
    /// `(rules) + I^degree_cap`.
    pub rules: Vec<Poly>,
    /// Normal words of length below the cap.
    pub normal_words: Vec<Word>,
}

/// Completion of `rules` modulo all words of length `degree_cap`.
///
/// Because the cap leaves finitely many candidate leading words, the
/// completion is computed as the reduced echelon form of the ideal inside the
/// span of words of length `< degree_cap`. Fails when that ideal exceeds
/// `max_rules` dimensions.
pub fn complete_classical(
    rules: &[Poly],
    alphabet: &Alphabet,
    order: &OrderSpec,
    degree_cap: usize,
    max_rules: usize,
) -> Result<Completion, Error> {
    if degree_cap == 0 {
        return Err(Error::Precondition("degree cap must be at least 1".into()));
    }
    if !order.is_admissible() {
        return Err(OrderError::NotAdmissible(order.kind().name().into()).into());
    }
    let field = match rules.first() {
        Some(r) => r.field(),
        None => CoefficientField::Rational,
    };
    let echelon = ideal_closure(field, rules, order, degree_cap, max_rules)?;
    let pivots: Vec<Word> = echelon.pivots().map(|k| order.word_of(k)).collect();
    let minimal: Vec<Word> =
        pivots.iter().filter(|w| !pivots.iter().any(|p| p.len() < w.len() && w.contains_factor(p))).cloned().collect();
    let out_rules = minimal
        .iter()
        .map(|w| {
            let row = echelon.row(&order.key(w)).expect("pivot");
            Poly::from_terms(field, row.iter().map(|(k, c)| (order.word_of(k), c.clone())))
        })
        .collect();
    let mut normal = normal_words(&minimal, alphabet, degree_cap as u64 - 1, BoundMode::ByLength)?;
    normal.sort_by(|u, v| order.cmp_words(u, v));
    Ok(Completion { rules: out_rules, normal_words: normal })
}
