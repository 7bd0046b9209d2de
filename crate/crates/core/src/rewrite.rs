//! Maximal-term (polynomial) and minimal-term (truncated power series)
//! rewriting against a fixed list of monic rules.
//!
//! Both engines keep the working polynomial in a `BTreeMap` keyed by the
//! active order's [`SortKey`], so the leading term is always at one end of
//! the map. Rule choice is deterministic: the lowest-index rule whose leading
//! word divides the candidate term, at its leftmost occurrence.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, OrderError};
use crate::field::Coeff;
use crate::poly::{Grading, LeadMode, Poly};
use crate::words::{OrderSpec, SortKey, Word};

/// Hard limit on the series weight bound.
pub const WEIGHT_BOUND_CAP: u64 = 4096;
/// Hard limit on the number of rewriting steps in one reduction.
pub const STEP_CAP: usize = 2_000_000;

/// Monic rules over one order, read in one lead mode.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    rules: Vec<Poly>,
    leads: Vec<Word>,
    order: OrderSpec,
    mode: LeadMode,
    lowest_rule_for_lead: HashMap<Word, usize>,
    lead_lengths: Vec<usize>,
}

impl RewriteSystem {
    /// Normalises every rule to be monic in `mode`.
    ///
    /// Max mode needs an admissible order, min mode an admissible N-order.
    /// Zero rules are rejected.
    pub fn new(rules: Vec<Poly>, order: OrderSpec, mode: LeadMode) -> Result<Self, Error> {
        if !order.is_admissible() {
            return Err(OrderError::NotAdmissible(order.kind().name().into()).into());
        }
        if mode == LeadMode::Min && !order.is_n_order() {
            return Err(OrderError::NotNOrder(order.kind().name().into()).into());
        }
        let mut monic = Vec::with_capacity(rules.len());
        let mut leads = Vec::with_capacity(rules.len());
        for r in rules {
            for w in r.support() {
                order.check_word(w)?;
            }
            let m = r.make_monic(&order, mode)?;
            leads.push(m.lead_term(&order, mode)?.0);
            monic.push(m);
        }
        let mut lowest_rule_for_lead = HashMap::new();
        for (i, w) in leads.iter().enumerate() {
            lowest_rule_for_lead.entry(w.clone()).or_insert(i);
        }
        let mut lead_lengths: Vec<usize> = leads.iter().map(Word::len).collect();
        lead_lengths.sort_unstable();
        lead_lengths.dedup();
        Ok(RewriteSystem { rules: monic, leads, order, mode, lowest_rule_for_lead, lead_lengths })
    }

    pub fn rules(&self) -> &[Poly] {
        &self.rules
    }

    pub fn leads(&self) -> &[Word] {
        &self.leads
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    pub fn mode(&self) -> LeadMode {
        self.mode
    }

    /// `(rule, position)` of the lowest-index rule whose leading word occurs
    /// in `w`, at its leftmost occurrence.
    pub fn find_divisor(&self, w: &Word) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let letters = w.letters();
        for &len in &self.lead_lengths {
            if len > letters.len() {
                break;
            }
            for start in 0..=letters.len() - len {
                let candidate = Word::from_letters(&letters[start..start + len]);
                if let Some(&rule) = self.lowest_rule_for_lead.get(&candidate) {
                    if best.is_none_or(|(r, p)| (rule, start) < (r, p)) {
                        best = Some((rule, start));
                    }
                }
            }
        }
        best
    }

    /// True when no rule's leading word occurs in `w`.
    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.find_divisor(w).is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionStatus {
    /// The remainder is exactly zero.
    ReducedToZero,
    /// Max mode: a nonzero remainder with no reducible term.
    NormalForm,
    /// Min mode: the least surviving term is irreducible and below the bound.
    /// Definitive: the input is not trivial modulo the rules at that word.
    IrreducibleMinTermBelowBound,
    /// Min mode: every surviving term reached the weight bound. Success only
    /// up to the bound.
    TruncatedAtBound,
}

/// One rewriting step: `coeff * left * rule * right` was subtracted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: usize,
    pub position: usize,
    pub left: Word,
    pub right: Word,
    pub coeff: Coeff,
}

#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub remainder: Poly,
    pub status: ReductionStatus,
    pub step_count: usize,
    /// Recorded steps; they double as the cofactor representation
    /// `input - remainder = sum coeff * left * rule * right`.
    pub steps: Option<Vec<Step>>,
    /// Min mode: the irreducible least term that stopped the reduction.
    pub irreducible: Option<Word>,
    /// Max mode with truncation: some terms were discarded.
    pub truncated: bool,
}

impl ReductionResult {
    /// Re-expands the recorded cofactors and compares with `input`.
    /// Returns `None` when steps were not recorded.
    pub fn verify_cofactors(&self, input: &Poly, sys: &RewriteSystem) -> Option<bool> {
        let steps = self.steps.as_ref()?;
        let mut total = self.remainder.clone();
        for s in steps {
            total.add_assign(&sys.rules[s.rule].sandwich(&s.coeff, &s.left, &s.right));
        }
        Some(&total == input)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReduceOptions {
    pub record_steps: bool,
    /// Max mode only: drop terms whose grade reaches the bound. Used to model
    /// the quotient by all words of a given length.
    pub truncation: Option<(Grading, u64)>,
}

fn to_keyed(f: &Poly, order: &OrderSpec) -> BTreeMap<SortKey, Coeff> {
    f.terms().map(|(w, c)| (order.key(w), c.clone())).collect()
}

fn add_keyed(work: &mut BTreeMap<SortKey, Coeff>, key: SortKey, c: Coeff) {
    match work.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Classical normal form: rewrite the largest reducible term until none is
/// left. Terminates because each step replaces a word by smaller ones under
/// an admissible order.
pub fn reduce_max(f: &Poly, sys: &RewriteSystem, opts: &ReduceOptions) -> ReductionResult {
    assert_eq!(sys.mode, LeadMode::Max, "reduce_max needs a max-mode system");
    let order = &sys.order;
    let mut work = to_keyed(f, order);
    let mut remainder = Poly::zero(f.field());
    let mut steps = opts.record_steps.then(Vec::new);
    let mut step_count = 0;
    let mut truncated = false;
    while let Some((key, c)) = work.pop_last() {
        let w = order.word_of(&key);
        if let Some((grading, bound)) = &opts.truncation {
            if grading.grade(&w) >= *bound {
                truncated = true;
                continue;
            }
        }
        match sys.find_divisor(&w) {
            None => remainder.add_term(w, c),
            Some((rule, pos)) => {
                let lead_len = sys.leads[rule].len();
                let left = w.prefix(pos);
                let right = w.suffix_from(pos + lead_len);
                let neg = c.neg();
                for (t, a) in sys.rules[rule].terms() {
                    if t == &sys.leads[rule] {
                        continue;
                    }
                    add_keyed(&mut work, order.key(&t.sandwich(&left, &right)), neg.mul(a));
                }
                step_count += 1;
                if let Some(s) = steps.as_mut() {
                    s.push(Step { rule, position: pos, left, right, coeff: c });
                }
            }
        }
    }
    let status = if remainder.is_zero() { ReductionStatus::ReducedToZero } else { ReductionStatus::NormalForm };
    ReductionResult { remainder, status, step_count, steps, irreducible: None, truncated }
}

/// Series reduction: repeatedly eliminate the least term while its grade is
/// below `weight_bound`, pushing the support strictly upward.
///
/// `weight_bound` is measured in the grading of the system's order (theta
/// weight for theta-lex, length for deg-lex).
pub fn reduce_min(
    f: &Poly,
    sys: &RewriteSystem,
    weight_bound: u64,
    record_steps: bool,
) -> Result<ReductionResult, Error> {
    assert_eq!(sys.mode, LeadMode::Min, "reduce_min needs a min-mode system");
    if weight_bound > WEIGHT_BOUND_CAP {
        return Err(Error::CapExceeded {
            what: format!("weight bound {weight_bound}"),
            cap: WEIGHT_BOUND_CAP as usize,
        });
    }
    let order = &sys.order;
    let mut work = to_keyed(f, order);
    let mut steps = record_steps.then(Vec::new);
    let mut step_count = 0;
    let mut previous: Option<SortKey> = None;
    let mut irreducible = None;
    let status = loop {
        let Some((key, c)) = work.first_key_value().map(|(k, c)| (k.clone(), c.clone())) else {
            break ReductionStatus::ReducedToZero;
        };
        if key.grade >= weight_bound {
            break ReductionStatus::TruncatedAtBound;
        }
        if let Some(prev) = &previous {
            assert!(prev < &key, "least term must increase strictly");
        }
        let w = order.word_of(&key);
        let Some((rule, pos)) = sys.find_divisor(&w) else {
            irreducible = Some(w);
            break ReductionStatus::IrreducibleMinTermBelowBound;
        };
        step_count += 1;
        if step_count > STEP_CAP {
            return Err(Error::CapExceeded { what: "series reduction steps".into(), cap: STEP_CAP });
        }
        work.remove(&key);
        let lead_len = sys.leads[rule].len();
        let left = w.prefix(pos);
        let right = w.suffix_from(pos + lead_len);
        let neg = c.neg();
        for (t, a) in sys.rules[rule].terms() {
            if t == &sys.leads[rule] {
                continue;
            }
            add_keyed(&mut work, order.key(&t.sandwich(&left, &right)), neg.mul(a));
        }
        if let Some(s) = steps.as_mut() {
            s.push(Step { rule, position: pos, left, right, coeff: c });
        }
        previous = Some(key);
    };
    let remainder = Poly::from_terms(f.field(), work.into_iter().map(|(k, c)| (order.word_of(&k), c)));
    Ok(ReductionResult { remainder, status, step_count, steps, irreducible, truncated: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::field::CoefficientField;
    use crate::words::Alphabet;

    fn main_alphabet() -> Alphabet {
        Alphabet::new([("x1", 1), ("x2", 1), ("y1", 3), ("y2", 3)]).unwrap()
    }

    fn p(a: &Alphabet, s: &str) -> Poly {
        parse_poly(s, a, CoefficientField::Rational).unwrap()
    }

    fn relations(a: &Alphabet) -> Vec<Poly> {
        ["x1*x2 + y1^2 - y1", "x2*x1 + y2^2 - y2", "x1*y2 - y1*x1", "x2*y1 - y2*x2"].iter().map(|s| p(a, s)).collect()
    }

    fn classical(a: &Alphabet) -> RewriteSystem {
        RewriteSystem::new(relations(a), OrderSpec::deg_lex(vec![0, 1, 2, 3]).unwrap(), LeadMode::Max).unwrap()
    }

    fn series(a: &Alphabet) -> RewriteSystem {
        let theta = OrderSpec::theta_lex(vec![2, 3, 0, 1], vec![1, 1, 3, 3]).unwrap();
        RewriteSystem::new(relations(a), theta, LeadMode::Min).unwrap()
    }

    #[test]
    fn classical_normal_forms() {
        let a = main_alphabet();
        let sys = classical(&a);
        let opts = ReduceOptions { record_steps: true, ..Default::default() };
        let f = p(&a, "x1*x2*x1");
        let res = reduce_max(&f, &sys, &opts);
        assert_eq!(res.remainder, p(&a, "-y1^2*x1 + y1*x1"));
        assert_eq!(res.status, ReductionStatus::NormalForm);
        assert_eq!(res.verify_cofactors(&f, &sys), Some(true));

        let r1 = &relations(&a)[0];
        assert_eq!(reduce_max(r1, &sys, &opts).status, ReductionStatus::ReducedToZero);

        let y1y2 = p(&a, "y1*y2");
        assert_eq!(reduce_max(&y1y2, &sys, &opts).remainder, y1y2);
    }

    #[test]
    fn reduce_max_is_idempotent() {
        let a = main_alphabet();
        let sys = classical(&a);
        let f = p(&a, "(x1 + x2 + y1 + y2)^4");
        let once = reduce_max(&f, &sys, &ReduceOptions::default()).remainder;
        let twice = reduce_max(&once, &sys, &ReduceOptions::default()).remainder;
        assert_eq!(once, twice);
        assert!(once.support().all(|w| sys.is_normal_word(w)));
    }

    #[test]
    fn series_composition_reduces_in_three_steps() {
        let a = main_alphabet();
        let sys = series(&a);
        let rs = relations(&a);
        let comp = rs[0].mul(&p(&a, "x1")).sub(&p(&a, "x1").mul(&rs[1]));
        let res = reduce_min(&comp, &sys, 30, true).unwrap();
        assert_eq!(res.status, ReductionStatus::ReducedToZero);
        assert_eq!(res.step_count, 3);
        let steps = res.steps.as_ref().unwrap();
        assert!(steps.iter().all(|s| s.rule == 2));
        let rendered: Vec<(String, String)> = steps.iter().map(|s| (a.render(&s.left), a.render(&s.right))).collect();
        assert_eq!(rendered, [("1".into(), "1".into()), ("1".into(), "y2".into()), ("y1".into(), "1".into())]);
        assert_eq!(res.verify_cofactors(&comp, &sys), Some(true));
    }

    #[test]
    fn irreducible_min_term_is_definitive() {
        let a = Alphabet::new([("x1", 1), ("x2", 1), ("x3", 3)]).unwrap();
        let theta = OrderSpec::theta_lex(vec![0, 1, 2], vec![1, 1, 3]).unwrap();
        let sys = RewriteSystem::new(vec![p(&a, "x1*x2 + x3^2 - x3")], theta, LeadMode::Min).unwrap();
        let res = reduce_min(&p(&a, "x3"), &sys, 10, false).unwrap();
        assert_eq!(res.status, ReductionStatus::IrreducibleMinTermBelowBound);
        assert_eq!(res.irreducible, Some(a.word("x3").unwrap()));

        let zero = Poly::zero(CoefficientField::Rational);
        assert_eq!(reduce_min(&zero, &sys, 10, false).unwrap().status, ReductionStatus::ReducedToZero);
    }

    #[test]
    fn bound_exhaustion_is_reported_as_truncation() {
        // x = x*y pushes x up forever: x -> x*y -> x*y^2 -> ...
        let a = Alphabet::unweighted(["x", "y"]).unwrap();
        let o = OrderSpec::deg_lex(vec![0, 1]).unwrap();
        let sys = RewriteSystem::new(vec![p(&a, "x - x*y")], o, LeadMode::Min).unwrap();
        let f = p(&a, "x");
        let res = reduce_min(&f, &sys, 6, true).unwrap();
        assert_eq!(res.status, ReductionStatus::TruncatedAtBound);
        assert_eq!(res.remainder, p(&a, "x*y^5"));
        assert_eq!(res.verify_cofactors(&f, &sys), Some(true));
        assert!(reduce_min(&f, &sys, WEIGHT_BOUND_CAP + 1, false).is_err());
    }

    #[test]
    fn lex_cannot_drive_rewriting() {
        let a = Alphabet::unweighted(["x", "y"]).unwrap();
        let lex = OrderSpec::lex(vec![0, 1]).unwrap();
        assert!(RewriteSystem::new(vec![p(&a, "x*y")], lex, LeadMode::Max).is_err());
    }

    #[test]
    fn rule_choice_prefers_lowest_index() {
        let a = main_alphabet();
        let sys = classical(&a);
        // x1*x2*x1 contains x1*x2 (rule 0, pos 0) and x2*x1 (rule 1, pos 1)
        assert_eq!(sys.find_divisor(&a.word("x1*x2*x1").unwrap()), Some((0, 0)));
        assert_eq!(sys.find_divisor(&a.word("y1*x2*x1*x2").unwrap()), Some((0, 2)));
        assert_eq!(sys.find_divisor(&a.word("y1*y2").unwrap()), None);
    }
}
