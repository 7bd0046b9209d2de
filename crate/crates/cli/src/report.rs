//! JSON sections shared by several subcommands.

use parafree_core::certify::{Certificate, LeadingPair};
use parafree_core::gsbases::{CompositionOutcome, GsCheck};
use parafree_core::rewrite::{RewriteSystem, Step};
use parafree_core::{Alphabet, OrderSpec, Poly, Word};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u64 = 1;

pub const REFUTATION_NOTE: &str = "a refuted hypothesis does not show that the algebra fails to be residually \
                                   nilpotent; only the sufficient condition failed";

pub fn poly(p: &Poly, alphabet: &Alphabet, order: &OrderSpec) -> String {
    p.render(alphabet, Some(order))
}

pub fn words(ws: &[Word], alphabet: &Alphabet) -> Vec<String> {
    ws.iter().map(|w| alphabet.render(w)).collect()
}

fn step(s: &Step, alphabet: &Alphabet) -> Value {
    json!({
        "rule": s.rule,
        "position": s.position,
        "left": alphabet.render(&s.left),
        "right": alphabet.render(&s.right),
        "coeff": s.coeff.to_string(),
    })
}

fn outcome(o: &CompositionOutcome, sys: &RewriteSystem, alphabet: &Alphabet, trace: bool) -> Value {
    let c = &o.composition;
    let r = &o.reduction;
    let order = sys.order();
    let mut v = json!({
        "kind": c.kind,
        "i": c.i,
        "j": c.j,
        "ambiguity": alphabet.render(&c.ambiguity),
        "offset": c.offset,
        "composition": poly(&c.poly, alphabet, order),
        "status": r.status,
        "remainder": poly(&r.remainder, alphabet, order),
        "step_count": r.step_count,
        "cofactors_verified": r.verify_cofactors(&c.poly, sys),
    });
    if let Some(w) = &r.irreducible {
        v["irreducible"] = json!(alphabet.render(w));
    }
    if trace {
        if let Some(steps) = &r.steps {
            v["trace"] = steps.iter().map(|s| step(s, alphabet)).collect();
        }
    }
    v
}

/// A Gröbner–Shirshov check with one entry per composition.
pub fn gs_check(check: &GsCheck, sys: &RewriteSystem, alphabet: &Alphabet, trace: bool) -> Value {
    let count = |kind| check.outcomes.iter().filter(|o| o.composition.kind == kind).count();
    use parafree_core::gsbases::CompositionKind::*;
    let cofactors: Vec<Option<bool>> =
        check.outcomes.iter().map(|o| o.reduction.verify_cofactors(&o.composition.poly, sys)).collect();
    json!({
        "mode": check.mode,
        "order": sys.order().describe(alphabet),
        "rules": sys.rules().iter().map(|r| poly(r, alphabet, sys.order())).collect::<Vec<_>>(),
        "leading_words": words(sys.leads(), alphabet),
        "verdict": check.verdict,
        "is_gs": check.is_gs(),
        "intersections": count(Intersection),
        "inclusions": count(Inclusion),
        "cofactors_verified": cofactors.iter().all(|c| *c != Some(false)),
        "compositions": check.outcomes.iter().map(|o| outcome(o, sys, alphabet, trace)).collect::<Vec<_>>(),
    })
}

pub fn all_cofactors_verified(check: &GsCheck, sys: &RewriteSystem) -> bool {
    check.outcomes.iter().all(|o| o.reduction.verify_cofactors(&o.composition.poly, sys) != Some(false))
}

fn leading(l: &LeadingPair, alphabet: &Alphabet) -> Value {
    json!({
        "relation": l.relation,
        "max_term": alphabet.render(&l.max_term),
        "min_term": alphabet.render(&l.min_term),
        "matches": l.matches(),
    })
}

pub fn certificate(c: &Certificate, alphabet: &Alphabet, trace: bool) -> Value {
    json!({
        "verdict": c.verdict,
        "leading_terms": c.leading.iter().map(|l| leading(l, alphabet)).collect::<Vec<_>>(),
        "classical": gs_check(&c.classical, &c.classical_system, alphabet, trace),
        "series": gs_check(&c.series, &c.series_system, alphabet, trace),
        "note": REFUTATION_NOTE,
    })
}
