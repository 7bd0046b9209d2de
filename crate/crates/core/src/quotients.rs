//! Truncated quotients `k<X>/((R) + I^n)`, their filtration dimensions,
//! paraequivalence tables, and the graded Hopf formula for `H_2`.
//!
//! The ideal generated by `R` inside the finite-dimensional space of words
//! of length `< n` is computed by a closure: every newly independent vector
//! is multiplied by each letter on both sides (dropping words of length
//! `>= n`) until the span stops growing. The echelon is keyed by the
//! presentation's classical order, so pivots are leading words and the
//! remaining words form a normal-word basis.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::error::Error;
use crate::field::{Coeff, CoefficientField};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::Poly;
use crate::presentation::Presentation;
use crate::words::{enumerate_words, BoundMode, Letter, OrderSpec, SortKey, Word};

/// Default limit on the dimension of the relation ideal in a truncated
/// quotient.
pub const DEFAULT_MAX_ROWS: usize = 500_000;

fn keyed_truncated(f: &Poly, order: &OrderSpec, n: usize) -> SparseVec<SortKey> {
    f.terms().filter(|(w, _)| w.len() < n).map(|(w, c)| (order.key(w), c.clone())).collect()
}

fn letter_times(v: &SparseVec<SortKey>, order: &OrderSpec, l: Letter, left: bool, n: usize) -> SparseVec<SortKey> {
    let x = Word::letter(l);
    v.iter()
        .filter_map(|(k, c)| {
            let w = order.word_of(k);
            if w.len() + 1 >= n {
                return None;
            }
            let p = if left { x.concat(&w) } else { w.concat(&x) };
            Some((order.key(&p), c.clone()))
        })
        .collect()
}

/// The ideal generated by `rules` in the span of words of length `< n`, in
/// reduced echelon form under `order`.
pub(crate) fn ideal_closure(
    field: CoefficientField,
    rules: &[Poly],
    order: &OrderSpec,
    n: usize,
    max_rows: usize,
) -> Result<Echelon<SortKey>, Error> {
    let letters = order.num_letters() as Letter;
    let mut e = Echelon::new(field);
    let mut queue: VecDeque<SparseVec<SortKey>> = rules.iter().map(|r| keyed_truncated(r, order, n)).collect();
    while let Some(v) = queue.pop_front() {
        let v = e.reduce(v);
        if v.is_empty() {
            continue;
        }
        for l in 0..letters {
            for left in [true, false] {
                let p = letter_times(&v, order, l, left, n);
                if !p.is_empty() {
                    queue.push_back(p);
                }
            }
        }
        e.insert_reduced(v);
        if e.rank() > max_rows {
            return Err(Error::CapExceeded { what: "relation ideal dimension".into(), cap: max_rows });
        }
    }
    Ok(e)
}

/// `k<X>/((R) + I^n)` with a normal-word basis.
#[derive(Clone, Debug)]
pub struct TruncatedQuotient {
    presentation: Presentation,
    n: usize,
    echelon: Echelon<SortKey>,
    basis: Vec<Word>,
}

pub fn build_truncated_quotient(p: &Presentation, n: usize) -> Result<TruncatedQuotient, Error> {
    build_truncated_quotient_capped(p, n, DEFAULT_MAX_ROWS)
}

pub fn build_truncated_quotient_capped(
    p: &Presentation,
    n: usize,
    max_rows: usize,
) -> Result<TruncatedQuotient, Error> {
    if n == 0 {
        return Err(Error::Precondition("truncation degree must be at least 1".into()));
    }
    let order = p.order_max();
    let echelon = ideal_closure(p.field(), p.relations(), order, n, max_rows)?;
    let mut basis: Vec<Word> = enumerate_words(p.alphabet(), n as u64 - 1, BoundMode::ByLength)?
        .into_iter()
        .filter(|w| !echelon.is_pivot(&order.key(w)))
        .collect();
    basis.sort_by(|u, v| order.cmp_words(u, v));
    Ok(TruncatedQuotient { presentation: p.clone(), n, echelon, basis })
}

impl TruncatedQuotient {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Normal words of length `< n`, ascending in the classical order.
    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    fn order(&self) -> &OrderSpec {
        self.presentation.order_max()
    }

    fn to_poly(&self, v: SparseVec<SortKey>) -> Poly {
        Poly::from_terms(self.presentation.field(), v.into_iter().map(|(k, c)| (self.order().word_of(&k), c)))
    }

    fn reduce_keyed(&self, f: &Poly) -> SparseVec<SortKey> {
        self.echelon.reduce(keyed_truncated(f, self.order(), self.n))
    }

    /// Unique representative of `f` supported on the basis.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.to_poly(self.reduce_keyed(f))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.normal_form(&a.mul(b))
    }

    /// Coefficient of the empty word.
    pub fn augmentation(&self, a: &Poly) -> Coeff {
        self.normal_form(a).constant_term()
    }

    /// Rules `w - NF(w)` for the minimal leading words of the truncated
    /// ideal; together with all words of length `n` they form a reduced
    /// Gröbner–Shirshov basis of `(R) + I^n`.
    pub fn gs_rules(&self) -> Vec<Poly> {
        let order = self.order();
        let pivots: Vec<Word> = self.echelon.pivots().map(|k| order.word_of(k)).collect();
        let minimal = |w: &Word| !pivots.iter().any(|p| p.len() < w.len() && w.contains_factor(p));
        self.echelon
            .pivots()
            .filter(|k| minimal(&order.word_of(k)))
            .map(|k| self.to_poly(self.echelon.row(k).expect("pivot").clone()))
            .collect()
    }

    /// `dim Gr_k` for `k < n`, from the images of `I^k`, which are spanned by
    /// the normal forms of words of length at least `k`.
    pub fn filtration_dims(&self) -> Vec<usize> {
        let order = self.order();
        let mut by_length: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
        if let Ok(words) = enumerate_words(self.presentation.alphabet(), self.n as u64 - 1, BoundMode::ByLength) {
            for w in words {
                by_length.entry(w.len()).or_default().push(w);
            }
        }
        let mut span = Echelon::new(self.presentation.field());
        let mut ranks = vec![0; self.n + 1];
        for k in (0..self.n).rev() {
            for w in by_length.get(&k).into_iter().flatten() {
                let mut v = SparseVec::new();
                v.insert(order.key(w), self.presentation.field().one());
                span.insert(self.echelon.reduce(v));
            }
            ranks[k] = span.rank();
        }
        (0..self.n).map(|k| ranks[k] - ranks[k + 1]).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub n: usize,
    pub dim: usize,
    pub filtration_dims: Vec<usize>,
}

/// One independently built quotient per truncation degree `1..=n_max`.
pub fn dimension_table(p: &Presentation, n_max: usize, max_rows: usize) -> Result<Vec<DimensionRow>, Error> {
    (1..=n_max)
        .map(|n| {
            let q = build_truncated_quotient_capped(p, n, max_rows)?;
            Ok(DimensionRow { n, dim: q.dim(), filtration_dims: q.filtration_dims() })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParaequivalenceReport {
    pub free_rank: usize,
    pub n: usize,
    pub filtration_dims: Vec<usize>,
    pub expected: Vec<usize>,
    pub passed: bool,
}

/// Compares `dim Gr_k` with `free_rank^k` for all `k < n`.
pub fn paraequivalence_check(p: &Presentation, free_rank: usize, n: usize) -> Result<ParaequivalenceReport, Error> {
    let q = build_truncated_quotient(p, n)?;
    let filtration_dims = q.filtration_dims();
    let expected: Vec<usize> = (0..n as u32).map(|k| free_rank.pow(k)).collect();
    let passed = filtration_dims == expected;
    Ok(ParaequivalenceReport { free_rank, n, filtration_dims, expected, passed })
}

/// Dimension of the weight-`d` slice of `(r ∩ I^2)/(I r + r I)`.
pub fn hopf_h2_graded(p: &Presentation, d: u64) -> Result<usize, Error> {
    if let Some(i) = (0..p.relations().len()).find(|&i| {
        let r = &p.relations()[i];
        let mut ws = r.support().map(|w| p.alphabet().word_weight(w));
        let first = ws.next();
        !ws.all(|w| Some(w) == first)
    }) {
        return Err(Error::Precondition(format!("relation {i} is not weight-homogeneous")));
    }
    if d == 0 {
        return Err(Error::Precondition("weight must be at least 1".into()));
    }
    let a = p.alphabet();
    let field = p.field();
    let mut by_weight: HashMap<u64, Vec<Word>> = HashMap::new();
    for w in enumerate_words(a, d, BoundMode::ByWeight)? {
        by_weight.entry(a.word_weight(&w)).or_default().push(w);
    }
    let mut ideal = Echelon::<Word>::new(field);
    let mut boundary = Echelon::<Word>::new(field);
    let one = field.one();
    for r in p.relations() {
        let wr = a.word_weight(r.support().next().expect("nonzero relation"));
        if wr > d {
            continue;
        }
        let rest = d - wr;
        for wu in 0..=rest {
            for u in by_weight.get(&wu).into_iter().flatten() {
                for v in by_weight.get(&(rest - wu)).into_iter().flatten() {
                    let vec: SparseVec<Word> = r.sandwich(&one, u, v).into_terms().collect();
                    if !(u.is_one() && v.is_one()) {
                        boundary.insert(vec.clone());
                    }
                    ideal.insert(vec);
                }
            }
        }
    }
    let squares: Vec<&Word> = by_weight.get(&d).into_iter().flatten().filter(|w| w.len() >= 2).collect();
    let mut sum = ideal.clone();
    for w in &squares {
        let mut v = SparseVec::new();
        v.insert((*w).clone(), one.clone());
        sum.insert(v);
    }
    let intersection = ideal.rank() + squares.len() - sum.rank();
    Ok(intersection - boundary.rank())
}

/// Rank of the images of `elements` in `I/I^2`.
pub fn gr1_dependence(p: &Presentation, elements: &[Poly]) -> Result<usize, Error> {
    let q = build_truncated_quotient(p, 2)?;
    let vectors = elements.iter().map(|e| {
        let nf = q.reduce_keyed(e);
        nf.into_iter().filter(|(k, _)| !k.ranks.is_empty()).collect::<SparseVec<SortKey>>()
    });
    Ok(crate::linalg::rank(p.field(), vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::words::Alphabet;

    fn main_presentation() -> Presentation {
        let a = Alphabet::new([("x1", 1), ("x2", 1), ("y1", 3), ("y2", 3)]).unwrap();
        Presentation::parse(
            a,
            CoefficientField::Rational,
            &["x1*x2 + y1^2 - y1", "x2*x1 + y2^2 - y2", "x1*y2 - y1*x1", "x2*y1 - y2*x2"],
            OrderSpec::deg_lex(vec![0, 1, 2, 3]).unwrap(),
            OrderSpec::theta_lex(vec![2, 3, 0, 1], vec![1, 1, 3, 3]).unwrap(),
        )
        .unwrap()
    }

    fn commutative() -> Presentation {
        let a = Alphabet::unweighted(["x", "y"]).unwrap();
        let o = OrderSpec::deg_lex(vec![0, 1]).unwrap();
        Presentation::parse(a, CoefficientField::Rational, &["x*y - y*x"], o.clone(), o).unwrap()
    }

    #[test]
    fn main_example_small_levels() {
        let p = main_presentation();
        let q = build_truncated_quotient(&p, 2).unwrap();
        // y1 = x1*x2 + y1^2 and y2 = x2*x1 + y2^2 both lie in I^2
        let names: Vec<String> = q.basis().iter().map(|w| p.alphabet().render(w)).collect();
        assert_eq!(names, ["1", "x2", "x1"]);
        assert_eq!(q.filtration_dims(), [1, 2]);
        for n in 1..=5 {
            let q = build_truncated_quotient(&p, n).unwrap();
            assert_eq!(q.dim(), (1 << n) - 1);
            let gr = q.filtration_dims();
            assert_eq!(gr, (0..n).map(|k| 1usize << k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn commutative_and_free() {
        let q = build_truncated_quotient(&commutative(), 3).unwrap();
        assert_eq!(q.dim(), 6);
        assert_eq!(q.filtration_dims(), [1, 2, 3]);
        assert_eq!(q.gs_rules().len(), 1);
        let free = Presentation::free(Alphabet::unweighted(["x1", "x2"]).unwrap(), CoefficientField::Rational).unwrap();
        assert_eq!(build_truncated_quotient(&free, 3).unwrap().dim(), 7);
        let one = Presentation::free(Alphabet::unweighted(["x"]).unwrap(), CoefficientField::Rational).unwrap();
        assert_eq!(build_truncated_quotient(&one, 3).unwrap().filtration_dims(), [1, 1, 1]);
        assert!(!paraequivalence_check(&commutative(), 2, 3).unwrap().passed);
    }

    #[test]
    fn multiplication_is_associative() {
        let p = main_presentation();
        let q = build_truncated_quotient(&p, 4).unwrap();
        let f = p.field();
        let basis: Vec<Poly> = q.basis().iter().map(|w| Poly::word(f, w.clone())).collect();
        for a in &basis {
            for b in &basis {
                let ab = q.mul(a, b);
                for c in &basis {
                    assert_eq!(q.mul(&ab, c), q.mul(a, &q.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn hopf_formula() {
        let p = commutative();
        assert_eq!(hopf_h2_graded(&p, 2).unwrap(), 1);
        for d in [1, 3, 4] {
            assert_eq!(hopf_h2_graded(&p, d).unwrap(), 0);
        }
        let free = Presentation::free(Alphabet::unweighted(["x", "y"]).unwrap(), CoefficientField::Rational).unwrap();
        for d in 1..=6 {
            assert_eq!(hopf_h2_graded(&free, d).unwrap(), 0);
        }
        assert!(hopf_h2_graded(&main_presentation(), 3).is_err());
    }

    #[test]
    fn gr1_rank_detects_dependence() {
        let a = Alphabet::new([("x1", 1), ("x2", 1), ("x3", 3), ("x4", 3)]).unwrap();
        let q = CoefficientField::Rational;
        let p = Presentation::parse(
            a.clone(),
            q,
            &["x1*x2 + x3 + x4"],
            OrderSpec::deg_lex(vec![0, 1, 2, 3]).unwrap(),
            OrderSpec::theta_lex(vec![0, 1, 2, 3], vec![1, 1, 3, 3]).unwrap(),
        )
        .unwrap();
        let els = [parse_poly("x3", &a, q).unwrap(), parse_poly("x4", &a, q).unwrap()];
        assert_eq!(gr1_dependence(&p, &els).unwrap(), 1);
        let free = Presentation::free(a.clone(), q).unwrap();
        assert_eq!(gr1_dependence(&free, &els).unwrap(), 2);
        assert_eq!(gr1_dependence(&p, &[Poly::zero(q)]).unwrap(), 0);
    }
}
