//! Finitely supported noncommutative polynomials with exact coefficients,
//! plus length/weight truncation standing in for power series.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::PolyError;
use crate::field::{Coeff, CoefficientField};
use crate::words::{render_word, Alphabet, Letter, OrderSpec, Word};

/// Which end of the support leads: the maximal term (classical polynomial
/// rewriting) or the minimal term (power-series rewriting).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeadMode {
    Max,
    Min,
}

/// An element of the free algebra. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: CoefficientField,
    terms: BTreeMap<Word, Coeff>,
}

impl Poly {
    pub fn zero(field: CoefficientField) -> Self {
        Poly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: CoefficientField) -> Self {
        Poly::monomial(Word::one(), field.one())
    }

    pub fn monomial(word: Word, coeff: Coeff) -> Self {
        let mut p = Poly::zero(coeff.field());
        p.add_term(word, coeff);
        p
    }

    pub fn word(field: CoefficientField, word: Word) -> Self {
        Poly::monomial(word, field.one())
    }

    pub fn letter(field: CoefficientField, l: Letter) -> Self {
        Poly::word(field, Word::letter(l))
    }

    pub fn from_terms(field: CoefficientField, terms: impl IntoIterator<Item = (Word, Coeff)>) -> Self {
        let mut p = Poly::zero(field);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Coeff)> {
        self.terms.into_iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Coeff> {
        self.terms.get(w)
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms.get(&Word::one()).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Length of the longest word in the support (0 for the zero polynomial).
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn min_length(&self) -> usize {
        self.terms.keys().map(Word::len).min().unwrap_or(0)
    }

    fn check_field(&self, c: &Coeff) {
        assert_eq!(self.field, c.field(), "coefficient field mismatch");
    }

    /// Adds `c * w` in place.
    pub fn add_term(&mut self, w: Word, c: Coeff) {
        self.check_field(&c);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
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

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_field(other)?;
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_field(other)?;
        Ok(self.mul(other))
    }

    fn same_field(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch(self.field.name(), other.field.name()));
        }
        Ok(())
    }

    /// Panics when the fields differ; see [`Poly::checked_add`].
    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        assert_eq!(self.field, other.field, "coefficient field mismatch");
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { field: self.field, terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.check_field(c);
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly { field: self.field, terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul(c))).collect() }
    }

    /// Panics when the fields differ; see [`Poly::checked_mul`].
    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "coefficient field mismatch");
        let mut out = Poly::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        out
    }

    /// `c * a * self * b` for words `a`, `b`.
    pub fn sandwich(&self, c: &Coeff, a: &Word, b: &Word) -> Poly {
        let mut out = Poly::zero(self.field);
        for (w, d) in &self.terms {
            out.add_term(w.sandwich(a, b), d.mul(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(self.field);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn max_term(&self, order: &OrderSpec) -> Result<(Word, Coeff), PolyError> {
        self.terms
            .iter()
            .max_by(|(u, _), (v, _)| order.cmp_words(u, v))
            .map(|(w, c)| (w.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn min_term(&self, order: &OrderSpec) -> Result<(Word, Coeff), PolyError> {
        self.terms
            .iter()
            .min_by(|(u, _), (v, _)| order.cmp_words(u, v))
            .map(|(w, c)| (w.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn lead_term(&self, order: &OrderSpec, mode: LeadMode) -> Result<(Word, Coeff), PolyError> {
        match mode {
            LeadMode::Max => self.max_term(order),
            LeadMode::Min => self.min_term(order),
        }
    }

    /// Scales so that the leading coefficient (in `mode`) is 1.
    pub fn make_monic(&self, order: &OrderSpec, mode: LeadMode) -> Result<Poly, PolyError> {
        let (_, c) = self.lead_term(order, mode)?;
        if c.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&c.inv()?))
    }

    /// Deletes every term whose grade is at least `bound`.
    pub fn truncate(&self, bound: u64, grading: &Grading) -> TruncatedPoly {
        let terms =
            self.terms.iter().filter(|(w, _)| grading.grade(w) < bound).map(|(w, c)| (w.clone(), c.clone())).collect();
        TruncatedPoly { poly: Poly { field: self.field, terms }, bound, grading: grading.clone() }
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn filter_terms(&self, keep: impl Fn(&Word) -> bool) -> Poly {
        Poly {
            field: self.field,
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Renders with terms in descending `order` (storage order if `None`).
    ///
    /// The output is accepted by [`crate::expr::parse_poly`].
    pub fn render(&self, alphabet: &Alphabet, order: Option<&OrderSpec>) -> String {
        self.render_with(|l| alphabet.name(l), order)
    }

    pub(crate) fn render_with<'a>(&self, name: impl Fn(Letter) -> &'a str + Copy, order: Option<&OrderSpec>) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Word, &Coeff)> = self.terms.iter().collect();
        match order {
            Some(o) => terms.sort_by(|(u, _), (v, _)| o.cmp_words(v, u)),
            None => terms.reverse(),
        }
        let mut out = String::new();
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { c.neg() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let word = render_word(w, name);
            if w.is_one() {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&word);
            } else {
                out.push_str(&format!("{magnitude}*{word}"));
            }
        }
        out
    }
}

/// The grading used for truncation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    Length,
    /// Per-letter weights, indexed by letter.
    Weights(Vec<u32>),
}

impl Grading {
    pub fn grade(&self, w: &Word) -> u64 {
        match self {
            Grading::Length => w.len() as u64,
            Grading::Weights(ws) => w.letters().iter().map(|&l| ws[l as usize] as u64).sum(),
        }
    }
}

/// A polynomial all of whose terms have grade below `bound`; the image of a
/// power series in the quotient by the corresponding power of the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPoly {
    poly: Poly,
    bound: u64,
    grading: Grading,
}

impl TruncatedPoly {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    /// Product, re-truncated. Panics if bounds or gradings differ.
    pub fn mul(&self, other: &TruncatedPoly) -> TruncatedPoly {
        assert_eq!(self.bound, other.bound);
        assert_eq!(self.grading, other.grading);
        let mut out = Poly::zero(self.poly.field);
        for (u, a) in &self.poly.terms {
            let gu = self.grading.grade(u);
            for (v, b) in &other.poly.terms {
                if gu + self.grading.grade(v) < self.bound {
                    out.add_term(u.concat(v), a.mul(b));
                }
            }
        }
        TruncatedPoly { poly: out, bound: self.bound, grading: self.grading.clone() }
    }

    pub fn add(&self, other: &TruncatedPoly) -> TruncatedPoly {
        assert_eq!(self.bound, other.bound);
        TruncatedPoly { poly: self.poly.add(&other.poly), bound: self.bound, grading: self.grading.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    fn main_alphabet() -> Alphabet {
        Alphabet::new([("x1", 1), ("x2", 1), ("y1", 3), ("y2", 3)]).unwrap()
    }

    fn p(a: &Alphabet, s: &str) -> Poly {
        parse_poly(s, a, CoefficientField::Rational).unwrap()
    }

    #[test]
    fn ring_examples() {
        let a = main_alphabet();
        assert_eq!(p(&a, "x1*x2 + y1^2").add(&p(&a, "-y1^2")), p(&a, "x1*x2"));
        assert_eq!(p(&a, "x1").mul(&p(&a, "x2*x1")), p(&a, "x1*x2*x1"));
        let r3 = p(&a, "x1*y2 - y1*x1");
        let lhs = r3.mul(&p(&a, "y2")).add(&p(&a, "y1").mul(&r3));
        assert_eq!(lhs, p(&a, "x1*y2^2 - y1^2*x1"));
    }

    #[test]
    fn leading_terms_of_r1() {
        let a = main_alphabet();
        let r1 = p(&a, "x1*x2 + y1^2 - y1");
        let deg = OrderSpec::deg_lex(vec![0, 1, 2, 3]).unwrap();
        let theta = OrderSpec::theta_lex(vec![2, 3, 0, 1], vec![1, 1, 3, 3]).unwrap();
        let x1x2 = a.word("x1*x2").unwrap();
        assert_eq!(r1.max_term(&deg).unwrap(), (x1x2.clone(), CoefficientField::Rational.one()));
        assert_eq!(r1.min_term(&theta).unwrap(), (x1x2, CoefficientField::Rational.one()));
        assert_eq!(Poly::zero(CoefficientField::Rational).max_term(&deg), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn min_term_of_the_three_letter_relation() {
        let a = Alphabet::new([("x1", 1), ("x2", 1), ("x3", 3)]).unwrap();
        let theta = OrderSpec::theta_lex(vec![0, 1, 2], vec![1, 1, 3]).unwrap();
        let r = p(&a, "x3^2 - x3 + x1*x2");
        assert_eq!(r.min_term(&theta).unwrap().0, a.word("x1*x2").unwrap());
    }

    #[test]
    fn monic_normalisation() {
        let a = main_alphabet();
        let deg = OrderSpec::deg_lex(vec![0, 1, 2, 3]).unwrap();
        let theta = OrderSpec::theta_lex(vec![2, 3, 0, 1], vec![1, 1, 3, 3]).unwrap();
        let f = p(&a, "2*x1*x2 + y1");
        assert_eq!(f.make_monic(&deg, LeadMode::Max).unwrap(), p(&a, "x1*x2 + 1/2*y1"));
        let r3 = p(&a, "x1*y2 - y1*x1");
        assert_eq!(r3.neg().make_monic(&theta, LeadMode::Min).unwrap(), r3);
        assert_eq!(r3.make_monic(&theta, LeadMode::Min).unwrap(), r3);
    }

    #[test]
    fn truncation_examples() {
        let a = main_alphabet();
        let f = p(&a, "x1 + x1*x2*x1");
        assert_eq!(f.truncate(3, &Grading::Length).poly(), &p(&a, "x1"));
        let r1 = p(&a, "x1*x2 + y1^2 - y1");
        assert_eq!(r1.truncate(3, &Grading::Weights(a.weights())).poly(), &p(&a, "x1*x2"));
        assert!(Poly::zero(CoefficientField::Rational).truncate(4, &Grading::Length).poly().is_zero());
    }

    #[test]
    fn rendering_round_trips() {
        let a = main_alphabet();
        let deg = OrderSpec::deg_lex(vec![0, 1, 2, 3]).unwrap();
        for s in ["x1*x2 + y1^2 - y1", "x1*y2 - y1*x1", "-1/2*x1^3 + 2*y2 - 7"] {
            let f = p(&a, s);
            let printed = f.render(&a, Some(&deg));
            assert_eq!(printed, s);
            assert_eq!(p(&a, &printed), f);
        }
        assert_eq!(Poly::zero(CoefficientField::Rational).render(&a, None), "0");
    }

    #[test]
    fn checked_ops_reject_mixed_fields() {
        let a = main_alphabet();
        let q = p(&a, "x1");
        let f = parse_poly("x1", &a, CoefficientField::prime(5).unwrap()).unwrap();
        assert!(matches!(q.checked_add(&f), Err(PolyError::FieldMismatch(..))));
        assert!(q.checked_mul(&q).is_ok());
    }
}
