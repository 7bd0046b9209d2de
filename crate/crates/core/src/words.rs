//! Alphabets, words of the free monoid, and total orders on words.
//!
//! Three order families are constructible: deg-lex, pure lex (comparison
//! only, never admissible) and theta-lex, which compares a positive letter
//! weighting first and breaks ties lexicographically. Comparison goes through
//! [`SortKey`], an order-specific key whose derived `Ord` *is* the word order,
//! so rewriting engines can keep terms in ordered maps.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, OrderError};

/// Index of a letter inside its [`Alphabet`].
pub type Letter = u8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LetterInfo {
    pub name: String,
    pub weight: u32,
}

/// A finite, ordered set of named letters with positive weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<LetterInfo>,
    /// Letter indices, largest first.
    precedence: Vec<Letter>,
}

impl Alphabet {
    /// Letters in declaration order; the declaration order is also the default
    /// precedence (first letter largest).
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = (S, u32)>) -> Result<Self, Error> {
        let letters: Vec<LetterInfo> =
            letters.into_iter().map(|(name, weight)| LetterInfo { name: name.into(), weight }).collect();
        if letters.len() > Letter::MAX as usize {
            return Err(Error::Precondition(format!("at most {} letters are supported", Letter::MAX)));
        }
        for (i, l) in letters.iter().enumerate() {
            if !is_identifier(&l.name) {
                return Err(Error::Precondition(format!("`{}` is not a valid letter name", l.name)));
            }
            if l.weight == 0 {
                return Err(OrderError::ZeroWeight { letter: l.name.clone() }.into());
            }
            if letters[..i].iter().any(|m| m.name == l.name) {
                return Err(Error::Precondition(format!("duplicate letter `{}`", l.name)));
            }
        }
        let precedence = (0..letters.len() as Letter).collect();
        Ok(Alphabet { letters, precedence })
    }

    /// Alphabet with unit weights.
    pub fn unweighted<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, Error> {
        Alphabet::new(names.into_iter().map(|n| (n, 1)))
    }

    pub fn with_precedence(mut self, precedence: Vec<Letter>) -> Result<Self, Error> {
        check_permutation(&precedence, self.len())?;
        self.precedence = precedence;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[LetterInfo] {
        &self.letters
    }

    pub fn precedence(&self) -> &[Letter] {
        &self.precedence
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.letters[letter as usize].name
    }

    pub fn weight(&self, letter: Letter) -> u32 {
        self.letters[letter as usize].weight
    }

    pub fn weights(&self) -> Vec<u32> {
        self.letters.iter().map(|l| l.weight).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.letters.iter().position(|l| l.name == name).map(|i| i as Letter)
    }

    /// Parses a `*`-separated product of letter names (or `1`).
    pub fn word(&self, text: &str) -> Result<Word, Error> {
        let text = text.trim();
        if text == "1" {
            return Ok(Word::one());
        }
        let mut letters = SmallVec::new();
        for part in text.split('*') {
            let part = part.trim();
            let (name, power) = match part.split_once('^') {
                Some((n, p)) => (
                    n.trim(),
                    p.trim().parse::<usize>().map_err(|_| Error::Precondition(format!("bad exponent in `{part}`")))?,
                ),
                None => (part, 1),
            };
            let l = self.index_of(name).ok_or_else(|| Error::Precondition(format!("unknown letter `{name}`")))?;
            letters.extend(std::iter::repeat_n(l, power));
        }
        Ok(Word(letters))
    }

    /// Sum of letter weights.
    pub fn word_weight(&self, w: &Word) -> u64 {
        w.letters().iter().map(|&l| self.weight(l) as u64).sum()
    }

    pub fn render(&self, w: &Word) -> String {
        render_word(w, |l| self.name(l))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_permutation(precedence: &[Letter], n: usize) -> Result<(), OrderError> {
    let mut seen = vec![false; n];
    if precedence.len() != n {
        return Err(OrderError::NotPermutation(n));
    }
    for &l in precedence {
        let slot = seen.get_mut(l as usize).ok_or(OrderError::NotPermutation(n))?;
        if *slot {
            return Err(OrderError::NotPermutation(n));
        }
        *slot = true;
    }
    Ok(())
}

/// Renders a word as `a*b^2*c`, or `1` for the empty word.
pub(crate) fn render_word<'a>(w: &Word, name: impl Fn(Letter) -> &'a str) -> String {
    if w.is_one() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(name(letters[i]).to_string());
        } else {
            parts.push(format!("{}^{}", name(letters[i]), j - i));
        }
        i = j;
    }
    parts.join("*")
}

/// An element of the free monoid: a finite sequence of letter indices.
///
/// The derived `Ord` (lexicographic on indices, prefixes first) is only a
/// storage order; word orders used by the algorithms live in [`OrderSpec`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(SmallVec<[Letter; 16]>);

impl Word {
    pub fn one() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(l: Letter) -> Self {
        Word(smallvec::smallvec![l])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `a * self * b`.
    pub fn sandwich(&self, a: &Word, b: &Word) -> Word {
        let mut v = SmallVec::with_capacity(a.len() + self.len() + b.len());
        v.extend_from_slice(&a.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&b.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word::from_letters(&self.0[start..end])
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.subword(0, len)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.subword(start, self.len())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn contains_factor(&self, pattern: &Word) -> bool {
        pattern.is_one() || self.0.windows(pattern.len()).any(|w| w == pattern.letters())
    }

    pub fn max_letter(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("#{l}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

/// All start indices `i` with `w = u * pattern * v`, `|u| = i`.
///
/// The pattern must be nonempty; the empty pattern yields no positions.
pub fn find_factor_occurrences(w: &Word, pattern: &Word) -> Vec<usize> {
    if pattern.is_one() || pattern.len() > w.len() {
        return Vec::new();
    }
    w.letters()
        .windows(pattern.len())
        .enumerate()
        .filter(|(_, window)| *window == pattern.letters())
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    DegLex,
    Lex,
    ThetaLex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::DegLex => "deg-lex",
            OrderKind::Lex => "lex",
            OrderKind::ThetaLex => "theta-lex",
        }
    }
}

/// Order-specific comparison key: grade first, then the precedence ranks of
/// the letters compared lexicographically (a proper prefix is smaller).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SortKey {
    pub grade: u64,
    pub ranks: SmallVec<[Letter; 16]>,
}

/// A total order on the words over a fixed number of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderSpec {
    kind: OrderKind,
    /// Largest first.
    precedence: Vec<Letter>,
    /// Per-letter grade contribution (all 1 for deg-lex, all 0 for lex).
    weights: Vec<u32>,
    rank: Vec<Letter>,
    unrank: Vec<Letter>,
}

impl OrderSpec {
    fn build(kind: OrderKind, precedence: Vec<Letter>, weights: Vec<u32>) -> Result<Self, OrderError> {
        let n = precedence.len();
        check_permutation(&precedence, n)?;
        let mut rank = vec![0; n];
        let mut unrank = vec![0; n];
        for (pos, &l) in precedence.iter().enumerate() {
            let r = (n - 1 - pos) as Letter;
            rank[l as usize] = r;
            unrank[r as usize] = l;
        }
        Ok(OrderSpec { kind, precedence, weights, rank, unrank })
    }

    /// Degree-lexicographic order; `precedence` lists letters largest first.
    pub fn deg_lex(precedence: Vec<Letter>) -> Result<Self, OrderError> {
        let n = precedence.len();
        Self::build(OrderKind::DegLex, precedence, vec![1; n])
    }

    /// Pure lexicographic order. Not admissible; comparison and testing only.
    pub fn lex(precedence: Vec<Letter>) -> Result<Self, OrderError> {
        let n = precedence.len();
        Self::build(OrderKind::Lex, precedence, vec![0; n])
    }

    /// Theta-lex for the letter weighting `weights` (indexed by letter).
    pub fn theta_lex(precedence: Vec<Letter>, weights: Vec<u32>) -> Result<Self, OrderError> {
        if weights.len() != precedence.len() {
            return Err(OrderError::WeightCount { expected: precedence.len(), got: weights.len() });
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(OrderError::ZeroWeight { letter: format!("#{i}") });
        }
        Self::build(OrderKind::ThetaLex, precedence, weights)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn precedence(&self) -> &[Letter] {
        &self.precedence
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn num_letters(&self) -> usize {
        self.precedence.len()
    }

    /// Deg-lex and theta-lex are admissible; lex is not.
    pub fn is_admissible(&self) -> bool {
        self.kind != OrderKind::Lex
    }

    /// Every bounded-above set is finite. Holds for deg-lex and theta-lex
    /// because all letter weights are positive.
    pub fn is_n_order(&self) -> bool {
        self.kind != OrderKind::Lex
    }

    /// The grading used by the order: length (deg-lex), theta weight
    /// (theta-lex), or constantly 0 (lex).
    pub fn grade(&self, w: &Word) -> u64 {
        w.letters().iter().map(|&l| self.weights[l as usize] as u64).sum()
    }

    pub fn key(&self, w: &Word) -> SortKey {
        SortKey { grade: self.grade(w), ranks: w.letters().iter().map(|&l| self.rank[l as usize]).collect() }
    }

    pub fn word_of(&self, key: &SortKey) -> Word {
        Word(key.ranks.iter().map(|&r| self.unrank[r as usize]).collect())
    }

    pub fn check_word(&self, w: &Word) -> Result<(), OrderError> {
        match w.max_letter() {
            Some(l) if l as usize >= self.num_letters() => {
                Err(OrderError::AlphabetMismatch { index: l as usize, letters: self.num_letters() })
            }
            _ => Ok(()),
        }
    }

    pub fn compare(&self, u: &Word, v: &Word) -> Result<Ordering, OrderError> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(self.cmp_words(u, v))
    }

    /// Comparison without the alphabet check.
    pub fn cmp_words(&self, u: &Word, v: &Word) -> Ordering {
        self.grade(u).cmp(&self.grade(v)).then_with(|| {
            let ru = u.letters().iter().map(|&l| self.rank[l as usize]);
            let rv = v.letters().iter().map(|&l| self.rank[l as usize]);
            ru.cmp(rv)
        })
    }

    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let prec: Vec<&str> = self.precedence.iter().map(|&l| alphabet.name(l)).collect();
        match self.kind {
            OrderKind::ThetaLex => {
                let weights: Vec<String> = (0..self.num_letters())
                    .map(|i| format!("{}:{}", alphabet.name(i as Letter), self.weights[i]))
                    .collect();
                format!("theta-lex({}; {})", prec.join(">"), weights.join(","))
            }
            kind => format!("{}({})", kind.name(), prec.join(">")),
        }
    }
}

/// One failed admissibility test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AdmissibilityViolation {
    /// `1 < m` fails.
    IdentityNotMinimal { word: String },
    /// `u < v` but `a u b >= a v b`.
    Translation { u: String, v: String, left: String, right: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub order: String,
    pub max_length: usize,
    pub pairs_checked: u64,
    pub violation_count: u64,
    /// The first few violations, in enumeration order.
    pub violations: Vec<AdmissibilityViolation>,
    pub passed: bool,
}

const MAX_REPORTED_VIOLATIONS: usize = 16;

/// Exhaustively tests `1 < m` and two-sided translation invariance on all
/// words of length at most `max_length`.
pub fn check_admissible(order: &OrderSpec, alphabet: &Alphabet, max_length: usize) -> AdmissibilityReport {
    let words = words_up_to_length(order.num_letters(), max_length);
    let mut violations = Vec::new();
    let mut count = 0u64;
    let mut pairs = 0u64;
    for w in words.iter().filter(|w| !w.is_one()) {
        if order.cmp_words(&Word::one(), w) != Ordering::Less {
            count += 1;
            if violations.len() < MAX_REPORTED_VIOLATIONS {
                violations.push(AdmissibilityViolation::IdentityNotMinimal { word: alphabet.render(w) });
            }
        }
    }
    for u in &words {
        for v in &words {
            if order.cmp_words(u, v) != Ordering::Less {
                continue;
            }
            let longest = u.len().max(v.len());
            for a in words.iter().filter(|a| a.len() + longest <= max_length) {
                for b in words.iter().filter(|b| a.len() + b.len() + longest <= max_length) {
                    pairs += 1;
                    if order.cmp_words(&u.sandwich(a, b), &v.sandwich(a, b)) != Ordering::Less {
                        count += 1;
                        if violations.len() < MAX_REPORTED_VIOLATIONS {
                            violations.push(AdmissibilityViolation::Translation {
                                u: alphabet.render(u),
                                v: alphabet.render(v),
                                left: alphabet.render(a),
                                right: alphabet.render(b),
                            });
                        }
                    }
                }
            }
        }
    }
    AdmissibilityReport {
        order: order.describe(alphabet),
        max_length,
        pairs_checked: pairs,
        violation_count: count,
        violations,
        passed: count == 0,
    }
}

fn words_up_to_length(letters: usize, max_length: usize) -> Vec<Word> {
    let mut out = vec![Word::one()];
    let mut layer = vec![Word::one()];
    for _ in 0..max_length {
        let mut next = Vec::with_capacity(layer.len() * letters);
        for w in &layer {
            for l in 0..letters {
                let mut x = w.clone();
                x.push(l as Letter);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    ByLength,
    ByWeight,
}

/// Upper limit on the number of words any enumeration may produce.
pub const ENUMERATION_CAP: usize = 4_000_000;

/// All words with length (resp. alphabet weight) at most `bound`, sorted by
/// (weight, length, letter indices).
pub fn enumerate_words(alphabet: &Alphabet, bound: u64, mode: BoundMode) -> Result<Vec<Word>, Error> {
    enumerate_filtered(alphabet, bound, mode, |_| true)
}

/// Depth-first enumeration where `keep` must accept every prefix of an
/// emitted word (suffix-closed filters such as factor avoidance qualify).
pub(crate) fn enumerate_filtered(
    alphabet: &Alphabet,
    bound: u64,
    mode: BoundMode,
    keep: impl Fn(&Word) -> bool,
) -> Result<Vec<Word>, Error> {
    let cost = |l: Letter| match mode {
        BoundMode::ByLength => 1u64,
        BoundMode::ByWeight => alphabet.weight(l) as u64,
    };
    let mut out = Vec::new();
    let mut stack = vec![(Word::one(), 0u64)];
    while let Some((w, c)) = stack.pop() {
        out.push(w.clone());
        if out.len() > ENUMERATION_CAP {
            return Err(Error::CapExceeded { what: "word enumeration".into(), cap: ENUMERATION_CAP });
        }
        for l in 0..alphabet.len() as Letter {
            let nc = c + cost(l);
            if nc <= bound {
                let mut x = w.clone();
                x.push(l);
                if keep(&x) {
                    stack.push((x, nc));
                }
            }
        }
    }
    out.sort_by(|u, v| {
        alphabet.word_weight(u).cmp(&alphabet.word_weight(v)).then(u.len().cmp(&v.len())).then_with(|| u.cmp(v))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::unweighted(["x1", "x2"]).unwrap()
    }

    fn main_alphabet() -> Alphabet {
        Alphabet::new([("x1", 1), ("x2", 1), ("y1", 3), ("y2", 3)]).unwrap()
    }

    #[test]
    fn deg_lex_precedence_at_equal_length() {
        let a = xy();
        let o = OrderSpec::deg_lex(vec![0, 1]).unwrap();
        let (x1, x2) = (a.word("x1").unwrap(), a.word("x2").unwrap());
        assert_eq!(o.compare(&x2, &x1).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&x1, &a.word("x2*x2").unwrap()).unwrap(), Ordering::Less);
    }

    #[test]
    fn theta_lex_weights_dominate() {
        let a = main_alphabet();
        let o = OrderSpec::theta_lex(vec![2, 3, 0, 1], vec![1, 1, 3, 3]).unwrap();
        let x1x2 = a.word("x1*x2").unwrap();
        let y1 = a.word("y1").unwrap();
        assert_eq!(o.compare(&x1x2, &y1).unwrap(), Ordering::Less);
        // equal weight 4: x1*y2 < y1*x1 because y1 > x1
        assert_eq!(o.compare(&a.word("x1*y2").unwrap(), &a.word("y1*x1").unwrap()).unwrap(), Ordering::Less);
    }

    #[test]
    fn identity_is_least() {
        let a = main_alphabet();
        let orders = [
            OrderSpec::deg_lex(vec![0, 1, 2, 3]).unwrap(),
            OrderSpec::lex(vec![0, 1, 2, 3]).unwrap(),
            OrderSpec::theta_lex(vec![2, 3, 0, 1], vec![1, 1, 3, 3]).unwrap(),
        ];
        for o in &orders {
            for w in enumerate_words(&a, 3, BoundMode::ByLength).unwrap().iter().skip(1) {
                assert_eq!(o.compare(&Word::one(), w).unwrap(), Ordering::Less);
            }
        }
    }

    #[test]
    fn compare_rejects_foreign_letters() {
        let o = OrderSpec::deg_lex(vec![0, 1]).unwrap();
        let bad = Word::from_letters(&[0, 5]);
        assert!(matches!(o.compare(&bad, &Word::one()), Err(OrderError::AlphabetMismatch { index: 5, letters: 2 })));
    }

    #[test]
    fn admissibility_checks() {
        let a = xy();
        let deg = OrderSpec::deg_lex(vec![0, 1]).unwrap();
        assert!(check_admissible(&deg, &a, 4).passed);
        let flat = OrderSpec::theta_lex(vec![0, 1], vec![1, 1]).unwrap();
        assert!(check_admissible(&flat, &a, 4).passed);

        // lex with x1 < x2: 1 < x1 but x2 > x1*x2
        let lex = OrderSpec::lex(vec![1, 0]).unwrap();
        let report = check_admissible(&lex, &a, 3);
        assert!(!report.passed);
        assert!(report.violations.contains(&AdmissibilityViolation::Translation {
            u: "1".into(),
            v: "x1".into(),
            left: "1".into(),
            right: "x2".into(),
        }));
    }

    #[test]
    fn enumeration_examples() {
        let a = xy();
        let words = enumerate_words(&a, 2, BoundMode::ByLength).unwrap();
        let rendered: Vec<String> = words.iter().map(|w| a.render(w)).collect();
        assert_eq!(rendered, ["1", "x1", "x2", "x1^2", "x1*x2", "x2*x1", "x2^2"]);
        assert_eq!(enumerate_words(&a, 0, BoundMode::ByLength).unwrap(), vec![Word::one()]);
        // weight <= 3 with x-weights 1 and y-weights 3: 1 + 2 + 4 + (8 + 2)
        let m = main_alphabet();
        assert_eq!(enumerate_words(&m, 3, BoundMode::ByWeight).unwrap().len(), 17);
    }

    #[test]
    fn factor_occurrences() {
        let a = main_alphabet();
        let w = a.word("x1*x2*x1").unwrap();
        assert_eq!(find_factor_occurrences(&w, &a.word("x1*x2").unwrap()), vec![0]);
        assert_eq!(find_factor_occurrences(&w, &a.word("x2*x1").unwrap()), vec![1]);
        assert!(find_factor_occurrences(&a.word("y1*y2").unwrap(), &a.word("x1*x2").unwrap()).is_empty());
        assert_eq!(find_factor_occurrences(&a.word("x1^3").unwrap(), &a.word("x1^2").unwrap()), vec![0, 1]);
    }

    #[test]
    fn key_round_trip() {
        let a = main_alphabet();
        let o = OrderSpec::theta_lex(vec![2, 3, 0, 1], vec![1, 1, 3, 3]).unwrap();
        for w in enumerate_words(&a, 5, BoundMode::ByWeight).unwrap() {
            assert_eq!(o.word_of(&o.key(&w)), w);
        }
    }

    #[test]
    fn bad_orders_rejected() {
        assert!(OrderSpec::deg_lex(vec![0, 0]).is_err());
        assert!(matches!(OrderSpec::theta_lex(vec![0, 1], vec![1, 0]), Err(OrderError::ZeroWeight { .. })));
        assert!(Alphabet::unweighted(["x", "x"]).is_err());
        assert!(Alphabet::unweighted(["1x"]).is_err());
    }
}
