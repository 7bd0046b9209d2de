//! Brute-force reference implementations used to cross-check the library.
//! Everything here works on plain `Vec<u8>` words and dense matrices.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use parafree_core::{Coeff, Poly};

pub type W = Vec<u8>;
pub type DensePoly = BTreeMap<W, BigRational>;

/// Weighted (or plain degree) lexicographic comparison, written from the
/// definition: total weight first, then the first differing letter decides,
/// with letters earlier in `precedence` larger; a proper prefix is smaller.
#[derive(Clone, Debug)]
pub struct OrderOracle {
    pub precedence: Vec<u8>,
    /// `None` means every letter has weight 1.
    pub weights: Option<Vec<u32>>,
}

impl OrderOracle {
    pub fn deg_lex(precedence: Vec<u8>) -> Self {
        OrderOracle { precedence, weights: None }
    }

    pub fn theta_lex(precedence: Vec<u8>, weights: Vec<u32>) -> Self {
        OrderOracle { precedence, weights: Some(weights) }
    }

    fn weight(&self, w: &[u8]) -> u64 {
        match &self.weights {
            None => w.len() as u64,
            Some(t) => w.iter().map(|&l| t[l as usize] as u64).sum(),
        }
    }

    fn position(&self, l: u8) -> usize {
        self.precedence.iter().position(|&p| p == l).unwrap()
    }

    pub fn cmp(&self, u: &[u8], v: &[u8]) -> Ordering {
        let by_weight = self.weight(u).cmp(&self.weight(v));
        if by_weight != Ordering::Equal {
            return by_weight;
        }
        for (a, b) in u.iter().zip(v) {
            if a != b {
                // earlier in the precedence list means larger
                return self.position(*b).cmp(&self.position(*a));
            }
        }
        u.len().cmp(&v.len())
    }

    pub fn max<'a>(&self, words: impl IntoIterator<Item = &'a W>) -> Option<&'a W> {
        words.into_iter().max_by(|a, b| self.cmp(a, b))
    }

    pub fn min<'a>(&self, words: impl IntoIterator<Item = &'a W>) -> Option<&'a W> {
        words.into_iter().min_by(|a, b| self.cmp(a, b))
    }
}

/// Every word over `letters` letters with length at most `max_len`.
pub fn all_words(letters: u8, max_len: usize) -> Vec<W> {
    let mut out = vec![vec![]];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for l in 0..letters {
                let mut w = out[i].clone();
                w.push(l);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

pub fn contains_factor(w: &[u8], f: &[u8]) -> bool {
    f.is_empty() || w.windows(f.len()).any(|x| x == f)
}

/// Number of words of each length `0..=max_len` avoiding every word in
/// `forbidden` as a factor.
pub fn avoiding_counts(forbidden: &[W], letters: u8, max_len: usize) -> Vec<usize> {
    let mut counts = vec![0; max_len + 1];
    for w in all_words(letters, max_len) {
        if !forbidden.iter().any(|f| contains_factor(&w, f)) {
            counts[w.len()] += 1;
        }
    }
    counts
}

pub fn to_dense(p: &Poly) -> DensePoly {
    p.terms()
        .map(|(w, c)| match c {
            Coeff::Rational(q) => (w.letters().to_vec(), q.clone()),
            Coeff::Modular { .. } => panic!("oracle expects rational coefficients"),
        })
        .collect()
}

pub fn dense_mul(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let mut out = DensePoly::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            let e = out.entry(w).or_insert_with(BigRational::zero);
            *e += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn dense_add(a: &DensePoly, b: &DensePoly) -> DensePoly {
    let mut out = a.clone();
    for (w, c) in b {
        let e = out.entry(w.clone()).or_insert_with(BigRational::zero);
        *e += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Rank of a list of sparse rows by plain Gaussian elimination over Q.
pub fn dense_rank(rows: Vec<HashMap<usize, BigRational>>, columns: usize) -> usize {
    dense_echelon(rows, columns).len()
}

/// Nonzero rows of the reduced row echelon form.
pub fn dense_echelon(rows: Vec<HashMap<usize, BigRational>>, columns: usize) -> Vec<HashMap<usize, BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .into_iter()
        .map(|r| {
            let mut row = vec![BigRational::zero(); columns];
            for (j, c) in r {
                row[j] = c;
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..columns {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(rank, p);
        let inv = BigRational::one() / m[rank][col].clone();
        for x in &mut m[rank][col..] {
            *x = &*x * &inv;
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m.into_iter().map(|row| row.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()).collect()
}

/// `dim k<X>/((R) + I^n)` and `dim (I^k + J)/(I^(k+1) + J)` for `k < n`,
/// computed in the dense space spanned by words of length `< n`.
pub fn quotient_dims(relations: &[DensePoly], letters: u8, n: usize) -> (usize, Vec<usize>) {
    let words = all_words(letters, n - 1);
    let index: HashMap<&W, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut ideal = Vec::new();
    for r in relations {
        for u in &words {
            for v in &words {
                if u.len() + v.len() >= n {
                    continue;
                }
                let mut row = HashMap::new();
                for (w, c) in r {
                    let full: W = u.iter().chain(w).chain(v).copied().collect();
                    if full.len() < n {
                        *row.entry(index[&full]).or_insert_with(BigRational::zero) += c;
                    }
                }
                row.retain(|_, c: &mut BigRational| !c.is_zero());
                if !row.is_empty() {
                    ideal.push(row);
                }
            }
        }
    }
    let ideal = dense_echelon(ideal, words.len());
    let with_power = |k: usize| {
        let mut rows = ideal.clone();
        for (i, w) in words.iter().enumerate() {
            if w.len() >= k {
                rows.push(HashMap::from([(i, BigRational::one())]));
            }
        }
        dense_rank(rows, words.len())
    };
    let ranks: Vec<usize> = (0..=n).map(with_power).collect();
    let dim = words.len() - ranks[n];
    let gr = (0..n).map(|k| ranks[k] - ranks[k + 1]).collect();
    (dim, gr)
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub mod strategies {
    use parafree_core::{CoefficientField, Poly, Word};
    use proptest::prelude::*;

    pub fn word(letters: u8, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0..letters, 0..=max_len).prop_map(|ls| Word::from_letters(&ls))
    }

    /// Random polynomials with small integer coefficients; may be zero.
    pub fn poly(letters: u8, max_len: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
        prop::collection::vec((word(letters, max_len), -3i64..=3), 0..=max_terms).prop_map(|terms| {
            let f = CoefficientField::Rational;
            Poly::from_terms(f, terms.into_iter().map(|(w, c)| (w, f.from_i64(c))))
        })
    }

    pub fn nonzero_poly(letters: u8, max_len: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
        poly(letters, max_len, max_terms).prop_filter("nonzero", |p| !p.is_zero())
    }
}
