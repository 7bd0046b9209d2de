//! Exact sparse row echelon forms over a coefficient field.

use std::collections::BTreeMap;

use crate::field::{Coeff, CoefficientField};

/// A sparse vector indexed by an ordered key; zero entries are not stored.
pub type SparseVec<K> = BTreeMap<K, Coeff>;

/// Rows in reduced echelon form: each stored row is monic in its largest key
/// (the pivot), and no row has a nonzero entry at another row's pivot.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    field: CoefficientField,
    rows: BTreeMap<K, SparseVec<K>>,
}

pub(crate) fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Coeff, row: &SparseVec<K>, skip: Option<&K>) {
    for (j, a) in row {
        if Some(j) == skip {
            continue;
        }
        let delta = c.mul(a);
        match v.entry(j.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !delta.is_zero() {
                    e.insert(delta);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&delta);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(field: CoefficientField) -> Self {
        Echelon { field, rows: BTreeMap::new() }
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    pub fn row(&self, pivot: &K) -> Option<&SparseVec<K>> {
        self.rows.get(pivot)
    }

    /// Eliminates every pivot key from `v`. The result is the unique
    /// representative of `v` modulo the row space supported off the pivots.
    /// Since rows are fully reduced, each pivot is visited at most once.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        let mut upper: Option<K> = None;
        loop {
            let found = match &upper {
                None => v.keys().rev().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(u) => v.range(..u.clone()).rev().find(|(k, _)| self.rows.contains_key(*k)).map(|(k, _)| k.clone()),
            };
            let Some(k) = found else { break };
            let c = v.remove(&k).expect("present").neg();
            axpy(&mut v, &c, &self.rows[&k], Some(&k));
            upper = Some(k);
        }
        v
    }

    /// Adds `v` to the row space. Returns the new pivot when `v` was
    /// independent of the existing rows.
    pub fn insert(&mut self, v: SparseVec<K>) -> Option<K> {
        let v = self.reduce(v);
        self.insert_reduced(v)
    }

    /// Inserts a vector that has already been reduced against this echelon.
    pub fn insert_reduced(&mut self, mut v: SparseVec<K>) -> Option<K> {
        let (pivot, lead) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))?;
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero lead");
            for c in v.values_mut() {
                *c = c.mul(&inv);
            }
        }
        let touched: Vec<K> = self
            .rows
            .range(pivot.clone()..)
            .filter(|(_, row)| row.contains_key(&pivot))
            .map(|(k, _)| k.clone())
            .collect();
        for k in touched {
            let row = self.rows.get_mut(&k).expect("present");
            let c = row.remove(&pivot).expect("present").neg();
            axpy(row, &c, &v, Some(&pivot));
        }
        self.rows.insert(pivot.clone(), v);
        Some(pivot)
    }

    pub fn into_rows(self) -> BTreeMap<K, SparseVec<K>> {
        self.rows
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(field: CoefficientField, vectors: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new(field);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(f: CoefficientField, entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().filter(|(_, c)| *c != 0).map(|&(k, c)| (k, f.from_i64(c))).collect()
    }

    #[test]
    fn rank_of_dependent_family() {
        let q = CoefficientField::Rational;
        let vs = vec![
            vec_of(q, &[(0, 1), (1, 2)]),
            vec_of(q, &[(0, 2), (1, 4)]),
            vec_of(q, &[(1, 1), (2, 1)]),
            vec_of(q, &[(0, 1), (1, 3), (2, 1)]),
        ];
        assert_eq!(rank(q, vs), 2);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let vs = |f| vec![vec_of(f, &[(0, 1), (1, 1)]), vec_of(f, &[(0, 1), (1, -1)])];
        assert_eq!(rank(CoefficientField::Rational, vs(CoefficientField::Rational)), 2);
        let f2 = CoefficientField::prime(2).unwrap();
        assert_eq!(rank(f2, vs(f2)), 1);
    }

    #[test]
    fn reduction_is_canonical() {
        let q = CoefficientField::Rational;
        let mut e = Echelon::new(q);
        e.insert(vec_of(q, &[(0, 1), (2, 1)]));
        e.insert(vec_of(q, &[(1, 1), (2, 3)]));
        // 2 and 1 are pivots; everything reduces onto key 0
        let a = e.reduce(vec_of(q, &[(2, 1)]));
        let b = e.reduce(vec_of(q, &[(0, -1)]));
        assert_eq!(a, b);
        assert!(e.reduce(vec_of(q, &[(1, 1), (2, 3)])).is_empty());
        assert_eq!(e.row(&2), Some(&vec_of(q, &[(0, 1), (2, 1)])));
        assert_eq!(e.row(&1), Some(&vec_of(q, &[(0, -3), (1, 1)])));
    }

    #[test]
    fn insertion_keeps_rows_fully_reduced() {
        let q = CoefficientField::Rational;
        let mut e = Echelon::new(q);
        e.insert(vec_of(q, &[(0, 1), (1, 1), (3, 1)]));
        e.insert(vec_of(q, &[(1, 2), (0, 2), (2, 1)]));
        e.insert(vec_of(q, &[(1, 1)]));
        let pivots: Vec<u32> = e.pivots().copied().collect();
        for row in e.clone().into_rows().values() {
            let hits = row.keys().filter(|k| pivots.contains(k)).count();
            assert_eq!(hits, 1);
        }
        assert_eq!(e.row(&3), Some(&vec_of(q, &[(0, 1), (3, 1)])));
    }
}
