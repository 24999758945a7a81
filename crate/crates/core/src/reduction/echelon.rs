//! Sparse row echelon forms over an exact field, generic in the column order.

use std::collections::BTreeMap;

use crate::polynomial::{Field, Scalar};

pub(crate) type SparseVec<K> = BTreeMap<K, Scalar>;

/// `v += c·row`, dropping cancelled entries.
pub(crate) fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Scalar, row: &SparseVec<K>) {
    for (k, x) in row {
        let add = c * x;
        match v.get_mut(k) {
            Some(old) => {
                let sum = &*old + &add;
                if sum.is_zero() {
                    v.remove(k);
                } else {
                    *old = sum;
                }
            }
            None => {
                if !add.is_zero() {
                    v.insert(k.clone(), add);
                }
            }
        }
    }
}

/// Rows with pairwise distinct leading (greatest) columns, each monic.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<K: Ord + Clone> {
    field: Field,
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rows(&self) -> &BTreeMap<K, SparseVec<K>> {
        &self.rows
    }

    pub fn into_rows(self) -> BTreeMap<K, SparseVec<K>> {
        self.rows
    }

    /// Eliminates pivots from the top until the leading column is free.
    pub fn reduce_lead(&self, v: &mut SparseVec<K>) {
        while let Some((k, c)) = v.iter().next_back() {
            let Some(row) = self.rows.get(k) else { break };
            let c = -c.clone();
            axpy(v, &c, row);
        }
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce_full(&self, v: &mut SparseVec<K>) {
        let mut bound: Option<K> = None;
        loop {
            let is_pivot = |(k, _): &(&K, &Scalar)| self.rows.contains_key(*k);
            let found = match &bound {
                None => v.iter().rev().find(is_pivot),
                Some(b) => v.range(..b.clone()).rev().find(is_pivot),
            };
            let next = found.map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = next else { break };
            axpy(v, &-c, &self.rows[&k]);
            bound = Some(k);
        }
    }

    fn normalize(&self, v: &mut SparseVec<K>) {
        let lead = v.values().next_back().expect("non-zero row").clone();
        if !lead.is_one() {
            let inv = lead.inverse().expect("non-zero lead");
            for x in v.values_mut() {
                *x = &*x * &inv;
            }
        }
        debug_assert_eq!(v.values().next_back().map(|c| c.field()), Some(self.field));
    }

    /// Lead-reduces `v` and stores it if it is non-zero. Returns its pivot.
    pub fn insert(&mut self, mut v: SparseVec<K>) -> Option<K> {
        self.reduce_lead(&mut v);
        self.push(v)
    }

    /// Fully reduces `v` and stores it if it is non-zero. Returns its pivot.
    pub fn insert_reduced(&mut self, mut v: SparseVec<K>) -> Option<K> {
        self.reduce_full(&mut v);
        self.push(v)
    }

    fn push(&mut self, mut v: SparseVec<K>) -> Option<K> {
        let lead = v.keys().next_back()?.clone();
        self.normalize(&mut v);
        self.rows.insert(lead.clone(), v);
        Some(lead)
    }

    /// Brings the rows into reduced echelon form: no row contains another
    /// row's pivot below its own lead.
    pub fn interreduce(&mut self) {
        let leads: Vec<K> = self.rows.keys().cloned().collect();
        for lead in leads {
            let mut row = self.rows.remove(&lead).expect("row present");
            // Only rows with smaller leads can occur in `row`, and those are
            // already reduced.
            self.reduce_full(&mut row);
            self.rows.insert(lead, row);
        }
    }

    /// Keeps only rows whose leading column satisfies `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&K) -> bool) {
        self.rows.retain(|k, _| keep(k));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec(field: Field, entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries
            .iter()
            .map(|&(k, c)| (k, field.from_i64(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    #[test]
    fn reduced_echelon() {
        let q = Field::Rational;
        let mut e = Echelon::new(q);
        assert_eq!(e.insert(vec(q, &[(3, 2), (1, 2)])), Some(3));
        assert_eq!(e.insert(vec(q, &[(3, 1), (2, 1)])), Some(2));
        assert_eq!(e.insert(vec(q, &[(2, 1), (1, -1)])), None);
        e.interreduce();
        let rows = e.rows();
        assert_eq!(rows[&3], vec(q, &[(3, 1), (1, 1)]));
        assert_eq!(rows[&2], vec(q, &[(2, 1), (1, -1)]));
        let mut v = vec(q, &[(3, 1), (2, 1), (0, 5)]);
        e.reduce_full(&mut v);
        assert_eq!(v, vec(q, &[(0, 5)]));
    }

    #[test]
    fn insert_reduced_keeps_rows_free_of_other_pivots() {
        let f = Field::Prime(5);
        let mut e = Echelon::new(f);
        e.insert_reduced(vec(f, &[(1, 1)]));
        e.insert_reduced(vec(f, &[(2, 3), (1, 1)]));
        assert_eq!(e.rows()[&2], vec(f, &[(2, 1)]));
    }
}
