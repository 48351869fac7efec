//! Incremental row echelon basis for sparse vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::GaussianRational;

type Q = GaussianRational;

/// Sparse vector keyed by coordinate.
pub type SparseVec = BTreeMap<usize, Q>;

/// Echelon basis of a growing subspace. Rows are stored with a unit
/// leading coefficient, keyed by the leading coordinate.
#[derive(Clone, Debug, Default)]
pub struct SpanBasis {
    rows: BTreeMap<usize, SparseVec>,
}

impl SpanBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        v.retain(|_, x| !x.is_zero());
        let mut floor = 0;
        loop {
            let Some((&lead, c)) = v.range(floor..).find(|(k, _)| self.rows.contains_key(k)) else {
                return v;
            };
            let c = c.clone();
            for (k, x) in &self.rows[&lead] {
                let e = v.entry(*k).or_insert_with(Q::zero);
                *e -= &(&c * x);
                if e.is_zero() {
                    v.remove(k);
                }
            }
            floor = lead + 1;
        }
    }

    /// Adds `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&lead, c)) = r.iter().next() else {
            return false;
        };
        let inv = c.inv().expect("nonzero leading entry");
        for x in r.values_mut() {
            *x = &*x * &inv;
        }
        debug_assert!(r[&lead].is_one());
        // Keep existing rows free of the new pivot so reduction stays one pass.
        for row in self.rows.values_mut() {
            if let Some(f) = row.get(&lead).cloned() {
                for (k, x) in &r {
                    let e = row.entry(*k).or_insert_with(Q::zero);
                    *e -= &(&f * x);
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        self.rows.insert(lead, r);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}
