//! Incremental sparse row echelon forms.
//!
//! Sparse vectors are sorted `(index, value)` lists without zero entries. A row's
//! pivot is its smallest index; pivot coefficients are normalized to one.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::Field;

pub type SparseVec<F> = Vec<(usize, F)>;

/// A combination being tracked alongside a reduction, with the stored rows' combinations.
type Combo<'a, F> = (&'a mut BTreeMap<usize, F>, &'a [SparseVec<F>]);

fn sub_scaled<F: Field>(work: &mut BTreeMap<usize, F>, c: &F, row: &[(usize, F)]) {
    for (j, a) in row {
        match work.entry(*j) {
            Entry::Occupied(mut e) => {
                e.get_mut().sub_mul_assign(c, a);
                if e.get().is_zero_value() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.times(a).negated());
            }
        }
    }
}

/// Rows in echelon form with normalized pivots, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    rows: Vec<SparseVec<F>>,
    pivots: BTreeMap<usize, usize>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new() }
    }

    /// Wraps rows that are already in reduced row echelon form.
    pub fn from_rref(rows: Vec<SparseVec<F>>) -> Self {
        let pivots = rows.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        Echelon { rows, pivots }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[(usize, F)]) -> SparseVec<F> {
        let mut work: BTreeMap<usize, F> = v.iter().cloned().collect();
        self.reduce_in_place(&mut work, None);
        work.into_iter().collect()
    }

    fn reduce_in_place(&self, work: &mut BTreeMap<usize, F>, mut combo: Option<Combo<'_, F>>) {
        let mut cursor = 0usize;
        while let Some((&k, _)) = work.range(cursor..).next() {
            cursor = k + 1;
            let Some(&ri) = self.pivots.get(&k) else { continue };
            let c = work.remove(&k).unwrap();
            sub_scaled(work, &c, &self.rows[ri][1..]);
            if let Some((ref mut cw, combos)) = combo {
                sub_scaled(cw, &c, &combos[ri]);
            }
        }
    }

    /// Adds `v` to the row space. Returns `false` when `v` was already in it.
    pub fn insert(&mut self, v: &[(usize, F)]) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        self.push_normalized(r);
        true
    }

    fn push_normalized(&mut self, mut r: SparseVec<F>) {
        let inv = r[0].1.inverse();
        for e in r.iter_mut() {
            e.1 = e.1.times(&inv);
        }
        self.pivots.insert(r[0].0, self.rows.len());
        self.rows.push(r);
    }

    /// Fully reduced rows sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec<F>> {
        let mut order: Vec<usize> = self.pivots.values().copied().collect();
        order.reverse();
        let mut done = Echelon::new();
        let mut out = Vec::with_capacity(order.len());
        for ri in order {
            let row = &self.rows[ri];
            let mut reduced = vec![row[0].clone()];
            reduced.extend(done.reduce(&row[1..]));
            done.pivots.insert(reduced[0].0, done.rows.len());
            done.rows.push(reduced.clone());
            out.push(reduced);
        }
        out.reverse();
        out
    }

    /// Coordinates of `v` with respect to the rows, assuming reduced echelon form.
    /// `None` when `v` is not in the row space.
    pub fn coordinates(&self, v: &[(usize, F)]) -> Option<Vec<Option<F>>> {
        let lookup: BTreeMap<usize, &F> = v.iter().map(|(k, a)| (*k, a)).collect();
        let coords: Vec<Option<F>> = self.rows.iter().map(|r| lookup.get(&r[0].0).map(|&a| a.clone())).collect();
        let mut work: BTreeMap<usize, F> = v.iter().cloned().collect();
        for (row, c) in self.rows.iter().zip(&coords) {
            if let Some(c) = c {
                sub_scaled(&mut work, c, row);
            }
        }
        work.is_empty().then_some(coords)
    }
}

/// Linear relations among `vectors`: a basis of `{c : Σ c_i v_i = 0}`.
///
/// Each relation has coefficient one at its largest index.
pub fn find_relations<F: Field>(vectors: &[SparseVec<F>], one: &F) -> Vec<SparseVec<F>> {
    let mut ech: Echelon<F> = Echelon::new();
    let mut combos: Vec<SparseVec<F>> = Vec::new();
    let mut relations = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut work: BTreeMap<usize, F> = v.iter().cloned().collect();
        let mut combo: BTreeMap<usize, F> = BTreeMap::new();
        combo.insert(i, one.clone());
        ech.reduce_in_place(&mut work, Some((&mut combo, &combos)));
        if work.is_empty() {
            relations.push(combo.into_iter().collect());
        } else {
            let r: SparseVec<F> = work.into_iter().collect();
            let inv = r[0].1.inverse();
            let c: SparseVec<F> = combo.into_iter().map(|(k, a)| (k, a.times(&inv))).collect();
            ech.push_normalized(r);
            combos.push(c);
        }
    }
    relations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Rational};

    fn sv(entries: &[(usize, i64)]) -> SparseVec<Rational> {
        entries.iter().map(|&(k, v)| (k, int(v))).collect()
    }

    #[test]
    fn insert_detects_dependence() {
        let mut e = Echelon::new();
        assert!(e.insert(&sv(&[(0, 1), (1, 1)])));
        assert!(e.insert(&sv(&[(1, 2), (2, 1)])));
        assert!(!e.insert(&sv(&[(0, 2), (1, 4), (2, 1)])));
        assert_eq!(e.len(), 2);
    }

    #[test]
    fn rref_is_canonical() {
        let mut a = Echelon::new();
        a.insert(&sv(&[(0, 1), (1, 1)]));
        a.insert(&sv(&[(0, 1), (1, 2), (2, 1)]));
        let mut b = Echelon::new();
        b.insert(&sv(&[(0, 2), (1, 3), (2, 1)]));
        b.insert(&sv(&[(1, 1), (2, 1)]));
        assert_eq!(a.into_rref(), b.into_rref());
    }

    #[test]
    fn coordinates_in_rref() {
        let mut e = Echelon::new();
        e.insert(&sv(&[(0, 1), (2, 1)]));
        e.insert(&sv(&[(1, 1), (2, -1)]));
        let e = Echelon::from_rref(e.into_rref());
        let c = e.coordinates(&sv(&[(0, 3), (1, 5), (2, -2)])).unwrap();
        assert_eq!(c, vec![Some(int(3)), Some(int(5))]);
        assert!(e.coordinates(&sv(&[(2, 1)])).is_none());
    }

    #[test]
    fn relations_among_vectors() {
        let vs = vec![sv(&[(0, 1)]), sv(&[(1, 1)]), sv(&[(0, 2), (1, -3)]), sv(&[])];
        let rel = find_relations(&vs, &int(1));
        assert_eq!(rel.len(), 2);
        for r in &rel {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (i, c) in r {
                sub_scaled(&mut acc, &c.negated(), &vs[*i]);
            }
            assert!(acc.is_empty());
        }
    }
}
