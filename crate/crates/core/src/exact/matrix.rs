//! Sparse exact matrices with fraction-free elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::{lcm, Field, Rational};
use crate::error::{Error, Result};

/// A sparse matrix over an exact field. Stored entries are never zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), F>,
    zero: F,
}

impl<F: Field> ExactMatrix<F> {
    /// All-zero matrix; `zero` fixes the field (and cyclotomic order).
    pub fn zeros(rows: usize, cols: usize, zero: F) -> Self {
        ExactMatrix { rows, cols, entries: BTreeMap::new(), zero: zero.zero_like() }
    }

    pub fn identity(n: usize, one: F) -> Self {
        let mut m = Self::zeros(n, n, one.zero_like());
        for i in 0..n {
            m.set(i, i, one.one_like());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, zero: F) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols, zero);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<F>], rows: usize, zero: F) -> Self {
        let mut m = Self::zeros(rows, columns.len(), zero);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn zero(&self) -> &F {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero_value() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![self.zero.clone(); self.rows];
        for (&(i, j), a) in &self.entries {
            out[i].add_mul_assign(a, &v[j]);
        }
        out
    }

    /// Same matrix with rows and columns reordered: entry (i, j) moves to
    /// (row_perm[i], col_perm[j]).
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, self.cols, self.zero.clone());
        for (&(i, j), v) in &self.entries {
            m.set(row_perm[i], col_perm[j], v.clone());
        }
        m
    }

    fn dense_rows(&self) -> Vec<Vec<F>> {
        let mut d = vec![vec![self.zero.clone(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }
}

/// Row echelon form by Bareiss fraction-free elimination.
///
/// Rows are first scaled to have integral coordinates; every subsequent
/// division by the previous pivot is exact in the ring of integers of the
/// field. Returns the echelon rows (nonzero ones only) and their pivot columns.
fn bareiss_echelon<F: Field>(mut a: Vec<Vec<F>>, zero: &F) -> (Vec<Vec<F>>, Vec<usize>) {
    for row in a.iter_mut() {
        let den = row.iter().fold(BigInt::one(), |acc, v| lcm(&acc, &v.denominator_lcm()));
        if !den.is_one() {
            let s = zero.embed_rational(&Rational::from_integer(den));
            for v in row.iter_mut() {
                *v = v.times(&s);
            }
        }
    }
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = zero.one_like();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero_value()) else { continue };
        a.swap(r, p);
        let prev_inv = prev.inverse();
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero_value() {
                for v in row[c + 1..].iter_mut() {
                    // (pivot * v - 0) / prev
                    *v = pivot_row[c].times(v).times(&prev_inv);
                }
                continue;
            }
            let lead = row[c].clone();
            for j in c + 1..ncols {
                let mut v = pivot_row[c].times(&row[j]);
                v.sub_mul_assign(&lead, &pivot_row[j]);
                row[j] = v.times(&prev_inv);
            }
            row[c] = zero.clone();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Exact rank over the coefficient field.
pub fn rank<F: Field>(a: &ExactMatrix<F>) -> usize {
    bareiss_echelon(a.dense_rows(), &a.zero).1.len()
}

/// Basis of the right kernel `{v : A v = 0}`.
///
/// One vector per free column `f`, with a one at `f`, zeros at the other free
/// columns, and pivot coordinates solved by back substitution (the reduced
/// echelon convention). The output depends only on the column order.
pub fn kernel_basis<F: Field>(a: &ExactMatrix<F>) -> Vec<Vec<F>> {
    let cols = a.cols;
    let zero = a.zero.clone();
    let (ech, pivots) = bareiss_echelon(a.dense_rows(), &zero);
    let is_pivot: Vec<bool> = (0..cols).map(|c| pivots.contains(&c)).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![zero.clone(); cols];
        v[free] = zero.one_like();
        for (row, &pc) in ech.iter().zip(&pivots).rev() {
            let mut s = zero.clone();
            for j in pc + 1..cols {
                if !row[j].is_zero_value() && !v[j].is_zero_value() {
                    s.add_mul_assign(&row[j], &v[j]);
                }
            }
            v[pc] = s.negated().times(&row[pc].inverse());
        }
        basis.push(v);
    }
    basis
}

/// Coefficients `x` with `B x = target`, for `B` with independent columns.
pub fn solve_in_span<F: Field>(b: &ExactMatrix<F>, target: &[F]) -> Result<Vec<F>> {
    assert_eq!(target.len(), b.rows, "target length must match the row count");
    let zero = b.zero.clone();
    let mut rows = b.dense_rows();
    for (row, t) in rows.iter_mut().zip(target) {
        row.push(t.clone());
    }
    let k = b.cols;
    let (ech, pivots) = bareiss_echelon(rows, &zero);
    if pivots.contains(&k) {
        return Err(Error::NotInSpan);
    }
    assert_eq!(pivots.len(), k, "solve_in_span requires independent columns");
    let mut x = vec![zero.clone(); k];
    for (row, &pc) in ech.iter().zip(&pivots).rev() {
        let mut s = row[k].clone();
        for j in pc + 1..k {
            s.sub_mul_assign(&row[j], &x[j]);
        }
        x[pc] = s.times(&row[pc].inverse());
    }
    Ok(x)
}

/// Inverse of a dense square matrix, `None` when singular.
pub fn invert_dense<F: Field>(m: &[Vec<F>], one: &F) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one.one_like() } else { one.zero_like() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero_value())?;
        a.swap(c, p);
        let inv = a[c][c].inverse();
        for v in a[c].iter_mut() {
            *v = v.times(&inv);
        }
        let pivot = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != c && !row[c].is_zero_value() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot).skip(c) {
                    v.sub_mul_assign(&f, p);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, CycloNum};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect(), int(0))
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&q(&[&[1, 1]])), vec![vec![int(-1), int(1)]]);
        assert!(kernel_basis(&ExactMatrix::identity(3, int(1))).is_empty());
        let k = kernel_basis(&q(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * int(-1), &k[0][1] * int(2));
        // empty matrix: the whole space
        let e = ExactMatrix::zeros(0, 3, int(0));
        assert_eq!(kernel_basis(&e).len(), 3);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ExactMatrix::zeros(2, 2, int(0))), 0);
        assert_eq!(rank(&ExactMatrix::identity(4, int(1))), 4);
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn solve_examples() {
        let id = ExactMatrix::identity(2, int(1));
        assert_eq!(solve_in_span(&id, &[int(3), int(5)]).unwrap(), vec![int(3), int(5)]);
        let b = ExactMatrix::from_columns(&[vec![int(1), int(-1)]], 2, int(0));
        assert_eq!(solve_in_span(&b, &[int(2), int(-2)]).unwrap(), vec![int(2)]);
        assert!(matches!(solve_in_span(&b, &[int(1), int(1)]), Err(Error::NotInSpan)));
    }

    #[test]
    fn cyclotomic_kernel() {
        // [1, ζ_3] has kernel spanned by (-ζ_3, 1)
        let z = CycloNum::root_power(3, 1);
        let a = ExactMatrix::from_rows(vec![vec![CycloNum::one(3), z.clone()]], CycloNum::zero(3));
        let k = kernel_basis(&a);
        assert_eq!(k, vec![vec![z.negated(), CycloNum::one(3)]]);
        // a rank-one matrix over Q(ζ_4): second row is i times the first
        let i = CycloNum::root_power(4, 1);
        let a = ExactMatrix::from_rows(
            vec![vec![CycloNum::one(4), CycloNum::from_int(4, 2)], vec![i.clone(), i.times(&CycloNum::from_int(4, 2))]],
            CycloNum::zero(4),
        );
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = invert_dense(&m, &int(1)).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(invert_dense(&[vec![int(1), int(2)], vec![int(2), int(4)]], &int(1)).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = ExactMatrix<Rational>> {
        (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..5], c), r)
                .prop_map(|rows| {
                    ExactMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect(), int(0))
                })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(a in arb_matrix()) {
            let k = kernel_basis(&a);
            prop_assert_eq!(k.len() + rank(&a), a.ncols());
            for v in &k {
                prop_assert!(a.mul_vec(v).iter().all(|x| x.is_zero_value()));
            }
            // independence: the kernel vectors have full rank
            if !k.is_empty() {
                let km = ExactMatrix::from_rows(k.clone(), int(0));
                prop_assert_eq!(rank(&km), k.len());
            }
        }

        #[test]
        fn rank_invariant_under_permutation(a in arb_matrix(), seed in any::<u64>()) {
            let mut rp: Vec<usize> = (0..a.nrows()).collect();
            let mut cp: Vec<usize> = (0..a.ncols()).collect();
            let mut s = seed;
            for i in (1..rp.len()).rev() { s = s.wrapping_mul(6364136223846793005).wrapping_add(1); rp.swap(i, (s >> 33) as usize % (i + 1)); }
            for i in (1..cp.len()).rev() { s = s.wrapping_mul(6364136223846793005).wrapping_add(1); cp.swap(i, (s >> 33) as usize % (i + 1)); }
            prop_assert_eq!(rank(&a), rank(&a.permuted(&rp, &cp)));
        }
    }
}
