use std::collections::HashMap;
use std::sync::Arc;

use crate::exact::{modp, Echelon, FastRational, SparseVec};
use crate::poly::{monomial_basis, ExponentMatrix};

/// The monomials of one multidegree, in canonical order, with reverse lookup.
#[derive(Debug)]
pub(crate) struct MonomialSpace {
    pub r: usize,
    pub n: usize,
    pub degree: Vec<usize>,
    pub monomials: Vec<ExponentMatrix>,
    pub index: HashMap<ExponentMatrix, usize>,
}

impl MonomialSpace {
    pub fn new(r: usize, n: usize, degree: &[usize]) -> Arc<Self> {
        let monomials = monomial_basis(r, n, degree);
        let index = monomials.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Arc::new(MonomialSpace { r, n, degree: degree.to_vec(), monomials, index })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }
}

/// The rows of a component reduced modulo [`modp::PRIME`].
#[derive(Debug)]
pub(crate) struct ModRows {
    pub rows: Vec<Vec<(usize, u64)>>,
    /// For each monomial: `Ok(row)` if it is the pivot of that row, else
    /// `Err(k)` where `k` counts the non-pivot monomials before it.
    pub position: Vec<Result<usize, usize>>,
}

/// A harmonic component stored as reduced row echelon rows over a monomial space.
#[derive(Debug)]
pub(crate) struct Component {
    pub space: Arc<MonomialSpace>,
    pub basis: Echelon<FastRational>,
    /// `None` when the prime divides a denominator.
    pub modp: Option<ModRows>,
}

impl Component {
    pub fn new(space: Arc<MonomialSpace>, basis: Echelon<FastRational>) -> Self {
        let modp = reduce_rows(&space, &basis);
        Component { space, basis, modp }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The component with its sets of variables reordered: row `i` of the
    /// result is row `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Component {
        let src = &self.space;
        let degree: Vec<usize> = perm.iter().map(|&p| src.degree[p]).collect();
        let space = MonomialSpace::new(src.r, src.n, &degree);
        let n = src.n;
        let mut ech = Echelon::new();
        for row in self.basis.rows() {
            let mut v: SparseVec<FastRational> = row
                .iter()
                .map(|(k, c)| {
                    let a = &src.monomials[*k];
                    let mut b = Vec::with_capacity(a.len());
                    for &p in perm {
                        b.extend_from_slice(&a[p * n..(p + 1) * n]);
                    }
                    (space.index[&b], c.clone())
                })
                .collect();
            v.sort_by_key(|e| e.0);
            ech.insert(&v);
        }
        Component::new(space, Echelon::from_rref(ech.into_rref()))
    }
}

fn reduce_rows(space: &MonomialSpace, basis: &Echelon<FastRational>) -> Option<ModRows> {
    let mut rows = Vec::with_capacity(basis.len());
    let mut position: Vec<Result<usize, usize>> = vec![Err(0); space.len()];
    for (i, row) in basis.rows().iter().enumerate() {
        position[row[0].0] = Ok(i);
        rows.push(row.iter().map(|(k, c)| Some((*k, modp::from_fast(c)?))).collect::<Option<Vec<_>>>()?);
    }
    let mut free = 0;
    for p in position.iter_mut() {
        if p.is_err() {
            *p = Err(free);
            free += 1;
        }
    }
    Some(ModRows { rows, position })
}
