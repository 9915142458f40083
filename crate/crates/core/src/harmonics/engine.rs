//! Degree-by-degree construction of harmonic components.
//!
//! A polynomial g of multidegree d is harmonic exactly when every first
//! derivative ∂g/∂x_{ij} is harmonic and g is orthogonal to the generators of
//! multidegree d (the ideal in degree d is spanned by those generators and by
//! x_{ij} times the ideal one degree lower). By Euler's identity such a g lies
//! in the span of x_{ij}·h for harmonic h one degree lower, so each component
//! is cut out of a small candidate space by linear conditions.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::frobenius::ClassData;
use super::space::{Component, ModRows, MonomialSpace};
use super::{sorted_degrees, EngineConfig, HarmonicComponent};
use crate::error::{Error, Result};
use crate::exact::modp::{self, DenseEchelon};
use crate::exact::{find_relations, Echelon, FastRational as Q, Field, Rational, SparseVec};
use crate::groups::{enumerate_elements, invariant_generators, GeneratorPolicy, GroupElement, GroupSpec};
use crate::poly::exponent_factorial;
use crate::symfunc::Partition;

/// A sorted multidegree with its component and, when requested, its multiplicities.
type Computed = (Vec<usize>, Component, Option<BTreeMap<Partition, u64>>);

/// Dimensions (and S_n multiplicities, when requested) of one computed level.
pub(crate) struct LevelResult {
    pub dims: Vec<(Vec<usize>, usize)>,
    pub frobenius: Vec<(Vec<usize>, BTreeMap<Partition, u64>)>,
}

pub(crate) struct Engine {
    group: GroupSpec,
    r: usize,
    policy: GeneratorPolicy,
    config: EngineConfig,
    elements: Option<Arc<Vec<GroupElement>>>,
    classes: Option<Arc<ClassData>>,
    /// Level t holds the components of total degree t with sorted
    /// (weakly decreasing) multidegree; the others follow by permuting sets.
    levels: Vec<HashMap<Vec<usize>, Arc<Component>>>,
    /// Keep every level; otherwise only the last one is retained, which is
    /// all the next level needs.
    keep_history: bool,
}

impl Engine {
    pub fn new(group: GroupSpec, r: usize, config: EngineConfig, frobenius: bool) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("at least one set of variables is required".into()));
        }
        let policy = config.policy.unwrap_or_else(|| GeneratorPolicy::default_for(&group));
        let elements = match policy {
            GeneratorPolicy::Reynolds => Some(Arc::new(enumerate_elements(&group, config.order_cap)?)),
            GeneratorPolicy::Polarized => {
                // fail early on unsupported families
                crate::groups::polarized_at(&group, r, &vec![0; r])?;
                None
            }
        };
        let classes = if frobenius {
            if !group.is_symmetric() {
                return Err(Error::UnsupportedFamily(format!("Frobenius series need a symmetric group, got {group}")));
            }
            Some(Arc::new(ClassData::new(group.n())))
        } else {
            None
        };
        Ok(Engine { group, r, policy, config, elements, classes, levels: Vec::new(), keep_history: true })
    }

    pub fn forget_history(&mut self) {
        self.keep_history = false;
    }

    pub fn policy(&self) -> GeneratorPolicy {
        self.policy
    }

    pub fn computed_levels(&self) -> usize {
        self.levels.len()
    }

    /// Computes the next total degree. Returns the sorted multidegrees with
    /// their dimensions.
    pub fn next_level(&mut self) -> Result<LevelResult> {
        let t = self.levels.len();
        let degrees = sorted_degrees(t, self.r);
        let results: Vec<Result<Computed>> = if t == 0 {
            let d = vec![0; self.r];
            let space = MonomialSpace::new(self.r, self.group.n(), &d);
            let basis = Echelon::from_rref(vec![vec![(0, Q::one())]]);
            let comp = Component::new(space, basis);
            let frob = self.classes.as_ref().map(|c| c.multiplicities(&comp)).transpose();
            vec![frob.map(|f| (d, comp, f))]
        } else {
            degrees
                .par_iter()
                .map(|d| {
                    let comp = self.compute(d)?;
                    let frob = self.classes.as_ref().map(|c| c.multiplicities(&comp)).transpose()?;
                    Ok((d.clone(), comp, frob))
                })
                .collect()
        };
        let mut level: HashMap<Vec<usize>, Arc<Component>> = HashMap::new();
        let mut out = LevelResult { dims: Vec::new(), frobenius: Vec::new() };
        for res in results {
            let (d, comp, frob) = res?;
            if let Some(obs) = &self.config.observer {
                obs(&d, comp.dim());
            }
            out.dims.push((d.clone(), comp.dim()));
            if let Some(f) = frob {
                out.frobenius.push((d.clone(), f));
            }
            level.insert(d, Arc::new(comp));
        }
        if !self.keep_history && t > 0 {
            self.levels[t - 1] = HashMap::new();
        }
        self.levels.push(level);
        Ok(out)
    }

    /// The computed component at `d` as a public value.
    pub fn component(&self, d: &[usize]) -> Option<HarmonicComponent> {
        let t: usize = d.iter().sum();
        if d.len() != self.r {
            return None;
        }
        // order[k] is the set holding the k-th largest degree
        let mut order: Vec<usize> = (0..d.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(d[i]));
        let sorted: Vec<usize> = order.iter().map(|&i| d[i]).collect();
        let comp = self.levels.get(t)?.get(&sorted)?;
        if sorted == d {
            return Some(HarmonicComponent::from_internal(comp));
        }
        let mut perm = vec![0; d.len()];
        for (k, &i) in order.iter().enumerate() {
            perm[i] = k;
        }
        Some(HarmonicComponent::from_internal(&comp.permuted(&perm)))
    }

    fn compute(&self, d: &[usize]) -> Result<Component> {
        let (r, n) = (self.r, self.group.n());
        let prev = &self.levels[d.iter().sum::<usize>() - 1];
        let space = MonomialSpace::new(r, n, d);
        let lower_of = |a: usize| {
            let mut e = d.to_vec();
            e[a] -= 1;
            prev[&e].clone()
        };

        // One slot per variable x_{ab} with d_a > 0. Lowering d_a gives an
        // unsorted degree when a is not the last of its run of equal entries;
        // swapping rows a and l (the end of the run) maps it to the stored one.
        let mut slots = Vec::new();
        for a in (0..r).filter(|&a| d[a] > 0) {
            let l = run_end(d, a);
            let lower = lower_of(l);
            for b in 0..n {
                let map = space
                    .monomials
                    .iter()
                    .map(|m| {
                        let e = m[a * n + b];
                        (e > 0).then(|| {
                            let mut low = m.clone();
                            low[a * n + b] -= 1;
                            if a != l {
                                for j in 0..n {
                                    low.swap(a * n + j, l * n + j);
                                }
                            }
                            (lower.space.index[&low], i64::from(e))
                        })
                    })
                    .collect();
                slots.push(Slot { lower: lower.clone(), map });
            }
        }

        // Euler's identity in set a alone gives d_a·g = Σ_b x_{ab} ∂g/∂x_{ab},
        // so products x_{ab}·h with h in one lower component span enough.
        let a = (0..r)
            .filter(|&a| d[a] > 0 && run_end(d, a) == a)
            .min_by_key(|&a| lower_of(a).dim())
            .expect("positive degree");
        let source = lower_of(a);
        let times_x: Vec<Vec<usize>> = (0..n)
            .map(|b| {
                source
                    .space
                    .monomials
                    .iter()
                    .map(|m| {
                        let mut m = m.clone();
                        m[a * n + b] += 1;
                        space.index[&m]
                    })
                    .collect()
            })
            .collect();
        let count = n * source.dim();
        let entries = count.saturating_mul(space.len());
        if entries > self.config.max_entries {
            return Err(Error::ResourceCap { degree: d.to_vec(), entries, cap: self.config.max_entries });
        }
        if count == 0 {
            return Ok(Component::new(space, Echelon::new()));
        }

        // generators of multidegree exactly d, as weight vectors for the pairing
        let gens =
            invariant_generators(&self.group, self.policy, self.elements.as_deref().map(|v| v.as_slice()), r, d)?;
        let weights: Vec<Vec<(usize, Q)>> = gens
            .iter()
            .map(|f| {
                f.terms()
                    .iter()
                    .map(|(a, c)| {
                        (space.index[a], Q::from_rational(&(c * Rational::from_integer(exponent_factorial(a)))))
                    })
                    .collect::<Vec<_>>()
            })
            .map(|mut w| {
                w.sort_by_key(|e| e.0);
                w
            })
            .collect();

        let ctx = Context { space, slots, source, times_x, weights };
        if self.config.modular {
            if let Some(rows) = ctx.modular_basis() {
                if ctx.verify(&rows) {
                    return Ok(Component::new(ctx.space, Echelon::from_rref(rows)));
                }
            }
        }
        Ok(ctx.exact_component())
    }
}

fn run_end(d: &[usize], a: usize) -> usize {
    let mut l = a;
    while l + 1 < d.len() && d[l + 1] == d[a] {
        l += 1;
    }
    l
}

/// The derivative with respect to one variable, as a map from monomials of
/// the current space to (monomial of the stored lower component, exponent).
struct Slot {
    lower: Arc<Component>,
    map: Vec<Option<(usize, i64)>>,
}

impl Slot {
    fn derivative(&self, g: &[(usize, Q)]) -> SparseVec<Q> {
        let mut out: SparseVec<Q> =
            g.iter().filter_map(|(k, c)| self.map[*k].map(|(j, e)| (j, c.times(&Q::from_int(e))))).collect();
        out.sort_by_key(|e| e.0);
        out
    }

    fn contains_derivative(&self, g: &[(usize, Q)]) -> bool {
        let w = self.derivative(g);
        let rows = self.lower.basis.rows();
        let Some(modp) = self.lower.modp.as_ref() else {
            return self.lower.basis.reduce(&w).is_empty();
        };
        // in reduced row echelon form the coefficient of each row is the
        // entry of w at its pivot
        let mut acc: HashMap<usize, Q> = HashMap::new();
        for (k, c) in &w {
            if let Ok(i) = modp.position[*k] {
                for (j, x) in &rows[i] {
                    acc.entry(*j).or_insert_with(Q::zero).add_mul_assign(c, x);
                }
            }
        }
        let mut matched = 0;
        for (k, c) in &w {
            match acc.get(k) {
                Some(x) if x == c => matched += 1,
                _ => return false,
            }
        }
        matched == acc.values().filter(|x| !x.is_zero()).count()
    }
}

struct Context {
    space: Arc<MonomialSpace>,
    slots: Vec<Slot>,
    source: Arc<Component>,
    /// `times_x[b][k]`: index of x_{ab} times monomial k of the source space.
    times_x: Vec<Vec<usize>>,
    weights: Vec<Vec<(usize, Q)>>,
}

impl Context {
    fn candidate(&self, i: usize) -> SparseVec<Q> {
        let d = self.source.dim();
        let (b, j) = (i / d, i % d);
        let mut v: SparseVec<Q> =
            self.source.basis.rows()[j].iter().map(|(k, c)| (self.times_x[b][*k], c.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    fn count(&self) -> usize {
        self.times_x.len() * self.source.dim()
    }

    /// A candidate basis in reduced row echelon form, found modulo the prime
    /// and lifted by rational reconstruction. The conditions are compressed
    /// by a random sparse projection, which can only enlarge the solution
    /// space; [`Self::verify`] catches that case.
    fn modular_basis(&self) -> Option<Vec<SparseVec<Q>>> {
        let src = self.source.modp.as_ref()?;
        let lowers: Vec<&ModRows> = self.slots.iter().map(|s| s.lower.modp.as_ref()).collect::<Option<_>>()?;
        let weights: Vec<Vec<(usize, u64)>> = self
            .weights
            .iter()
            .map(|w| w.iter().map(|(k, c)| Some((*k, modp::from_fast(c)?))).collect())
            .collect::<Option<_>>()?;
        let count = self.count();
        let d = self.source.dim();

        let free: Vec<usize> = self.slots.iter().map(|s| s.lower.space.len() - s.lower.dim()).collect();
        let total: usize = free.iter().sum();
        let sketch = count + 24;
        let width = total.min(sketch);
        let mut offsets = Vec::with_capacity(free.len());
        let mut acc = 0;
        for f in &free {
            offsets.push(acc);
            acc += f;
        }
        let column = |c: usize| -> [(usize, u64); 2] {
            if total <= sketch {
                [(c, 1), (c, 0)]
            } else {
                let h1 = mix(c as u64);
                let h2 = mix(h1);
                [
                    ((h1 % width as u64) as usize, 1 + h1 % (modp::PRIME - 1)),
                    ((h2 % width as u64) as usize, 1 + h2 % (modp::PRIME - 1)),
                ]
            }
        };

        let mut ech = DenseEchelon::new(width + weights.len(), true);
        let mut relations = Vec::new();
        let mut scratch: Vec<Vec<u64>> = self.slots.iter().map(|s| vec![0; s.lower.space.len()]).collect();
        let mut touched: Vec<usize> = Vec::new();
        for i in 0..count {
            let (b, j) = (i / d, i % d);
            let mut row = vec![0u64; width + weights.len()];
            let cand: Vec<(usize, u64)> = src.rows[j].iter().map(|(k, c)| (self.times_x[b][*k], *c)).collect();
            for (s, slot) in self.slots.iter().enumerate() {
                let w = &mut scratch[s];
                touched.clear();
                for (k, c) in &cand {
                    if let Some((lk, e)) = slot.map[*k] {
                        if w[lk] == 0 {
                            touched.push(lk);
                        }
                        w[lk] = modp::add(w[lk], modp::mul(*c, e as u64));
                    }
                }
                let low = lowers[s];
                let pivots: Vec<usize> = touched.iter().copied().filter(|k| low.position[*k].is_ok()).collect();
                for k in pivots {
                    let f = w[k];
                    if f == 0 {
                        continue;
                    }
                    let Ok(ri) = low.position[k] else { unreachable!() };
                    for (jj, x) in &low.rows[ri] {
                        if w[*jj] == 0 {
                            touched.push(*jj);
                        }
                        w[*jj] = modp::sub(w[*jj], modp::mul(f, *x));
                    }
                }
                for &k in &touched {
                    let v = std::mem::take(&mut w[k]);
                    if v == 0 {
                        continue;
                    }
                    if let Err(pos) = low.position[k] {
                        for (col, h) in column(offsets[s] + pos) {
                            if h != 0 {
                                row[col] = modp::add(row[col], modp::mul(v, h));
                            }
                        }
                    }
                }
            }
            for (gi, w) in weights.iter().enumerate() {
                let mut s = 0;
                for (k, c) in &cand {
                    if let Ok(x) = w.binary_search_by_key(k, |e| e.0) {
                        s = modp::add(s, modp::mul(*c, w[x].1));
                    }
                }
                row[width + gi] = s;
            }
            if let Some(rel) = ech.push(row) {
                relations.push(rel);
            }
        }

        let mut image = DenseEchelon::new(self.space.len(), false);
        for rel in relations {
            let mut g = vec![0u64; self.space.len()];
            for (i, lam) in rel.iter().enumerate() {
                if *lam == 0 {
                    continue;
                }
                let (b, j) = (i / d, i % d);
                for (k, c) in &src.rows[j] {
                    let t = self.times_x[b][*k];
                    g[t] = modp::add(g[t], modp::mul(*lam, *c));
                }
            }
            image.push(g);
        }
        image
            .into_rref()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, x)| *x != 0)
                    .map(|(k, x)| Some((k, modp::reconstruct(x)?)))
                    .collect::<Option<SparseVec<Q>>>()
            })
            .collect()
    }

    /// Exact check that every row is harmonic: all its first derivatives lie
    /// in the lower components and it is orthogonal to the generators.
    fn verify(&self, rows: &[SparseVec<Q>]) -> bool {
        rows.iter().all(|g| {
            self.weights.iter().all(|w| {
                let mut s = Q::zero();
                let mut wi = w.iter().peekable();
                for (k, c) in g {
                    while wi.peek().is_some_and(|e| e.0 < *k) {
                        wi.next();
                    }
                    if let Some((_, x)) = wi.peek().filter(|e| e.0 == *k) {
                        s.add_mul_assign(c, x);
                    }
                }
                s.is_zero()
            }) && self.slots.iter().all(|slot| slot.contains_derivative(g))
        })
    }

    /// The component by exact elimination over ℚ.
    fn exact_component(self) -> Component {
        let mut cand: Echelon<Q> = Echelon::new();
        for i in 0..self.count() {
            cand.insert(&self.candidate(i));
        }
        let candidates: Vec<SparseVec<Q>> = cand.rows().to_vec();
        let conditions: Vec<SparseVec<Q>> = candidates
            .iter()
            .map(|u| {
                let mut phi: SparseVec<Q> = Vec::new();
                let mut offset = 0;
                for slot in &self.slots {
                    let du = slot.derivative(u);
                    phi.extend(slot.lower.basis.reduce(&du).into_iter().map(|(k, v)| (offset + k, v)));
                    offset += slot.lower.space.len();
                }
                for (gi, w) in self.weights.iter().enumerate() {
                    let s = u
                        .iter()
                        .filter_map(|(k, c)| w.binary_search_by_key(k, |e| e.0).ok().map(|x| c.times(&w[x].1)))
                        .fold(Q::zero(), |acc, v| acc.plus(&v));
                    if !s.is_zero() {
                        phi.push((offset + gi, s));
                    }
                }
                phi
            })
            .collect();

        let relations = find_relations(&conditions, &Q::one());
        let mut basis = Echelon::new();
        for rel in relations {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, c) in rel {
                for (j, x) in &candidates[k] {
                    acc.entry(*j).or_insert_with(Q::zero).add_mul_assign(&c, x);
                }
            }
            let v: SparseVec<Q> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            basis.insert(&v);
        }
        Component::new(self.space, Echelon::from_rref(basis.into_rref()))
    }
}

/// splitmix64 finalizer, used as a fixed pseudo-random hash.
fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Every distinct reordering `e` of `d`, with a permutation `perm` such that
/// `e[i] = d[perm[i]]`.
pub(crate) fn distinct_orderings(d: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut idx: Vec<usize> = (0..d.len()).collect();
    let mut seen = std::collections::HashSet::new();
    loop {
        let e: Vec<usize> = idx.iter().map(|&i| d[i]).collect();
        if seen.insert(e.clone()) {
            out.push((e, idx.clone()));
        }
        if !next_permutation(&mut idx) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
