//! Diagonally harmonic polynomials: components, Hilbert series and
//! Frobenius series.

mod direct;
mod engine;
mod frobenius;
mod series;
mod space;

use std::fmt;
use std::sync::Arc;

pub use direct::{all_degrees, harmonic_component};
pub use frobenius_api::{class_representative, class_traces};
pub use series::GradedSeries;

use crate::error::{Error, Result};
use crate::exact::{Rational, SparseVec};
use crate::groups::{GeneratorPolicy, GroupSpec, DEFAULT_ORDER_CAP};
use crate::poly::{ExponentMatrix, Poly};
use crate::symfunc::partitions_of;

/// Changes whenever computed results could change; stored with cached results.
pub const ENGINE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+1");

/// Default limit on candidates × monomials for one component.
pub const DEFAULT_MAX_ENTRIES: usize = 50_000_000;

/// Called with each computed sorted multidegree and its dimension.
pub type ComponentObserver = Arc<dyn Fn(&[usize], usize) + Send + Sync>;

/// Limits and options for a series computation.
#[derive(Clone)]
pub struct EngineConfig {
    /// `None` picks polarized generators where available.
    pub policy: Option<GeneratorPolicy>,
    pub max_entries: usize,
    pub order_cap: u64,
    /// Stop after this total degree (the series is then marked incomplete).
    pub max_tdeg: Option<usize>,
    pub observer: Option<ComponentObserver>,
    /// Find each component modulo a prime first, then lift and check it
    /// over ℚ. Components that fail the check are recomputed exactly, so
    /// results do not depend on this flag.
    pub modular: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            policy: None,
            max_entries: DEFAULT_MAX_ENTRIES,
            order_cap: DEFAULT_ORDER_CAP,
            max_tdeg: None,
            observer: None,
            modular: true,
        }
    }
}

impl EngineConfig {
    pub fn with_policy(policy: GeneratorPolicy) -> Self {
        EngineConfig { policy: Some(policy), ..Self::default() }
    }
}

impl fmt::Debug for EngineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EngineConfig")
            .field("policy", &self.policy)
            .field("max_entries", &self.max_entries)
            .field("order_cap", &self.order_cap)
            .field("max_tdeg", &self.max_tdeg)
            .field("modular", &self.modular)
            .finish()
    }
}

/// A basis of the harmonic polynomials of one multidegree, in reduced row
/// echelon form over the canonical monomial order (so equal spaces have
/// equal bases).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicComponent {
    degree: Vec<usize>,
    r: usize,
    n: usize,
    monomials: Arc<Vec<ExponentMatrix>>,
    rows: Vec<SparseVec<Rational>>,
}

impl HarmonicComponent {
    pub(crate) fn from_internal(c: &space::Component) -> Self {
        let rows = c.basis.rows().iter().map(|row| row.iter().map(|(k, x)| (*k, x.to_big())).collect()).collect();
        Self::from_rows(&c.space, rows)
    }

    pub(crate) fn from_rows(space: &space::MonomialSpace, rows: Vec<SparseVec<Rational>>) -> Self {
        HarmonicComponent {
            degree: space.degree.clone(),
            r: space.r,
            n: space.n,
            monomials: Arc::new(space.monomials.clone()),
            rows,
        }
    }

    pub fn degree(&self) -> &[usize] {
        &self.degree
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Monomials indexing the coordinates of the rows.
    pub fn monomials(&self) -> &[ExponentMatrix] {
        &self.monomials
    }

    pub fn rows(&self) -> &[SparseVec<Rational>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Poly<Rational>> {
        self.rows
            .iter()
            .map(|row| {
                Poly::from_terms(self.r, self.n, row.iter().map(|(k, c)| (self.monomials[*k].clone(), c.clone())))
            })
            .collect()
    }
}

/// Sorted (weakly decreasing) multidegrees of total degree `t` in `r` coordinates.
pub fn sorted_degrees(t: usize, r: usize) -> Vec<Vec<usize>> {
    partitions_of(t, r, t).into_iter().map(|p| p.padded(r).unwrap()).collect()
}

/// Σ (d_i − 1) over the degrees of `g`.
pub fn degree_bound(g: &GroupSpec) -> usize {
    g.degree_bound()
}

/// Incremental access to harmonic components, one total degree at a time.
pub struct HarmonicEngine {
    inner: engine::Engine,
}

impl HarmonicEngine {
    pub fn new(g: &GroupSpec, r: usize, config: EngineConfig) -> Result<Self> {
        Ok(HarmonicEngine { inner: engine::Engine::new(*g, r, config, false)? })
    }

    /// Computes every total degree up to `t`.
    pub fn compute_through(&mut self, t: usize) -> Result<()> {
        while self.inner.computed_levels() <= t {
            self.inner.next_level()?;
        }
        Ok(())
    }

    /// The component at any ordering of a computed multidegree.
    pub fn component(&mut self, d: &[usize]) -> Result<HarmonicComponent> {
        self.compute_through(d.iter().sum())?;
        self.inner.component(d).ok_or_else(|| Error::InvalidArgument(format!("multidegree {d:?} has the wrong length")))
    }
}

fn run(g: &GroupSpec, r: usize, config: &EngineConfig, frobenius: bool) -> Result<GradedSeries> {
    let mut engine = engine::Engine::new(*g, r, config.clone(), frobenius)?;
    engine.forget_history();
    let bound = g.degree_bound();
    let top = config.max_tdeg.map_or(bound, |m| m.min(bound));
    let mut dims = Vec::new();
    let mut frob = Vec::new();
    for _ in 0..=top {
        let level = engine.next_level()?;
        dims.extend(level.dims.into_iter().map(|(d, v)| (d, v as u64)));
        frob.extend(level.frobenius);
    }
    let complete = top == bound;
    if complete {
        // vanishing one degree above the bound implies vanishing beyond it,
        // since every component is built from the one below
        let guard = engine.next_level()?;
        if let Some((d, _)) = guard.dims.into_iter().find(|(_, v)| *v > 0) {
            return Err(Error::DegreeBoundViolated(d));
        }
    }
    let mut series = GradedSeries::from_sorted_dims(*g, r, engine.policy(), top, complete, dims);
    if frobenius {
        series.set_frobenius(frob);
    }
    Ok(series)
}

/// Dimensions of all harmonic components in `r` sets of variables.
pub fn hilbert_series(g: &GroupSpec, r: usize, config: &EngineConfig) -> Result<GradedSeries> {
    run(g, r, config, false)
}

/// Hilbert series together with the S_n multiplicities of every component.
pub fn frobenius_series(g: &GroupSpec, r: usize, config: &EngineConfig) -> Result<GradedSeries> {
    run(g, r, config, true)
}

mod frobenius_api {
    use super::*;
    use crate::groups::GroupElement;
    use crate::symfunc::Partition;

    /// The permutation of cycle type `mu` with cycles on consecutive blocks.
    pub fn class_representative(mu: &Partition) -> GroupElement {
        super::frobenius::class_representative(mu)
    }

    /// Traces of the class representatives of S_n on a component, in the
    /// order of [`crate::symfunc::all_partitions`].
    pub fn class_traces(c: &HarmonicComponent) -> Result<Vec<Rational>> {
        let space = space::MonomialSpace::new(c.r, c.n, &c.degree);
        let rows = c.rows.iter().map(|row| row.iter().map(|(k, x)| (*k, x.into())).collect()).collect();
        let comp = space::Component::new(space, crate::exact::Echelon::from_rref(rows));
        frobenius::ClassData::new(c.n).traces(&comp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(g: GroupSpec, r: usize) -> u64 {
        hilbert_series(&g, r, &EngineConfig::default()).unwrap().total_dim()
    }

    #[test]
    fn single_set_dimension_is_group_order() {
        for n in 1..=4 {
            assert_eq!(total(GroupSpec::symmetric(n), 1) as u128, GroupSpec::symmetric(n).order());
        }
        for m in 2..=5 {
            assert_eq!(total(GroupSpec::dihedral(m), 1), 2 * m as u64);
            assert_eq!(total(GroupSpec::cyclic(m), 1), m as u64);
        }
    }

    #[test]
    fn two_sets_symmetric() {
        assert_eq!(total(GroupSpec::symmetric(2), 2), 3);
        assert_eq!(total(GroupSpec::symmetric(3), 2), 16);
    }

    #[test]
    fn s2_components() {
        let s = hilbert_series(&GroupSpec::symmetric(2), 2, &EngineConfig::default()).unwrap();
        assert_eq!(s.dim(&[0, 0]), 1);
        assert_eq!(s.dim(&[1, 0]), 1);
        assert_eq!(s.dim(&[0, 1]), 1);
        assert!(s.is_complete());
    }

    #[test]
    fn recursive_matches_stacked_kernel() {
        for (g, r) in [(GroupSpec::symmetric(3), 2), (GroupSpec::dihedral(4), 2), (GroupSpec::cyclic(3), 2)] {
            let policy = crate::groups::GeneratorPolicy::default_for(&g);
            let mut engine = HarmonicEngine::new(&g, r, EngineConfig::default()).unwrap();
            for t in 0..=g.degree_bound() + 1 {
                for d in all_degrees(t, r) {
                    let a = engine.component(&d).unwrap();
                    let b = harmonic_component(&g, r, &d, policy, DEFAULT_MAX_ENTRIES).unwrap();
                    assert_eq!(a, b, "{g} at {d:?}");
                }
            }
        }
    }

    #[test]
    fn modular_and_exact_paths_agree() {
        let exact = EngineConfig { modular: false, ..EngineConfig::default() };
        for (g, r) in [
            (GroupSpec::symmetric(4), 2),
            (GroupSpec::dihedral(5), 2),
            (GroupSpec::new(3, 1, 2).unwrap(), 2),
            (GroupSpec::new(4, 2, 2).unwrap(), 2),
            (GroupSpec::symmetric(3), 3),
        ] {
            let mut fast = HarmonicEngine::new(&g, r, EngineConfig::default()).unwrap();
            let mut slow = HarmonicEngine::new(&g, r, exact.clone()).unwrap();
            for t in 0..=g.degree_bound() {
                for d in all_degrees(t, r) {
                    assert_eq!(fast.component(&d).unwrap(), slow.component(&d).unwrap(), "{g} at {d:?}");
                }
            }
        }
    }

    #[test]
    fn reynolds_policy_agrees() {
        let g = GroupSpec::symmetric(3);
        let a = hilbert_series(&g, 2, &EngineConfig::default()).unwrap();
        let b = hilbert_series(&g, 2, &EngineConfig::with_policy(GeneratorPolicy::Reynolds)).unwrap();
        assert_eq!(a.dims(), b.dims());
    }

    #[test]
    fn frobenius_s3() {
        let s = frobenius_series(&GroupSpec::symmetric(3), 1, &EngineConfig::default()).unwrap();
        use crate::symfunc::part;
        assert_eq!(s.multiplicity(&[0], &part(&[3])), 1);
        assert_eq!(s.multiplicity(&[1], &part(&[2, 1])), 1);
        assert_eq!(s.multiplicity(&[2], &part(&[2, 1])), 1);
        assert_eq!(s.multiplicity(&[3], &part(&[1, 1, 1])), 1);
    }

    #[test]
    fn truncated_run_is_incomplete() {
        let cfg = EngineConfig { max_tdeg: Some(1), ..EngineConfig::default() };
        let s = hilbert_series(&GroupSpec::symmetric(3), 2, &cfg).unwrap();
        assert!(!s.is_complete());
        assert_eq!(s.by_total_degree(), vec![1, 4]);
    }

    #[test]
    fn resource_cap_is_reported() {
        let cfg = EngineConfig { max_entries: 2, ..EngineConfig::default() };
        let err = hilbert_series(&GroupSpec::symmetric(3), 2, &cfg).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { .. }));
    }
}
