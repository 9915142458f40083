use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
///
/// Partitions are ordered by weight first and then reverse-lexicographically,
/// so `(3) < (2,1) < (1,1,1)` and ordered maps list `1, h[1], h[2], h[1,1], …`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the entries and drops zeros.
    pub fn from_unsorted<I: IntoIterator<Item = usize>>(parts: I) -> Self {
        let mut v: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition(vec![k])
        }
    }

    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parts padded with zeros to length `r`; `None` if there are more than `r` parts.
    pub fn padded(&self, r: usize) -> Option<Vec<usize>> {
        (self.0.len() <= r).then(|| {
            let mut v = self.0.clone();
            v.resize(r, 0);
            v
        })
    }

    /// Multiplicity of each part size, indexed by size.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.0.first().map_or(0, |&p| p + 1)];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// Union of parts (the partition indexing p_λ p_μ).
    pub fn union(&self, other: &Partition) -> Partition {
        Partition::from_unsorted(self.0.iter().chain(&other.0).copied())
    }

    /// Every part multiplied by `k`.
    pub fn scaled(&self, k: usize) -> Partition {
        Partition(self.0.iter().map(|p| p * k).collect())
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// `z_λ = Π_i i^{m_i} m_i!`, the centralizer order of a permutation of cycle type λ.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (i, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for k in 1..=m {
                z *= BigInt::from(i) * BigInt::from(k);
            }
        }
        z
    }

    /// Sign of a permutation of cycle type λ.
    pub fn sign(&self) -> i64 {
        if (self.weight() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Hook length of cell (i, j), zero-based.
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.0[i] - j - 1;
        let leg = self.0[i + 1..].iter().filter(|&&p| p > j).count();
        arm + leg + 1
    }

    /// Cells as zero-based (row, column) pairs.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    /// Dominance order: `self ⊵ other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<&[usize]> for Partition {
    fn from(parts: &[usize]) -> Self {
        Partition::from_unsorted(parts.iter().copied())
    }
}

/// Shorthand for building partitions in tests and tables: `part(&[2, 1])`.
pub fn part(parts: &[usize]) -> Partition {
    Partition::from(parts)
}

/// Partitions of `d` with at most `max_parts` parts, each at most `max_part`,
/// in reverse-lexicographic order.
pub fn partitions_of(d: usize, max_parts: usize, max_part: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(d, max_parts, max_part.min(d), &mut cur, &mut out);
    out
}

fn fill(rest: usize, parts_left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if parts_left == 0 {
        return;
    }
    for p in (1..=cap.min(rest)).rev() {
        if p * parts_left < rest {
            break;
        }
        cur.push(p);
        fill(rest - p, parts_left - 1, p, cur, out);
        cur.pop();
    }
}

/// All partitions of `d` (no restriction on parts).
pub fn all_partitions(d: usize) -> Vec<Partition> {
    partitions_of(d, d, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        assert_eq!(partitions_of(4, 2, 4), vec![part(&[4]), part(&[3, 1]), part(&[2, 2])]);
        assert_eq!(partitions_of(0, 3, 3), vec![Partition::empty()]);
        assert_eq!(partitions_of(5, 5, 5).len(), 7);
        let counts: Vec<usize> = (0..=10).map(|d| all_partitions(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions_of(6, 3, 2), vec![part(&[2, 2, 2])]);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        for d in 0..9 {
            let ps = all_partitions(d);
            assert!(ps.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn basic_statistics() {
        assert_eq!(part(&[2, 1, 1]).z(), BigInt::from(4));
        assert_eq!(part(&[1, 1, 1]).z(), BigInt::from(6));
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(part(&[3, 2]).hook(0, 0), 4);
        assert!(part(&[3, 1]).dominates(&part(&[2, 2])));
        assert!(!part(&[2, 2]).dominates(&part(&[3, 1])));
        assert!(Partition::new(vec![1, 2]).is_err());
    }
}
