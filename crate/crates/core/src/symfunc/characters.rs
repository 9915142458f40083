//! Irreducible characters of S_n (Murnaghan–Nakayama) and Kostka numbers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::partition::Partition;
use crate::error::{Error, Result};

type Memo = Mutex<HashMap<(Vec<usize>, Vec<usize>), i64>>;

fn mn_memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// χ^λ evaluated on the conjugacy class of cycle type μ.
pub fn sn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch(format!("χ^{lambda} on class {mu}")));
    }
    Ok(murnaghan_nakayama(lambda.parts(), mu.parts()))
}

fn murnaghan_nakayama(lambda: &[usize], mu: &[usize]) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return i64::from(lambda.is_empty());
    };
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = mn_memo().lock().unwrap().get(&key) {
        return v;
    }
    // beta numbers: λ_i + (ℓ - 1 - i), strictly decreasing
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        // removing a rim hook of length k moves bead b to b - k; the height is
        // the number of beads jumped over
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = nb.iter().enumerate().map(|(j, &x)| x - (l - 1 - j)).filter(|&p| p > 0).collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&shape, rest);
    }
    mn_memo().lock().unwrap().insert(key, total);
    total
}

/// Number of permutations of cycle type μ: n!/z_μ.
pub fn class_size(mu: &Partition) -> BigInt {
    let fact: BigInt = (1..=mu.weight()).fold(BigInt::one(), |a, i| a * BigInt::from(i));
    fact.div_floor(&mu.z())
}

/// Dimension of the irreducible representation λ (standard Young tableaux count).
pub fn irrep_dimension(lambda: &Partition) -> u64 {
    let n = lambda.weight();
    let fact: BigInt = (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i));
    let hooks: BigInt = lambda.cells().fold(BigInt::one(), |a, (i, j)| a * BigInt::from(lambda.hook(i, j)));
    u64::try_from(fact / hooks).expect("dimension fits in u64")
}

type KostkaMemo = Mutex<HashMap<(Vec<usize>, Vec<usize>), u64>>;

fn kostka_memo() -> &'static KostkaMemo {
    static M: OnceLock<KostkaMemo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Kostka number K_{λμ}: semistandard tableaux of shape λ and content μ.
///
/// The content may be any composition; the count does not depend on its order.
pub fn kostka(lambda: &Partition, content: &[usize]) -> u64 {
    if lambda.weight() != content.iter().sum::<usize>() {
        return 0;
    }
    kostka_rec(lambda.parts(), content)
}

fn kostka_rec(shape: &[usize], content: &[usize]) -> u64 {
    let Some((&last, init)) = content.split_last() else {
        return u64::from(shape.is_empty());
    };
    if last == 0 {
        return kostka_rec(shape, init);
    }
    let key = (shape.to_vec(), content.to_vec());
    if let Some(&v) = kostka_memo().lock().unwrap().get(&key) {
        return v;
    }
    // the cells holding the largest letter form a horizontal strip of size `last`
    let mut total = 0;
    let mut inner = vec![0usize; shape.len()];
    strips(shape, 0, last, &mut inner, &mut |nu| {
        let nu: Vec<usize> = nu.iter().copied().filter(|&p| p > 0).collect();
        total += kostka_rec(&nu, init);
    });
    kostka_memo().lock().unwrap().insert(key, total);
    total
}

/// Enumerates ν ⊆ λ with λ/ν a horizontal strip of the given size.
fn strips(shape: &[usize], i: usize, left: usize, nu: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if i == shape.len() {
        if left == 0 {
            f(nu);
        }
        return;
    }
    let lower = shape.get(i + 1).copied().unwrap_or(0);
    let max_remove = (shape[i] - lower).min(left);
    for remove in 0..=max_remove {
        nu[i] = shape[i] - remove;
        strips(shape, i + 1, left - remove, nu, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::partition::{all_partitions, part};

    #[test]
    fn character_examples() {
        for mu in all_partitions(4) {
            assert_eq!(sn_character(&part(&[4]), &mu).unwrap(), 1);
        }
        assert_eq!(sn_character(&part(&[1, 1, 1]), &part(&[2, 1])).unwrap(), -1);
        assert_eq!(sn_character(&part(&[2, 1]), &part(&[3])).unwrap(), -1);
        assert_eq!(sn_character(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), 2);
        assert!(sn_character(&part(&[2, 1]), &part(&[2])).is_err());
    }

    /// Brute force: the 2-dimensional irreducible of S_3 is the permutation
    /// representation on C^3 minus the trivial one, so its character is
    /// (#fixed points) - 1.
    #[test]
    fn standard_representation_of_s3() {
        for (mu, fixed) in [(part(&[1, 1, 1]), 3), (part(&[2, 1]), 1), (part(&[3]), 0)] {
            assert_eq!(sn_character(&part(&[2, 1]), &mu).unwrap(), fixed - 1);
        }
    }

    #[test]
    fn orthogonality() {
        for n in 1..=6 {
            let ps = all_partitions(n);
            let fact: BigInt = (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i));
            for l in &ps {
                for v in &ps {
                    let s: BigInt = ps
                        .iter()
                        .map(|mu| {
                            class_size(mu)
                                * BigInt::from(sn_character(l, mu).unwrap())
                                * BigInt::from(sn_character(v, mu).unwrap())
                        })
                        .sum();
                    let expected = if l == v { fact.clone() } else { BigInt::from(0) };
                    assert_eq!(s, expected, "n={n} {l} {v}");
                }
            }
        }
    }

    #[test]
    fn dimensions_match_identity_character() {
        for n in 1..=7 {
            for l in all_partitions(n) {
                let chi = sn_character(&l, &Partition::column(n)).unwrap();
                assert_eq!(chi as u64, irrep_dimension(&l));
            }
        }
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&part(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(kostka(&part(&[3, 2]), &[2, 2, 1]), 2);
        assert_eq!(kostka(&part(&[2, 2]), &[3, 1]), 0);
        assert_eq!(kostka(&part(&[4, 1]), &[2, 3]), 1);
        // content order does not matter
        assert_eq!(kostka(&part(&[3, 2, 1]), &[1, 2, 3]), kostka(&part(&[3, 2, 1]), &[3, 2, 1]));
    }
}
