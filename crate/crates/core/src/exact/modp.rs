//! Arithmetic modulo the prime 2^61 − 1 and rational reconstruction.
//!
//! Used as a fast first pass: results are always lifted back to ℚ and checked
//! exactly before they are trusted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{FastRational, Rational};

pub const PRIME: u64 = (1 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    // 2^61 ≡ 1, so fold the high bits onto the low ones
    let lo = (p as u64) & PRIME;
    let hi = (p >> 61) as u64;
    add(lo, hi)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut out = 1;
    while e > 0 {
        if e & 1 == 1 {
            out = mul(out, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    out
}

/// Inverse of a nonzero residue.
pub fn inv(a: u64) -> u64 {
    assert!(a != 0, "inverse of zero");
    pow(a, PRIME - 2)
}

pub fn from_i64(v: i64) -> u64 {
    let r = v.rem_euclid(PRIME as i64);
    r as u64
}

fn from_bigint(v: &BigInt) -> u64 {
    let r = v.mod_floor(&BigInt::from(PRIME));
    r.to_u64().expect("reduced residue fits")
}

/// The residue of `q`, or `None` when the prime divides its denominator.
pub fn from_rational(q: &Rational) -> Option<u64> {
    let d = from_bigint(q.denom());
    (d != 0).then(|| mul(from_bigint(q.numer()), inv(d)))
}

pub fn from_fast(q: &FastRational) -> Option<u64> {
    match q {
        FastRational::Small(n, d) => {
            let d = from_i64(*d);
            (d != 0).then(|| mul(from_i64(*n), inv(d)))
        }
        FastRational::Big(q) => from_rational(q),
    }
}

/// The fraction `a/b` with `|a|, b < 2^30` congruent to `x`, if any.
pub fn reconstruct(x: u64) -> Option<FastRational> {
    const BOUND: i128 = 1 << 30;
    if x == 0 {
        return Some(FastRational::zero());
    }
    // extended Euclid on (p, x), stopping once the remainder drops below the bound
    let (mut r0, mut r1) = (PRIME as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 >= BOUND {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() >= BOUND {
        return None;
    }
    let (num, den) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    let q = Rational::new(BigInt::from(num), BigInt::from(den));
    if q.denom().is_zero() || q.numer().is_negative() != (num < 0) {
        return None;
    }
    Some(FastRational::from_rational(&q))
}

/// Reduced row echelon form over F_p for dense rows, grown one row at a
/// time while tracking how each stored row combines the inputs.
pub struct DenseEchelon {
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    combos: Option<Vec<Vec<u64>>>,
    inputs: usize,
}

impl DenseEchelon {
    pub fn new(width: usize, track: bool) -> Self {
        DenseEchelon { width, rows: Vec::new(), pivots: Vec::new(), combos: track.then(Vec::new), inputs: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored rows. Returns the relation
    /// (coefficients of the inputs so far) when `row` is dependent.
    pub fn push(&mut self, mut row: Vec<u64>) -> Option<Vec<u64>> {
        debug_assert_eq!(row.len(), self.width);
        let idx = self.inputs;
        self.inputs += 1;
        let mut combo = self.combos.as_ref().map(|_| {
            let mut c = vec![0u64; idx + 1];
            c[idx] = 1;
            c
        });
        for (k, &pc) in self.pivots.iter().enumerate() {
            let f = row[pc];
            if f == 0 {
                continue;
            }
            let prow = &self.rows[k];
            for j in pc..self.width {
                if prow[j] != 0 {
                    row[j] = sub(row[j], mul(f, prow[j]));
                }
            }
            if let (Some(c), Some(cs)) = (combo.as_mut(), self.combos.as_ref()) {
                for (j, &v) in cs[k].iter().enumerate() {
                    if v != 0 {
                        c[j] = sub(c[j], mul(f, v));
                    }
                }
            }
        }
        match row.iter().position(|&v| v != 0) {
            None => combo,
            Some(pc) => {
                let s = inv(row[pc]);
                for v in row[pc..].iter_mut() {
                    *v = mul(*v, s);
                }
                if let (Some(mut c), Some(cs)) = (combo, self.combos.as_mut()) {
                    for v in c.iter_mut() {
                        *v = mul(*v, s);
                    }
                    cs.push(c);
                }
                self.pivots.push(pc);
                self.rows.push(row);
                None
            }
        }
    }

    /// The stored rows in reduced row echelon form, sorted by pivot.
    pub fn into_rref(self) -> Vec<Vec<u64>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.pivots[k]);
        let pivots: Vec<usize> = order.iter().map(|&k| self.pivots[k]).collect();
        let mut slots: Vec<Option<Vec<u64>>> = self.rows.into_iter().map(Some).collect();
        let mut rows: Vec<Vec<u64>> = order.iter().map(|&k| slots[k].take().unwrap()).collect();
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i);
            let src = &tail[0];
            let pc = pivots[i];
            for h in head.iter_mut() {
                let f = h[pc];
                if f == 0 {
                    continue;
                }
                for j in pc..self.width {
                    if src[j] != 0 {
                        h[j] = sub(h[j], mul(f, src[j]));
                    }
                }
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn field_operations() {
        let a = from_i64(-5);
        assert_eq!(add(a, 5), 0);
        assert_eq!(mul(inv(a), a), 1);
        assert_eq!(mul(PRIME - 1, PRIME - 1), 1);
    }

    #[test]
    fn reconstruction_round_trip() {
        for (n, d) in [(0, 1), (1, 1), (-3, 7), (123456, 654321), (-(1 << 29), 3)] {
            let q = rat(n, d);
            let x = from_rational(&q).unwrap();
            assert_eq!(reconstruct(x).unwrap().to_big(), q);
        }
    }

    #[test]
    fn echelon_relations_and_rref() {
        let mut e = DenseEchelon::new(3, true);
        assert!(e.push(vec![1, 2, 3]).is_none());
        assert!(e.push(vec![0, 1, 1]).is_none());
        let rel = e.push(vec![2, 5, 7]).unwrap();
        // 2·r0 + 1·r1 − r2 = 0, scaled so the last input has coefficient 1
        assert_eq!(rel, vec![from_i64(-2), from_i64(-1), 1]);
        let rref = e.into_rref();
        assert_eq!(rref, vec![vec![1, 0, 1], vec![0, 1, 1]]);
    }
}
