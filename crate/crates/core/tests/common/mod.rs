#![allow(dead_code)]

use std::collections::BTreeMap;

use diagharm::exact::{int, Rational};
use diagharm::symfunc::{Basis, Partition, SymFunc};

/// Parses sums such as `1 + 3h1 + 2h21 - h(10,2)`: an optional integer
/// coefficient, then a letter followed by one digit per part, or by a
/// parenthesized list when a part exceeds 9. A bare number is a constant.
pub fn parse_terms(s: &str) -> BTreeMap<Partition, i64> {
    let mut out = BTreeMap::new();
    let normalized = s.replace(' ', "").replace('-', "+-");
    for token in normalized.split('+').filter(|t| !t.is_empty()) {
        let (sign, body) = match token.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, token),
        };
        let split = body.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(body.len());
        let (coef, rest) = body.split_at(split);
        let coef: i64 = if coef.is_empty() { 1 } else { coef.parse().expect("coefficient") };
        let parts: Vec<usize> = if rest.is_empty() {
            Vec::new()
        } else {
            let p = &rest[1..];
            match p.strip_prefix('(') {
                Some(list) => list.trim_end_matches(')').split(',').map(|x| x.parse().unwrap()).collect(),
                None => p.chars().map(|c| c.to_digit(10).expect("part") as usize).collect(),
            }
        };
        let entry = out.entry(Partition::new(parts).expect("partition")).or_insert(0);
        *entry += sign * coef;
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn symfunc(basis: Basis, s: &str) -> SymFunc {
    SymFunc::from_terms(basis, parse_terms(s).into_iter().map(|(p, c)| (p, int(c))))
}

pub fn rational_terms(f: &SymFunc) -> BTreeMap<Partition, Rational> {
    f.terms().clone()
}

pub fn unsigned(m: &BTreeMap<Partition, i64>) -> BTreeMap<Partition, u64> {
    m.iter().map(|(p, &c)| (p.clone(), c as u64)).collect()
}
