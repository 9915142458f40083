//! Symmetric functions over ℚ in the monomial, elementary, complete,
//! power-sum and Schur bases.
//!
//! Every change of basis goes through power sums, where multiplication and
//! plethysm are simple. A [`SymFunc`] may carry a truncation degree `D`, in
//! which case it stands for a power series known up to degree `D`.

pub mod characters;
pub mod partition;
pub mod plethysm;
pub mod sympoly;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use characters::{class_size, irrep_dimension, kostka, sn_character};
pub use partition::{all_partitions, part, partitions_of, Partition};
pub use plethysm::{plethysm, plethysm_poly};
pub use sympoly::{schur_expand, SymPolyR};

use crate::error::{Error, Result};
use crate::exact::matrix::invert_dense;
use crate::exact::{fmt_rational, Rational};
use crate::univariate::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    M,
    E,
    H,
    P,
    S,
}

impl Basis {
    pub fn letter(self) -> &'static str {
        match self {
            Basis::M => "m",
            Basis::E => "e",
            Basis::H => "h",
            Basis::P => "p",
            Basis::S => "s",
        }
    }
}

/// Output style for formal sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    /// `1 + 2 h[1] + h[2,1]`
    Text,
    /// `1 + 2 h_{1} + h_{21}`
    Latex,
}

type Terms = BTreeMap<Partition, Rational>;

/// A finite linear combination of basis elements, optionally truncated.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: Terms,
    truncation: Option<usize>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, terms: Terms::new(), truncation: None }
    }

    pub fn one(basis: Basis) -> Self {
        Self::term(basis, Partition::empty(), Rational::one())
    }

    /// `c · b_λ`.
    pub fn term(basis: Basis, lambda: Partition, c: Rational) -> Self {
        Self::from_terms(basis, [(lambda, c)])
    }

    /// The basis element `b_λ`.
    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        Self::term(basis, lambda, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Partition, Rational)>>(basis: Basis, terms: I) -> Self {
        let mut acc = Terms::new();
        for (l, c) in terms {
            add_into(&mut acc, l, &c);
        }
        SymFunc { basis, terms: acc, truncation: None }
    }

    /// `1 + h_1 + h_2 + … + h_d`, truncated at degree `d`.
    pub fn complete_series(d: usize) -> Self {
        Self::from_terms(Basis::H, (0..=d).map(|k| (Partition::row(k), Rational::one()))).truncated(d)
    }

    /// Drops every term above degree `d` and marks the result as truncated there.
    pub fn truncated(mut self, d: usize) -> Self {
        self.terms.retain(|l, _| l.weight() <= d);
        self.truncation = Some(self.truncation.map_or(d, |t| t.min(d)));
        self
    }

    /// Forgets the truncation marker (for values known to be polynomials).
    pub fn untruncated(mut self) -> Self {
        self.truncation = None;
        self
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::weight).max()
    }

    /// The homogeneous component of degree `k`.
    pub fn degree_part(&self, k: usize) -> SymFunc {
        SymFunc {
            basis: self.basis,
            terms: self.terms.iter().filter(|(l, _)| l.weight() == k).map(|(l, c)| (l.clone(), c.clone())).collect(),
            truncation: None,
        }
    }

    pub fn scale(&self, c: &Rational) -> SymFunc {
        let terms =
            if c.is_zero() { Terms::new() } else { self.terms.iter().map(|(l, a)| (l.clone(), a * c)).collect() };
        SymFunc { basis: self.basis, terms, truncation: self.truncation }
    }

    /// The same element expressed in another basis.
    pub fn to_basis(&self, target: Basis) -> SymFunc {
        if target == self.basis {
            return self.clone();
        }
        let mut by_degree: BTreeMap<usize, Vec<(&Partition, &Rational)>> = BTreeMap::new();
        for (l, c) in &self.terms {
            by_degree.entry(l.weight()).or_default().push((l, c));
        }
        let mut out = Terms::new();
        for (k, terms) in by_degree {
            let src = transition(self.basis, k);
            let dst = transition(target, k);
            let mut pv = vec![Rational::zero(); src.parts.len()];
            for (l, c) in terms {
                let row = &src.to_p[src.index[l]];
                for (j, a) in row.iter().enumerate() {
                    if !a.is_zero() {
                        pv[j] += c * a;
                    }
                }
            }
            for (j, v) in pv.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for (i, a) in dst.from_p[j].iter().enumerate() {
                    if !a.is_zero() {
                        add_into(&mut out, dst.parts[i].clone(), &(v * a));
                    }
                }
            }
        }
        SymFunc { basis: target, terms: out, truncation: self.truncation }
    }

    pub fn try_add(&self, other: &SymFunc) -> Result<SymFunc> {
        let truncation = combined_truncation(self.truncation, other.truncation)?;
        let mut terms = self.terms.clone();
        for (l, c) in other.to_basis(self.basis).terms {
            add_into(&mut terms, l, &c);
        }
        Ok(SymFunc { basis: self.basis, terms, truncation }.retrunc())
    }

    pub fn try_sub(&self, other: &SymFunc) -> Result<SymFunc> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    pub fn try_mul(&self, other: &SymFunc) -> Result<SymFunc> {
        let truncation = combined_truncation(self.truncation, other.truncation)?;
        let a = self.to_basis(Basis::P);
        let b = other.to_basis(Basis::P);
        let terms = p_product(&a.terms, &b.terms, truncation);
        Ok(SymFunc { basis: Basis::P, terms, truncation }.to_basis(self.basis))
    }

    fn retrunc(mut self) -> Self {
        if let Some(d) = self.truncation {
            self.terms.retain(|l, _| l.weight() <= d);
        }
        self
    }

    /// Renders with the basis letter (`h[2,1]` or `h_{21}`).
    pub fn render(&self, notation: Notation) -> String {
        render_terms(&self.terms, self.basis.letter(), notation)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Text))?;
        if let Some(d) = self.truncation {
            write!(f, " + O({d})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add for &SymFunc {
    type Output = SymFunc;
    fn add(self, rhs: &SymFunc) -> SymFunc {
        self.try_add(rhs).expect("incompatible truncations")
    }
}

impl std::ops::Sub for &SymFunc {
    type Output = SymFunc;
    fn sub(self, rhs: &SymFunc) -> SymFunc {
        self.try_sub(rhs).expect("incompatible truncations")
    }
}

impl std::ops::Mul for &SymFunc {
    type Output = SymFunc;
    fn mul(self, rhs: &SymFunc) -> SymFunc {
        self.try_mul(rhs).expect("incompatible truncations")
    }
}

fn combined_truncation(a: Option<usize>, b: Option<usize>) -> Result<Option<usize>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::IncompatibleTruncation(x, y)),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        (None, None) => Ok(None),
    }
}

pub(crate) fn add_into(acc: &mut Terms, l: Partition, c: &Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(l) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

/// Product of two power-sum expansions, dropping degrees above `trunc`.
pub(crate) fn p_product(a: &Terms, b: &Terms, trunc: Option<usize>) -> Terms {
    let mut out = Terms::new();
    for (la, ca) in a {
        for (lb, cb) in b {
            if trunc.is_some_and(|d| la.weight() + lb.weight() > d) {
                continue;
            }
            add_into(&mut out, la.union(lb), &(ca * cb));
        }
    }
    out
}

/// Change-of-basis data for one degree.
struct Transition {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// Row λ: the basis element b_λ in power sums.
    to_p: Vec<Vec<Rational>>,
    /// Row μ: p_μ in the basis.
    from_p: Vec<Vec<Rational>>,
}

type TransitionCache = Mutex<HashMap<(Basis, usize), Arc<Transition>>>;

fn transition(basis: Basis, k: usize) -> Arc<Transition> {
    static CACHE: OnceLock<TransitionCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(basis, k)) {
        return t.clone();
    }
    let parts = all_partitions(k);
    let index: HashMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let dense = |terms: &Terms| -> Vec<Rational> {
        let mut row = vec![Rational::zero(); parts.len()];
        for (l, c) in terms {
            row[index[l]] = c.clone();
        }
        row
    };
    let to_p: Vec<Vec<Rational>> = match basis {
        Basis::P => identity(parts.len()),
        Basis::H | Basis::E => parts.iter().map(|l| dense(&multiplicative_to_p(basis, l))).collect(),
        Basis::S => parts
            .iter()
            .map(|l| parts.iter().map(|mu| Rational::new(BigInt::from(sn_character(l, mu).unwrap()), mu.z())).collect())
            .collect(),
        Basis::M => {
            // m is dual to h under the Hall inner product, for which the
            // power sums are orthogonal with ⟨p_μ, p_μ⟩ = z_μ.
            let h = transition(Basis::H, k);
            let az: Vec<Vec<Rational>> = h
                .to_p
                .iter()
                .map(|row| row.iter().zip(&parts).map(|(a, mu)| a * Rational::from_integer(mu.z())).collect())
                .collect();
            let inv = invert_dense(&az, &Rational::one()).expect("h basis is invertible");
            (0..parts.len()).map(|i| (0..parts.len()).map(|j| inv[j][i].clone()).collect()).collect()
        }
    };
    let from_p = if basis == Basis::P {
        identity(parts.len())
    } else {
        invert_dense(&to_p, &Rational::one()).expect("transition matrices are invertible")
    };
    let t = Arc::new(Transition { parts, index, to_p, from_p });
    cache.lock().unwrap().insert((basis, k), t.clone());
    t
}

fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

/// h_λ or e_λ in power sums, as a product of single-row factors.
fn multiplicative_to_p(basis: Basis, lambda: &Partition) -> Terms {
    let mut acc: Terms = [(Partition::empty(), Rational::one())].into_iter().collect();
    for &k in lambda.parts() {
        let factor: Terms = all_partitions(k)
            .into_iter()
            .map(|mu| {
                let sign = if basis == Basis::E { mu.sign() } else { 1 };
                let c = Rational::new(BigInt::from(sign), mu.z());
                (mu, c)
            })
            .collect();
        acc = p_product(&acc, &factor, None);
    }
    acc
}

/// Renders `Σ c_λ X_λ` with the given letter.
pub fn render_terms(terms: &BTreeMap<Partition, Rational>, letter: &str, notation: Notation) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let sep_plus = if notation == Notation::Text { " + " } else { "+" };
    let sep_minus = if notation == Notation::Text { " - " } else { "-" };
    let mut out = String::new();
    for (l, c) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        let name = basis_name(letter, l, notation);
        let coeff = match notation {
            Notation::Text => fmt_rational(&a),
            Notation::Latex if a.is_integer() => a.numer().to_string(),
            Notation::Latex => format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom()),
        };
        let body = if l.is_empty() {
            coeff
        } else if a.is_one() {
            name
        } else if notation == Notation::Text {
            format!("{coeff} {name}")
        } else {
            format!("{coeff}\\,{name}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { sep_minus } else { sep_plus });
        }
        out.push_str(&body);
    }
    out
}

/// `h[2,1]` in text, `h_{21}` in LaTeX (comma-separated when a part exceeds 9).
pub fn basis_name(letter: &str, l: &Partition, notation: Notation) -> String {
    match notation {
        Notation::Text => {
            let s: Vec<String> = l.parts().iter().map(ToString::to_string).collect();
            format!("{letter}[{}]", s.join(","))
        }
        Notation::Latex => {
            let sep = if l.parts().iter().any(|&p| p > 9) { "," } else { "" };
            let s: Vec<String> = l.parts().iter().map(ToString::to_string).collect();
            format!("{letter}_{{{}}}", s.join(sep))
        }
    }
}

/// `f(t, 0, 0, …)` up to degree `d`.
pub fn principal_specialization(f: &SymFunc, d: usize) -> UPoly {
    let mut coeffs = vec![Rational::zero(); d + 1];
    for (l, c) in &f.terms {
        let k = l.weight();
        if k > d {
            continue;
        }
        let survives = match f.basis {
            Basis::H | Basis::P => true,
            Basis::S | Basis::M => l.len() <= 1,
            Basis::E => l.parts().iter().all(|&p| p == 1),
        };
        if survives {
            coeffs[k] += c;
        }
    }
    UPoly::from_coeffs(coeffs)
}

/// The q-multinomial `n!_t / Π λ_i!_t`.
pub fn qbinomial(n: usize, lambda: &Partition) -> Result<UPoly> {
    if lambda.weight() != n {
        return Err(Error::WeightMismatch(format!("{lambda} is not a partition of {n}")));
    }
    let den = lambda.parts().iter().fold(UPoly::one(), |acc, &p| &acc * &UPoly::q_factorial(p));
    let (q, r) = UPoly::q_factorial(n).div_rem(&den);
    debug_assert!(r.is_zero());
    Ok(q)
}

/// `s_μ(1, …, 1)` with `r` ones, by the hook-content formula.
pub fn schur_at_ones(mu: &Partition, r: usize) -> Rational {
    schur_dimension_poly(mu).eval_int(r as i64)
}

/// `s_μ(1^r)` as a polynomial in `r`: `Π_{cells} (r + c) / h`.
pub fn schur_dimension_poly(mu: &Partition) -> UPoly {
    let mut p = UPoly::one();
    for (i, j) in mu.cells() {
        let content = j as i64 - i as i64;
        let h = mu.hook(i, j) as i64;
        let lin = UPoly::from_coeffs(vec![Rational::new(content.into(), h.into()), Rational::new(1.into(), h.into())]);
        p = &p * &lin;
    }
    p
}
