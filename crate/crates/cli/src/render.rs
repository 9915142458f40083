//! Text, JSON and LaTeX output.

use std::collections::BTreeMap;
use std::fmt::Write;

use clap::ValueEnum;
use diagharm::exact::Rational;
use diagharm::harmonics::GradedSeries;
use diagharm::symfunc::{render_terms, Basis, Notation, Partition, SymFunc};
use diagharm::universal::{dimension_polynomial, h_expansion, UniversalExpansion};
use diagharm::Result;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::cache::GroupKey;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

pub fn rational_json(c: &Rational) -> Value {
    match (c.is_integer(), c.numer().to_i64()) {
        (true, Some(v)) => json!(v),
        _ => json!(c.to_string()),
    }
}

pub fn terms_json(terms: &BTreeMap<Partition, Rational>) -> Value {
    Value::Array(terms.iter().map(|(mu, c)| json!({ "mu": mu.parts(), "coeff": rational_json(c) })).collect())
}

fn int_terms(terms: &BTreeMap<Partition, i64>) -> BTreeMap<Partition, Rational> {
    terms.iter().map(|(mu, &c)| (mu.clone(), Rational::from_integer(c.into()))).collect()
}

/// `q1^2 q2` (text) or `q_1^{2} q_2` (LaTeX); a single set uses `t`.
fn monomial(d: &[usize], notation: Notation) -> String {
    let var = |i: usize| match (d.len(), notation) {
        (1, _) => "t".to_string(),
        (_, Notation::Text) => format!("q{}", i + 1),
        (_, Notation::Latex) => format!("q_{}", i + 1),
    };
    let factors: Vec<String> = d
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| match (e, notation) {
            (1, _) => var(i),
            (_, Notation::Text) => format!("{}^{e}", var(i)),
            (_, Notation::Latex) => format!("{}^{{{e}}}", var(i)),
        })
        .collect();
    factors.join(" ")
}

fn series_polynomial(s: &GradedSeries, notation: Notation) -> String {
    let terms: Vec<String> = s
        .entries()
        .into_iter()
        .map(|(d, v)| match (v, d.iter().all(|&x| x == 0)) {
            (_, true) => v.to_string(),
            (1, false) => monomial(d, notation),
            _ if notation == Notation::Latex => format!("{v}\\,{}", monomial(d, notation)),
            _ => format!("{v} {}", monomial(d, notation)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn degree_text(d: &[usize]) -> String {
    let s: Vec<String> = d.iter().map(ToString::to_string).collect();
    format!("[{}]", s.join(","))
}

/// The Schur expansion of a series and the h-expansion of that Schur form.
pub struct Expansions {
    pub schur: BTreeMap<Partition, Rational>,
    pub h: BTreeMap<Partition, Rational>,
}

impl Expansions {
    pub fn of(s: &GradedSeries) -> Result<Self> {
        let schur = s.to_sympoly()?.schur_expand()?;
        let h = SymFunc::from_terms(Basis::S, schur.clone()).to_basis(Basis::H).terms().clone();
        Ok(Expansions { schur, h })
    }
}

/// Irreducible λ with the Schur expansion of `Σ_d b_λ(d) q^d`.
pub type FrobeniusRows = BTreeMap<Partition, BTreeMap<Partition, Rational>>;

pub fn frobenius_rows(s: &GradedSeries) -> Result<FrobeniusRows> {
    s.frobenius_sympolys()?.into_iter().map(|(l, p)| Ok((l, p.schur_expand()?))).collect()
}

fn header(s: &GradedSeries) -> String {
    let g = s.group();
    let sets = if s.r() == 1 { "1 set".to_string() } else { format!("{} sets", s.r()) };
    format!("{g} = G({},{},{}), {sets} of variables, {} generators", g.m(), g.p(), g.n(), s.policy())
}

fn completeness(s: &GradedSeries) -> String {
    if s.is_complete() {
        format!("complete: vanishes above total degree {}", s.max_tdeg())
    } else {
        format!("truncated at total degree {}", s.max_tdeg())
    }
}

fn series_json(s: &GradedSeries, exp: &Expansions) -> serde_json::Map<String, Value> {
    let hilbert: Vec<Value> = s.entries().into_iter().map(|(d, v)| json!({ "degree": d, "dim": v })).collect();
    let mut map = serde_json::Map::new();
    map.insert("group".into(), json!(GroupKey::from(s.group())));
    map.insert("sets".into(), json!(s.r()));
    map.insert("policy".into(), json!(s.policy().name()));
    map.insert("hilbert".into(), Value::Array(hilbert));
    map.insert("schur".into(), terms_json(&exp.schur));
    map.insert("h".into(), terms_json(&exp.h));
    map.insert("complete".into(), json!(s.is_complete()));
    map.insert("max_tdeg".into(), json!(s.max_tdeg()));
    map.insert("total_dim".into(), json!(s.total_dim()));
    map
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
}

pub fn series(s: &GradedSeries, exp: &Expansions, frob: Option<&FrobeniusRows>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut map = series_json(s, exp);
            if let (Some(rows), Some(per_degree)) = (frob, s.frobenius()) {
                let rows: Vec<Value> =
                    rows.iter().map(|(l, t)| json!({ "lambda": l.parts(), "schur": terms_json(t) })).collect();
                map.insert("frobenius".into(), Value::Array(rows));
                let comps: Vec<Value> = s
                    .entries()
                    .into_iter()
                    .map(|(d, _)| {
                        let m: Vec<Value> = per_degree
                            .get(d)
                            .into_iter()
                            .flatten()
                            .map(|(l, c)| json!({ "lambda": l.parts(), "mult": c }))
                            .collect();
                        json!({ "degree": d, "multiplicities": m })
                    })
                    .collect();
                map.insert("components".into(), Value::Array(comps));
            }
            pretty(Value::Object(map))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{}", header(s)).unwrap();
            writeln!(out, "{}", completeness(s)).unwrap();
            writeln!(out, "total dimension: {}", s.total_dim()).unwrap();
            let by: Vec<String> = s.by_total_degree().iter().map(ToString::to_string).collect();
            writeln!(out, "by total degree: {}", by.join(" ")).unwrap();
            writeln!(out, "series: {}", series_polynomial(s, Notation::Text)).unwrap();
            writeln!(out, "multidegree table:").unwrap();
            for (d, v) in s.entries() {
                writeln!(out, "  {:<16} {v}", degree_text(d)).unwrap();
            }
            writeln!(out, "Schur expansion: {}", render_terms(&exp.schur, "s", Notation::Text)).unwrap();
            writeln!(out, "h-expansion: {}", render_terms(&exp.h, "h", Notation::Text)).unwrap();
            if let Some(rows) = frob {
                writeln!(out, "Frobenius characteristic, coefficient of S_lambda(w):").unwrap();
                for (l, t) in rows {
                    writeln!(out, "  S{l}: {}", render_terms(t, "s", Notation::Text)).unwrap();
                }
            }
            out
        }
        Format::Latex => {
            let mut out = String::new();
            writeln!(out, "% {}; {}", header(s), completeness(s)).unwrap();
            writeln!(out, "\\[ {} \\]", series_polynomial(s, Notation::Latex)).unwrap();
            writeln!(out, "\\[ {} \\]", render_terms(&exp.schur, "s", Notation::Latex)).unwrap();
            writeln!(out, "\\[ {} \\]", render_terms(&exp.h, "h", Notation::Latex)).unwrap();
            if let Some(rows) = frob {
                writeln!(out, "\\begin{{align*}}").unwrap();
                let lines: Vec<String> = rows
                    .iter()
                    .map(|(l, t)| {
                        let name = diagharm::symfunc::basis_name("S", l, Notation::Latex);
                        format!("  {name}(\\mathbf{{w}}) &: {}", render_terms(t, "s", Notation::Latex))
                    })
                    .collect();
                writeln!(out, "{}", lines.join(" \\\\\n")).unwrap();
                writeln!(out, "\\end{{align*}}").unwrap();
            }
            out
        }
    }
}

/// Output of the `universal` command.
pub struct UniversalReport<'a> {
    pub series: &'a GradedSeries,
    pub expansion: &'a UniversalExpansion,
    /// Number of sets of the independently computed series the restriction
    /// was checked against.
    pub certified_against: Option<usize>,
}

pub fn universal(rep: &UniversalReport, format: Format) -> String {
    let u = rep.expansion;
    let schur = int_terms(u.coefficients());
    let h = int_terms(&h_expansion(u));
    let dim = dimension_polynomial(u);
    let verdict = match rep.certified_against {
        Some(r) => format!("restriction to {r} sets reproduces the series computed there"),
        None => "no smaller number of sets to check against".to_string(),
    };
    match format {
        Format::Json => {
            let mut map = series_json(rep.series, &Expansions { schur, h });
            map.insert("dimension_polynomial".into(), json!(dim.display_in("r")));
            map.insert("certified_against".into(), json!(rep.certified_against));
            map.insert("schur_positive".into(), json!(u.is_schur_positive()));
            pretty(Value::Object(map))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{}", header(rep.series)).unwrap();
            writeln!(out, "Schur coefficients c_mu:").unwrap();
            for (mu, c) in u.coefficients() {
                writeln!(out, "  {:<12} {c}", mu.to_string()).unwrap();
            }
            writeln!(out, "Schur form: {}", render_terms(&schur, "s", Notation::Text)).unwrap();
            writeln!(out, "h-form: {}", render_terms(&h, "h", Notation::Text)).unwrap();
            writeln!(out, "Schur positive: {}", if u.is_schur_positive() { "yes" } else { "no" }).unwrap();
            writeln!(out, "dimension in r sets: {}", dim.display_in("r")).unwrap();
            writeln!(out, "certification: {verdict}").unwrap();
            out
        }
        Format::Latex => {
            let mut out = String::new();
            writeln!(out, "% {}; {verdict}", header(rep.series)).unwrap();
            writeln!(out, "\\[ {} \\]", render_terms(&schur, "s", Notation::Latex)).unwrap();
            writeln!(out, "\\[ {} \\]", render_terms(&h, "h", Notation::Latex)).unwrap();
            writeln!(out, "\\[ {} \\]", dim.display_in("r")).unwrap();
            out
        }
    }
}

/// A symmetric function in the h and Schur bases, e.g. a closed form.
pub fn symfunc_forms(title: &str, f: &SymFunc, format: Format) -> String {
    let h = f.to_basis(Basis::H);
    let s = f.to_basis(Basis::S);
    match format {
        Format::Json => pretty(json!({
            "title": title,
            "h": terms_json(h.terms()),
            "schur": terms_json(s.terms()),
        })),
        Format::Text => {
            format!("{title}\nh-form: {}\nSchur form: {}\n", h.render(Notation::Text), s.render(Notation::Text))
        }
        Format::Latex => {
            format!("% {title}\n\\[ {} \\]\n\\[ {} \\]\n", h.render(Notation::Latex), s.render(Notation::Latex))
        }
    }
}

/// Rows of a low-degree approximation, `λ ↦ Schur form`, with optional
/// differences against the exact table.
pub fn approximation(
    n: usize,
    truncation: usize,
    rows: &BTreeMap<Partition, SymFunc>,
    hilbert: &SymFunc,
    differences: Option<&[(Partition, Partition, Rational)]>,
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let rows: Vec<Value> =
                rows.iter().map(|(l, f)| json!({ "lambda": l.parts(), "schur": terms_json(f.terms()) })).collect();
            let mut map = serde_json::Map::new();
            map.insert("n".into(), json!(n));
            map.insert("truncation".into(), json!(truncation));
            map.insert("rows".into(), Value::Array(rows));
            map.insert("hilbert".into(), terms_json(hilbert.terms()));
            if let Some(diff) = differences {
                let d: Vec<Value> = diff
                    .iter()
                    .map(|(l, mu, c)| json!({ "lambda": l.parts(), "mu": mu.parts(), "exact_minus_approx": rational_json(c) }))
                    .collect();
                map.insert("differences".into(), Value::Array(d));
            }
            pretty(Value::Object(map))
        }
        Format::Text | Format::Latex => {
            let notation = if format == Format::Text { Notation::Text } else { Notation::Latex };
            let mut out = String::new();
            writeln!(out, "n = {n}, through q-degree {truncation}; coefficient of S_lambda(w):").unwrap();
            for (l, f) in rows {
                writeln!(out, "  S{l}: {} + O({})", f.render(notation), truncation + 1).unwrap();
            }
            writeln!(out, "Hilbert series: {} + O({})", hilbert.render(notation), truncation + 1).unwrap();
            if let Some(diff) = differences {
                if diff.is_empty() {
                    writeln!(out, "agrees with the exact table through degree {truncation}").unwrap();
                } else {
                    writeln!(out, "differences from the exact table (exact minus approximation):").unwrap();
                    for (l, mu, c) in diff {
                        writeln!(out, "  S{l}: {c} s{mu}").unwrap();
                    }
                }
            }
            out
        }
    }
}
