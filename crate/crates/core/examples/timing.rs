//! Times a Hilbert (or, with a third argument `frobenius`, Frobenius) series
//! computation and prints each component as it finishes.
//!
//! `cargo run --release --example timing -- S4 3 [frobenius]`

use std::sync::Arc;
use std::time::Instant;

use diagharm::groups::GroupSpec;
use diagharm::harmonics::{frobenius_series, hilbert_series, EngineConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() < 3 {
        eprintln!("usage: timing GROUP SETS [frobenius]");
        std::process::exit(2);
    }
    let g: GroupSpec = args[1].parse().expect("group");
    let r: usize = args[2].parse().expect("number of sets");
    let frob = args.get(3).is_some_and(|a| a == "frobenius");
    let start = Instant::now();
    let observer = Arc::new(move |d: &[usize], dim: usize| eprintln!("{:>8.2?} {d:?} dim {dim}", start.elapsed()));
    let cfg = EngineConfig { observer: Some(observer), ..EngineConfig::default() };
    let s = if frob { frobenius_series(&g, r, &cfg) } else { hilbert_series(&g, r, &cfg) }.expect("series");
    println!("{} r={} total={} {:?} in {:?}", g, r, s.total_dim(), s.by_total_degree(), start.elapsed());
}
