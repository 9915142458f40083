//! `harm`: compute diagonally harmonic spaces from the command line.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 resource cap,
//! 4 verification failure, 1 anything else.

mod cache;
mod render;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use diagharm::groups::{GeneratorPolicy, GroupSpec};
use diagharm::harmonics::{frobenius_series, hilbert_series, EngineConfig, GradedSeries, DEFAULT_MAX_ENTRIES};
use diagharm::universal::{closed_form, extract_universal, low_degree_approx, universal_frobenius, UniversalExpansion};
use diagharm::Error;

use cache::{Cache, CacheError};
use render::{Expansions, Format, UniversalReport};

#[derive(Parser)]
#[command(name = "harm", version, about = "Diagonally harmonic polynomials of the reflection groups G(m,p,n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multigraded Hilbert series with its Schur and h expansions.
    Hilbert(SeriesArgs),
    /// Hilbert series with S_n multiplicities (symmetric groups only).
    Frobenius(SeriesArgs),
    /// Universal expansion, read off in n sets and checked against n − 1.
    Universal(EngineArgs),
    /// Closed form for cyclic groups, dihedral groups and G(m,1,2).
    ClosedForm {
        #[command(flatten)]
        group: GroupArg,
        /// Also extract the expansion with the engine and compare.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Low-degree approximation of the universal Frobenius table of S_n.
    Approx {
        #[command(flatten)]
        group: GroupArg,
        /// Truncation degree in q (default n).
        #[arg(long)]
        max_tdeg: Option<usize>,
        /// Compare with the exact table computed by the engine.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::Quick)]
        suite: verify::Suite,
        /// Write a JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct GroupArg {
    /// `S4`, `B3`, `C6`, `I2(5)` or `G(m,p,n)`.
    #[arg(long, value_parser = parse_group)]
    group: GroupSpec,
}

#[derive(Args)]
struct EngineArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Generators of the invariant ideal (default: polarized where available).
    #[arg(long, value_parser = parse_policy)]
    policy: Option<GeneratorPolicy>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Component cache file.
    #[arg(long, env = "HARM_CACHE")]
    cache: Option<PathBuf>,
    /// Largest candidates × monomials matrix allowed for one component.
    #[arg(long, default_value_t = DEFAULT_MAX_ENTRIES)]
    max_entries: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    engine: EngineArgs,
    /// Number of sets of variables.
    #[arg(long, default_value_t = 1)]
    sets: usize,
    /// Stop after this total degree.
    #[arg(long)]
    max_tdeg: Option<usize>,
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_policy(s: &str) -> Result<GeneratorPolicy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Engine(#[from] Error),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 3 for resource limits, 2 for bad input, 4 for failed checks.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine(e) => match e {
                Error::ResourceCap { .. } | Error::GroupTooLarge { .. } => 3,
                Error::GroupParse(_)
                | Error::InvalidGroup { .. }
                | Error::UnsupportedPolicy(_)
                | Error::UnsupportedFamily(_)
                | Error::InvalidArgument(_) => 2,
                _ => 1,
            },
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 4,
            CliError::Cache(_) | CliError::Io(_) => 1,
        }
    }
}

fn set_jobs(jobs: Option<usize>) {
    if let Some(j) = jobs {
        // fails only if the pool was already built, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
}

/// Computes a series, serving it from the cache when every component is there.
struct SeriesSource {
    cache: Option<Cache>,
    max_entries: usize,
}

impl SeriesSource {
    fn new(args: &EngineArgs) -> Result<Self, CliError> {
        set_jobs(args.jobs);
        let cache = args.cache.as_deref().map(Cache::open).transpose()?;
        Ok(SeriesSource { cache, max_entries: args.max_entries })
    }

    fn get(
        &mut self,
        g: &GroupSpec,
        sets: usize,
        policy: GeneratorPolicy,
        max_tdeg: Option<usize>,
        frobenius: bool,
    ) -> Result<GradedSeries, CliError> {
        if sets == 0 {
            return Err(CliError::Usage("--sets must be at least 1".into()));
        }
        let top = max_tdeg.map_or(g.degree_bound(), |m| m.min(g.degree_bound()));
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.lookup(g, sets, policy, top, frobenius)) {
            return Ok(hit);
        }
        let config =
            EngineConfig { policy: Some(policy), max_tdeg, max_entries: self.max_entries, ..EngineConfig::default() };
        let start = Instant::now();
        let series = if frobenius { frobenius_series(g, sets, &config)? } else { hilbert_series(g, sets, &config)? };
        if let Some(c) = self.cache.as_mut() {
            c.store(&series, start.elapsed().as_secs_f64())?;
        }
        Ok(series)
    }
}

fn resolve_policy(g: &GroupSpec, policy: Option<GeneratorPolicy>) -> GeneratorPolicy {
    policy.unwrap_or_else(|| GeneratorPolicy::default_for(g))
}

fn cmd_series(args: &SeriesArgs, frobenius: bool) -> Result<String, CliError> {
    let e = &args.engine;
    let g = e.group.group;
    if frobenius && !g.is_symmetric() {
        return Err(CliError::Usage(format!("Frobenius series are computed for symmetric groups only, not {g}")));
    }
    let mut source = SeriesSource::new(e)?;
    let s = source.get(&g, args.sets, resolve_policy(&g, e.policy), args.max_tdeg, frobenius)?;
    let exp = Expansions::of(&s)?;
    let rows = if frobenius { Some(render::frobenius_rows(&s)?) } else { None };
    Ok(render::series(&s, &exp, rows.as_ref(), e.format))
}

fn cmd_universal(args: &EngineArgs) -> Result<String, CliError> {
    let g = args.group.group;
    let n = g.n();
    let policy = resolve_policy(&g, args.policy);
    let mut source = SeriesSource::new(args)?;
    let series = source.get(&g, n, policy, None, false)?;
    let lower = if n > 1 { Some(source.get(&g, n - 1, policy, None, false)?) } else { None };
    let expansion = extract_universal(&series, lower.as_ref())?;
    let rep = UniversalReport { series: &series, expansion: &expansion, certified_against: lower.map(|l| l.r()) };
    Ok(render::universal(&rep, args.format))
}

fn cmd_closed_form(g: GroupSpec, check: bool, format: Format) -> Result<String, CliError> {
    let f = closed_form(&g)?;
    let mut out = render::symfunc_forms(&format!("closed form for {g}"), &f, format);
    if check {
        let engine = diagharm::universal::universal_expansion(&g, &EngineConfig::default())?;
        let formula = UniversalExpansion::from_symfunc(g, &f)?;
        if engine.coefficients() != formula.coefficients() {
            return Err(CliError::Verification(format!(
                "{g}: the engine gives {:?}, the closed form {:?}",
                engine.coefficients(),
                formula.coefficients()
            )));
        }
        if format == Format::Text {
            out.push_str("engine: agrees\n");
        }
    }
    Ok(out)
}

fn cmd_approx(g: GroupSpec, max_tdeg: Option<usize>, check: bool, format: Format) -> Result<String, CliError> {
    if !g.is_symmetric() {
        return Err(CliError::Usage(format!("the approximation is defined for symmetric groups only, not {g}")));
    }
    let n = g.n();
    let d = max_tdeg.unwrap_or(n);
    let approx = low_degree_approx(n, d)?;
    let differences = if check {
        let table = universal_frobenius(&frobenius_series(&g, n, &EngineConfig::default())?)?;
        Some(approx.discrepancies(&table, d)?)
    } else {
        None
    };
    Ok(render::approximation(n, d, approx.schur_form(), approx.hilbert(), differences.as_deref(), format))
}

fn cmd_verify(suite: verify::Suite, report: Option<PathBuf>, jobs: Option<usize>) -> Result<String, CliError> {
    set_jobs(jobs);
    let mut stdout = std::io::stdout();
    let rep = verify::run(suite, &mut |c| {
        let _ = writeln!(stdout, "{}", verify::line(c));
    });
    if let Some(path) = report {
        std::fs::write(&path, serde_json::to_string_pretty(&rep.to_json()).expect("report serializes") + "\n")?;
    }
    let summary = rep.summary_line();
    if rep.passed() {
        Ok(summary + "\n")
    } else {
        Err(CliError::Verification(summary))
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Hilbert(args) => cmd_series(&args, false),
        Command::Frobenius(args) => cmd_series(&args, true),
        Command::Universal(args) => cmd_universal(&args),
        Command::ClosedForm { group, check, format } => cmd_closed_form(group.group, check, format),
        Command::Approx { group, max_tdeg, check, format } => cmd_approx(group.group, max_tdeg, check, format),
        Command::Verify { suite, report, jobs } => cmd_verify(suite, report, jobs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
