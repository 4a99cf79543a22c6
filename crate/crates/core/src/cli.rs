//! Command-line front end. Every verb prints tab-separated rows on stdout;
//! diagnostics go to stderr. Exit status: 0 when every requested check
//! passes, 1 when a check fails, 2 for unusable input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::certificate::{conclude_commonality, Certificate, CertificateError};
use crate::decomposition::find_triangle_decomposition;
use crate::density::suite::{random_graphon, random_rational_graphon, random_suite, SUITE_SEED};
use crate::density::{expansion_value, m, t_hom, t_induced, GraphonError, StepGraphon};
use crate::graph::catalog::{listing, named};
use crate::inequalities::{InequalityReport, Outcome};
use crate::search::{estimate_ramsey_constant, exact_ramsey_multiplicity, minimize_m, MinimizeConfig, RamseyError};
use crate::{Graph, GraphError, Scalar};

/// Denominator of the entries of `random:<k>:<seed>` in exact mode.
const EXACT_RANDOM_DENOMINATOR: i64 = 16;

#[derive(Debug, Parser)]
#[command(name = "common", version, about = "Monochromatic subgraph densities, commonality checks and certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Rational arithmetic where supported; graphon inputs must be fractions.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Override the pass tolerance of numerical checks.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Seed for random suites and searches.
    #[arg(long, global = true, default_value_t = SUITE_SEED)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homomorphism (or induced) density t_H(W).
    Density {
        graph: String,
        #[arg(long, default_value = "half")]
        graphon: String,
        /// Induced density instead of homomorphism density.
        #[arg(long)]
        induced: bool,
    },
    /// Monochromatic density m_H(W) = t_H(W) + t_H(1 - W).
    M {
        graph: String,
        #[arg(long, default_value = "half")]
        graphon: String,
    },
    /// Compare m_H with its even-subgraph expansion.
    ExpandCheck {
        graph: String,
        /// A single graphon; without it the random suite is used.
        #[arg(long)]
        graphon: Option<String>,
        /// Random graphons in the suite (after the corner cases).
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Triangle-tree recognition with phi and kappa.
    Tritree {
        graph: String,
        /// Also print the decomposition.
        #[arg(long)]
        show: bool,
    },
    /// Run the inequality checks over a random suite.
    Inequalities {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// One row per check and graphon instead of a per-check summary.
        #[arg(long)]
        all: bool,
    },
    /// Verify a certificate file (default: the bundled one).
    VerifyCertificate {
        file: Option<PathBuf>,
        /// Random graphons for the numerical part.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Search for a step graphon minimising m_H.
    Minimize {
        graph: String,
        #[arg(long, default_value_t = 2)]
        parts: usize,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 400)]
        iterations: usize,
        #[arg(long)]
        optimize_weights: bool,
    },
    /// Exact Ramsey multiplicity M(H; n) for n <= 8.
    Ramsey { graph: String, n: usize },
    /// List catalog names, or print one graph.
    Catalog { name: Option<String> },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Graphon(#[from] GraphonError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error(transparent)]
    Ramsey(#[from] RamseyError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

/// Catalog name, or a path to a graph file.
pub fn parse_graph(spec: &str) -> Result<Graph, CliError> {
    match named(spec) {
        Ok(g) => Ok(g),
        Err(_) if Path::new(spec).is_file() => Ok(read(Path::new(spec))?.parse()?),
        Err(e) => Err(e.into()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// `half`, `block:<file>` or `random:<k>:<seed>`.
pub fn parse_graphon<S: Scalar>(spec: &str) -> Result<StepGraphon<S>, CliError> {
    if spec == "half" {
        return Ok(StepGraphon::half());
    }
    if let Some(path) = spec.strip_prefix("block:") {
        return Ok(read(Path::new(path))?.parse()?);
    }
    if let Some(rest) = spec.strip_prefix("random:") {
        let (k, seed) = rest
            .split_once(':')
            .and_then(|(k, s)| Some((k.parse::<usize>().ok()?, s.parse::<u64>().ok()?)))
            .filter(|(k, _)| (1..=16).contains(k))
            .ok_or_else(|| CliError::Usage(format!("expected random:<k>:<seed> with 1 <= k <= 16, got `{spec}`")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok(if S::EXACT {
            random_rational_graphon(&mut rng, k, EXACT_RANDOM_DENOMINATOR).convert(S::from_rational)
        } else {
            random_graphon(&mut rng, k).convert(|x| S::from_rational(&f64_to_rational(*x)))
        });
    }
    Err(CliError::Usage(format!("unknown graphon `{spec}`; use half, block:<file> or random:<k>:<seed>")))
}

fn f64_to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Runs a parsed command; `Ok(false)` means a requested check failed.
pub fn run(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<bool, CliError> {
    match cli.global.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
            pool.install(|| dispatch(cli, out))
        }
        None => dispatch(cli, out),
    }
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
    };
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Density { graph, graphon, induced } => {
            let h = parse_graph(graph)?;
            if g.exact {
                let w = parse_graphon::<BigRational>(graphon)?;
                emit!(out, "{}", if *induced { t_induced(&h, &w) } else { t_hom(&h, &w) })?;
            } else {
                let w = parse_graphon::<f64>(graphon)?;
                emit!(out, "{}", if *induced { t_induced(&h, &w) } else { t_hom(&h, &w) })?;
            }
            Ok(true)
        }
        Command::M { graph, graphon } => {
            let h = parse_graph(graph)?;
            if g.exact {
                emit!(out, "{}", m(&h, &parse_graphon::<BigRational>(graphon)?))?;
            } else {
                emit!(out, "{}", m(&h, &parse_graphon::<f64>(graphon)?))?;
            }
            Ok(true)
        }
        Command::ExpandCheck { graph, graphon, count } => expand_check(g, graph, graphon.as_deref(), *count, out),
        Command::Tritree { graph, show } => {
            let h = parse_graph(graph)?;
            let report = find_triangle_decomposition(&h);
            let verdict = if report.is_triangle_tree() { "triangle-tree" } else { "not-triangle-tree" };
            emit!(out, "{verdict} phi={} kappa={}", report.phi, report.kappa)?;
            if let (true, Some(d)) = (*show, &report.decomposition) {
                write!(out, "{}", d.to_text()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
            }
            Ok(true)
        }
        Command::Inequalities { count, all } => inequalities(g, *count, *all, out),
        Command::VerifyCertificate { file, trials } => {
            let cert: Certificate = match file {
                Some(path) => read(path)?.parse()?,
                None => Certificate::appendix(),
            };
            let report = conclude_commonality(&cert, &random_suite(g.seed, *trials));
            write!(out, "{report}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
            emit!(out, "verdict\t{}", if report.passed() { "pass" } else { "FAIL" })?;
            Ok(report.passed())
        }
        Command::Minimize { graph, parts, restarts, iterations, optimize_weights } => {
            let h = parse_graph(graph)?;
            if *parts == 0 || *restarts == 0 {
                return Err(CliError::Usage("--parts and --restarts must be positive".into()));
            }
            let cfg = MinimizeConfig {
                parts: *parts,
                restarts: *restarts,
                max_iterations: *iterations,
                seed: g.seed,
                optimize_weights: *optimize_weights,
                ..Default::default()
            };
            let r = minimize_m(&h, &cfg);
            emit!(out, "value\ttarget\tverdict\trestart\ttrace_len")?;
            emit!(out, "{}", r.to_tsv())?;
            write!(out, "{}", r.best.to_text()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
            Ok(true)
        }
        Command::Ramsey { graph, n } => {
            let h = parse_graph(graph)?;
            let count = exact_ramsey_multiplicity(&h, *n)?;
            let ratio = estimate_ramsey_constant(&h, *n)?;
            emit!(out, "M\t{count}\tratio\t{ratio}\t# labelled copies are injective maps")?;
            Ok(true)
        }
        Command::Catalog { name } => {
            match name {
                Some(name) => write!(out, "{}", parse_graph(name)?.to_text())
                    .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?,
                None => {
                    for name in listing() {
                        let h = named(name)?;
                        emit!(out, "{name}\t{}\t{}", h.n(), h.edge_count())?;
                    }
                }
            }
            Ok(true)
        }
    }
}

fn expand_check(
    g: &GlobalOpts,
    graph: &str,
    graphon: Option<&str>,
    count: usize,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let h = parse_graph(graph)?;
    if g.exact {
        let w = parse_graphon::<BigRational>(graphon.unwrap_or("random:3:1"))?;
        let (direct, expanded) = (m(&h, &w), expansion_value(&h, &w)?);
        let ok = direct == expanded;
        emit!(out, "{direct}\t{expanded}\t{}", if ok { "equal" } else { "DIFFER" })?;
        return Ok(ok);
    }
    let tolerance = g.tolerance.unwrap_or(1e-9);
    let suite = match graphon {
        Some(spec) => vec![parse_graphon::<f64>(spec)?],
        None => random_suite(g.seed, count),
    };
    let mut ok = true;
    for (i, w) in suite.iter().enumerate() {
        let (direct, expanded) = (m(&h, w), expansion_value(&h, w)?);
        let diff = (direct - expanded).abs();
        ok &= diff <= tolerance;
        emit!(out, "{i}\t{direct:.15}\t{expanded:.15}\t{diff:.3e}")?;
    }
    Ok(ok)
}

fn inequalities(g: &GlobalOpts, count: usize, all: bool, out: &mut dyn Write) -> Result<bool, CliError> {
    let suite = random_suite(g.seed, count);
    let reports: Vec<InequalityReport> = crate::inequalities::run_suite(&suite);
    let judge = |r: &InequalityReport| match (g.tolerance, &r.outcome) {
        (_, Outcome::NotApplicable(_)) => true,
        (Some(tol), _) => r.holds_within(tol),
        (None, _) => r.holds(),
    };
    if all {
        for r in &reports {
            emit!(out, "{r}")?;
        }
    } else {
        // name -> (checked, violated, not applicable, min slack)
        let mut summary: BTreeMap<&str, (usize, usize, usize, f64)> = BTreeMap::new();
        for r in &reports {
            let e = summary.entry(r.name.as_str()).or_insert((0, 0, 0, f64::INFINITY));
            e.0 += 1;
            if !judge(r) {
                e.1 += 1;
            }
            if matches!(r.outcome, Outcome::NotApplicable(_)) {
                e.2 += 1;
            } else if r.slack.is_finite() {
                e.3 = e.3.min(r.slack);
            }
        }
        emit!(out, "name\tchecked\tviolated\tnot_applicable\tmin_slack")?;
        for (name, (checked, violated, na, min)) in summary {
            emit!(out, "{name}\t{checked}\t{violated}\t{na}\t{min:.3e}")?;
        }
    }
    Ok(reports.iter().all(judge))
}
