//! The `boxhelly` command line.
//!
//! Exit codes: 0 success, 1 a bound verdict FAILed (or an I/O failure),
//! 2 usage, parse, hypothesis or limit errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analytics::{count_pairs_naive, edge_list};
use crate::bounds::{
    bounds_report_from, effective_k, t_exact_1d, t_upper_bound, thm4_size_for, BoundsReport,
    Verdict, FLOAT_SLACK,
};
use crate::constructions::{gen_random_family, gen_staircase_family, gen_turan_family, RandomParams};
use crate::depth::{max_depth, DepthWitness};
use crate::error::Error;
use crate::extraction::extract;
use crate::geometry::BoxFamily;
use crate::io::{edges_to_json, edges_to_lines, family_from_json, family_to_json, FamilyFile};
use crate::rational::{format_rational, parse_rational, serde_str_opt, to_f64, Rational};
use crate::search::{search_extremal_1d, search_extremal_d};

pub const THREADS_ENV: &str = "BOXHELLY_THREADS";

#[derive(Debug, Parser)]
#[command(name = "boxhelly", version, about = "Exact analytics for families of axis-parallel boxes")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeFormat {
    /// A JSON array of `[i, j]` pairs.
    Json,
    /// One `i j` line per edge.
    Pairs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a family file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Pair statistics and maximum depth of a family.
    Analyze {
        input: PathBuf,
        /// Also write the intersection graph's edge list to this path.
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EdgeFormat::Pairs)]
        edges_format: EdgeFormat,
    },
    /// Deep point by per-axis stabbing, compared to the optimum.
    Extract { input: PathBuf },
    /// Evaluate every bound and check the family against it.
    Verify {
        input: PathBuf,
        /// Claimed depth bound; defaults to the measured depth.
        #[arg(long)]
        k: Option<usize>,
        /// Corollary slack, as `p/q` or a decimal.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Exhaustive extremal search over small families.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Slab family whose intersection graph is complete d-partite.
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Open intervals (i, i + k), i = 1..n.
    Staircase {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Seeded random boxes on a dyadic grid.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "100")]
        extent: String,
        #[arg(long, default_value = "1")]
        side_min: String,
        #[arg(long, default_value = "50")]
        side_max: String,
        /// Generate open boxes instead of closed ones.
        #[arg(long)]
        open: bool,
    },
}

#[derive(Debug)]
pub enum CliError {
    Engine(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => 1,
            CliError::Engine(_) | CliError::Usage(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

/// What a command produced: its rendered output and whether it contradicts
/// a proven statement.
struct Outcome {
    output: String,
    failed: bool,
}

trait Report: Serialize {
    fn text(&self) -> String;
    fn csv(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
            Format::Csv => self.csv(),
        }
    }
}

fn opt_rational(r: &Option<Rational>) -> String {
    r.as_ref().map(format_rational).unwrap_or_else(|| "-".into())
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_else(|| "-".into())
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

#[derive(Debug, Serialize)]
struct DegreeCount {
    degree: usize,
    count: usize,
}

#[derive(Debug, Serialize)]
struct AnalyzeReport {
    label: Option<String>,
    n: usize,
    dim: usize,
    pairs: u64,
    #[serde(with = "serde_str_opt")]
    alpha: Option<Rational>,
    degree_histogram: Vec<DegreeCount>,
    max_depth: usize,
    witness: Option<DepthWitness>,
}

impl Report for AnalyzeReport {
    fn text(&self) -> String {
        let mut s = String::new();
        if let Some(l) = &self.label {
            writeln!(s, "label: {l}").unwrap();
        }
        writeln!(s, "n: {}\ndim: {}\npairs: {}", self.n, self.dim, self.pairs).unwrap();
        writeln!(s, "alpha: {}", opt_rational(&self.alpha)).unwrap();
        writeln!(s, "degree histogram:").unwrap();
        for h in &self.degree_histogram {
            writeln!(s, "  {}: {}", h.degree, h.count).unwrap();
        }
        writeln!(s, "max depth: {}", self.max_depth).unwrap();
        if let Some(w) = &self.witness {
            writeln!(s, "witness point: {}", w.point).unwrap();
            writeln!(s, "members: {}", joined(&w.members)).unwrap();
        }
        s
    }

    fn csv(&self) -> String {
        let (point, members) = match &self.witness {
            Some(w) => (joined(w.point.coords().iter().map(format_rational)), joined(&w.members)),
            None => (String::new(), String::new()),
        };
        format!(
            "n,dim,pairs,alpha,max_depth,witness_point,members,degree_histogram\n{},{},{},{},{},{},{},{}\n",
            self.n,
            self.dim,
            self.pairs,
            self.alpha.as_ref().map(format_rational).unwrap_or_default(),
            self.max_depth,
            point,
            members,
            joined(self.degree_histogram.iter().map(|h| format!("{}:{}", h.degree, h.count))),
        )
    }
}

#[derive(Debug, Serialize)]
struct ExtractReport {
    n: usize,
    dim: usize,
    #[serde(with = "serde_str_opt")]
    alpha: Option<Rational>,
    extracted: DepthWitness,
    optimal_depth: usize,
    miss_sizes: Vec<usize>,
    /// Whether the pair fraction exceeds `1 - 1/d^2`.
    hypothesis: bool,
    thm4_size: Option<f64>,
    /// Extracted depth reaches the deep-point bound (when the hypothesis holds).
    guarantee: Option<bool>,
    /// Every `|D_i|` is within `sqrt(1 - alpha) n` (when the hypothesis holds).
    miss_bound_holds: Option<bool>,
}

impl Report for ExtractReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n: {}\ndim: {}\nalpha: {}", self.n, self.dim, opt_rational(&self.alpha)).unwrap();
        writeln!(s, "extracted point: {}", self.extracted.point).unwrap();
        writeln!(s, "extracted depth: {}", self.extracted.depth).unwrap();
        writeln!(s, "optimal depth: {}", self.optimal_depth).unwrap();
        writeln!(s, "miss sizes: {}", joined(&self.miss_sizes)).unwrap();
        writeln!(s, "hypothesis: {}", self.hypothesis).unwrap();
        writeln!(s, "bound: {}", opt(&self.thm4_size)).unwrap();
        writeln!(s, "guarantee: {}", opt(&self.guarantee)).unwrap();
        writeln!(s, "miss bound: {}", opt(&self.miss_bound_holds)).unwrap();
        s
    }

    fn csv(&self) -> String {
        format!(
            "n,dim,alpha,point,extracted_depth,optimal_depth,miss_sizes,hypothesis,thm4_size,guarantee,miss_bound_holds\n{},{},{},{},{},{},{},{},{},{},{}\n",
            self.n,
            self.dim,
            self.alpha.as_ref().map(format_rational).unwrap_or_default(),
            joined(self.extracted.point.coords().iter().map(format_rational)),
            self.extracted.depth,
            self.optimal_depth,
            joined(&self.miss_sizes),
            self.hypothesis,
            self.thm4_size.map(|v| v.to_string()).unwrap_or_default(),
            self.guarantee.map(|v| v.to_string()).unwrap_or_default(),
            self.miss_bound_holds.map(|v| v.to_string()).unwrap_or_default(),
        )
    }
}

impl Report for BoundsReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n: {}\nk: {}\nd: {}", self.n, self.k, self.d).unwrap();
        writeln!(s, "pairs: {}\nalpha: {}\ndepth: {}", self.pairs, opt_rational(&self.alpha), self.depth)
            .unwrap();
        writeln!(s, "t_upper: {}", opt_rational(&self.t_upper)).unwrap();
        writeln!(s, "t_exact_1d: {}", opt(&self.t_exact_1d)).unwrap();
        writeln!(s, "kalai_beta: {}", opt(&self.kalai_beta)).unwrap();
        writeln!(s, "eps: {}", opt_rational(&self.eps)).unwrap();
        writeln!(s, "corollary_size: {}", opt_rational(&self.corollary_size)).unwrap();
        writeln!(s, "thm4_size: {}", opt(&self.thm4_size)).unwrap();
        writeln!(s, "example_threshold: {}", format_rational(&self.example_threshold)).unwrap();
        writeln!(s, "pair_bound: {}", self.verdicts.pair_bound).unwrap();
        writeln!(s, "dense_depth: {}", opt(&self.verdicts.dense_depth)).unwrap();
        writeln!(s, "extraction: {}", self.verdicts.extraction).unwrap();
        s
    }

    fn csv(&self) -> String {
        format!(
            "n,k,d,pairs,alpha,depth,t_upper,t_exact_1d,kalai_beta,eps,corollary_size,thm4_size,example_threshold,pair_bound,dense_depth,extraction\n{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            self.n,
            self.k,
            self.d,
            self.pairs,
            self.alpha.as_ref().map(format_rational).unwrap_or_default(),
            self.depth,
            self.t_upper.as_ref().map(format_rational).unwrap_or_default(),
            self.t_exact_1d.map(|v| v.to_string()).unwrap_or_default(),
            self.kalai_beta.map(|v| v.to_string()).unwrap_or_default(),
            self.eps.as_ref().map(format_rational).unwrap_or_default(),
            self.corollary_size.as_ref().map(format_rational).unwrap_or_default(),
            self.thm4_size.map(|v| v.to_string()).unwrap_or_default(),
            format_rational(&self.example_threshold),
            self.verdicts.pair_bound,
            self.verdicts.dense_depth.map(|v| v.to_string()).unwrap_or_default(),
            self.verdicts.extraction,
        )
    }
}

#[derive(Debug, Serialize)]
struct SearchReport {
    n: usize,
    k: usize,
    d: usize,
    max_pairs: u64,
    enumerated: u64,
    /// Closed form for `d = 1`.
    t_exact_1d: Option<u64>,
    equality: Option<Verdict>,
    #[serde(with = "serde_str_opt")]
    t_upper: Option<Rational>,
    below_upper: Option<Verdict>,
    witness: FamilyFile,
}

impl Report for SearchReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n: {}\nk: {}\nd: {}", self.n, self.k, self.d).unwrap();
        writeln!(s, "max pairs: {}\nenumerated: {}", self.max_pairs, self.enumerated).unwrap();
        writeln!(s, "t_exact_1d: {}\nequality: {}", opt(&self.t_exact_1d), opt(&self.equality)).unwrap();
        writeln!(s, "t_upper: {}\nbelow upper: {}", opt_rational(&self.t_upper), opt(&self.below_upper))
            .unwrap();
        let family = BoxFamily::try_from(self.witness.clone()).expect("witness is valid");
        writeln!(s, "witness:").unwrap();
        for b in family.boxes() {
            writeln!(s, "  {b}").unwrap();
        }
        s
    }

    fn csv(&self) -> String {
        format!(
            "n,k,d,max_pairs,enumerated,t_exact_1d,equality,t_upper,below_upper\n{},{},{},{},{},{},{},{},{}\n",
            self.n,
            self.k,
            self.d,
            self.max_pairs,
            self.enumerated,
            self.t_exact_1d.map(|v| v.to_string()).unwrap_or_default(),
            self.equality.map(|v| v.to_string()).unwrap_or_default(),
            self.t_upper.as_ref().map(format_rational).unwrap_or_default(),
            self.below_upper.map(|v| v.to_string()).unwrap_or_default(),
        )
    }
}

fn read_family(path: &Path) -> Result<BoxFamily, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    Ok(family_from_json(&text)?)
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn parse_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn cmd_gen(kind: &GenKind) -> Result<Outcome, CliError> {
    let family = match kind {
        GenKind::Turan { n, d } => gen_turan_family(*n, *d)?,
        GenKind::Staircase { n, k } => gen_staircase_family(*n, *k)?,
        GenKind::Random { n, d, seed, extent, side_min, side_max, open } => {
            let params = RandomParams {
                extent: parse_arg("extent", extent)?,
                side_min: parse_arg("side-min", side_min)?,
                side_max: parse_arg("side-max", side_max)?,
                closed: !open,
            };
            gen_random_family(*n, *d, *seed, &params)?
        }
    };
    Ok(Outcome { output: family_to_json(&family), failed: false })
}

fn cmd_analyze(
    input: &Path,
    edges: Option<&Path>,
    edges_format: EdgeFormat,
    format: Format,
) -> Result<Outcome, CliError> {
    let family = read_family(input)?;
    let pairs = count_pairs_naive(&family);
    let witness = if family.is_empty() { None } else { Some(max_depth(&family)?) };
    if let Some(path) = edges {
        let list = edge_list(&family);
        let text = match edges_format {
            EdgeFormat::Json => edges_to_json(&list),
            EdgeFormat::Pairs => edges_to_lines(&list),
        };
        write_text(path, &text)?;
    }
    let report = AnalyzeReport {
        label: family.label().map(str::to_owned),
        n: family.len(),
        dim: family.dim(),
        pairs: pairs.pairs,
        alpha: pairs.alpha,
        degree_histogram: pairs
            .degree_histogram()
            .into_iter()
            .map(|(degree, count)| DegreeCount { degree, count })
            .collect(),
        max_depth: witness.as_ref().map_or(0, |w| w.depth),
        witness,
    };
    Ok(Outcome { output: report.render(format), failed: false })
}

fn cmd_extract(input: &Path, format: Format) -> Result<Outcome, CliError> {
    let family = read_family(input)?;
    let extraction = extract(&family)?;
    let optimal = max_depth(&family)?;
    let n = family.len();
    let d = family.dim();
    let alpha = count_pairs_naive(&family).alpha;
    let bound = alpha.as_ref().and_then(|a| thm4_size_for(n, d, a));
    let guarantee = bound.map(|b| extraction.witness.depth as i64 >= crate::bounds::ceil_with_slack(b));
    let miss_bound_holds = bound.map(|_| {
        let a = to_f64(alpha.as_ref().unwrap());
        let cap = (1.0 - a).max(0.0).sqrt() * n as f64 + FLOAT_SLACK * n as f64;
        extraction.miss_sizes.iter().all(|&m| m as f64 <= cap)
    });
    let failed = guarantee == Some(false) || miss_bound_holds == Some(false);
    let report = ExtractReport {
        n,
        dim: d,
        alpha,
        extracted: extraction.witness,
        optimal_depth: optimal.depth,
        miss_sizes: extraction.miss_sizes,
        hypothesis: bound.is_some(),
        thm4_size: bound,
        guarantee,
        miss_bound_holds,
    };
    Ok(Outcome { output: report.render(format), failed })
}

fn cmd_verify(input: &Path, k: Option<usize>, eps: Option<&str>, format: Format) -> Result<Outcome, CliError> {
    let family = read_family(input)?;
    let eps = eps.map(|e| parse_arg("eps", e)).transpose()?;
    let pairs = count_pairs_naive(&family);
    let depth = if family.is_empty() { 0 } else { max_depth(&family)?.depth };
    let report = bounds_report_from(family.len(), family.dim(), &pairs, depth, k, eps.as_ref())?;
    Ok(Outcome { output: report.render(format), failed: report.verdicts.any_fail() })
}

fn cmd_search(n: usize, k: usize, d: usize, format: Format) -> Result<Outcome, CliError> {
    let result = if d == 1 { search_extremal_1d(n, k)? } else { search_extremal_d(n, k, d)? };
    let (t_exact, equality) = if d == 1 && k <= n {
        let t = t_exact_1d(n, k)?;
        (Some(t), Some(if t == result.max_pairs { Verdict::Pass } else { Verdict::Fail }))
    } else {
        (None, None)
    };
    let t_upper = effective_k(n, k, d).map(|ke| t_upper_bound(n, ke, d)).transpose()?;
    let below_upper = t_upper.map(|t| {
        if Rational::from_integer(result.max_pairs as i128) < t { Verdict::Pass } else { Verdict::Fail }
    });
    let failed = equality == Some(Verdict::Fail) || below_upper == Some(Verdict::Fail);
    let report = SearchReport {
        n,
        k,
        d,
        max_pairs: result.max_pairs,
        enumerated: result.enumerated,
        t_exact_1d: t_exact,
        equality,
        t_upper,
        below_upper,
        witness: FamilyFile::from(&result.witness),
    };
    Ok(Outcome { output: report.render(format), failed })
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a thread count, got {value:?}")))?;
    #[cfg(feature = "parallel")]
    {
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Gen { kind } => cmd_gen(kind),
        Command::Analyze { input, edges, edges_format } => {
            cmd_analyze(input, edges.as_deref(), *edges_format, cli.format)
        }
        Command::Extract { input } => cmd_extract(input, cli.format),
        Command::Verify { input, k, eps } => cmd_verify(input, *k, eps.as_deref(), cli.format),
        Command::Search { n, k, d } => cmd_search(*n, *k, *d, cli.format),
    }
}

fn input_of(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Analyze { input, .. } | Command::Extract { input } | Command::Verify { input, .. } => {
            Some(input)
        }
        _ => None,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let written = match &cli.output {
        Some(path) => write_text(path, &outcome.output),
        None => {
            print!("{}", outcome.output);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    if outcome.failed {
        let source = input_of(&cli).map_or_else(|| "search".to_owned(), |p| p.display().to_string());
        eprintln!("FAIL: a bound verdict failed for {source}; this is a counterexample claim");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
