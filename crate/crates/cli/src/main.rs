//! `grasstwist`: plabic graphs, dimers, webs, mutation classes and the
//! verification suites from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use grasstwist::algebra::{AlgebraError, Fp, Modulus, PlueckerIndex};
use grasstwist::dimer::{DimerError, DimerModel, MultiDimer};
use grasstwist::harness::{self, Config, Format, HarnessError, Suite, PRIME_ENV, SEED_ENV};
use grasstwist::plabic::{PlabicError, PlabicGraph};
use grasstwist::quiver::{Guard, MutationClass, QuiverError, Seed};
use grasstwist::web::{boundary_for_product, enumerate_nonelliptic, kk_two_row, parse_boundary, Tableau, Web, WebError};

#[derive(Debug, Parser)]
#[command(name = "grasstwist", version, about = "Twists of Grassmannian cluster variables via dimers and webs")]
struct Cli {
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build, check and transform plabic graphs.
    #[command(subcommand)]
    Plabic(PlabicCmd),
    /// Dimers and twisted partition functions.
    #[command(subcommand)]
    Dimer(DimerCmd),
    /// Non-elliptic webs, skein reduction and tableaux.
    #[command(subcommand)]
    Web(WebCmd),
    /// Cluster mutation classes from a top-cell seed.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum PlabicCmd {
    /// Top-cell graph for Gr(k, n) as JSON.
    Build {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a graph file and print its trip permutation.
    Validate {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Face labels of a graph, one per line.
    Labels {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Apply a square move at the face with the given label.
    SquareMove {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        face: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum DimerCmd {
    /// List dimers with a boundary condition, one per line with its face weight.
    Enumerate {
        #[arg(long)]
        graph: PathBuf,
        /// Boundary labels such as `3,4,6`; with `--fold` above 1 a label
        /// appears once per covering.
        #[arg(long)]
        boundary: String,
        #[arg(long, default_value_t = 1)]
        fold: u8,
    },
    /// Twisted partition functions as Laurent polynomials in face labels.
    Twist {
        #[arg(long)]
        graph: PathBuf,
        /// Only this index set; all k-subsets when omitted.
        #[arg(long)]
        j: Option<String>,
        /// Every k-subset (the default).
        #[arg(long, conflicts_with = "j")]
        all_j: bool,
    },
}

#[derive(Debug, Subcommand)]
enum WebCmd {
    /// Non-elliptic webs for a boundary string such as `BBBBBBBW`.
    Enumerate {
        #[arg(long)]
        boundary: String,
        /// Only webs without boundary-to-boundary paths.
        #[arg(long)]
        pathless: bool,
        /// Print JSON web files instead of compact lines.
        #[arg(long)]
        json: bool,
    },
    /// Skein-reduce a web file to non-elliptic webs.
    Reduce {
        #[arg(long)]
        web: PathBuf,
    },
    /// Proper colorings compatible with a product of three minors.
    ColorCount {
        #[arg(long)]
        web: PathBuf,
        /// Three index sets, e.g. `124,356,178` or `(124)(356)(178)`.
        #[arg(long)]
        sets: String,
    },
    /// Web of a triple dimer or matching of a double dimer.
    FromDimer {
        #[arg(long)]
        graph: PathBuf,
        /// Display form such as `[0,3x2,7]`.
        #[arg(long)]
        dimer: String,
        #[arg(long, default_value_t = 3)]
        fold: u8,
    },
    /// Two-row Khovanov-Kuperberg matchings.
    Kk {
        /// Rows separated by `/`, shortest first, e.g. `2 5 6 / 1 3 4`.
        #[arg(long, conflicts_with = "shape")]
        tableau: Option<String>,
        /// Every standard tableau of a two-row shape such as `3,3`.
        #[arg(long)]
        shape: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum QuiverCmd {
    /// Breadth-first mutation class; CSV of cluster variables.
    Explore {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Name variables as Plückers or dihedral translates of X, Y, A, B, C, Z.
        #[arg(long)]
        identify: bool,
        #[arg(long, default_value_t = grasstwist::quiver::DEFAULT_SEED_LIMIT)]
        max_seeds: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 7)]
        seed: u64,
        #[arg(long, env = PRIME_ENV)]
        prime: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    #[value(name = "structured-text", alias = "text")]
    Text,
    Csv,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::accepted()))]
    suite: String,
    #[arg(long, env = SEED_ENV, default_value_t = 7)]
    seed: u64,
    #[arg(long, env = PRIME_ENV)]
    prime: Option<u64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Plabic(#[from] PlabicError),
    #[error(transparent)]
    Dimer(#[from] DimerError),
    #[error(transparent)]
    Web(#[from] WebError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0} verification check(s) failed")]
    Failed(usize),
}

impl CliError {
    /// 1 for failed checks or exhausted budgets, 2 for bad input.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) | CliError::Quiver(QuiverError::Budget { .. }) => 1,
            _ => 2,
        }
    }
}

/// Prints a line; a closed pipe ends the process quietly, as `head` expects.
macro_rules! emit {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            return Err(CliError::Io { path: "<stdout>".into(), source: e });
        }
    }};
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => {
            emit!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<PlabicGraph, CliError> {
    Ok(PlabicGraph::from_json(&read(path)?)?)
}

fn load_web(path: &Path) -> Result<Web, CliError> {
    Ok(Web::from_json(&read(path)?)?)
}

fn modulus(prime: Option<u64>) -> Result<Modulus, CliError> {
    Ok(prime.map(Modulus::new).transpose()?.unwrap_or_default())
}

fn plabic(cmd: PlabicCmd) -> Result<(), CliError> {
    match cmd {
        PlabicCmd::Build { k, n, out } => {
            if k == 0 || k >= n || n > 16 {
                return Err(CliError::Usage(format!("need 0 < k < n <= 16, got k={k} n={n}")));
            }
            write_or_print(out.as_deref(), &PlabicGraph::top_cell(k, n).to_json())
        }
        PlabicCmd::Validate { graph } => {
            let g = load_graph(&graph)?;
            let perm: Vec<String> = g.trip_permutation()?.iter().map(u8::to_string).collect();
            let (white, black) = g.internal_counts();
            emit!("valid k={} n={} edges={} inner_faces={}", g.k(), g.n(), g.edges().len(), g.inner_faces().count());
            emit!("internal white={white} black={black}");
            emit!("trip permutation {}", perm.join(" "));
            Ok(())
        }
        PlabicCmd::Labels { graph } => {
            for j in load_graph(&graph)?.label_set()? {
                emit!("{j}");
            }
            Ok(())
        }
        PlabicCmd::SquareMove { graph, face, out } => {
            let g = load_graph(&graph)?.square_move(face.parse()?)?;
            write_or_print(out.as_deref(), &g.to_json())
        }
    }
}

/// Coverage per boundary label from a list that may repeat labels.
fn coverage(n: usize, list: &str) -> Result<Vec<u8>, CliError> {
    let mut cover = vec![0u8; n];
    for t in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let i: usize = t.parse().map_err(|_| CliError::Usage(format!("boundary label {t:?}")))?;
        let slot = i.checked_sub(1).and_then(|i| cover.get_mut(i)).ok_or_else(|| CliError::Usage(format!("label {i} outside 1..={n}")))?;
        *slot += 1;
    }
    Ok(cover)
}

fn dimer(cmd: DimerCmd) -> Result<(), CliError> {
    match cmd {
        DimerCmd::Enumerate { graph, boundary, fold } => {
            let m = DimerModel::new(load_graph(&graph)?)?;
            if fold <= 1 {
                for d in m.dimers(boundary.parse()?)? {
                    emit!("{d}\t{}", m.dimer_weight(&d));
                }
            } else {
                for d in m.multi_dimers(fold, &coverage(m.n(), &boundary)?)? {
                    emit!("{d}\t{}", m.face_weight(&d));
                }
            }
            Ok(())
        }
        DimerCmd::Twist { graph, j, .. } => {
            let m = DimerModel::new(load_graph(&graph)?)?;
            let sets = match j {
                Some(j) => vec![j.parse()?],
                None => PlueckerIndex::all(m.k(), m.n()),
            };
            for j in sets {
                emit!("{j}\t{}", m.twist_partition(j)?);
            }
            Ok(())
        }
    }
}

/// Three index sets from `124,356,178` or `(124)(356)(178)`.
fn three_sets(s: &str) -> Result<[PlueckerIndex; 3], CliError> {
    let parts: Vec<&str> = if s.contains('(') {
        s.split(')').map(|p| p.trim().trim_start_matches(',').trim()).filter(|p| !p.is_empty()).map(|p| p.trim_start_matches('(')).collect()
    } else {
        s.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()).collect()
    };
    let sets: Vec<PlueckerIndex> = parts.iter().map(|p| p.parse()).collect::<Result<_, _>>()?;
    sets.try_into().map_err(|v: Vec<_>| CliError::Usage(format!("expected three index sets, got {}", v.len())))
}

fn web(cmd: WebCmd) -> Result<(), CliError> {
    match cmd {
        WebCmd::Enumerate { boundary, pathless, json } => {
            let webs = enumerate_nonelliptic(&parse_boundary(&boundary)?)?;
            for w in webs.iter().filter(|w| !pathless || !w.has_path()) {
                emit!("{}", if json { w.to_json() } else { w.describe() });
            }
            Ok(())
        }
        WebCmd::Reduce { web } => {
            emit!("{}", load_web(&web)?.reduce());
            Ok(())
        }
        WebCmd::ColorCount { web, sets } => {
            let w = load_web(&web)?;
            emit!("{}", w.coloring_count(&boundary_for_product(w.n(), &three_sets(&sets)?))?);
            Ok(())
        }
        WebCmd::FromDimer { graph, dimer, fold } => {
            let m = DimerModel::new(load_graph(&graph)?)?;
            let d = MultiDimer::parse(&dimer, fold, m.edge_count())?;
            match fold {
                2 => emit!("{}", m.matching_of(&d)?),
                3 => emit!("{}", m.web_of(&d)?.to_json()),
                f => return Err(CliError::Usage(format!("fold must be 2 or 3, got {f}"))),
            }
            Ok(())
        }
        WebCmd::Kk { tableau, shape } => {
            let tableaux = match (tableau, shape) {
                (Some(t), _) => vec![t.parse::<Tableau>()?],
                (None, Some(s)) => {
                    let (a, b) = s
                        .split_once(',')
                        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                        .filter(|&(a, b): &(usize, usize)| a >= b)
                        .ok_or_else(|| CliError::Usage(format!("shape {s:?}: expected a,b with a >= b")))?;
                    Tableau::all_two_row(a, b)
                }
                (None, None) => return Err(CliError::Usage("give --tableau or --shape".into())),
            };
            for t in tableaux {
                emit!("{t}\t{}", kk_two_row(&t)?);
            }
            Ok(())
        }
    }
}

fn quiver(cmd: QuiverCmd) -> Result<(), CliError> {
    let QuiverCmd::Explore { k, n, identify, max_seeds, seed, prime } = cmd;
    if k < 2 || k >= n || n > 12 {
        return Err(CliError::Usage(format!("need 2 <= k < n <= 12, got k={k} n={n}")));
    }
    let cfg = Config { seed, modulus: modulus(prime)?, ..Config::default() };
    let g = PlabicGraph::top_cell(k, n);
    let points: Vec<_> = cfg.samples(k, n, "quiver/explore").into_iter().take(2).map(|s| s.plain).collect();
    let mut class = MutationClass::explore(&Seed::<Fp>::from_plabic(&g, &points)?, Guard { max_seeds })?;
    if identify {
        class.identify(&points);
    }
    eprintln!("{} seeds, {} mutable and {} frozen variables", class.seeds, class.mutable_count(), class.frozen_count());
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    w.write_record(["id", "frozen", "identification", "orbit_representative"])?;
    for (i, v) in class.variables.iter().enumerate() {
        let (name, rep) = match &v.identity {
            Some((e, negated)) => {
                let sign = if *negated { "-" } else { "" };
                (format!("{sign}{e}"), e.canonical().to_string())
            }
            None => (String::new(), String::new()),
        };
        w.write_record([format!("x{i}"), v.frozen.to_string(), name, rep])?;
    }
    w.flush().map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<(), CliError> {
    let cfg = Config { seed: args.seed, modulus: modulus(args.prime)?, ..Config::default() };
    let report = harness::run(args.suite.parse()?, &cfg);
    let format = match args.format {
        ReportFormat::Text => Format::Text,
        ReportFormat::Csv => Format::Csv,
    };
    write_or_print(args.out.as_deref(), &report.render(format))?;
    eprint!("{}", report.timing_lines());
    match report.failures().count() {
        0 => Ok(()),
        bad => Err(CliError::Failed(bad)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Plabic(c) => plabic(c),
        Command::Dimer(c) => dimer(c),
        Command::Web(c) => web(c),
        Command::Quiver(c) => quiver(c),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

