use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dibs_cli::harness::{self, parse_list, Curve, Sweep};
use dibs_cli::{extract, generate, load_graph, read_file, verify, write_output, Algo, CliError, ExtractRequest, VerifyOutcome};
use dibs_core::dense::PairSearch;
use dibs_core::GeneratorParams;

#[derive(Parser)]
#[command(name = "dibs", version, about = "Dense induced bipartite subgraphs of triangle-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in edge-list format.
    Generate {
        #[arg(long, value_enum)]
        model: Model,
        /// Base graph for blowups: c5, petersen, clebsch, alon3, cN, kN.
        #[arg(long, default_value = "c5")]
        base: String,
        /// Blob sizes; a single value applies to every base vertex.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        sizes: Vec<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0.04)]
        c: f64,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, env = "DIBS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a certified induced bipartite subgraph.
    Extract {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        algo: AlgoArg,
        /// Degree parameter; defaults to the minimum degree.
        #[arg(long)]
        d: Option<usize>,
        /// Clique bound for `reduce`.
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, env = "DIBS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        /// Pair budget for sampled mode (default 10n).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a graph. Exit 0 pass, 1 fail, 2 unreadable input.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Sweep instances and write the best verified value per cell as CSV.
    Experiment {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Vertex counts, e.g. `500` or `100,200` or `100..103`.
        #[arg(long, default_value = "")]
        n: String,
        /// Degree targets (g-curve).
        #[arg(long, default_value = "")]
        d: String,
        #[arg(long, default_value = "blowup")]
        models: String,
        #[arg(long, env = "DIBS_SEED", default_value = "0")]
        seeds: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long, default_value_t = 0.04)]
        c: f64,
        /// Record wall-clock runtime; otherwise runtime_ms is 0 and output is reproducible.
        #[arg(long)]
        timing: bool,
        /// Write each row's graph and certificate here.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Blowup,
    GnpTf,
    SparseReg,
    Process,
    Alon,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Sparse,
    DensePair,
    DenseC4,
    Reduce,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    GCurve,
    FCurve,
}

fn require<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this model")))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Generate { model, base, sizes, n, c, k, seed, out } => {
            let params = match model {
                Model::Blowup => GeneratorParams::Blowup { base, sizes },
                Model::GnpTf => GeneratorParams::GnpTriangleFree { n: require(n, "n")?, c, seed },
                Model::SparseReg => GeneratorParams::SparseRegular { n: require(n, "n")?, c, seed },
                Model::Process => GeneratorParams::Process { n: require(n, "n")?, seed },
                Model::Alon => GeneratorParams::Alon { k: require(k, "k")? },
            };
            write_output(out.as_deref(), &generate(&params)?)?;
            Ok(0)
        }
        Command::Extract { graph, algo, d, t, seed, mode, budget, out } => {
            let g = load_graph(&graph)?;
            let algo = match algo {
                AlgoArg::Sparse => Algo::Sparse,
                AlgoArg::DensePair => Algo::DensePair,
                AlgoArg::DenseC4 => Algo::DenseC4,
                AlgoArg::Reduce => Algo::Reduce,
                AlgoArg::Auto => Algo::Auto,
            };
            let mode = match mode {
                ModeArg::Exhaustive => PairSearch::Exhaustive,
                ModeArg::Sampled => PairSearch::Sampled { budget: budget.unwrap_or(10 * g.n()) },
            };
            let cert = extract(&g, &ExtractRequest { algo, d, t, seed, mode })?;
            write_output(out.as_deref(), &cert.to_document())?;
            Ok(0)
        }
        Command::Verify { graph, cert } => {
            match verify(&read_file(&graph)?, &read_file(&cert)?)? {
                VerifyOutcome::Pass { achieved, edges } => {
                    println!("PASS achieved={achieved} edges={edges}");
                    Ok(0)
                }
                VerifyOutcome::Fail(witness) => {
                    println!("FAIL {witness}");
                    Ok(1)
                }
            }
        }
        Command::Experiment { kind, n, d, models, seeds, base, c, timing, cert_dir, out } => {
            let sweep = Sweep {
                curve: match kind {
                    Kind::GCurve => Curve::G,
                    Kind::FCurve => Curve::F,
                },
                ns: parse_list(&n)?,
                ds: parse_list(&d)?,
                models: models.split(',').map(str::trim).filter(|m| !m.is_empty()).map(String::from).collect(),
                seeds: parse_list(&seeds)?,
                base,
                c,
                timing,
                cert_dir,
            };
            let partial = out.as_ref().map(|p| partial_path(p));
            let rows = harness::run(&sweep, partial.as_deref())?;
            write_output(out.as_deref(), &harness::to_csv(&rows)?)?;
            if let Some(p) = partial {
                let _ = std::fs::remove_file(p);
            }
            Ok(0)
        }
    }
}

fn partial_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".partial");
    PathBuf::from(s)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", e.render());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
