use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use jnr::io::report::Report;
use jnr::io::{self, ClassifyOptions, ExampleAction, SampleOptions, TupleDocument};
use jnr::sampling::{Ensemble, PointCloud};
use jnr::tolerances::Tolerances;
use jnr::Error;

#[derive(Parser)]
#[command(name = "jnr", version, about = "Joint numerical ranges of hermitian matrix tuples")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct TolArgs {
    /// Relative eigenvalue gap below which the top eigenvalue counts as degenerate.
    #[arg(long, default_value_t = Tolerances::default().gap_tol)]
    gap_tol: f64,
    /// Relative singular-value cutoff for affine ranks.
    #[arg(long, default_value_t = Tolerances::default().rank_tol)]
    rank_tol: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances { gap_tol: self.gap_tol, rank_tol: self.rank_tol, ..Tolerances::default() }
    }
}

#[derive(Args)]
struct SeedArg {
    #[arg(long, env = "JNR_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the range of a triple of 3×3 matrices.
    Classify {
        input: PathBuf,
        #[arg(long)]
        symmetrize: bool,
        /// Skip the no-other-faces certificate.
        #[arg(long)]
        no_certify: bool,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Certify that the detected large faces are the only ones.
    Certify {
        input: PathBuf,
        #[arg(long)]
        symmetrize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Sample random pure states and mesh their convex hull.
    Sample {
        input: PathBuf,
        #[arg(long)]
        symmetrize: bool,
        #[arg(long, default_value_t = jnr::sampling::DEFAULT_COUNT)]
        count: usize,
        /// Output directory for points.txt and mesh.stl.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Coordinates to mesh, e.g. 0,1,2.
        #[arg(long, value_delimiter = ',')]
        project: Option<Vec<usize>>,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Mesh a point cloud (one point per line) into a binary STL.
    Mesh {
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        project: Option<Vec<usize>>,
    },
    /// Classify random tuples and tabulate the classes.
    Census {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, value_enum, default_value_t = EnsembleArg::Gue)]
        ensemble: EnsembleArg,
        /// Matrices per tuple (at most 3).
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Run a catalogued example.
    Example {
        id: String,
        #[arg(value_enum, default_value_t = ActionArg::Classify)]
        action: ActionArg,
        /// Parameter of the ex11 family.
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = jnr::sampling::DEFAULT_COUNT)]
        count: usize,
        /// Output directory (sample) or document path (export).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        project: Option<Vec<usize>>,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnsembleArg {
    Gue,
    Goe,
}

#[derive(Clone, Copy, ValueEnum)]
enum ActionArg {
    Classify,
    Check,
    Sample,
    /// Print the tuple as a JSON document.
    Export,
}

fn emit<R: Report>(r: &R, format: Format, out: Option<&PathBuf>) -> Result<(), Error> {
    match format {
        Format::Json => println!("{}", r.to_json()),
        Format::Text => print!("{}", r.to_text()),
    }
    if let Some(path) = out {
        std::fs::write(path, r.to_json() + "\n")?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    let fmt = cli.format;
    match cli.command {
        Command::Classify { input, symmetrize, no_certify, out, tol, seed } => {
            let doc = TupleDocument::read(&input)?;
            let opts = ClassifyOptions { tol: tol.tolerances(), seed: seed.seed, certify: !no_certify };
            let r = io::cmd_classify(&doc, symmetrize, &opts)?;
            emit(&r, fmt, out.as_ref())?;
            Ok(if r.inconclusive() { 3 } else { 0 })
        }
        Command::Certify { input, symmetrize, out, tol } => {
            let doc = TupleDocument::read(&input)?;
            let r = io::cmd_certify(&doc, symmetrize, &tol.tolerances())?;
            emit(&r, fmt, out.as_ref())?;
            Ok(if r.certification.status == jnr::classify::CertStatus::Pass { 0 } else { 3 })
        }
        Command::Sample { input, symmetrize, count, out, project, seed } => {
            let doc = TupleDocument::read(&input)?;
            let opts = SampleOptions { count, seed: seed.seed, projection: project, out };
            emit(&io::cmd_sample(&doc, symmetrize, &opts)?, fmt, None)?;
            Ok(0)
        }
        Command::Mesh { points, out, project } => {
            let file = std::fs::File::open(&points)?;
            let cloud = PointCloud::read_text(std::io::BufReader::new(file))?;
            emit(&io::cmd_mesh(&cloud, project.as_deref(), out.as_deref())?, fmt, None)?;
            Ok(0)
        }
        Command::Census { count, ensemble, n, tol, seed } => {
            let ensemble = match ensemble {
                EnsembleArg::Gue => Ensemble::Gue,
                EnsembleArg::Goe => Ensemble::RealSymmetric,
            };
            emit(&io::cmd_census(count, seed.seed, ensemble, n, &tol.tolerances())?, fmt, None)?;
            Ok(0)
        }
        Command::Example { id, action, lambda, count, out, project, tol, seed } => {
            let entry = io::commands::example_entry(&id, lambda)?;
            let action = match action {
                ActionArg::Classify => ExampleAction::Classify,
                ActionArg::Check => ExampleAction::Check,
                ActionArg::Sample => ExampleAction::Sample,
                ActionArg::Export => {
                    let doc = TupleDocument::from_tuple(&entry.tuple, Some(entry.id.clone()), Some(entry.title.into()));
                    match out {
                        Some(path) => std::fs::write(path, doc.to_json() + "\n")?,
                        None => println!("{}", doc.to_json()),
                    }
                    return Ok(0);
                }
            };
            let copts = ClassifyOptions { tol: tol.tolerances(), seed: seed.seed, certify: true };
            let sopts = SampleOptions { count, seed: seed.seed, projection: project, out };
            let r = io::cmd_example(&entry, action, &copts, &sopts)?;
            emit(&r, fmt, None)?;
            let inconclusive = r.classification.as_ref().is_some_and(|c| c.inconclusive());
            Ok(if inconclusive {
                3
            } else if r.passed {
                0
            } else {
                1
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("jnr: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("jnr: {e}");
            ExitCode::from(io::exit_code(&e) as u8)
        }
    }
}
