//! `kontext`: validate Greechie diagrams, enumerate and classify two-valued
//! measures, compute Born probabilities and run the simulated sampler.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kontext::greechie::{self, realize_check};
use kontext::qrng::{self, CertificationBounds};
use kontext::ray::{self, complete_context};
use kontext::valuations::{self, Propagation};
use kontext::{Diagram, Error, PartialValuation, QrngConfig, Ray};

use output::{fixed, Failure};

/// Exit codes shared by every subcommand.
pub mod exit {
    pub const IO: u8 = 1;
    pub const SCHEMA: u8 = 2;
    pub const VALIDATION: u8 = 3;
    pub const USAGE: u8 = 4;
    pub const NO_MEASURES: u8 = 10;
    pub const CONTRADICTION: u8 = 11;
}

#[derive(Debug, Parser)]
#[command(name = "kontext", version, about)]
struct Cli {
    /// Geometric tolerance for orthogonality tests.
    #[arg(long, global = true, env = "KONTEXT_TOLERANCE", default_value_t = ray::DEFAULT_TOLERANCE)]
    tolerance: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check schema, Greechie legality and (when coordinatized) realization.
    Validate { file: PathBuf },
    /// List two-valued measures, or count them.
    Measures {
        file: PathBuf,
        #[arg(long)]
        count_only: bool,
    },
    /// Classify every atom relative to premises such as `--set c=1`.
    Classify {
        file: PathBuf,
        #[arg(long = "set", value_name = "ATOM=0|1")]
        premises: Vec<String>,
    },
    /// Born probability of observing atom `b` given preparation `c`.
    Born { file: PathBuf, c: String, b: String },
    /// Sample the measurement of `target`'s context on `prep`.
    Qrng {
        /// Preparation ray as FILE:ATOM.
        #[arg(long)]
        prep: String,
        /// Measured ray as FILE:ATOM; its context is completed automatically.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Lower overlap bound for certification.
        #[arg(long)]
        lower: Option<f64>,
        /// Upper overlap bound for certification.
        #[arg(long)]
        upper: Option<f64>,
        /// Write the raw bits, packed most significant bit first.
        #[arg(long)]
        bits_out: Option<PathBuf>,
        /// Apply the von Neumann extractor before writing bits.
        #[arg(long, requires = "bits_out")]
        debias: bool,
    },
    /// Render a diagram as Graphviz DOT (or canonical JSON without --dot).
    Export {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Print a built-in configuration as JSON.
    Generate {
        #[command(subcommand)]
        which: Builtin,
    },
}

#[derive(Debug, Subcommand)]
enum Builtin {
    /// The 13-atom bug with its derived coordinatization.
    Bug,
    /// A star of `n` contexts around atom `c`.
    Star { n: usize },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(exit::USAGE);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let tol = cli.tolerance;
    ray::set_tolerance(tol).map_err(|e| Failure::new(exit::USAGE, e))?;
    match &cli.command {
        Command::Validate { file } => {
            let diagram = load(file)?;
            let realization = if diagram.is_coordinatized() {
                let report =
                    realize_check(&diagram, tol).map_err(|e| Failure::new(exit::VALIDATION, e))?;
                if let Some(v) = report.violations.first() {
                    return Err(Failure::new(
                        exit::VALIDATION,
                        format!(
                            "realization: {} and {} in {} overlap by {}",
                            v.first,
                            v.second,
                            v.block,
                            fixed(v.overlap)
                        ),
                    ));
                }
                Some(report)
            } else {
                log::info!("diagram is not fully coordinatized; realization not checked");
                None
            };
            output::validation(cli.format, &diagram, realization.as_ref());
            Ok(0)
        }
        Command::Measures { file, count_only } => {
            let diagram = load(file)?;
            let count = if *count_only {
                let count = valuations::count_two_valued(&diagram);
                output::count(cli.format, count);
                count
            } else {
                let measures = valuations::enumerate_two_valued(&diagram);
                output::measures(cli.format, &diagram, &measures);
                measures.len()
            };
            Ok(if count == 0 { exit::NO_MEASURES } else { 0 })
        }
        Command::Classify { file, premises } => {
            let diagram = load(file)?;
            let premises = parse_premises(premises)?;
            match valuations::propagate(&diagram, &premises)
                .map_err(|e| Failure::new(exit::USAGE, e))?
            {
                Propagation::Contradiction(c) => {
                    output::contradiction(cli.format, &c);
                    Err(Failure::new(exit::CONTRADICTION, Error::Contradiction(c)))
                }
                Propagation::Consistent(_) => {
                    let report = valuations::classify(&diagram, &premises)
                        .map_err(|e| Failure::new(exit::USAGE, e))?;
                    output::classification(cli.format, &report);
                    Ok(0)
                }
            }
        }
        Command::Born { file, c, b } => {
            let diagram = load(file)?;
            let p = ray::born_probability(&coordinates(&diagram, c)?, &coordinates(&diagram, b)?)
                .map_err(|e| Failure::new(exit::USAGE, e))?;
            println!("{}", fixed(p));
            Ok(0)
        }
        Command::Qrng {
            prep,
            target,
            n,
            seed,
            lower,
            upper,
            bits_out,
            debias,
        } => {
            let preparation = resolve(prep)?;
            let target = resolve(target)?;
            let basis = complete_context(std::slice::from_ref(&target), target.dimension(), tol)
                .map_err(|e| Failure::new(exit::USAGE, e))?;
            let defaults = CertificationBounds::default();
            let bounds = CertificationBounds::new(
                lower.unwrap_or(defaults.lower),
                upper.unwrap_or(defaults.upper),
            )
            .map_err(|e| Failure::new(exit::USAGE, e))?;
            let mut config = QrngConfig::new(preparation, basis, 0, *seed, *n);
            config.bounds = bounds;
            let run = qrng::sample(&config).map_err(|e| Failure::new(exit::USAGE, e))?;
            if !run.certified {
                eprintln!(
                    "warning: overlap {} lies outside the certification bounds [{}, {}]",
                    fixed(run.overlap),
                    fixed(bounds.lower),
                    fixed(bounds.upper)
                );
            }
            if let Some(path) = bits_out {
                let bits = if *debias {
                    qrng::debias(&run.bits)
                } else {
                    run.bits.clone()
                };
                fs::write(path, qrng::pack_bits(&bits))
                    .map_err(|e| Failure::new(exit::IO, format!("{}: {e}", path.display())))?;
            }
            output::sample_run(cli.format, &run);
            Ok(0)
        }
        Command::Export { file, dot } => {
            let diagram = load(file)?;
            if *dot {
                print!("{}", greechie::to_dot(&diagram));
            } else {
                print!("{}", greechie::serialize(&diagram));
            }
            Ok(0)
        }
        Command::Generate { which } => {
            let diagram = match which {
                Builtin::Bug => greechie::make_bug(),
                Builtin::Star { n } => {
                    greechie::make_star(*n).map_err(|e| Failure::new(exit::USAGE, e))?
                }
            };
            print!("{}", greechie::serialize(&diagram));
            Ok(0)
        }
    }
}

/// Read and parse a diagram. Legality violations are validation failures;
/// everything else wrong with the document is a schema failure.
fn load(path: &Path) -> Result<Diagram, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(exit::IO, format!("{}: {e}", path.display())))?;
    greechie::parse(&text).map_err(|e| {
        let code = match e {
            Error::Legality { .. } => exit::VALIDATION,
            _ => exit::SCHEMA,
        };
        Failure::new(code, format!("{}: {e}", path.display()))
    })
}

fn coordinates(diagram: &Diagram, id: &str) -> Result<Ray, Failure> {
    let atom = diagram
        .atom(id)
        .ok_or_else(|| Failure::new(exit::USAGE, Error::UnknownAtom(id.to_owned())))?;
    atom.ray
        .clone()
        .ok_or_else(|| Failure::new(exit::USAGE, Error::MissingCoordinates(id.to_owned())))
}

/// Resolve `FILE:ATOM` to the atom's ray.
fn resolve(arg: &str) -> Result<Ray, Failure> {
    let (file, atom) = arg
        .rsplit_once(':')
        .ok_or_else(|| Failure::new(exit::USAGE, format!("expected FILE:ATOM, got `{arg}`")))?;
    coordinates(&load(Path::new(file))?, atom)
}

fn parse_premises(raw: &[String]) -> Result<PartialValuation, Failure> {
    let mut premises = PartialValuation::new();
    for item in raw {
        let bad = || {
            Failure::new(
                exit::USAGE,
                format!("premise `{item}` is not ATOM=0 or ATOM=1"),
            )
        };
        let (atom, value) = item.split_once('=').ok_or_else(bad)?;
        let value = match value.trim() {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        let atom = atom.trim();
        if atom.is_empty() {
            return Err(bad());
        }
        premises.set(atom, value);
    }
    Ok(premises)
}
