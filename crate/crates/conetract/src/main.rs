//! Thin command line front end over the library; see `conetract::cli`.

use clap::{Parser, Subcommand};
use conetract::cli::{self, BudgetOpts, RunOutput, RunRequest};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "conetract",
    about = "Decide when idempotent Fourier multipliers act contractively on Hardy spaces",
    version
)]
struct Cli {
    /// Write the JSON document to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide contractivity of the projection onto a frequency set.
    Classify {
        /// Frequency set as a JSON array of integer arrays.
        #[arg(long)]
        set: String,
        /// Exponent: an integer, a fraction like 9/2, or inf.
        #[arg(long)]
        p: String,
    },
    /// Compute the n-extension of a frequency set.
    Extend {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: u32,
    },
    /// Distance from a frequency set to a lattice point.
    Distance {
        #[arg(long)]
        set: String,
        /// Target point as a JSON integer array.
        #[arg(long)]
        lambda: String,
    },
    /// Iterate n-extensions to a fixed point or a full-coset certificate.
    Complete {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_rounds: Option<u32>,
        #[arg(long)]
        max_coord: Option<i64>,
    },
    /// The affine coset of a set and its orthant intersection.
    Coset {
        #[arg(long)]
        set: String,
        /// Per-coordinate bound for sampling infinite intersections.
        #[arg(long)]
        cap: Option<i64>,
    },
    /// Exact non-contractivity witness at an even exponent.
    Witness {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lambda: String,
    },
    /// Verify the one-variable perturbation inequality.
    LemmaLine {
        #[arg(long)]
        p: String,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Verify the two-variable perturbation inequality.
    LemmaPlane {
        #[arg(long)]
        p: String,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Verify the sup-norm perturbation inequality.
    LemmaInf {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Coset points in a box with their distances, for plotting.
    FigureData {
        #[arg(long)]
        set: String,
        #[arg(long)]
        max_distance: u32,
        /// Half-width of the symmetric coordinate box.
        #[arg(long = "box")]
        box_radius: i64,
    },
    /// Norm growth table for the blocked projection operator.
    Growth {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 40)]
        m_max: u32,
    },
    /// Dirichlet-series frequency sets through the prime-exponent lift.
    Dirichlet {
        #[command(subcommand)]
        command: DirichletCommand,
    },
    /// The gcd computed through linear reflections, with its trace.
    ReflectionGcd {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Replay the fixture corpus and report pass/fail per fixture.
    VerifyExamples,
    /// Run a request given as a JSON document ("-" reads standard input).
    Run {
        #[arg(long)]
        json: String,
    },
}

#[derive(Subcommand)]
enum DirichletCommand {
    /// Decide contractivity for a set of positive integers.
    Classify {
        /// JSON array of positive integers.
        #[arg(long)]
        set: String,
        #[arg(long)]
        p: String,
    },
    /// Prime-exponent lift of a positive rational.
    Lift {
        #[arg(long)]
        q: String,
    },
    /// Number of prime factors with multiplicity.
    Omega {
        #[arg(long)]
        n: u64,
    },
    /// Keep the terms with a fixed number of prime factors.
    Project {
        /// JSON array of [n, coefficient] pairs.
        #[arg(long)]
        terms: String,
        #[arg(long)]
        m: u32,
    },
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, text: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("cannot parse {what}: {e}"))
}

fn to_request(command: Command) -> Result<RunRequest, String> {
    Ok(match command {
        Command::Classify { set, p } => RunRequest::Classify {
            set: parse_json("--set", &set)?,
            p,
        },
        Command::Extend { set, n } => RunRequest::Extend {
            set: parse_json("--set", &set)?,
            n,
        },
        Command::Distance { set, lambda } => RunRequest::Distance {
            set: parse_json("--set", &set)?,
            lambda: parse_json("--lambda", &lambda)?,
        },
        Command::Complete {
            set,
            n,
            max_rounds,
            max_coord,
        } => RunRequest::Complete {
            set: parse_json("--set", &set)?,
            n,
            budget: BudgetOpts {
                max_rounds,
                max_coord,
            },
        },
        Command::Coset { set, cap } => RunRequest::Coset {
            set: parse_json("--set", &set)?,
            cap,
        },
        Command::Witness { set, n, lambda } => RunRequest::Witness {
            set: parse_json("--set", &set)?,
            n,
            lambda: parse_json("--lambda", &lambda)?,
        },
        Command::LemmaLine { p, eps } => RunRequest::LemmaLine { p, eps },
        Command::LemmaPlane { p, eps } => RunRequest::LemmaPlane { p, eps },
        Command::LemmaInf { alpha, eps } => RunRequest::LemmaInf {
            alpha: parse_json("--alpha", &alpha)?,
            eps,
        },
        Command::FigureData {
            set,
            max_distance,
            box_radius,
        } => RunRequest::FigureData {
            set: parse_json("--set", &set)?,
            max_distance,
            box_radius,
        },
        Command::Growth { n, p, m_max } => RunRequest::Growth { n, p, m_max },
        Command::Dirichlet { command } => match command {
            DirichletCommand::Classify { set, p } => RunRequest::DirichletClassify {
                set: parse_json("--set", &set)?,
                p,
            },
            DirichletCommand::Lift { q } => RunRequest::DirichletLift { q },
            DirichletCommand::Omega { n } => RunRequest::DirichletOmega { n },
            DirichletCommand::Project { terms, m } => RunRequest::DirichletProject {
                terms: parse_json("--terms", &terms)?,
                m,
            },
        },
        Command::ReflectionGcd { a, b } => RunRequest::ReflectionGcd { a, b },
        Command::VerifyExamples => RunRequest::VerifyExamples,
        Command::Run { json } => {
            let text = if json == "-" {
                let mut buffer = String::new();
                std::io::stdin()
                    .read_to_string(&mut buffer)
                    .map_err(|e| format!("cannot read standard input: {e}"))?;
                buffer
            } else {
                std::fs::read_to_string(&json).map_err(|e| format!("cannot read {json}: {e}"))?
            };
            parse_json("request", &text)?
        }
    })
}

fn emit(output: &Option<PathBuf>, result: &RunOutput) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(&result.document).expect("serializable document");
    match output {
        Some(path) => std::fs::write(path, text + "\n"),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let request = match to_request(cli.command) {
        Ok(request) => request,
        Err(message) => {
            eprintln!("input error: {message}");
            return ExitCode::from(1);
        }
    };
    match cli::run(&request) {
        Ok(result) => {
            if emit(&cli.output, &result).is_err() {
                eprintln!("cannot write output");
                return ExitCode::from(3);
            }
            ExitCode::from(result.exit as u8)
        }
        Err(error) => {
            eprintln!("{error}");
            ExitCode::from(error.exit_code() as u8)
        }
    }
}
