//! `tropquiver`: JSON in, verdict out.
//!
//! Exit status 0 means the predicate holds (or an object was emitted), 1
//! means it fails and a certificate is printed, 2 means bad input.

mod certificate;
mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commands::{Failure, Inputs, Outcome};

#[derive(Parser)]
#[command(
    name = "tropquiver",
    version,
    about = "Exact checks for valuated matroids and quiver Dressians"
)]
struct Cli {
    /// Add the elapsed wall-clock time to the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Method {
    Relations,
    Containment,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CrossKind {
    /// Relations against containment on random arrows over the field.
    Relations,
    /// Image of a weakly monomial matrix against the induced matroid.
    Image,
    /// Containment against affine morphisms for weakly monomial matrices.
    Morphism,
    /// Plücker valuations of random matrices against the exchange axiom.
    Pluecker,
    /// Quotient checks against the identity-arrow Dressian.
    Flag,
}

#[derive(Subcommand)]
enum Command {
    /// Tropical exchange axiom for a basis-value table.
    CheckMatroid { matroid: PathBuf },
    /// Valuated circuits, normalized.
    Circuits { matroid: PathBuf },
    /// Valuated cocircuits, normalized.
    Cocircuits { matroid: PathBuf },
    /// Membership of a vector in the tropical linear space.
    TlsMember { matroid: PathBuf, vector: PathBuf },
    /// Whether the first matroid is a quotient of the second.
    Quotient { smaller: PathBuf, larger: PathBuf },
    /// The affine induced matroid of a ground-set map.
    Induce {
        matroid: PathBuf,
        map: PathBuf,
        /// Append the loop `o` as the last element.
        #[arg(long)]
        pointed: bool,
    },
    /// Whether a map is an affine morphism from the first matroid to the second.
    MorphismCheck {
        map: PathBuf,
        source: PathBuf,
        target: PathBuf,
        /// Realization of the induced matroid; requires --source-witness.
        #[arg(long, requires = "source_witness")]
        induced_witness: Option<PathBuf>,
        /// Realization of the source matroid; requires --induced-witness.
        #[arg(long, requires = "induced_witness")]
        source_witness: Option<PathBuf>,
    },
    /// Pattern, diagonal and associated map of a weakly monomial matrix.
    MonomialDecompose { matrix: PathBuf },
    /// Plücker valuations of a full-rank matrix over the field.
    Realize { matrix: PathBuf },
    /// Membership of a matroid tuple in the quiver Dressian.
    QdrCheck {
        quiver: PathBuf,
        tuple: PathBuf,
        #[arg(long, value_enum, default_value = "relations")]
        method: Method,
    },
    /// Whether a tropical matrix maps one linear space into another.
    ContainmentCheck {
        matrix: PathBuf,
        source: PathBuf,
        target: PathBuf,
    },
    /// Checks a realizing subrepresentation for a matroid tuple.
    QgrWitnessCheck {
        quiver: PathBuf,
        tuple: PathBuf,
        witness: PathBuf,
    },
    /// Consecutive quotients along a sequence of increasing rank.
    FlagCheck {
        #[arg(required = true, num_args = 2..)]
        matroids: Vec<PathBuf>,
    },
    /// Classical and tropical relations of a representation.
    Relations { quiver: PathBuf },
    /// Compares two decision procedures on seeded random instances.
    CrossCheck {
        #[arg(long, value_enum)]
        kind: CrossKind,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckMatroid { .. } => "check-matroid",
            Command::Circuits { .. } => "circuits",
            Command::Cocircuits { .. } => "cocircuits",
            Command::TlsMember { .. } => "tls-member",
            Command::Quotient { .. } => "quotient",
            Command::Induce { .. } => "induce",
            Command::MorphismCheck { .. } => "morphism-check",
            Command::MonomialDecompose { .. } => "monomial-decompose",
            Command::Realize { .. } => "realize",
            Command::QdrCheck { .. } => "qdr-check",
            Command::ContainmentCheck { .. } => "containment-check",
            Command::QgrWitnessCheck { .. } => "qgr-witness-check",
            Command::FlagCheck { .. } => "flag-check",
            Command::Relations { .. } => "relations",
            Command::CrossCheck { .. } => "cross-check",
        }
    }
}

fn dispatch(command: &Command, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    use commands::*;
    match command {
        Command::CheckMatroid { matroid } => check_matroid(inputs, matroid),
        Command::Circuits { matroid } => circuits(inputs, matroid, false),
        Command::Cocircuits { matroid } => circuits(inputs, matroid, true),
        Command::TlsMember { matroid, vector } => tls_member(inputs, matroid, vector),
        Command::Quotient { smaller, larger } => quotient(inputs, smaller, larger),
        Command::Induce {
            matroid,
            map,
            pointed,
        } => induce(inputs, matroid, map, *pointed),
        Command::MorphismCheck {
            map,
            source,
            target,
            induced_witness,
            source_witness,
        } => {
            let witnesses = induced_witness.as_deref().zip(source_witness.as_deref());
            morphism_check(inputs, map, source, target, witnesses)
        }
        Command::MonomialDecompose { matrix } => monomial_decompose(inputs, matrix),
        Command::Realize { matrix } => realize(inputs, matrix),
        Command::QdrCheck {
            quiver,
            tuple,
            method,
        } => qdr_check(inputs, quiver, tuple, *method),
        Command::ContainmentCheck {
            matrix,
            source,
            target,
        } => containment(inputs, matrix, source, target),
        Command::QgrWitnessCheck {
            quiver,
            tuple,
            witness,
        } => qgr_witness(inputs, quiver, tuple, witness),
        Command::FlagCheck { matroids } => flag_check(inputs, matroids),
        Command::Relations { quiver } => relations(inputs, quiver),
        Command::CrossCheck { kind, count, seed } => cross_check(*kind, *count, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let outcome = dispatch(&cli.command, &mut inputs);
    let elapsed = start.elapsed();

    let mut report = json!({"command": name});
    let code = match outcome {
        Ok(Outcome::Verdict {
            result,
            certificate,
            output,
        }) => {
            report["result"] = json!(result);
            if let Some(c) = certificate {
                report["certificate"] = c;
            }
            if let Some(o) = output {
                report["output"] = o;
            }
            if result {
                0
            } else {
                1
            }
        }
        Ok(Outcome::Object(o)) => {
            report["output"] = o;
            0
        }
        Err(f) => {
            eprintln!("tropquiver {name}: {}", f.message);
            report["error"] = json!({"kind": f.kind, "message": f.message});
            2
        }
    };
    report["inputs"] = Value::Array(inputs.records());
    if cli.timing {
        report["timing_ms"] = json!(elapsed.as_secs_f64() * 1000.0);
    }
    // a closed pipe downstream is not our error
    let _ = writeln!(
        std::io::stdout(),
        "{}",
        serde_json::to_string_pretty(&report).expect("serializable")
    );
    ExitCode::from(code)
}
