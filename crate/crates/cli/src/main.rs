mod cmd;
mod hnn_input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 66;

/// Decision procedures for right-angled Artin groups.
#[derive(Parser, Debug)]
#[command(name = "raagkit", version)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Graph file: {"vertices": [...], "edges": [[u, v], ...]}
    #[arg(short = 'g', long = "graph", global = true, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Step budget for searches and races (overrides RAAGKIT_BUDGET)
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<u64>,
    /// Seed for the randomized homomorphism search
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical reduced form of a word
    Reduce { word: String },
    /// Split a word as z · core · z^-1 with a cyclically reduced core
    CyclicReduce { word: String },
    /// The n-th root of an element, if it exists
    Root { word: String, n: usize },
    /// Membership in special subgroups, parabolics and double cosets
    Member {
        #[command(subcommand)]
        kind: MemberKind,
    },
    /// <A> ∩ x<B>x^-1 as a parabolic subgroup
    Intersect {
        #[arg(long = "left", value_name = "A")]
        a: String,
        #[arg(long = "right", value_name = "B")]
        b: String,
        /// The conjugating element x (default: identity)
        #[arg(long = "by", value_name = "WORD", default_value = "")]
        x: String,
    },
    /// Is f = c g c^-1 for some c (in <B> with --sub)?
    Conj {
        g: String,
        f: String,
        #[arg(long, value_name = "v1,v2,...")]
        sub: Option<String>,
    },
    /// Generators of the centralizer of g (in <B> with --sub)
    Centralizer {
        g: String,
        #[arg(long, value_name = "v1,v2,...")]
        sub: Option<String>,
    },
    /// Finite-quotient witnesses
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Refine a finite-index normal K to M stable under the given retractions
    Refine {
        /// Homomorphism file whose kernel is K
        #[arg(long, value_name = "FILE")]
        k: PathBuf,
        /// A retract, as a vertex list; repeat for several
        #[arg(long = "retract", value_name = "v1,v2,...", required = true)]
        retracts: Vec<String>,
    },
    /// HNN extensions of a finite group with identity on the associated subgroup
    Hnn {
        /// Base file: {"degree": n, "generators": {name: [images]}, "assoc": [words]}
        #[arg(long, value_name = "FILE")]
        base: PathBuf,
        #[command(subcommand)]
        kind: HnnKind,
    },
    /// Kernels of maps to free abelian groups
    Bb {
        /// "bb" for the all-ones map, or a map file {"rank": k, "map": {v: [ints]}}
        #[arg(long, global = true, value_name = "bb|FILE", default_value = "bb")]
        psi: String,
        #[command(subcommand)]
        kind: BbKind,
    },
    /// Re-check a JSON certificate printed by another command
    Verify { certificate: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum MemberKind {
    /// Is the word in <S>?
    Special {
        word: String,
        #[arg(long, value_name = "v1,v2,...")]
        sub: String,
    },
    /// Is the word in z<S>z^-1?
    Parabolic {
        word: String,
        #[arg(long, value_name = "v1,v2,...")]
        sub: String,
        #[arg(long = "by", value_name = "WORD", default_value = "")]
        z: String,
    },
    /// Is y in <A> x <B>?
    DoubleCoset {
        x: String,
        y: String,
        #[arg(long = "left", value_name = "A")]
        a: String,
        #[arg(long = "right", value_name = "B")]
        b: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum WitnessKind {
    /// A finite quotient in which f is not conjugate to g
    Separate {
        g: String,
        f: String,
        #[arg(long, value_name = "v1,v2,...")]
        sub: Option<String>,
    },
    /// A quotient with kernel inside K whose centralizers are controlled
    Cc {
        g: String,
        /// Homomorphism file whose kernel is K
        #[arg(long, value_name = "FILE")]
        k: PathBuf,
        #[arg(long, value_name = "v1,v2,...")]
        sub: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum HnnKind {
    /// Britton-reduced form of an element
    Britton { element: String },
    /// Is f = c g c^-1 for some c?
    Conj { g: String, f: String },
    /// Centralizer generators of a cyclically reduced element with a stable letter
    Centralizer { element: String },
}

#[derive(Subcommand, Debug)]
pub enum BbKind {
    /// Is the kernel finitely generated?
    Fg,
    /// Is the word in the kernel?
    Member { word: String },
    /// Is y = c x c^-1 for some c in the kernel?
    Conj { x: String, y: String },
}

/// Parses `args` (including the program name) and runs one command.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_TRUE
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let json = cli.common.json;
    match cmd::dispatch(&cli, out) {
        Ok(code) => code,
        Err(failure) => {
            if json {
                let v = serde_json::json!({"error": failure.code, "message": failure.message});
                let _ = writeln!(err, "{v}");
            } else {
                let _ = writeln!(err, "error[{}]: {}", failure.code, failure.message);
            }
            failure.exit
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let code = run(&args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
