mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use diffcalc_core::Error;

use commands::{CalculusChoice, Command};

/// Differential calculi over finite-dimensional algebras.
#[derive(Parser, Debug)]
#[command(name = "diffcalc", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Universal,
    Kahler,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Check the algebra axioms of an algebra file.
    Check { file: PathBuf },
    /// The universal first order calculus.
    Universal { file: PathBuf },
    /// Kähler differentials of a commutative algebra.
    Kahler { file: PathBuf },
    /// Maximal prolongation of a first order calculus up to a degree.
    Prolong {
        file: PathBuf,
        /// universal, kahler or quotient:<relations.json>
        #[arg(long, default_value = "universal")]
        calculus: CalculusChoice,
        #[arg(long)]
        max_degree: usize,
        /// Skip the dimension guardrail.
        #[arg(long)]
        force: bool,
        /// Include differentials and wedge products.
        #[arg(long)]
        matrices: bool,
    },
    /// De Rham cohomology in degrees below the maximal degree.
    Cohomology {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FlavorArg::Universal)]
        flavor: FlavorArg,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        force: bool,
    },
    /// Compare universal and Kähler de Rham cohomology.
    Compare {
        file: PathBuf,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        force: bool,
    },
    /// Push a calculus forward along an algebra map.
    Extend {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        calculus: PathBuf,
    },
    /// Pull a calculus back along an algebra map.
    Restrict {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        calculus: PathBuf,
    },
    /// Check bimonoid axioms and the universal Hopf module.
    HopfCheck { file: PathBuf },
    /// Whether a quotient of the universal calculus is bicovariant.
    Bicovariant {
        file: PathBuf,
        #[arg(long)]
        relations: PathBuf,
    },
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Check { file } => Command::Check { file },
            Sub::Universal { file } => Command::Universal { file },
            Sub::Kahler { file } => Command::Kahler { file },
            Sub::Prolong { file, calculus, max_degree, force, matrices } => {
                Command::Prolong { file, calculus, max_degree, force, matrices }
            }
            Sub::Cohomology { file, flavor, max_degree, force } => Command::Cohomology {
                file,
                kahler: matches!(flavor, FlavorArg::Kahler),
                max_degree,
                force,
            },
            Sub::Compare { file, max_degree, force } => Command::Compare { file, max_degree, force },
            Sub::Extend { map, calculus } => Command::Extend { map, calculus },
            Sub::Restrict { map, calculus } => Command::Restrict { map, calculus },
            Sub::HopfCheck { file } => Command::HopfCheck { file },
            Sub::Bicovariant { file, relations } => Command::Bicovariant { file, relations },
        }
    }
}

const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let format = cli.format;
    match commands::run(&cli.command.into()) {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json values serialize")),
                Format::Text => println!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Precondition(_) => 2,
                _ => 1,
            })
        }
    }
}
