//! `linftykan`: checks and computations on L∞-algebras, Maurer–Cartan
//! simplices, finite simplicial sets and the numeric string model.
//!
//! Exit status: 0 when every verdict passes, 1 when one fails, 2 on malformed
//! input or usage errors.

mod commands;
mod corpus;
mod docs;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use linftykan::ScalarField;

use commands::{forms::FormsCmd, homot::HomotCmd, intl::IntlCmd, linf::LinfCmd, simpset::SimpsetCmd, string::StringCmd};
use docs::{input, AlgebraFile, CliError};
use report::{Format, Report};

#[derive(Parser)]
#[command(name = "linftykan", version, about = "Exact L∞-algebra, simplicial and string-model computations")]
struct Cli {
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance for numeric verdicts (string commands only).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Scalar field every loaded algebra must live in, e.g. `Q` or `Q(sqrt2)`.
    #[arg(long, global = true)]
    scalars: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// L∞-algebra documents: axioms, CE differential, homology, truncation.
    #[command(subcommand)]
    Linf(LinfCmd),
    /// Polynomial differential forms on simplices.
    #[command(subcommand)]
    Forms(FormsCmd),
    /// Maurer–Cartan simplices: validation, faces, horn filling.
    #[command(subcommand)]
    Intl(IntlCmd),
    /// Homotopy groups from homology and group data.
    #[command(subcommand)]
    Homot(HomotCmd),
    /// Finite simplicial sets and coherent 2-groups.
    #[command(subcommand)]
    Simpset(SimpsetCmd),
    /// Numeric periods and the bundle model over SU(2).
    #[command(subcommand)]
    String(StringCmd),
    /// The bundled example documents.
    #[command(subcommand)]
    Corpus(commands::corpus::CorpusCmd),
}

/// Settings shared by all commands.
pub struct RunConfig {
    pub seed: u64,
    pub tolerance: Option<f64>,
    pub scalars: Option<ScalarField>,
}

impl RunConfig {
    pub fn tolerance_or(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    pub fn algebra(&self, arg: &str) -> Result<AlgebraFile, CliError> {
        let file = AlgebraFile::load(arg)?;
        if let Some(sel) = &self.scalars {
            if &sel.join(file.algebra.field()) != sel {
                return Err(input(format!(
                    "{arg} needs scalars {} outside the selected field {sel}",
                    file.algebra.field()
                )));
            }
        }
        Ok(file)
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let cfg = RunConfig {
        seed: cli.seed,
        tolerance: cli.tolerance,
        scalars: cli.scalars.as_deref().map(str::parse).transpose()?,
    };
    if cfg.tolerance.is_some_and(|t| !(t.is_finite() && t > 0.0)) {
        return Err(input("--tolerance must be a positive number"));
    }
    match cli.command {
        Command::Linf(c) => commands::linf::run(c, &cfg),
        Command::Forms(c) => commands::forms::run(c, &cfg),
        Command::Intl(c) => commands::intl::run(c, &cfg),
        Command::Homot(c) => commands::homot::run(c, &cfg),
        Command::Simpset(c) => commands::simpset::run(c, &cfg),
        Command::String(c) => commands::string::run(c, &cfg),
        Command::Corpus(c) => commands::corpus::run(c, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
