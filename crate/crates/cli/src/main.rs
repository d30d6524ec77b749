use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cychom::commands::{self, CommandError, Options, DEFAULT_SEED};
use cychom::corpus::{self, SCHEMA};
use cychom::format::Spec;
use cychom::report::ScenarioReport;
use cychom::scenario::{self, FreeSource};
use cychom_core::hhdecomp::DEFAULT_WORD_BUDGET;

#[derive(Parser)]
#[command(
    name = "cychom",
    version,
    about = "Exact cyclic, periodic and negative cyclic homology of small algebras"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Top simplicial degree D.
    #[arg(long, global = true, default_value_t = 6)]
    max_degree: usize,
    /// Stabilization window for S-towers.
    #[arg(long, global = true, default_value_t = 3)]
    window: usize,
    /// Largest number of tensor words in a single degree.
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_BUDGET)]
    budget: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Hochschild homology and cyclic identities.
    Hh { input: String },
    /// Cyclic homology and the S maps.
    Hc { input: String },
    /// Periodic cyclic homology from the S-towers.
    Hp { input: String },
    /// The SBI sequence and negative cyclic homology.
    Sbi { input: String },
    /// Decompositions of Hochschild modules.
    #[command(subcommand)]
    Decompose(Decompose),
    /// The gap set A_f of f: ℤ/n → {0, 1, 2}, given as digits like 22012110201.
    Gapset { values: String },
    /// Partitions of k in decreasing norm.
    Partitions { k: usize },
    #[command(subcommand)]
    Check(Check),
    /// Every lemma instance of the bundled corpus.
    Suite,
    /// Print the input JSON schema.
    Schema,
    /// List the bundled inputs, usable as `builtin:NAME`.
    Corpus,
}

#[derive(Subcommand)]
enum Decompose {
    /// Weight pieces H(k) of HH(B ⋉ M).
    Weights { input: String },
    /// The piece H(P) of HH(B ⋉ (M_1 ⊕ … ⊕ M_l)).
    Partition {
        input: String,
        /// Parts of P, e.g. 2,1.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
    /// Filtration of HH(A) by powers of an ideal.
    Filtration {
        input: String,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Iterated fiber of a split square.
    Square { input: String },
}

#[derive(Subcommand)]
enum Check {
    /// HP(A) → HP(A/I) is an isomorphism for a nilpotent ideal I.
    Nilpotent {
        input: String,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Mayer–Vietoris sequence of a split square.
    Mv { input: String },
    /// HP(j_*N) = 0; N is constant ℚ unless an input is given.
    Free {
        input: Option<String>,
        /// Number of seeded random modules to add.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
}

fn load(input: &str) -> Result<Spec, CommandError> {
    Ok(corpus::load(input)?)
}

fn run(cmd: Command, opts: &Options) -> Result<ScenarioReport, CommandError> {
    match cmd {
        Command::Hh { input } => commands::hh_report(&load(&input)?, opts),
        Command::Hc { input } => commands::hc_report(&load(&input)?, opts),
        Command::Hp { input } => commands::hp_report(&load(&input)?, opts),
        Command::Sbi { input } => commands::sbi_report(&load(&input)?, opts),
        Command::Decompose(d) => match d {
            Decompose::Weights { input } => commands::decompose_weights(&load(&input)?, opts),
            Decompose::Partition { input, parts } => {
                commands::decompose_partition(&load(&input)?, &parts, opts)
            }
            Decompose::Filtration { input, ideal } => {
                commands::decompose_filtration(&load(&input)?, ideal.as_deref(), opts)
            }
            Decompose::Square { input } => commands::decompose_square(&load(&input)?, opts),
        },
        Command::Gapset { values } => {
            let digits = values
                .chars()
                .filter(|c| !matches!(c, ',' | ' '))
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CommandError::Invalid(format!("not a digit string: {values}")))?;
            commands::gapset_report(&digits, opts)
        }
        Command::Partitions { k } => Ok(commands::partitions_report(k, opts)),
        Command::Check(c) => match c {
            Check::Nilpotent { input, ideal } => {
                let spec = load(&input)?;
                scenario::check_nilpotent(
                    commands::require_algebra(&spec, "check nilpotent")?,
                    ideal.as_deref(),
                    opts,
                )
            }
            Check::Mv { input } => match load(&input)? {
                Spec::Square(s) => scenario::check_mv(&s, opts),
                other => Err(CommandError::Unsupported {
                    command: "check mv",
                    kind: other.kind(),
                }),
            },
            Check::Free { input, random } => {
                let spec = input.as_deref().map(load).transpose()?;
                let source = spec.as_ref().map_or(FreeSource::Constant, FreeSource::Spec);
                scenario::check_free(source, random, opts)
            }
        },
        Command::Suite => scenario::run_suite(opts),
        Command::Schema | Command::Corpus => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Schema => {
            print!("{SCHEMA}");
            return ExitCode::SUCCESS;
        }
        Command::Corpus => {
            for (name, _) in corpus::CORPUS {
                println!("builtin:{name}");
            }
            return ExitCode::SUCCESS;
        }
        _ => {}
    }
    let g = &cli.global;
    let opts = Options {
        max_degree: g.max_degree,
        window: g.window,
        budget: g.budget,
        seed: g.seed,
    };
    match run(cli.command, &opts) {
        Ok(report) => {
            match g.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ),
            }
            if report.all_pass() {
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
