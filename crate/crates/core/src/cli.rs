//! The `dmn-verify` command line.
//!
//! Exit codes: 0 on success, 1 when a checked table is incorrect or an evaluation hits a
//! policy violation, 2 on usage, schema or parse errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::correctness::{check_correct_scoped, CheckScope};
use crate::diagnostic::Diagnostic;
use crate::error::{Error, Result};
use crate::model::load_table_file;
use crate::semantics::evaluate;
use crate::synth::{
    derive_seed, generate_table, inject_noise, run_benchmark, BenchSuite, ColumnLayout, GenSpec, NoiseMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDING: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dmn-verify",
    version,
    about = "Check DMN decision tables for overlapping and missing rules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Only {
    Overlap,
    Missing,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Inject {
    Overlap,
    Missing,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a table for correctness and print its diagnostics.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, value_enum, default_value = "all")]
        only: Only,
    },
    /// Evaluate a table on one input, e.g. --input "Annual Income=500,Loan Size=4230".
    Eval {
        file: PathBuf,
        #[arg(long)]
        input: String,
    },
    /// Write a synthetic table with no overlaps or gaps, optionally with noise.
    Generate {
        /// A column count (3, 5 and 7 use the standard mix) or a generator spec file.
        #[arg(long)]
        columns: String,
        #[arg(long)]
        rules: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        inject: Option<Inject>,
        #[arg(long, default_value_t = 0.1)]
        fraction: f64,
        /// Output file; `.toml` writes TOML, anything else JSON.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run a benchmark suite and write its report.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    table: &'a str,
    correct: bool,
    diagnostics: &'a [Diagnostic],
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn check(out: &mut dyn Write, file: &Path, format: Format, only: Only) -> Result<i32> {
    let table = load_table_file(file)?;
    let scope = match only {
        Only::Overlap => CheckScope::Overlap,
        Only::Missing => CheckScope::Missing,
        Only::All => CheckScope::All,
    };
    let report = check_correct_scoped(&table, scope);
    let diagnostics = report.diagnostics(&table);
    match format {
        Format::Structured => {
            let doc = CheckOutput {
                table: table.name(),
                correct: report.correct,
                diagnostics: &diagnostics,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Text => {
            let verdict = if report.correct { "correct" } else { "incorrect" };
            writeln!(out, "{}: {verdict}", table.name())?;
            for d in &diagnostics {
                writeln!(out, "{d}")?;
            }
        }
    }
    Ok(if report.correct { EXIT_OK } else { EXIT_FINDING })
}

fn eval(out: &mut dyn Write, file: &Path, input: &str) -> Result<i32> {
    let table = load_table_file(file)?;
    let input = table.parse_input(input)?;
    let result = evaluate(&table, &input)?;
    writeln!(out, "{result}")?;
    Ok(if result.is_violation() { EXIT_FINDING } else { EXIT_OK })
}

fn gen_spec(columns: &str, rules: Option<usize>, seed: Option<u64>) -> Result<GenSpec> {
    let mut spec = match columns.parse::<usize>() {
        Ok(n) => GenSpec {
            columns: ColumnLayout::Standard(n),
            target_rules: rules.ok_or_else(|| Error::Spec("--rules is required with a column count".into()))?,
            seed: 0,
        },
        Err(_) => {
            let text = read(Path::new(columns))?;
            if text.trim_start().starts_with('{') {
                serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?
            } else {
                toml::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?
            }
        }
    };
    if let Some(n) = rules {
        spec.target_rules = n;
    }
    if let Some(s) = seed {
        spec.seed = s;
    }
    Ok(spec)
}

fn generate(out: &mut dyn Write, spec: GenSpec, inject: Option<Inject>, fraction: f64, output: &Path) -> Result<i32> {
    let mut table = generate_table(&spec)?;
    if matches!(inject, Some(Inject::Overlap | Inject::Both)) {
        table = inject_noise(&table, NoiseMode::Overlap, fraction, derive_seed(spec.seed, 1))?;
    }
    if matches!(inject, Some(Inject::Missing | Inject::Both)) {
        table = inject_noise(&table, NoiseMode::Missing, fraction, derive_seed(spec.seed, 2))?;
    }
    let doc = table.to_document();
    let text = if output.extension().is_some_and(|e| e == "toml") {
        doc.to_toml()?
    } else {
        doc.to_json()
    };
    write(output, &text)?;
    writeln!(out, "wrote {} rules to {}", table.rules().len(), output.display())?;
    Ok(EXIT_OK)
}

fn bench(out: &mut dyn Write, suite: &Path, output: &Path) -> Result<i32> {
    let suite = BenchSuite::parse(&read(suite)?)?;
    let report = run_benchmark(&suite.specs, suite.noise_fraction, suite.runs)?;
    write(output, &report.to_json())?;
    write!(out, "{}", report.to_text())?;
    Ok(EXIT_OK)
}

/// Runs a parsed command, writing results to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Check { file, format, only } => check(out, &file, format, only),
        Command::Eval { file, input } => eval(out, &file, &input),
        Command::Generate {
            columns,
            rules,
            seed,
            inject,
            fraction,
            output,
        } => generate(out, gen_spec(&columns, rules, seed)?, inject, fraction, &output),
        Command::Bench { suite, output } => bench(out, &suite, &output),
    }
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    match execute(cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
