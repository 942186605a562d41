//! Command-line front end for `causal-interface`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 2 for an invalid table, 3 when `--strict` meets an
//! infeasible epistemology, 4 for I/O, parse and flag errors.

pub mod format;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use causal_interface::{expected_table, sample_counts, GenerativeSpec};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::input::load;
use crate::report::{aligned, csv_header, measure_pairs, measures_json, measures_text, AnalysisReport, CurveFile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid table: {0}")]
    Table(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Table(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Io(_) | CliError::Parse(_) | CliError::Usage(_) => 4,
        }
    }

    pub(crate) fn context(self, ctx: &str) -> Self {
        match self {
            CliError::Io(m) => CliError::Io(format!("{ctx}: {m}")),
            CliError::Parse(m) => CliError::Parse(format!("{ctx}: {m}")),
            CliError::Table(m) => CliError::Table(format!("{ctx}: {m}")),
            CliError::Infeasible(m) => CliError::Infeasible(format!("{ctx}: {m}")),
            CliError::Usage(m) => CliError::Usage(format!("{ctx}: {m}")),
        }
    }
}

impl From<causal_interface::Error> for CliError {
    fn from(e: causal_interface::Error) -> Self {
        CliError::Table(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "causal-interface", version, about = "Interface decomposition of 2x2 cause/effect tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Effect measures, curve geometry and all five epistemologies.
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        table: TableOpts,
        #[command(flatten)]
        output: OutputOpts,
        /// Exit with status 3 if any epistemology is infeasible.
        #[arg(long)]
        strict: bool,
    },
    /// Effect measures only.
    Measures {
        input: PathBuf,
        #[command(flatten)]
        table: TableOpts,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Sampled interface curve with epistemology markers, as CSV.
    Curve {
        input: PathBuf,
        #[command(flatten)]
        table: TableOpts,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
        precision: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a table from the forward model.
    Simulate {
        #[arg(long)]
        eps0: f64,
        #[arg(long)]
        eps1: f64,
        #[arg(long)]
        sigma1: f64,
        /// Share of trials with the cause present.
        #[arg(long, default_value_t = 0.5)]
        row_weight: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the expected frequencies instead of sampled counts.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One row per input and epistemology.
    Compare {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        table: TableOpts,
        #[command(flatten)]
        output: OutputOpts,
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Clone, Copy, Args)]
struct TableOpts {
    /// Read CSV input as counts rather than frequencies.
    #[arg(long)]
    counts: bool,
    /// Analyze the table as given, without the column swap.
    #[arg(long)]
    no_canonicalize: bool,
}

#[derive(Debug, Clone, Copy, Args)]
struct OutputOpts {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Significant digits in printed numbers.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Runs the tool and returns its exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    4
                }
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Analyze {
            input,
            table,
            output,
            strict,
        } => {
            let report = analyze_file(&input, table, output.precision as usize, strict)?;
            emit(out, &render_analysis(&report, output.format)?)?;
            Ok(0)
        }
        Command::Measures { input, table, output } => {
            let report = analyze_file(&input, table, output.precision as usize, false)?;
            emit(out, &render_measures(&report, output.format)?)?;
            Ok(0)
        }
        Command::Curve {
            input,
            table,
            points,
            precision,
            out: path,
        } => {
            let loaded = load(&input, table.counts)?;
            let name = input.display().to_string();
            let file = CurveFile::build(&name, &loaded, !table.no_canonicalize, points, precision as usize)
                .map_err(|e| e.context(&name))?;
            write_output(path.as_deref(), out, &file.csv())?;
            Ok(0)
        }
        Command::Simulate {
            eps0,
            eps1,
            sigma1,
            row_weight,
            samples,
            seed,
            exact,
            out: path,
        } => {
            let text = simulate(row_weight, eps0, eps1, sigma1, samples, seed, exact)?;
            write_output(path.as_deref(), out, &text)?;
            Ok(0)
        }
        Command::Compare {
            inputs,
            table,
            output,
            strict,
        } => compare(&inputs, table, output, strict, out, err),
    }
}

fn analyze_file(path: &Path, opts: TableOpts, precision: usize, strict: bool) -> Result<AnalysisReport, CliError> {
    let name = path.display().to_string();
    let loaded = load(path, opts.counts)?;
    let report = AnalysisReport::build(&name, &loaded, !opts.no_canonicalize, precision).map_err(|e| e.context(&name))?;
    if strict {
        let bad = report.infeasible_labels();
        if !bad.is_empty() {
            return Err(CliError::Infeasible(format!("{name}: infeasible epistemologies: {}", bad.join(", "))));
        }
    }
    Ok(report)
}

fn render_analysis(report: &AnalysisReport, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Text => report.text(),
        Format::Json => json_line(&report.json())?,
        Format::Csv => {
            let mut s = csv_header();
            s.push('\n');
            for row in report.csv_rows() {
                s.push_str(&row);
                s.push('\n');
            }
            s
        }
    })
}

#[derive(Serialize)]
struct JsonMeasuresReport<'a> {
    input: &'a str,
    columns_swapped: Option<bool>,
    measures: Option<report::JsonMeasures>,
    precision: usize,
}

fn render_measures(report: &AnalysisReport, format: Format) -> Result<String, CliError> {
    let p = report.precision;
    Ok(match format {
        Format::Text => measures_text(report.measures.as_ref(), p),
        Format::Json => json_line(&JsonMeasuresReport {
            input: &report.input,
            columns_swapped: report.canonicalization.map(|c| c.columns_swapped),
            measures: report.measures.as_ref().map(|m| measures_json(m, p)),
            precision: p,
        })?,
        Format::Csv => {
            let mut s = String::from("measure,value\n");
            if let Some(m) = &report.measures {
                for (name, value) in measure_pairs(m) {
                    s.push_str(&format!("{name},{}\n", format::sig(value, p)));
                }
            }
            s
        }
    })
}

#[derive(Serialize)]
struct JsonSpec {
    row_weight: f64,
    eps0: f64,
    eps1: f64,
    sigma1: f64,
}

#[derive(Serialize)]
struct JsonFrequencies {
    frequencies: [[f64; 2]; 2],
    spec: JsonSpec,
}

#[derive(Serialize)]
struct JsonCounts {
    counts: [[u64; 2]; 2],
    samples: u64,
    seed: u64,
    generator: &'static str,
    spec: JsonSpec,
}

fn simulate(
    row_weight: f64,
    eps0: f64,
    eps1: f64,
    sigma1: f64,
    samples: u64,
    seed: u64,
    exact: bool,
) -> Result<String, CliError> {
    let spec = GenerativeSpec::new(row_weight, eps0, eps1, sigma1).map_err(|e| CliError::Usage(e.to_string()))?;
    let echo = JsonSpec {
        row_weight,
        eps0,
        eps1,
        sigma1,
    };
    if exact {
        return json_line(&JsonFrequencies {
            frequencies: expected_table(&spec).cells(),
            spec: echo,
        });
    }
    let sim = sample_counts(&spec, samples, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    json_line(&JsonCounts {
        counts: sim.counts.cells(),
        samples: sim.samples,
        seed: sim.seed,
        generator: sim.generator,
        spec: echo,
    })
}

#[derive(Serialize)]
struct JsonCompareEntry {
    input: String,
    exit_code: i32,
    error: Option<String>,
    solutions: Vec<report::JsonSolution>,
}

fn compare(
    inputs: &[PathBuf],
    opts: TableOpts,
    output: OutputOpts,
    strict: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let precision = output.precision as usize;
    let results: Vec<Result<AnalysisReport, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = inputs
            .iter()
            .map(|path| scope.spawn(move || analyze_file(path, opts, precision, strict)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::Io("worker panicked".into()))))
            .collect()
    });

    let worst = results
        .iter()
        .map(|r| r.as_ref().map_or_else(CliError::exit_code, |_| 0))
        .max()
        .unwrap_or(0);
    for e in results.iter().filter_map(|r| r.as_ref().err()) {
        let _ = writeln!(err, "error: {e}");
    }

    let text = match output.format {
        Format::Text => {
            let header: Vec<&str> = std::iter::once("input").chain(report::SOLUTION_HEADER).collect();
            let rows: Vec<Vec<String>> = results
                .iter()
                .filter_map(|r| r.as_ref().ok())
                .flat_map(|rep| {
                    rep.solutions.iter().map(move |s| {
                        let mut row = vec![rep.input.clone()];
                        row.extend(report::solution_cells(s, precision, "undefined"));
                        row
                    })
                })
                .collect();
            aligned(&header, &rows)
        }
        Format::Csv => {
            let mut s = csv_header();
            s.push('\n');
            for rep in results.iter().filter_map(|r| r.as_ref().ok()) {
                for row in rep.csv_rows() {
                    s.push_str(&row);
                    s.push('\n');
                }
            }
            s
        }
        Format::Json => {
            let entries: Vec<JsonCompareEntry> = inputs
                .iter()
                .zip(&results)
                .map(|(path, r)| match r {
                    Ok(rep) => JsonCompareEntry {
                        input: rep.input.clone(),
                        exit_code: 0,
                        error: None,
                        solutions: rep.json().solutions,
                    },
                    Err(e) => JsonCompareEntry {
                        input: path.display().to_string(),
                        exit_code: e.exit_code(),
                        error: Some(e.to_string()),
                        solutions: Vec::new(),
                    },
                })
                .collect();
            json_line(&entries)?
        }
    };
    emit(out, &text)?;
    Ok(worst)
}

fn json_line<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn write_output(path: Option<&Path>, out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => emit(out, text),
    }
}
