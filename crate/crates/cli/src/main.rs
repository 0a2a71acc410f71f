//! `ufabound`: reproducible experiments on two-way NFA to UFA lower bounds.
//!
//! Exit status: 0 on success, 1 when a verification fails or an input file
//! cannot be read or parsed, 2 on a usage error.

use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use ufabound::automata::{AutomatonFile, ParsedAutomaton};
use ufabound::combinatorics::{enumerate_ordered_prefix_tables, table1_row, Table1Row};
use ufabound::crossing::{random_instance, verify_optimality, OptimalityReport};
use ufabound::linalg::{rank_exact_bool, rank_mod_p_bool};
use ufabound::tables::{enumerate_ordered_by_filter, enumerate_prefix_tables, enumerate_suffix_tables};
use ufabound::verify::{run_checks, Level};
use ufabound::witness::{build_k, build_m};
use ufabound::{count_ordered_prefix_tables, BoolMatrix, TwoWayNfa};

#[derive(Parser)]
#[command(name = "ufabound", version, about = "Two-way NFA to UFA lower-bound experiments")]
struct Cli {
    /// Worker threads for matrix construction and rank (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of ordered prefix tables on n states.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Print the comparison table for n = 1..=max as CSV.
    Table1 {
        #[arg(long)]
        max: usize,
    },
    /// Write tables, one per line, in text form.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Filter)]
        method: Method,
        #[arg(long, value_enum, default_value_t = TableKind::Ordered)]
        kind: TableKind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write M(n) or K(n) plus FILE.rows / FILE.cols label files.
    BuildMatrix {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, ignore_case = true)]
        kind: MatrixKind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the rank of a 0/1 matrix file (exact over the rationals by default).
    Rank {
        #[arg(long = "in")]
        input: PathBuf,
        /// Rank modulo this prime (< 2^32).
        #[arg(long = "mod", conflicts_with = "exact")]
        modulus: Option<u64>,
        #[arg(long)]
        exact: bool,
    },
    /// Run the named self-checks for n.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the concatenation-matrix rank bound for a 2NFA and word sets.
    Schmidt {
        /// Automaton in JSON form.
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        automaton: Option<PathBuf>,
        /// Prefix words, one per line (`-` is the empty word, `#` starts a comment line).
        #[arg(long, requires = "automaton")]
        prefixes: Option<PathBuf>,
        #[arg(long, requires = "automaton")]
        suffixes: Option<PathBuf>,
        /// Use a random automaton and random word sets instead.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 2)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        alphabet: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Filter,
    Bijection,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Prefix,
    Suffix,
    Ordered,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    #[value(name = "M")]
    M,
    #[value(name = "K")]
    K,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// Invalid flag values, reported with exit status 2.
#[derive(Debug)]
struct UsageError(String);

impl Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Library errors about argument values are usage errors.
fn checked<T>(r: ufabound::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| match e {
        ufabound::Error::Argument(_) | ufabound::Error::Capacity { .. } => {
            anyhow!(UsageError(e.to_string()))
        }
        other => anyhow!(other),
    })
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

enum Status {
    Ok,
    VerificationFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Count { n } => {
            writeln!(out, "{}", checked(count_ordered_prefix_tables(n))?)?;
        }
        Command::Table1 { max } => {
            if max == 0 {
                return Err(usage("--max must be at least 1"));
            }
            writeln!(out, "{}", Table1Row::CSV_HEADER)?;
            for n in 1..=max {
                writeln!(out, "{}", checked(table1_row(n))?.to_csv())?;
            }
        }
        Command::Enumerate { n, method, kind, out: path } => {
            let lines: Vec<String> = match (kind, method) {
                (TableKind::Ordered, Method::Filter) => to_lines(checked(enumerate_ordered_by_filter(n))?),
                (TableKind::Ordered, Method::Bijection) => {
                    to_lines(checked(enumerate_ordered_prefix_tables(n))?)
                }
                (_, Method::Bijection) => {
                    return Err(usage("--method bijection generates ordered prefix tables only"))
                }
                (TableKind::Prefix, Method::Filter) => to_lines(checked(enumerate_prefix_tables(n))?),
                (TableKind::Suffix, Method::Filter) => to_lines(checked(enumerate_suffix_tables(n))?),
            };
            let mut text = lines.join("\n");
            if !text.is_empty() {
                text.push('\n');
            }
            write_file(&path, &text)?;
            writeln!(out, "{}", lines.len())?;
        }
        Command::BuildMatrix { n, kind, out: path } => {
            let m = match kind {
                MatrixKind::M => checked(build_m(n))?,
                MatrixKind::K => checked(build_k(n))?,
            };
            m.write_files(&path)
                .with_context(|| format!("writing {}", path.display()))?;
            writeln!(out, "{} {}", m.matrix.rows(), m.matrix.cols())?;
        }
        Command::Rank { input, modulus, exact: _ } => {
            let text = read_file(&input)?;
            let m = BoolMatrix::parse_text(&text)
                .with_context(|| format!("parsing {}", input.display()))?;
            let rank = match modulus {
                Some(p) => checked(rank_mod_p_bool(&m, p))?,
                None => checked(rank_exact_bool(&m))?,
            };
            writeln!(out, "{rank}")?;
        }
        Command::Verify { n, level, seed } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let results = checked(run_checks(n, level, seed))?;
            let failed = results.iter().filter(|r| r.failed()).count();
            for r in &results {
                writeln!(out, "{r}")?;
            }
            writeln!(out, "{} checks, {failed} failed (n = {n}, seed = {seed})", results.len())?;
            if failed > 0 {
                return Ok(Status::VerificationFailed);
            }
        }
        Command::Schmidt { automaton, prefixes, suffixes, random, states, alphabet, seed } => {
            let report = if random {
                if states == 0 || alphabet == 0 {
                    return Err(usage("--states and --alphabet must be at least 1"));
                }
                checked(random_instance(states, alphabet, seed).and_then(|inst| inst.verify()))?
            } else {
                let automaton = automaton.expect("clap requires --automaton without --random");
                let (Some(prefixes), Some(suffixes)) = (prefixes, suffixes) else {
                    return Err(usage("--prefixes and --suffixes are required with --automaton"));
                };
                schmidt_from_files(&automaton, &prefixes, &suffixes)?
            };
            writeln!(out, "rank bound: {}", report.bound)?;
            writeln!(out, "{}", report.to_json())?;
            if !report.ok {
                for v in &report.violations {
                    eprintln!("violation: {v}");
                }
                return Ok(Status::VerificationFailed);
            }
        }
    }
    Ok(Status::Ok)
}

fn to_lines<T: Display>(items: Vec<T>) -> Vec<String> {
    items.iter().map(T::to_string).collect()
}

fn read_file(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_words(file: &AutomatonFile, path: &Path) -> anyhow::Result<Vec<Vec<usize>>> {
    read_file(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| {
            file.parse_word(l)
                .with_context(|| format!("{}:{}", path.display(), i + 1))
        })
        .collect()
}

fn schmidt_from_files(automaton: &Path, prefixes: &Path, suffixes: &Path) -> anyhow::Result<OptimalityReport> {
    let file = AutomatonFile::from_json(&read_file(automaton)?)
        .with_context(|| format!("parsing {}", automaton.display()))?;
    let xs = read_words(&file, prefixes)?;
    let ys = read_words(&file, suffixes)?;
    let a = match &file.automaton {
        ParsedAutomaton::OneWay(nfa) => TwoWayNfa::from_one_way(nfa),
        ParsedAutomaton::TwoWay(a) => a.clone(),
    };
    checked(verify_optimality(&a, &xs, &ys, None))
}
