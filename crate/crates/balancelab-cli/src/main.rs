//! Command-line front end: parse source specifications, run the analyzers,
//! and emit JSON/CSV/plot-data reports. Every run writes a manifest next to
//! its outputs; identical parameters reproduce identical reports.

mod commands;
mod context;
mod sources;

use clap::{Parser, Subcommand};

use crate::context::{CliError, Context, EmitKind};

#[derive(Parser)]
#[command(
    name = "balancelab",
    version,
    about = "Generate structured infinite words and scan their balance, discrepancy, complexity, recurrence, and repetitions"
)]
struct Cli {
    /// Output directory for reports and manifests.
    #[arg(long, global = true, default_value = ".")]
    out: std::path::PathBuf,
    /// Report format.
    #[arg(long, global = true, default_value = "json")]
    emit: EmitKind,
    /// Worker threads for the analyzers (1 = sequential, 0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for deterministically sampled constructions.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SourceArgs {
    /// Built-in source name (tribonacci, fibonacci-word, thue-morse,
    /// period-doubling, chacon, appendix-b) or a path to a word file.
    #[arg(long)]
    source: Option<String>,
    /// Substitution rules (path to text/JSON rules); the word is its fixed
    /// point.
    #[arg(long)]
    sub: Option<String>,
    /// Continued-fraction quotients like "1 2 (3)"; the word is the
    /// characteristic level construction.
    #[arg(long)]
    cf: Option<String>,
    /// Directive sequence (path or inline "letters: a b c; a b c (...)").
    #[arg(long)]
    directive: Option<String>,
    /// Tower or automaton spec file (JSON).
    #[arg(long)]
    spec: Option<String>,
    /// Seed letter for fixed points and directive words (defaults to the
    /// file's seed or the first letter).
    #[arg(long)]
    seed_letter: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize a prefix of a word and write it in the word text format.
    Generate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        len: usize,
    },
    /// Count distinct factors per length.
    Complexity {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 50)]
        nmax: usize,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
    },
    /// Balance profile of one pattern, or a whole-language sweep.
    Balance {
        #[command(flatten)]
        source: SourceArgs,
        /// Pattern to profile; omit to sweep all factors up to --umax.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, default_value_t = 8)]
        umax: usize,
        #[arg(long, default_value_t = 300)]
        nmax: usize,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
    },
    /// Deviation of windowed counts from the frequency drift.
    Discrepancy {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        pattern: String,
        /// Exact frequency; estimated from the prefix when omitted.
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long, default_value_t = 300)]
        nmax: usize,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
    },
    /// Empirical recurrence function of the scanned prefix.
    Recurrence {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 20)]
        nmax: usize,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
    },
    /// Largest integer repetition in a prefix.
    Powerfree {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 10)]
        pmax: usize,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
    },
    /// Apply a block code to a word and write the coded prefix.
    Blockcode {
        #[command(flatten)]
        source: SourceArgs,
        /// "sum:K", "sliding:K" (windows coded by first appearance), or a
        /// JSON file {"k": K, "map": {window: letter}}.
        #[arg(long)]
        code: String,
        #[arg(long)]
        len: usize,
    },
    /// Characteristic word of a continued fraction, with an optional
    /// rotation cross-check.
    Sturmian {
        #[arg(long)]
        cf: String,
        #[arg(long, default_value_t = 10_000)]
        len: usize,
        /// Verify the rotation coding reproduces the level construction.
        #[arg(long)]
        check_rotation: bool,
        /// Convergent depth for the rotation coding.
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
    /// Directive-sequence word with its weak and strong quotients.
    ArnouxRauzy {
        #[arg(long)]
        directive: String,
        #[arg(long, default_value_t = 10_000)]
        len: usize,
        #[arg(long)]
        seed_letter: Option<String>,
        /// Directive letters inspected for the quotient report.
        #[arg(long, default_value_t = 64)]
        window: usize,
    },
    /// Forecast certificate, pattern count tables, seam checks, and
    /// predicted frequencies for a substitution.
    Decisive {
        #[arg(long)]
        sub: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
        #[arg(long)]
        seed_letter: Option<String>,
        /// Random seam sites verified.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// The closed-form balance bound 2(L+1)(B K^4 + 2 K^3 + 1).
    Bound {
        /// Linear recurrence constant L; "tribonacci" uses 2 r^2 + r + 1.
        #[arg(long)]
        lin_rec: String,
        #[arg(long, default_value_t = 2.0)]
        letter_bound: f64,
        #[arg(long, default_value_t = 3.0)]
        structure: f64,
    },
    /// Tower words: validation, prefixes, and complexity growth.
    Toeplitz {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 4096)]
        len: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        check_growth: bool,
        #[arg(long, default_value_t = 100_000)]
        horizon: usize,
    },
    /// Evaluate an automaton over a positional numeration.
    Dfao {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 10_000)]
        len: usize,
    },
    /// Recurrence-formula table for the tribonacci word.
    AppendixA {
        #[arg(long, default_value_t = 28)]
        nmax: usize,
        #[arg(long, default_value_t = 10_000)]
        horizon: usize,
    },
    /// Cross-check battery for the built-in non-recurrent marker word.
    AppendixB {
        #[arg(long, default_value_t = 10_000)]
        horizon: usize,
        #[arg(long, default_value_t = 32)]
        max_shift: usize,
    },
    /// Run the full verification suite and print one line per criterion.
    ReproduceAll,
}

fn main() {
    let cli = Cli::parse();
    let context = Context {
        out_dir: cli.out.clone(),
        emit: cli.emit,
        jobs: cli.jobs,
        rng_seed: cli.seed,
        mode: if cli.jobs == 1 {
            balancelab::ExecMode::Sequential
        } else {
            balancelab::ExecMode::default()
        },
    };
    if cli.jobs > 1 {
        balancelab::exec::configure_thread_pool(cli.jobs);
    }
    let outcome = commands::dispatch(cli.command, &context);
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(CliError::Validation(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal error: {message}");
            std::process::exit(1);
        }
    }
}
