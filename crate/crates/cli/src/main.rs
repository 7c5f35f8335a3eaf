mod colors;
mod commands;
mod experiment;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use colors::ColorExpr;

/// Search properly edge-colored complete graphs for two vertex-disjoint
/// color-isomorphic subdivided cliques, and check the results.
///
/// Exit status: 0 when the requested object was produced, 1 for a
/// well-formed negative answer (no pair, failed verification), 2 for usage
/// or I/O errors.
#[derive(Debug, Parser)]
#[command(name = "colorpair", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Roundrobin,
    Greedy,
    Rainbow,
}

#[derive(Debug, Clone, Args)]
pub struct EmbedArgs {
    /// Size of the clique being subdivided.
    #[arg(long, default_value_t = 3)]
    pub t: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Abort at the first failed cardinality gate.
    #[arg(long, conflicts_with = "relaxed")]
    pub strict: bool,
    /// Log gate failures and keep searching (default).
    #[arg(long)]
    pub relaxed: bool,
    /// Partitions to sample before settling for the best one.
    #[arg(long, default_value_t = 64)]
    pub max_tries: usize,
    /// Backtracking budget of the embedding search.
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a coloring of K_n as JSON.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Family::Greedy)]
        family: Family,
        /// Greedy color target, e.g. `n-1`, `2n`, `40`.
        #[arg(long)]
        colors: Option<ColorExpr>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a coloring is proper.
    Verify { coloring: PathBuf },
    /// Run the constructive pipeline and emit a certificate.
    FindPair {
        coloring: PathBuf,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also dump the auxiliary graph adjacency as JSON.
        #[arg(long)]
        dump_aux: Option<PathBuf>,
    },
    /// Brute-force search for a pair of copies.
    Oracle {
        coloring: PathBuf,
        #[arg(long, default_value_t = 3)]
        t: usize,
        /// Stop after this many copies (the answer is then inconclusive).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a certificate against a coloring.
    CheckCert {
        coloring: PathBuf,
        certificate: PathBuf,
    },
    /// Sweep sizes, color budgets and seeds; write one CSV row per run.
    Experiment(experiment::ExperimentArgs),
    /// Report the counting checks on one instance as JSON.
    Audit {
        coloring: PathBuf,
        #[command(flatten)]
        embed: EmbedArgs,
        /// Random subsets of side A to run the weight check on.
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Produced,
    Negative,
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate {
            n,
            family,
            colors,
            seed,
            out,
        } => commands::generate(n, family, colors, seed, out.as_deref()),
        Command::Verify { coloring } => commands::verify(&coloring),
        Command::FindPair {
            coloring,
            embed,
            out,
            dump_aux,
        } => commands::find_pair(&coloring, &embed, out.as_deref(), dump_aux.as_deref()),
        Command::Oracle {
            coloring,
            t,
            budget,
            out,
        } => commands::oracle(&coloring, t, budget, out.as_deref()),
        Command::CheckCert {
            coloring,
            certificate,
        } => commands::check_cert(&coloring, &certificate),
        Command::Experiment(args) => experiment::run(&args),
        Command::Audit {
            coloring,
            embed,
            samples,
            out,
        } => commands::audit(&coloring, &embed, samples, out.as_deref()),
    };
    match result {
        Ok(Status::Produced) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
