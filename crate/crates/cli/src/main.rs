use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latgap::oracle::OracleConfig;
use latgap::Eta;
use latgap_cli::bench::{self, Ladder};
use latgap_cli::commands::{self, GenerateKind, GenerateRequest, SolveOptions};
use latgap_cli::{exit, to_json};

#[derive(Parser)]
#[command(name = "latgap", version, about = "Lattice-based gap distinguishers for exact cover problems")]
struct Cli {
    /// Node budget for the exhaustive oracle.
    #[arg(long, global = true, default_value_t = OracleConfig::default().node_limit)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run the distinguisher on an instance file.
    Solve {
        path: PathBuf,
        /// Cross-check the verdict with the exhaustive oracle.
        #[arg(long)]
        verify: bool,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Write a promise instance certified by the oracle.
    Generate {
        /// yes-set-cover, no-set-cover, yes-hypergraph or no-hypergraph
        kind: GenerateKind,
        /// Elements or vertices.
        #[arg(long)]
        n: usize,
        /// Sets, YES-hypergraph edges, or the NO-hypergraph edge cap.
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value = "2")]
        eta: Eta,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify an instance by exhaustive search.
    Oracle { path: PathBuf },
    /// Audit the intermediate claims on one file or a random batch.
    CheckLemmas {
        #[arg(conflicts_with = "random")]
        path: Option<PathBuf>,
        /// Number of random promise instances to audit.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// Print only the summary counts.
        #[arg(long)]
        summary: bool,
    },
    /// Time the set-cover distinguisher over a ladder of sizes.
    Bench {
        #[arg(long, default_value_t = 10)]
        from: usize,
        #[arg(long, default_value_t = 100)]
        to: usize,
        #[arg(long, default_value_t = 10)]
        step: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = OracleConfig { node_limit: cli.budget };
    match cli.command {
        Command::Solve { path, verify, timing } => {
            let report = commands::solve(&path, &SolveOptions { verify, timing, oracle: cfg });
            print!("{}", to_json(&report));
            code(report.exit_code)
        }
        Command::Generate { kind, n, m, k, d, eta, seed, out } => {
            let req = GenerateRequest { kind, n, m, k, d, eta, seed, out };
            let (report, bytes) = commands::generate(&req, &cfg);
            match bytes {
                Some(b) => print!("{}", String::from_utf8_lossy(&b)),
                None => print!("{}", to_json(&report)),
            }
            if report.exit_code != exit::OK {
                if let Some(e) = &report.error {
                    eprintln!("error: {e}");
                }
            }
            code(report.exit_code)
        }
        Command::Oracle { path } => {
            let report = commands::oracle(&path, &cfg);
            print!("{}", to_json(&report));
            code(report.exit_code)
        }
        Command::CheckLemmas { path, random, seed, threads, summary } => {
            let threads = threads.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });
            let mut report = match (path, random) {
                (Some(p), _) => commands::check_lemmas_path(&p, &cfg),
                (None, Some(count)) => commands::check_lemmas_random(count, seed, &cfg, threads),
                (None, None) => {
                    eprintln!("error: give an instance path or --random <count>");
                    return code(exit::IO);
                }
            };
            if summary {
                report.entries.retain(|e| !e.audit.passed());
            }
            print!("{}", to_json(&report));
            code(report.exit_code)
        }
        Command::Bench { from, to, step, reps, seed, format } => {
            match bench::run(Ladder { from, to, step }, seed, reps) {
                Ok(rows) => {
                    match format {
                        Format::Csv => print!("{}", bench::to_csv(&rows)),
                        Format::Json => print!("{}", to_json(&rows)),
                    }
                    code(exit::OK)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    code(exit::OUT_OF_RANGE)
                }
            }
        }
    }
}
