use std::fs;
use std::io::{self, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use posort::commands::{self, counts_table};
use posort::montecarlo::montecarlo;
use posort::server;
use posort::session::SessionStore;
use posort_core::learner::LearnerKind;
use posort_core::strategy::{export_dot, export_json};

#[derive(Parser)]
#[command(
    name = "posort",
    version,
    about = "Learn partial orders by pairwise comparisons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the posets on n labeled elements
    Enumerate {
        #[arg(short)]
        n: usize,
        /// print every poset as a JSON line (the count goes to stderr)
        #[arg(long)]
        dump: bool,
    },
    /// Mean and histogram of |Q(P)| over all posets on n elements
    Qstats {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// n^2/4 against log3 of the number of posets
    Table1 {
        #[arg(long)]
        json: bool,
    },
    /// Run a learner on every poset with n elements
    Exhaustive {
        #[arg(short)]
        n: usize,
        /// phi3, phi3-skip or naive
        #[arg(long, default_value = "phi3")]
        learner: LearnerKind,
        #[arg(long)]
        json: bool,
    },
    /// Comparisons of phi3 on random three-level posets
    Montecarlo {
        /// ground set sizes, multiples of 4
        #[arg(short = 'N', value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// one count for all sizes, or one per size
        #[arg(long, value_delimiter = ',', default_value = "200")]
        samples: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Optimal expected cost and strategy for n <= 5
    Optimal {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Serve the session API
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// JSON-lines session log, replayed on startup
        #[arg(long)]
        store: Option<PathBuf>,
    },
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Box<dyn std::error::Error>> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Enumerate { n, dump } => {
            let count = if dump {
                let stdout = io::stdout();
                let mut out = io::BufWriter::new(stdout.lock());
                let count = commands::enumerate(n, Some(&mut out))?;
                out.flush()?;
                eprintln!("{count}");
                count
            } else {
                let count = commands::enumerate(n, None)?;
                println!("{count}");
                count
            };
            Ok(count > 0)
        }
        Command::Qstats { n, json } => {
            let stats = commands::qstats(n)?;
            if json {
                print_json(&stats)?;
            } else {
                print!("{stats}");
            }
            Ok(true)
        }
        Command::Table1 { json } => {
            let table = commands::table1(&counts_table()?)?;
            if json {
                print_json(&table.0)?;
            } else {
                print!("{table}");
            }
            Ok(true)
        }
        Command::Exhaustive { n, learner, json } => {
            let report = commands::exhaustive(n, learner)?;
            if json {
                print_json(&report)?;
            } else {
                print!("{report}");
            }
            Ok(report.ok())
        }
        Command::Montecarlo {
            sizes,
            samples,
            seed,
            json,
        } => {
            if samples.len() != 1 && samples.len() != sizes.len() {
                return Err(format!("--samples needs 1 or {} values", sizes.len()).into());
            }
            let mut reports = Vec::new();
            if !json {
                println!("{:>5} {:>8} {:>12} {:>8}", "N", "samples", "mean", "ratio");
            }
            for (i, &n) in sizes.iter().enumerate() {
                let s = samples[if samples.len() == 1 { 0 } else { i }];
                let report = montecarlo(n, s, seed)?;
                if !json {
                    println!("{report}");
                }
                reports.push(report);
            }
            if json {
                print_json(&reports)?;
            }
            Ok(reports.iter().all(|r| r.failures == 0))
        }
        Command::Optimal { n, dot, json } => {
            let report = commands::optimal(n)?;
            print!("{report}");
            if let Some(path) = dot {
                fs::write(path, export_dot(&report.tree))?;
            }
            if let Some(path) = json {
                fs::write(
                    path,
                    serde_json::to_string_pretty(&export_json(&report.tree))?,
                )?;
            }
            Ok(report.tree.check_bellman())
        }
        Command::Serve { port, host, store } => {
            let store = match store {
                Some(path) => SessionStore::open(&path)?,
                None => SessionStore::in_memory(),
            };
            eprintln!("{} sessions loaded", store.len());
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(server::serve(SocketAddr::new(host, port), Arc::new(store)))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("internal checks failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
