//! `jsym`: Jacobi/Kronecker symbols and GCDs from the command line.
//!
//! Numbers are decimal or `0x`-prefixed hex; `kronecker` also accepts a
//! leading `-`. Results go to stdout, diagnostics to stderr. Exit codes:
//! 0 success, 1 failed self-test, 2 bad input.

mod bench;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use jacobi_core::jstate::{compact_table, full_table};
use jacobi_core::{gcd, jacobi, kronecker, selftest, Int, Nat, QuotientPolicy};

#[derive(Parser)]
#[command(
    name = "jsym",
    version,
    about = "Jacobi and Kronecker symbols computed alongside left-to-right GCD reduction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum PolicyArg {
    Unit,
    Euclid,
    Lehmer,
}

impl From<PolicyArg> for QuotientPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Unit => QuotientPolicy::Unit,
            PolicyArg::Euclid => QuotientPolicy::Euclid,
            PolicyArg::Lehmer => QuotientPolicy::Lehmer,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum TableArg {
    Full,
    Compact,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobi symbol (a | b) for nonnegative a and odd positive b
    Jacobi {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = PolicyArg::Lehmer)]
        policy: PolicyArg,
    },
    /// Greatest common divisor of positive a and b
    Gcd {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = PolicyArg::Lehmer)]
        policy: PolicyArg,
    },
    /// Kronecker symbol (a | b) for arbitrary integers (either may be
    /// negative, b may be zero or even)
    Kronecker { a: String, b: String },
    /// Run the exhaustive and randomized cross-check suites
    Selftest {
        /// Bound for the exhaustive numerator/denominator ranges
        #[arg(long, default_value_t = 1000)]
        max_n: u64,
        /// Random pairs per operand size in the window checks
        #[arg(long, default_value_t = 300)]
        random_reps: u64,
        #[arg(long, default_value_t = 0x6a61636f)]
        seed: u64,
    },
    /// Time the algorithms on seeded random operands; CSV on stdout
    Bench {
        /// Operand sizes in bits (comma separated, each at least 64)
        #[arg(long, value_delimiter = ',', default_value = "4096,16384,65536")]
        bits: Vec<u64>,
        #[arg(long, default_value_t = 8)]
        reps: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Algorithms to time (comma separated)
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "jacobi-euclid,jacobi-lehmer,jacobi-binary,gcd-euclid,gcd-lehmer"
        )]
        algos: Vec<String>,
    },
    /// Print the state-transition tables, one `index value` hex pair per
    /// line (sections marked with `#` when printing both)
    DumpTables {
        #[arg(long, value_enum, default_value_t = TableArg::Both)]
        table: TableArg,
    },
}

fn parse_nat(text: &str, what: &str) -> Result<Nat, String> {
    Nat::parse(text).map_err(|e| format!("{what}: {e}"))
}

fn parse_int(text: &str, what: &str) -> Result<Int, String> {
    Int::parse(text).map_err(|e| format!("{what}: {e}"))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Jacobi { a, b, policy } => {
            let a = parse_nat(&a, "a")?;
            let b = parse_nat(&b, "b")?;
            let sym = jacobi(&a, &b, policy.into()).map_err(|e| e.to_string())?;
            println!("{sym}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Gcd { a, b, policy } => {
            let a = parse_nat(&a, "a")?;
            let b = parse_nat(&b, "b")?;
            let g = gcd(&a, &b, policy.into()).map_err(|e| e.to_string())?;
            println!("{g}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Kronecker { a, b } => {
            let a = parse_int(&a, "a")?;
            let b = parse_int(&b, "b")?;
            println!("{}", kronecker(&a, &b));
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest {
            max_n,
            random_reps,
            seed,
        } => {
            let cfg = selftest::Config {
                max_n,
                probe_limit: max_n.min(500),
                lehmer_pairs: random_reps,
                seed,
                ..selftest::Config::default()
            };
            let mut failed = false;
            for outcome in selftest::run_all(&cfg) {
                match &outcome.failure {
                    None => println!("suite {}: PASS ({} cases)", outcome.name, outcome.cases),
                    Some(msg) => {
                        failed = true;
                        println!(
                            "suite {}: FAIL after {} cases, counterexample {}",
                            outcome.name, outcome.cases, msg
                        );
                    }
                }
            }
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Bench {
            bits,
            reps,
            seed,
            algos,
        } => {
            let records = bench::run(&bits, reps, seed, &algos)?;
            println!("{}", bench::CSV_HEADER);
            for r in records {
                println!("{}", r.csv_row());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::DumpTables { table } => {
            if matches!(table, TableArg::Full | TableArg::Both) {
                if table == TableArg::Both {
                    println!("# full (512 entries)");
                }
                for (i, v) in full_table().iter().enumerate() {
                    println!("{i:03x} {v:02x}");
                }
            }
            if matches!(table, TableArg::Compact | TableArg::Both) {
                if table == TableArg::Both {
                    println!("# compact (208 entries)");
                }
                for (i, v) in compact_table().iter().enumerate() {
                    println!("{i:02x} {v:02x}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
