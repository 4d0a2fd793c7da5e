//! Command-line front end. [`run`] is the whole program minus process I/O so
//! it can be driven from tests.

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::graph::metric_closure;
use crate::halfpoint::{classify, validate_subtour, HalfIntegerPoint};
use crate::instances::{make_donut, parse_instance, random_square_instance, serialize_point, Instance};
use crate::kotzig::{find_trail, BitransitionSystem};
use crate::oracles::held_karp;
use crate::tjoin::MatchingEngine;
use crate::tour::{hamiltonian_with_ones, tour_report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "squaretour", version, about = "Tours for half-integer points of the subtour polytope")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check subtour-polytope membership and print the point class.
    Validate { file: PathBuf },
    /// Minimum-cost Hamiltonian cycle through all 1-edges of a square point.
    Ham { file: PathBuf },
    /// Run the tour pipeline; reads stdin when FILE is '-' or absent.
    Tour { file: Option<PathBuf> },
    /// Eulerian trail avoiding the forbidden bitransitions.
    Kotzig { file: PathBuf },
    /// Write the k-donut instance.
    Donut {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random square point with random costs in [0, 100].
    RandomSquare {
        #[arg(long)]
        squares: usize,
        #[arg(long = "max-path")]
        max_path: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact reference values.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Optimal tour cost on the metric closure of the support (Held-Karp).
    Opt { file: PathBuf },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(err: &Error) -> Self {
        Outcome {
            code: exit_code(err),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TooLarge { .. } => EXIT_TOO_LARGE,
        Error::BoundViolated(_) | Error::InvariantViolation(_) | Error::GenerationFailed(_) => EXIT_FAILURE,
        _ => EXIT_INVALID,
    }
}

/// Runs the CLI on `args` (including the program name). `stdin` is read only
/// by `tour` without a file.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(outcome) => outcome,
        Err(err) => Outcome::error(&err),
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn read_point(text: &str) -> Result<(HalfIntegerPoint, Vec<i64>), Error> {
    match parse_instance(text)? {
        Instance::Point { point, costs } => Ok((point, costs)),
        Instance::Bitransition(_) => Err(Error::InvalidArgument("expected a POINT instance".into())),
    }
}

fn read_bts(text: &str) -> Result<BitransitionSystem, Error> {
    match parse_instance(text)? {
        Instance::Bitransition(sys) => Ok(sys),
        Instance::Point { .. } => Err(Error::InvalidArgument("expected a BTS instance".into())),
    }
}

fn write_or_print(text: String, out: Option<PathBuf>) -> Result<Outcome, Error> {
    match out {
        Some(path) => {
            std::fs::write(&path, text)
                .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    match command {
        Command::Validate { file } => {
            let (x, _) = read_point(&read_file(&file)?)?;
            let check = validate_subtour(&x);
            if !check.holds() {
                return Ok(Outcome {
                    code: EXIT_INVALID,
                    stdout: format!("INVALID {check}\n"),
                    stderr: String::new(),
                });
            }
            Ok(Outcome::ok(format!("{}\n", classify(&x)?)))
        }
        Command::Ham { file } => {
            let (x, costs) = read_point(&read_file(&file)?)?;
            let h = hamiltonian_with_ones(&x, &costs)?;
            Ok(Outcome::ok(format!("cost={}\ncycle={}\n", h.cost, join(&h.order))))
        }
        Command::Tour { file } => {
            let text = match file {
                Some(path) if path.as_os_str() != "-" => read_file(&path)?,
                _ => {
                    let mut s = String::new();
                    stdin
                        .read_to_string(&mut s)
                        .map_err(|e| Error::InvalidArgument(format!("cannot read stdin: {e}")))?;
                    s
                }
            };
            let (x, costs) = read_point(&text)?;
            let r = tour_report(&x, &costs, MatchingEngine::Auto)?;
            let mut out = String::new();
            writeln!(
                out,
                "cx={}/2 cH={} cJ={} tour={} bound={}",
                r.c_x2,
                r.c_h,
                r.c_j,
                r.final_cost,
                if r.bound_holds { "OK" } else { "FAIL" }
            )
            .unwrap();
            writeln!(out, "cycle={}", join(&r.final_cycle)).unwrap();
            let code = if r.bound_holds { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome {
                code,
                stdout: out,
                stderr: String::new(),
            })
        }
        Command::Kotzig { file } => {
            let sys = read_bts(&read_file(&file)?)?;
            let trail = find_trail(&sys)?;
            Ok(Outcome::ok(format!("{}\n", join(&trail.darts))))
        }
        Command::Donut { k, out } => {
            let d = make_donut(k)?;
            write_or_print(serialize_point(&d.point, &d.costs)?, out)
        }
        Command::RandomSquare {
            squares,
            max_path,
            seed,
            out,
        } => {
            let (x, costs) = random_square_instance(squares, max_path, 100, seed)?;
            write_or_print(serialize_point(&x, &costs)?, out)
        }
        Command::Oracle {
            which: OracleCommand::Opt { file },
        } => {
            let (x, costs) = read_point(&read_file(&file)?)?;
            let d = metric_closure(&x.weighted_support(&costs)?)?;
            Ok(Outcome::ok(format!("OPT={}\n", held_karp(&d)?)))
        }
    }
}
