use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dimer_core::commands::{self, parse_id_list, Command, Options, EXIT_INPUT_ERROR};
use dimer_core::rewrite::SearchBounds;
use dimer_core::Execution;

/// Invariants of dimer algebras on the torus.
///
/// Quiver arguments are JSON files or `fixture:<name>` (see `dimer fixtures --list`).
/// Exit codes: 0 success, 1 claim failed, 2 undecided within bounds, 3 input error.
#[derive(Parser, Debug)]
#[command(name = "dimer", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct Global {
    /// Search bounds for path equality as `WORD_LENGTH,STATES`.
    #[arg(long, global = true, value_parser = parse_bounds)]
    bounds: Option<SearchBounds>,
    /// Degree bound for monomial sets.
    #[arg(long, global = true, default_value_t = commands::DEFAULT_DEGREE_BOUND)]
    degree_bound: u32,
    /// Emit the JSON report (default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit the report as `key: value` lines.
    #[arg(long, global = true)]
    text: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct WithContraction {
    /// Quiver JSON file or `fixture:<name>`.
    quiver: String,
    /// Arrows to contract, comma separated; defaults to the fixture's own set.
    #[arg(long, value_parser = parse_ids)]
    contract: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Check the dimer conditions.
    Validate { quiver: String },
    /// Perfect and simple matchings.
    Matchings {
        quiver: String,
        #[arg(long)]
        simple: bool,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Decide whether two paths are equal modulo the relations.
    Eq {
        quiver: String,
        /// `e<vertex>` or comma-separated arrow ids.
        p: String,
        q: String,
    },
    /// Cycles at a vertex.
    Cycles {
        quiver: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// all | simple | hatc | homology:a,b
        #[arg(long, default_value = "all")]
        filter: String,
    },
    /// Monomial image of a path.
    Tau {
        #[command(flatten)]
        input: WithContraction,
        path: String,
    },
    /// Contract arrows and report the target quiver.
    Contract {
        quiver: String,
        #[arg(long, value_parser = parse_ids)]
        arrows: Option<Vec<usize>>,
        #[arg(long)]
        check_cyclic: bool,
        /// Also write the target quiver JSON here.
        #[arg(long)]
        output: Option<String>,
    },
    /// Generators of the cycle algebras of source and target.
    CycleAlgebra {
        #[command(flatten)]
        input: WithContraction,
    },
    /// Generators of the homotopy center, or membership of one monomial.
    HomotopyCenter {
        #[command(flatten)]
        input: WithContraction,
        #[arg(long)]
        image: Option<String>,
    },
    /// Reduced-center membership of a monomial.
    Center {
        #[command(flatten)]
        input: WithContraction,
        #[arg(long)]
        image: String,
        #[arg(long)]
        max_cycle_length: Option<usize>,
        /// Also search for the least power in the reduced center.
        #[arg(long)]
        power_max: Option<u32>,
    },
    /// Centrality, square-zero and kernel checks for a candidate.
    Nilradical {
        #[command(flatten)]
        input: WithContraction,
        /// Candidate JSON file; defaults to the fixture's candidate.
        #[arg(long)]
        candidate: Option<String>,
    },
    /// Normality conditions for the homotopy center.
    Normality {
        #[command(flatten)]
        input: WithContraction,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
    },
    /// List built-in fixtures or recheck one.
    Fixtures {
        #[arg(long)]
        list: bool,
        #[arg(long)]
        check: Option<String>,
    },
}

fn parse_bounds(text: &str) -> Result<SearchBounds, String> {
    let ids = parse_id_list(text).map_err(|e| e.to_string())?;
    match ids.as_slice() {
        [len, states] if *len > 0 && *states > 0 => Ok(SearchBounds::new(*len, *states)),
        _ => Err(format!(
            "expected two positive integers `LENGTH,STATES`, got `{text}`"
        )),
    }
}

fn parse_ids(text: &str) -> Result<Vec<usize>, String> {
    parse_id_list(text).map_err(|e| e.to_string())
}

fn to_command(sub: Sub) -> (Command, Option<String>) {
    let mut output = None;
    let cmd = match sub {
        Sub::Validate { quiver } => Command::Validate { quiver },
        Sub::Matchings {
            quiver,
            simple,
            cap,
        } => Command::Matchings {
            quiver,
            simple_only: simple,
            cap,
        },
        Sub::Eq { quiver, p, q } => Command::Eq { quiver, p, q },
        Sub::Cycles {
            quiver,
            vertex,
            max_len,
            filter,
        } => Command::Cycles {
            quiver,
            vertex,
            max_len,
            filter,
        },
        Sub::Tau { input, path } => Command::Tau {
            quiver: input.quiver,
            contract: input.contract,
            path,
        },
        Sub::Contract {
            quiver,
            arrows,
            check_cyclic,
            output: out,
        } => {
            output = out;
            Command::Contract {
                quiver,
                arrows,
                check_cyclic,
            }
        }
        Sub::CycleAlgebra { input } => Command::CycleAlgebra {
            quiver: input.quiver,
            contract: input.contract,
        },
        Sub::HomotopyCenter { input, image } => Command::HomotopyCenter {
            quiver: input.quiver,
            contract: input.contract,
            image,
        },
        Sub::Center {
            input,
            image,
            max_cycle_length,
            power_max,
        } => Command::Center {
            quiver: input.quiver,
            contract: input.contract,
            image,
            max_cycle_length,
            power_max,
        },
        Sub::Nilradical { input, candidate } => Command::Nilradical {
            quiver: input.quiver,
            contract: input.contract,
            candidate,
        },
        Sub::Normality { input, n_max } => Command::Normality {
            quiver: input.quiver,
            contract: input.contract,
            n_max,
        },
        Sub::Fixtures { list, check } => Command::Fixtures { list, check },
    };
    (cmd, output)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_INPUT_ERROR as u8);
        }
    };
    let g = cli.global;
    let opts = Options {
        degree_bound: g.degree_bound,
        bounds: g.bounds,
        seed: g.seed,
        execution: if g.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
    };
    let (cmd, output) = to_command(cli.command);
    let outcome = match commands::run(&cmd, &opts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT_ERROR as u8);
        }
    };
    if let Some(path) = output {
        let target = serde_json::to_string_pretty(&outcome.report.results["target"])
            .expect("target serializes");
        if let Err(e) = fs::write(&path, target + "\n") {
            eprintln!("error: cannot write {path}: {e}");
            return ExitCode::from(EXIT_INPUT_ERROR as u8);
        }
    }
    if g.text {
        print!("{}", outcome.report.to_text());
    } else {
        println!("{}", outcome.report.to_json());
    }
    ExitCode::from(outcome.status.code() as u8)
}
