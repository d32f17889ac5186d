//! `cxc`: command-line front end for finite and periodic cube complexes.
//!
//! Exit codes: 0 pass, 1 property violated, 2 input error, 3 inconclusive.

mod commands;
pub mod input;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::input::{load, read_document, Loaded};
use crate::report::{Outcome, Report, Timings, Verdict};

#[derive(Debug, Parser)]
#[command(name = "cxc", version, about = "Checks and computations on finite and Z-periodic cube complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Clone, Debug, clap::Args)]
pub struct Options {
    /// Print one JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest power of g searched for inversions.
    #[arg(long, global = true, default_value_t = 8)]
    pub power_bound: u32,
    /// Level spread of the Min checks (default 3|g| + 4).
    #[arg(long, global = true)]
    pub spread: Option<i64>,
    /// Random loops sampled by the contraction checks.
    #[arg(long, global = true, default_value_t = 100)]
    pub loop_samples: usize,
    /// Largest periodic window, in vertices.
    #[arg(long, global = true, env = "CXC_GROWTH_CAP", default_value_t = cxc_core::periodic::DEFAULT_GROWTH_CAP)]
    pub growth_cap: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check gluing rules and the declared automorphism.
    Validate { file: String },
    /// Flag condition for every vertex link.
    Links { file: String },
    /// Flag links plus simple connectivity, with the median-graph cross-check.
    IsCat0 { file: String },
    /// Walls, with self-intersection, self-osculation and two-sidedness.
    Walls { file: String },
    /// Combinatorial distance, cross-checked by counting walls or a larger window.
    Distance { file: String, u: String, v: String },
    /// Elliptic, hyperbolic, inversion or undecided.
    Classify { file: String },
    /// Translation length and the vertices realizing it.
    Minset { file: String },
    /// Convexity and CAT(0) evidence for Min.
    VerifyMin { file: String },
    /// Builds and verifies a combinatorial axis.
    Axis { file: String },
    /// Contracts a loop given as vertices; the loop is closed automatically.
    ContractLoop {
        file: String,
        #[arg(required = true)]
        vertices: Vec<String>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Writes a generated example in canonical form.
    Gen {
        family: String,
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Links { .. } => "links",
            Command::IsCat0 { .. } => "is-cat0",
            Command::Walls { .. } => "walls",
            Command::Distance { .. } => "distance",
            Command::Classify { .. } => "classify",
            Command::Minset { .. } => "minset",
            Command::VerifyMin { .. } => "verify-min",
            Command::Axis { .. } => "axis",
            Command::ContractLoop { .. } => "contract-loop",
            Command::Gen { .. } => "gen",
        }
    }

    fn file(&self) -> Option<&str> {
        match self {
            Command::Validate { file }
            | Command::Links { file }
            | Command::IsCat0 { file }
            | Command::Walls { file }
            | Command::Distance { file, .. }
            | Command::Classify { file }
            | Command::Minset { file }
            | Command::VerifyMin { file }
            | Command::Axis { file }
            | Command::ContractLoop { file, .. } => Some(file),
            Command::Gen { .. } => None,
        }
    }
}

/// Exit code and the text written to standard output and standard error.
#[derive(Debug)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

pub fn execute(cli: &Cli) -> (Verdict, Report, Vec<String>) {
    let opts = &cli.options;
    let start = Instant::now();
    let mut input = json!({ "args": cli_args(&cli.command) });
    let mut parse_ms = 0.0;
    let outcome = match cli.command.file() {
        None => match &cli.command {
            Command::Gen { family, size, output } => commands::generate(family, *size, opts.seed, output.as_deref()),
            _ => unreachable!("every other command reads a file"),
        },
        Some(file) => {
            input["file"] = json!(file);
            let loaded = read_document(file).and_then(|doc| load(doc, opts.growth_cap));
            parse_ms = ms(start);
            if let Ok(l) = &loaded {
                describe(&mut input, l);
            }
            match (&cli.command, loaded) {
                (Command::Validate { .. }, loaded) => commands::validate_cmd(loaded),
                (_, Err(e)) => Outcome::input_error(e.to_string()),
                (command, Ok(l)) => run_loaded(command, &l, opts),
            }
        }
    };
    let compute_ms = ms(start) - parse_ms;
    let mut result = outcome.result;
    result.insert("verdict".into(), json!(outcome.verdict.name()));
    let report = Report {
        command: cli.command.name().to_string(),
        input,
        result,
        witnesses: outcome.witnesses,
        certificates: outcome.certificates,
        timings: Timings { parse_ms, compute_ms },
    };
    (outcome.verdict, report, outcome.text)
}

fn run_loaded(command: &Command, l: &Loaded, opts: &Options) -> Outcome {
    match command {
        Command::Links { .. } => commands::links(l),
        Command::IsCat0 { .. } => commands::is_cat0(l, opts),
        Command::Walls { .. } => commands::walls(l),
        Command::Distance { u, v, .. } => commands::distance(l, u, v),
        Command::Classify { .. } => commands::classify(l, opts),
        Command::Minset { .. } => commands::minset(l),
        Command::VerifyMin { .. } => commands::verify_min(l, opts),
        Command::Axis { .. } => commands::axis(l),
        Command::ContractLoop { vertices, budget, .. } => commands::contract(l, vertices, *budget),
        Command::Validate { .. } | Command::Gen { .. } => unreachable!("handled before loading"),
    }
}

fn cli_args(command: &Command) -> serde_json::Value {
    match command {
        Command::Distance { u, v, .. } => json!({ "u": u, "v": v }),
        Command::ContractLoop { vertices, budget, .. } => json!({ "vertices": vertices, "budget": budget }),
        Command::Gen { family, size, output } => json!({ "family": family, "size": size, "output": output }),
        _ => json!({}),
    }
}

fn describe(input: &mut serde_json::Value, l: &Loaded) {
    input["kind"] = json!(l.kind().name());
    match l {
        Loaded::Finite { complex, map, .. } => {
            input["vertices"] = json!(complex.vertex_count());
            input["has_automorphism"] = json!(map.is_some());
        }
        Loaded::Periodic { complex, map, .. } => {
            input["orbits"] = json!(complex.orbit_names());
            input["has_automorphism"] = json!(map.is_some());
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Run { code, stdout: text, stderr: String::new() }
            } else {
                Run { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (verdict, report, text) = execute(&cli);
    let stdout = if cli.options.json {
        serde_json::to_string_pretty(&report).expect("serializable") + "\n"
    } else {
        let mut s: String = text.iter().map(|l| format!("{l}\n")).collect();
        if !matches!(cli.command, Command::Gen { output: None, .. }) || verdict != Verdict::Pass {
            s.push_str(&format!("verdict: {}\n", verdict.name()));
        }
        s
    };
    Run {
        code: verdict.exit_code(),
        stdout,
        stderr: String::new(),
    }
}
