//! Command-line front end. [`run`] returns the text to print and the exit
//! status so it can be driven from tests without spawning a process.

use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::aut::{self, Limits};
use crate::decomposition::max_length_decomposition;
use crate::error::{Error, Result};
use crate::matrix::{MatrixSpace, DEFAULT_VERTEX_CAP};
use crate::semiring::{Builtin, FiniteSemiring};
use crate::zdg::{export_dot, quotient_labelled, twin_partition, SearchBudget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "zdaut", version, about = "Zero-divisor digraphs of matrix semirings and their automorphism groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the semiring axioms, one line per axiom.
    Validate(Config),
    /// Summarize elements, annihilators and zero-divisors.
    Info(Config),
    /// Emit Γ(M_n(S)) as DOT.
    Digraph(Config),
    /// List twin classes of Γ(M_n(S)).
    Twins(Config),
    /// Print a maximal-length decomposition of a non-zero-divisor.
    Decompose(Config),
    /// Automorphism group order and generators from the structure formula.
    Aut(Config),
    /// Cross-check the formula against the search oracle and the lemmas.
    Verify(Config),
}

#[derive(Debug, Args)]
struct Config {
    /// Semiring table file, or a builtin descriptor such as "bool x chain3".
    input: String,
    /// Matrix size.
    #[arg(short = 'n', default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP, value_parser = positive)]
    vertex_cap: usize,
    /// Refinement nodes allowed per automorphism search.
    #[arg(long, default_value_t = 100_000_000, value_parser = positive_u64)]
    search_budget: u64,
    /// Largest group the closure check will enumerate.
    #[arg(long, default_value_t = 20_000, value_parser = positive)]
    closure_cap: usize,
    /// Emit DOT instead of the text report.
    #[arg(long)]
    dot: bool,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> std::result::Result<u64, String> {
    positive(s).map(|v| v as u64)
}

impl Config {
    fn n(&self) -> usize {
        self.n as usize
    }

    fn limits(&self) -> Limits {
        Limits {
            vertex_cap: self.vertex_cap,
            budget: SearchBudget {
                max_nodes: self.search_budget,
                ..SearchBudget::default()
            },
            closure_cap: self.closure_cap,
        }
    }
}

/// Result of one command: text for stdout, text for stderr, exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(e),
        }
    }
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Malformed(_) | Error::Descriptor { .. } => EXIT_INPUT,
        Error::VertexCap { .. } | Error::Budget(_) => EXIT_BUDGET,
        _ => EXIT_FAILURE,
    }
}

/// Reads `input` as a table file when such a file exists, else as a builtin.
pub fn load_semiring(input: &str) -> Result<FiniteSemiring> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot read {input}: {e}"),
        })?;
        FiniteSemiring::parse(&text)
    } else {
        input.parse::<Builtin>()?.build()
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Validate(c) => validate(c),
        Command::Info(c) => with_ring(c, info),
        Command::Digraph(c) => with_ring(c, digraph),
        Command::Twins(c) => with_ring(c, twins),
        Command::Decompose(c) => with_ring(c, decompose),
        Command::Aut(c) => with_ring(c, aut_report),
        Command::Verify(c) => with_ring(c, verify),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn with_ring(c: &Config, f: fn(&Config, Arc<FiniteSemiring>) -> Result<Outcome>) -> Result<Outcome> {
    f(c, Arc::new(load_semiring(&c.input)?))
}

fn validate(c: &Config) -> Result<Outcome> {
    let s = load_semiring(&c.input)?;
    let report = s.check_axioms();
    let mut out = Outcome::ok(report.render(&s));
    if !report.all_hold() {
        out.code = EXIT_FAILURE;
    }
    Ok(out)
}

fn info(_: &Config, s: Arc<FiniteSemiring>) -> Result<Outcome> {
    let mut out = String::new();
    out.push_str(&format!("name {}\n", s.name()));
    out.push_str(&format!("size {}\n", s.size()));
    out.push_str(&format!("elements {}\n", s.names().join(" ")));
    out.push_str(&format!("zero {}\n", s.name_of(s.zero())));
    match s.one() {
        Some(one) => out.push_str(&format!("one {}\n", s.name_of(one))),
        None => out.push_str("one none\n"),
    }
    out.push_str(&format!("axioms {}\n", if s.check_axioms().all_hold() { "OK" } else { "FAIL" }));
    out.push_str(&format!("zero_divisors {}\n", s.format_set(&s.zero_divisor_set())));
    for x in s.elements() {
        out.push_str(&format!("annihilator {} {}\n", s.name_of(x), s.format_set(&s.annihilator(x))));
    }
    Ok(Outcome::ok(out))
}

fn digraph(c: &Config, s: Arc<FiniteSemiring>) -> Result<Outcome> {
    let space = MatrixSpace::new(s, c.n(), c.vertex_cap)?;
    let g = space.zero_divisor_digraph();
    Ok(Outcome::ok(export_dot(&g, Some(&space.labels()), None)))
}

fn twins(c: &Config, s: Arc<FiniteSemiring>) -> Result<Outcome> {
    let space = MatrixSpace::new(s, c.n(), c.vertex_cap)?;
    let g = space.zero_divisor_digraph();
    let p = twin_partition(&g);
    let labels = space.labels();
    let class_names: Vec<String> = p
        .classes()
        .iter()
        .map(|class| {
            let names: Vec<&str> = class.iter().map(|&v| labels[v].as_str()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    if c.dot {
        let q = quotient_labelled(&g, &p)?;
        return Ok(Outcome::ok(export_dot(&q.digraph, Some(&class_names), Some(&q.labels))));
    }
    Ok(Outcome::ok(format!("{}\n", class_names.join(" "))))
}

fn decompose(_: &Config, s: Arc<FiniteSemiring>) -> Result<Outcome> {
    s.require_commutative_antiring_with_identity()?;
    let d = max_length_decomposition(&s)?;
    Ok(Outcome::ok(format!("{}\n", d.render(&s))))
}

fn aut_report(c: &Config, s: Arc<FiniteSemiring>) -> Result<Outcome> {
    let (desc, _) = aut::describe(&s, c.n(), &c.limits())?;
    let mut out = String::new();
    out.push_str(&format!("decomposition {}\n", desc.alpha_decomp().render(&s)));
    let census: Vec<String> = twin_census(&desc.twin_sizes);
    out.push_str(&format!("twin_sizes {}\n", census.join(" ")));
    out.push_str(&format!("regular_order {}\n", desc.regular_order));
    for (i, class) in desc.analysis.classes.iter().enumerate() {
        let parts: Vec<&str> = class
            .members
            .iter()
            .map(|&k| s.name_of(desc.analysis.decomposition.parts[k]))
            .collect();
        out.push_str(&format!(
            "component {} x={} a={} parts={}\n",
            i + 1,
            class.members.len(),
            class.quotient_aut.order,
            parts.join("+")
        ));
    }
    out.push_str(&format!("order {}\n", desc.total_order));
    out.push_str(&format!("generators {}\n", desc.generators.len()));
    Ok(Outcome::ok(out))
}

fn twin_census(sizes: &[usize]) -> Vec<String> {
    let mut counts = std::collections::BTreeMap::<usize, usize>::new();
    for &size in sizes {
        *counts.entry(size).or_default() += 1;
    }
    counts.into_iter().map(|(size, k)| format!("{size}x{k}")).collect()
}

fn verify(c: &Config, s: Arc<FiniteSemiring>) -> Result<Outcome> {
    let report = aut::verify(&s, c.n(), &c.limits())?;
    let mut out = Outcome::ok(report.render());
    if !report.passed() {
        out.code = EXIT_FAILURE;
    }
    Ok(out)
}
