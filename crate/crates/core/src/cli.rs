//! Command-line front end. Every subcommand prints one JSON document with
//! keys in alphabetical order and integers as decimal strings.
//!
//! Exit codes: 0 on success, 1 on infeasibility (with the certificate on
//! stderr), 2 on usage or parse errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::circulant::{self, CirculantGraph, DEFAULT_BFS_CAP};
use crate::coprime_basis::{compute_basis, Profile};
use crate::error::Error;
use crate::generator::{generate_instance, GenParams};
use crate::numeric::{Nat, NatSet};
use crate::reductions::{cover_to_gcd, cover_to_lcm, ReverseReduction};
use crate::setcover::{exact_cover, greedy_cover, CoverInstance};
use crate::solver::{self, Method, Mode, ProblemInstance, DEFAULT_BRUTE_FORCE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gcdlcm",
    version,
    about = "Smallest subsets preserving gcd or lcm"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a smallest S ⊆ A with gcd(S ∪ B) = gcd(A ∪ B) or lcm(S ∪ B) = lcm(A ∪ B).
    Solve(SolveArgs),
    /// Reduce an instance to Minimum Cover, or a cover instance back to integers.
    Reduce(ReduceArgs),
    /// Coprime basis and exponent matrix of A ∪ B.
    Basis(InstanceArgs),
    /// Connectivity and link pruning for a circulant graph.
    Circulant(CirculantArgs),
    /// Solve a Minimum Cover instance.
    Cover(CoverArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance JSON file, or `-` for standard input.
    #[arg(long, short, conflicts_with_all = ["a", "b"])]
    pub input: Option<PathBuf>,

    /// Inline elements of A, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_nat)]
    pub a: Option<Vec<Nat>>,

    /// Inline elements of B, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_nat)]
    pub b: Option<Vec<Nat>>,

    /// min-gcd or max-lcm; overrides the mode in an input file.
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,

    #[arg(long, value_parser = parse_method, default_value = "exact")]
    pub method: Method,

    /// Use exhaustive enumeration instead of the cover reduction.
    #[arg(long)]
    pub brute_force: bool,

    #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
    pub brute_force_cap: usize,

    /// Record wall time in `stats.elapsed_us` (output is then not reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,

    /// Cover instance JSON to reduce back to integers (`-` for stdin).
    #[arg(long, conflicts_with_all = ["input", "a", "b", "mode"], requires = "to")]
    pub cover: Option<PathBuf>,

    /// Target problem for `--cover`.
    #[arg(long, value_parser = parse_mode, requires = "cover")]
    pub to: Option<Mode>,
}

#[derive(Debug, Args)]
pub struct CirculantArgs {
    /// Number of nodes.
    #[arg(long)]
    pub m: u64,

    /// Links, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_nat)]
    pub links: Vec<Nat>,

    #[arg(long, value_parser = parse_method, default_value = "exact")]
    pub method: Method,

    /// Also confirm connectivity by breadth-first search up to this many nodes.
    #[arg(long, default_value_t = DEFAULT_BFS_CAP)]
    pub bfs_cap: u64,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    /// Cover instance JSON file, or `-` for standard input.
    #[arg(long, short)]
    pub input: PathBuf,

    #[arg(long, value_parser = parse_method, default_value = "exact")]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub seed: u64,

    /// Number of draws for A (duplicates collapse).
    #[arg(long)]
    pub count: usize,

    #[arg(long)]
    pub max_value: u64,

    #[arg(long, value_parser = parse_mode, default_value = "min-gcd")]
    pub mode: Mode,

    /// Number of draws for B.
    #[arg(long, default_value_t = 0)]
    pub b_count: usize,
}

fn parse_nat(s: &str) -> Result<Nat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed run: exit code plus a message for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    /// JSON to print on stdout anyway (circulant reports disconnection).
    output: Option<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
            output: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_infeasibility() {
            EXIT_INFEASIBLE
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            message: e.to_string(),
            output: None,
        }
    }
}

fn read_source(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::usage(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("reading {}: {e}", path.display())))
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &PathBuf, what: &str) -> Result<T, Failure> {
    let text = read_source(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("parsing {what} {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

impl InstanceArgs {
    fn load(&self) -> Result<ProblemInstance, Failure> {
        match (&self.input, &self.a) {
            (Some(path), _) => {
                let inst: ProblemInstance = parse_json(path, "instance")?;
                match self.mode {
                    Some(mode) if mode != inst.mode() => Ok(ProblemInstance::new(
                        inst.a().clone(),
                        inst.b().clone(),
                        mode,
                    )?),
                    _ => Ok(inst),
                }
            }
            (None, a) => {
                let a: NatSet = a.iter().flatten().collect();
                let b: NatSet = self.b.iter().flatten().collect();
                if a.is_empty() && b.is_empty() {
                    return Err(Failure::usage("give an instance with --input or --a/--b"));
                }
                Ok(ProblemInstance::new(
                    a,
                    b,
                    self.mode.unwrap_or(Mode::MinGcd),
                )?)
            }
        }
    }
}

#[derive(Serialize)]
struct BasisReport {
    basis: Vec<Nat>,
    exponents: Vec<Vec<u32>>,
    max_exponents: Vec<u32>,
    min_exponents: Vec<u32>,
    source: NatSet,
}

#[derive(Serialize)]
struct ReverseReport {
    #[serde(rename = "A")]
    a: NatSet,
    #[serde(rename = "B")]
    b: NatSet,
    mode: Mode,
    owners: Vec<usize>,
    target: Nat,
}

impl ReverseReport {
    fn new(r: ReverseReduction, mode: Mode) -> Self {
        ReverseReport {
            a: r.a,
            b: NatSet::new(),
            mode,
            owners: r.owners,
            target: r.target,
        }
    }
}

#[derive(Serialize)]
struct CirculantReport {
    connected: bool,
    pruned_links: Option<NatSet>,
    removed_count: Option<usize>,
}

fn execute(cfg: &RunConfig) -> Result<String, Failure> {
    match &cfg.command {
        Command::Solve(args) => {
            let inst = args.instance.load()?;
            let sol = if args.brute_force {
                solver::brute_force(&inst, args.brute_force_cap)?
            } else {
                solver::solve(&inst, args.method)?
            };
            let sol = if args.timing {
                sol
            } else {
                sol.without_timing()
            };
            Ok(to_json(&sol))
        }
        Command::Reduce(args) => match (&args.cover, args.to) {
            (Some(path), Some(mode)) => {
                let cover: CoverInstance = parse_json(path, "cover instance")?;
                let rev = match mode {
                    Mode::MaxLcm => cover_to_lcm(&cover)?,
                    Mode::MinGcd => cover_to_gcd(&cover)?,
                };
                Ok(to_json(&ReverseReport::new(rev, mode)))
            }
            _ => {
                let inst = args.instance.load()?;
                Ok(to_json(&solver::reduce(&inst)?))
            }
        },
        Command::Basis(args) => {
            let inst = args.load()?;
            let cb = compute_basis(&inst.a().union(inst.b()))?;
            Ok(to_json(&BasisReport {
                basis: cb.basis().to_vec(),
                exponents: cb.exponents().to_vec(),
                max_exponents: cb.profile(Profile::Max)?,
                min_exponents: cb.profile(Profile::Min)?,
                source: cb.source().clone(),
            }))
        }
        Command::Circulant(args) => {
            let g = CirculantGraph::new(args.m, args.links.iter().collect())?;
            let connected = circulant::is_connected_gcd(&g);
            if args.m <= args.bfs_cap {
                let by_search = circulant::is_connected_bfs(&g, args.bfs_cap)?;
                debug_assert_eq!(connected, by_search);
            }
            match circulant::prune_links(&g, args.method) {
                Ok(pruned) => Ok(to_json(&CirculantReport {
                    connected,
                    removed_count: Some(g.links().len() - pruned.len()),
                    pruned_links: Some(pruned),
                })),
                Err(e) => {
                    let mut f = Failure::from(e);
                    f.output = Some(to_json(&CirculantReport {
                        connected,
                        pruned_links: None,
                        removed_count: None,
                    }));
                    Err(f)
                }
            }
        }
        Command::Cover(args) => {
            let cover: CoverInstance = parse_json(&args.input, "cover instance")?;
            let sol = match args.method {
                Method::Exact => exact_cover(&cover)?,
                Method::Greedy => greedy_cover(&cover)?,
            };
            Ok(to_json(&sol))
        }
        Command::Gen(args) => {
            let inst = generate_instance(&GenParams {
                seed: args.seed,
                count: args.count,
                max_value: args.max_value,
                mode: args.mode,
                b_count: args.b_count,
            })?;
            Ok(to_json(&inst))
        }
    }
}

fn emit(cfg: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &cfg.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("writing {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("writing output: {e}"))),
    }
}

/// Runs a parsed configuration and returns the process exit code.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = execute(cfg).and_then(|text| emit(cfg, &text, stdout));
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if let Some(text) = &f.output {
                if let Err(e) = emit(cfg, text, stdout) {
                    let _ = writeln!(stderr, "error: {}", e.message);
                }
            }
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            code
        }
    }
}
