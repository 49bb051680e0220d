//! Command-line front end: `solve`, `gen`, `verify`, `bench`.
//!
//! Results go to stdout in a line grammar meant for scripts:
//!
//! ```text
//! cost <int>
//! tour <v1> <v2> ... <vn>      (only when a tour was requested)
//! ```
//!
//! Everything human-oriented goes to stderr. Exit codes: 0 success,
//! 1 verification mismatch, 2 usage or validation error, 3 resource limit.

mod bench;
mod verify;

pub use bench::{run_bench, BenchConfig, BenchRow};
pub use verify::{run_verification, verify_command, VerifyConfig, VerifyReport, VERIFY_MAX_N};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::io::{
    gen_random, read_instance, write_json, GeneratorSpec, InstanceDocument, IoError, SourceFormat,
};
use crate::kernels::{kernel_lookup, ExtCost, KernelError, KernelId};
use crate::solvers::{
    brute_force, held_karp_pull, memory_estimate, reconstruct_tour, solve_minplus, SolveError,
    SolveOptions, SolveStats, Tour, DEFAULT_MEM_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Solve(SolveError),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Output(String),
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        CliError::Solve(e)
    }
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solve(SolveError::MemoryBudget { .. }) => EXIT_RESOURCE,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tsp-minplus",
    version,
    about = "Exact TSP via batched min-plus products"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance and print its optimal cost.
    Solve(SolveArgs),
    /// Write a seeded random instance as JSON.
    Gen(GenArgs),
    /// Cross-check every solver, kernel and mode on random instances.
    Verify(VerifyArgs),
    /// Emit per-layer timing and accounting rows as CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Brute,
    HeldKarp,
    Minplus,
}

impl Algo {
    fn label(self) -> &'static str {
        match self {
            Algo::Brute => "brute",
            Algo::HeldKarp => "held-karp",
            Algo::Minplus => "minplus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsplib,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelName {
    Naive,
    Transposed,
    Tiled,
}

impl KernelName {
    fn id(self, tile: Option<usize>) -> Result<KernelId, CliError> {
        let id = match (self, tile) {
            (KernelName::Naive, None) => KernelId::naive(),
            (KernelName::Transposed, None) => KernelId::transposed(),
            (KernelName::Tiled, t) => {
                KernelId::tiled(t.unwrap_or(crate::kernels::TiledKernel::DEFAULT_TILE))
            }
            (_, Some(_)) => {
                return Err(CliError::Usage(
                    "--tile applies to the tiled kernel only".into(),
                ))
            }
        };
        kernel_lookup(&id)?;
        Ok(id)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance file, or `random:n=<n>,seed=<s>[,max-weight=<w>][,symmetric]`.
    pub input: String,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_enum, default_value = "minplus")]
    pub algo: Algo,
    #[arg(long, value_enum, default_value = "tiled")]
    pub kernel: KernelName,
    /// Block size for the tiled kernel (default 32).
    #[arg(long)]
    pub tile: Option<usize>,
    /// Enumerate subsets without city 1 as well.
    #[arg(long)]
    pub no_restrict: bool,
    /// Pad the last batch of each layer with infinite rows.
    #[arg(long)]
    pub pad_last_batch: bool,
    /// Keep every layer and print an optimal tour.
    #[arg(long)]
    pub reconstruct: bool,
    /// Write per-layer statistics as CSV.
    #[arg(long)]
    pub stats_out: Option<PathBuf>,
    /// DP memory budget in bytes.
    #[arg(long, default_value_t = DEFAULT_MEM_BUDGET)]
    pub mem_budget: u64,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub max_weight: u64,
    #[arg(long)]
    pub symmetric: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 9)]
    pub n_max: usize,
    /// Instances per size.
    #[arg(long, default_value_t = 25)]
    pub instances: usize,
    /// Base seed; instance seeds count up from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tile for the tiled kernel.
    #[arg(long, default_value_t = crate::kernels::TiledKernel::DEFAULT_TILE)]
    pub tile: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated city counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "naive,transposed,tiled"
    )]
    pub kernels: Vec<KernelName>,
    /// Tile sizes tried for the tiled kernel.
    #[arg(long, value_delimiter = ',', default_value = "32")]
    pub tiles: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Seed of the generated instance for each n.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub no_restrict: bool,
}

/// Outcome of a `solve` run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub name: String,
    pub n: usize,
    pub algorithm: String,
    pub kernel: Option<KernelId>,
    pub cost: ExtCost,
    pub tour: Option<Tour>,
    pub stats: Option<SolveStats>,
    pub wall_ns: u64,
}

impl RunReport {
    /// The stdout result lines.
    pub fn result_lines(&self) -> String {
        let mut s = format!("cost {}\n", self.cost);
        if let Some(t) = &self.tour {
            let order: Vec<String> = t.order.iter().map(usize::to_string).collect();
            s.push_str(&format!("tour {}\n", order.join(" ")));
        }
        s
    }
}

#[derive(Debug, Serialize)]
struct LayerCsvRow {
    layer: usize,
    batch_count: u64,
    source_rows: u64,
    scalar_ops: u64,
    update_writes: u64,
    layer_wall_ns: u64,
}

/// Parses arguments and runs one command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a, out, err),
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Bench(a) => cmd_bench(&a, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_input(args: &SolveArgs) -> Result<InstanceDocument, CliError> {
    if let Some(spec) = args.input.strip_prefix("random:") {
        return Ok(gen_random(&parse_inline_spec(spec)?)?);
    }
    let format = args.format.map(|f| match f {
        Format::Tsplib => SourceFormat::Tsplib,
        Format::Json => SourceFormat::Json,
    });
    Ok(read_instance(args.input.as_ref(), format)?)
}

/// `n=<n>,seed=<s>[,max-weight=<w>][,symmetric]`
fn parse_inline_spec(spec: &str) -> Result<GeneratorSpec, CliError> {
    let mut g = GeneratorSpec::new(0, 0, 1000, false);
    for part in spec.split(',').filter(|p| !p.is_empty()) {
        let bad = || CliError::Usage(format!("bad inline spec component `{part}`"));
        match part.split_once('=') {
            Some(("n", v)) => g.n = v.parse().map_err(|_| bad())?,
            Some(("seed", v)) => g.seed = v.parse().map_err(|_| bad())?,
            Some(("max-weight", v)) => g.max_weight = v.parse().map_err(|_| bad())?,
            None if part == "symmetric" => g.symmetric = true,
            _ => return Err(bad()),
        }
    }
    Ok(g)
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    if args.reconstruct && args.algo == Algo::Brute {
        return Err(CliError::Usage(
            "--reconstruct applies to the DP algorithms; brute force always prints its tour".into(),
        ));
    }
    let kernel = args.kernel.id(args.tile)?;
    let doc = load_input(args)?;
    let inst = &doc.instance;
    let n = inst.n();
    let started = Instant::now();

    let report = match args.algo {
        Algo::Brute => {
            let tour = brute_force(inst)?;
            RunReport {
                name: doc.name.clone(),
                n,
                algorithm: Algo::Brute.label().into(),
                kernel: None,
                cost: tour.cost,
                tour: Some(tour),
                stats: None,
                wall_ns: 0,
            }
        }
        Algo::HeldKarp => {
            let needed = memory_estimate(n, true, args.reconstruct);
            if needed > args.mem_budget {
                return Err(SolveError::MemoryBudget {
                    needed,
                    budget: args.mem_budget,
                }
                .into());
            }
            let outcome = held_karp_pull(inst, args.reconstruct);
            let tour = outcome
                .table
                .as_ref()
                .map(|t| reconstruct_tour(t, inst))
                .transpose()?;
            RunReport {
                name: doc.name.clone(),
                n,
                algorithm: Algo::HeldKarp.label().into(),
                kernel: None,
                cost: outcome.cost,
                tour,
                stats: None,
                wall_ns: 0,
            }
        }
        Algo::Minplus => {
            let opts = SolveOptions {
                restrict_to_v1: !args.no_restrict,
                keep_layers: args.reconstruct,
                pad_last_batch: args.pad_last_batch,
                mem_budget: args.mem_budget,
            };
            let outcome = solve_minplus(inst, &kernel, &opts)?;
            let tour = outcome
                .table
                .as_ref()
                .map(|t| reconstruct_tour(t, inst))
                .transpose()?;
            RunReport {
                name: doc.name.clone(),
                n,
                algorithm: Algo::Minplus.label().into(),
                kernel: Some(kernel.clone()),
                cost: outcome.cost,
                tour,
                stats: Some(outcome.stats),
                wall_ns: 0,
            }
        }
    };
    let report = RunReport {
        wall_ns: started.elapsed().as_nanos() as u64,
        ..report
    };

    out.write_all(report.result_lines().as_bytes())?;
    writeln!(
        err,
        "instance {} (n = {}, {}), algo {}{}, {:.3} s",
        if report.name.is_empty() {
            "-"
        } else {
            &report.name
        },
        report.n,
        doc.source_format,
        report.algorithm,
        report
            .kernel
            .as_ref()
            .map(|k| format!(", kernel {k}"))
            .unwrap_or_default(),
        report.wall_ns as f64 / 1e9
    )?;
    if let Some(stats) = &report.stats {
        writeln!(
            err,
            "kernel calls {}, scalar ops {}, update writes {}",
            stats.total_kernel_calls, stats.scalar_ops, stats.update_writes
        )?;
    }

    if let Some(path) = &args.stats_out {
        let stats = report
            .stats
            .as_ref()
            .ok_or_else(|| CliError::Usage("--stats-out requires --algo minplus".into()))?;
        let mut w = csv::Writer::from_path(path)?;
        for l in &stats.layers {
            w.serialize(LayerCsvRow {
                layer: l.level,
                batch_count: l.kernel_calls,
                source_rows: l.source_rows,
                scalar_ops: l.scalar_ops,
                update_writes: l.update_writes,
                layer_wall_ns: l.wall_ns,
            })?;
        }
        w.flush()?;
    }
    Ok(())
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let doc = gen_random(&GeneratorSpec::new(
        args.n,
        args.seed,
        args.max_weight,
        args.symmetric,
    ))?;
    fs::write(&args.out, write_json(&doc))?;
    writeln!(out, "{}", args.out.display())?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let config = VerifyConfig {
        n_min: args.n_min,
        n_max: args.n_max,
        instances: args.instances,
        seed: args.seed,
    };
    let kernels = [
        KernelId::naive(),
        KernelId::transposed(),
        KernelId::tiled(args.tile),
    ];
    let kernels = kernels
        .iter()
        .map(|id| Ok((id.to_string(), kernel_lookup(id)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    verify::verify_command(&config, &kernels, out, err)
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    if args.reps == 0 || args.n_list.is_empty() || args.kernels.is_empty() || args.tiles.is_empty()
    {
        return Err(CliError::Usage(
            "bench needs at least one n, kernel, tile and rep".into(),
        ));
    }
    let mut kernels = Vec::new();
    for k in &args.kernels {
        if *k == KernelName::Tiled {
            for &t in &args.tiles {
                kernels.push(k.id(Some(t))?);
            }
        } else {
            kernels.push(k.id(None)?);
        }
    }
    let config = BenchConfig {
        n_list: args.n_list.clone(),
        kernels,
        reps: args.reps,
        seed: args.seed,
        restrict_to_v1: !args.no_restrict,
    };
    let rows = run_bench(&config, err)?;
    match &args.csv {
        Some(path) => {
            bench::write_csv(csv::Writer::from_path(path)?, &rows)?;
            writeln!(out, "{}", path.display())?;
        }
        None => bench::write_csv(csv::Writer::from_writer(out), &rows)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("tsp-minplus").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn inline_spec() {
        let g = parse_inline_spec("n=5,seed=42,max-weight=10,symmetric").unwrap();
        assert_eq!(g, GeneratorSpec::new(5, 42, 10, true));
        assert!(parse_inline_spec("n=5,bogus").is_err());
    }

    #[test]
    fn solve_inline_random() {
        let (code, out, _) = run_capture(&["solve", "random:n=6,seed=3", "--reconstruct"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("cost "));
        assert!(lines[1].starts_with("tour 1 "));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["solve"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["solve", "random:n=4,seed=1", "--kernel", "fredman"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&[
                "solve",
                "random:n=4,seed=1",
                "--kernel",
                "naive",
                "--tile",
                "4"
            ])
            .0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&[
                "solve",
                "random:n=4,seed=1",
                "--algo",
                "brute",
                "--reconstruct"
            ])
            .0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["solve", "random:n=11,seed=1", "--algo", "brute"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_capture(&["solve", "/nonexistent/file.json"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn budget_rejection() {
        let (code, _, err) = run_capture(&[
            "solve",
            "random:n=30,seed=1",
            "--reconstruct",
            "--mem-budget",
            "1000000",
        ]);
        assert_eq!(code, EXIT_RESOURCE);
        assert!(err.contains("budget"));
    }
}
