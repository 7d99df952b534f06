//! Command implementations behind the `tnplanar` binary.
//!
//! Exit codes: 0 success, 1 usage or unreadable input, 2 computation error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{run_bench, BenchOptions, Family};
use crate::cnf::{brute_count, parse_dimacs_lenient, run_pipeline, PipelineOptions};
use crate::engine::{contract_full, ContractionStats, Strategy};
use crate::error::Error;
use crate::format::{network_from_json, network_to_json};
use crate::gadget::{verification_suite, verify_gadget};
use crate::network::TensorNetwork;
use crate::planar::{
    circular_drawing_with_trials, reduce_degree, replace_crossings, Variant, DEFAULT_THRESHOLD,
    DEFAULT_TRIALS,
};
use crate::tensor::Count;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tnplanar", version, about = "Exact Boolean tensor network contraction via planar separators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Contract a closed network (JSON) to its value.
    Contract(ContractArgs),
    /// Count models of a DIMACS CNF through the planar pipeline.
    Count(CountArgs),
    /// Replace drawing crossings by crossing gadgets.
    Planarize(PlanarizeArgs),
    /// Replace high-degree symmetric vertices by bounded-degree gadgets.
    ReduceDegree(ReduceArgs),
    /// Check every built-in gadget against its target function.
    VerifyGadgets(VerifyArgs),
    /// Measure contraction rank against network size.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct ContractArgs {
    pub file: PathBuf,
    #[arg(long, default_value = "separator")]
    pub strategy: Strategy,
    #[arg(long)]
    pub stats_json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    pub file: PathBuf,
    #[arg(long, default_value = "separator")]
    pub strategy: Strategy,
    #[arg(long, default_value = "standard")]
    pub variant: Variant,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    /// Also enumerate assignments and fail on disagreement.
    #[arg(long)]
    pub oracle: bool,
    /// Reduce degrees before planarizing.
    #[arg(long)]
    pub reduce_first: bool,
    #[arg(long)]
    pub stats_json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlanarizeArgs {
    pub file: PathBuf,
    #[arg(long, default_value = "standard")]
    pub variant: Variant,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub threshold: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct VerifyArgs {
    /// Corrupt one target table (self-test of the verifier).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "grid")]
    pub family: Family,
    #[arg(long, value_delimiter = ',', default_value = "16,36,64,100,144,256")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write zero wall times so repeated runs are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    /// Largest planned rank that is actually executed.
    #[arg(long, default_value_t = 18)]
    pub exec_cap: usize,
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            code
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match &cli.command {
        Command::Contract(a) => cmd_contract(a, out, err),
        Command::Count(a) => cmd_count(a, out, err),
        Command::Planarize(a) => cmd_planarize(a, out, err),
        Command::ReduceDegree(a) => cmd_reduce_degree(a, out, err),
        Command::VerifyGadgets(a) => cmd_verify_gadgets(a, out),
        Command::Bench(a) => cmd_bench(a, out, err),
    }
}

fn read(path: &Path, err: &mut dyn Write) -> Result<String, i32> {
    std::fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn load_network(path: &Path, err: &mut dyn Write) -> Result<TensorNetwork, i32> {
    let text = read(path, err)?;
    network_from_json(&text).map_err(|e| {
        let _ = writeln!(err, "error: {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn compute_error(e: Error, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_COMPUTE
}

fn write_stats(path: Option<&Path>, value: &Count, stats: &ContractionStats, err: &mut dyn Write) -> i32 {
    let Some(path) = path else { return EXIT_OK };
    let json = serde_json::json!({
        "value": value.to_string(),
        "max_rank": stats.max_rank,
        "merges": stats.merges,
        "wall_ms": stats.wall_time.as_millis() as u64,
    });
    match std::fs::write(path, format!("{json}\n")) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            EXIT_USAGE
        }
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match path {
        None => {
            let _ = writeln!(out, "{text}");
            EXIT_OK
        }
        Some(p) => match std::fs::write(p, format!("{text}\n")) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
                EXIT_USAGE
            }
        },
    }
}

pub fn cmd_contract(a: &ContractArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let net = match load_network(&a.file, err) {
        Ok(n) => n,
        Err(code) => return code,
    };
    match contract_full(&net, a.strategy) {
        Ok((value, stats)) => {
            let _ = writeln!(out, "{value}");
            write_stats(a.stats_json.as_deref(), &value, &stats, err)
        }
        Err(e) => compute_error(e, err),
    }
}

pub fn cmd_count(a: &CountArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match read(&a.file, err) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let phi = match parse_dimacs_lenient(&text) {
        Ok((phi, warning)) => {
            if let Some(w) = warning {
                let _ = writeln!(err, "warning: {w}");
            }
            phi
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", a.file.display());
            return EXIT_USAGE;
        }
    };
    let opts = PipelineOptions {
        strategy: a.strategy,
        variant: a.variant,
        seed: a.seed,
        trials: a.trials,
        threshold: DEFAULT_THRESHOLD,
        reduce_first: a.reduce_first,
    };
    let report = match run_pipeline(&phi, &opts) {
        Ok(r) => r,
        Err(e) => return compute_error(e, err),
    };
    if report.unused_vars > 0 {
        let _ = writeln!(err, "note: {} unused variable(s), factor 2^{}", report.unused_vars, report.unused_vars);
    }
    if a.oracle {
        match brute_count(&phi) {
            Ok(expected) if expected == report.count => {}
            Ok(expected) => {
                let _ = writeln!(err, "error: oracle mismatch: pipeline {} vs enumeration {expected}", report.count);
                return EXIT_COMPUTE;
            }
            Err(e) => return compute_error(e, err),
        }
    }
    let _ = writeln!(out, "{}", report.count);
    write_stats(a.stats_json.as_deref(), &report.count, &report.stats, err)
}

pub fn cmd_planarize(a: &PlanarizeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let net = match load_network(&a.file, err) {
        Ok(n) => n,
        Err(code) => return code,
    };
    let result = circular_drawing_with_trials(&net, a.seed, a.trials)
        .and_then(|d| replace_crossings(&net, &d, a.variant).map(|n| (d.crossing_count(), n)));
    match result {
        Ok((crossings, planar)) => {
            let _ = writeln!(err, "crossings replaced: {crossings}");
            emit(&network_to_json(&planar), a.output.as_deref(), out, err)
        }
        Err(e) => compute_error(e, err),
    }
}

pub fn cmd_reduce_degree(a: &ReduceArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let net = match load_network(&a.file, err) {
        Ok(n) => n,
        Err(code) => return code,
    };
    match reduce_degree(&net, a.threshold) {
        Ok(r) => emit(&network_to_json(&r), a.output.as_deref(), out, err),
        Err(e) => compute_error(e, err),
    }
}

pub fn cmd_verify_gadgets(a: &VerifyArgs, out: &mut dyn Write) -> i32 {
    let mut all = true;
    for (i, mut case) in verification_suite().into_iter().enumerate() {
        if a.inject_fault && i == 0 {
            let mut table: Vec<Count> = case.target.entries().cloned().collect();
            table[0] += 1u8;
            case.target = crate::tensor::Tensor::dense(case.target.arity(), table).expect("same length");
        }
        let ok = verify_gadget(&case.gadget, &case.target).unwrap_or(false)
            && case.gadget.is_planar_with_ports_outside();
        all &= ok;
        let _ = writeln!(
            out,
            "{:<26} {:>4} vertices  {}",
            case.name,
            case.gadget.body.num_vertices(),
            if ok { "PASS" } else { "FAIL" }
        );
    }
    if all {
        EXIT_OK
    } else {
        EXIT_COMPUTE
    }
}

pub fn cmd_bench(a: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let opts = BenchOptions { seed: a.seed, timing: !a.no_timing, exec_cap: a.exec_cap };
    let report = match run_bench(a.family, &a.sizes, &opts) {
        Ok(r) => r,
        Err(e) => return compute_error(e, err),
    };
    match report.slope {
        Some(s) => {
            let _ = writeln!(err, "slope log2(max_rank)/log2(N): {s:.4}");
        }
        None => {
            let _ = writeln!(err, "slope: n/a");
        }
    }
    let csv = report.to_csv();
    match &a.csv {
        None => {
            let _ = write!(out, "{csv}");
            EXIT_OK
        }
        Some(p) => match std::fs::write(p, csv) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
                EXIT_USAGE
            }
        },
    }
}
