//! Command-line front end; the `qcap` binary only forwards to [`run`].
//!
//! Exit codes: 0 success, 1 usage error, 2 validation or parse error,
//! 3 resource cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::capacity::{coherent_information, maximize_coherent_information, MaximizeOptions};
use crate::channels::{read_channel_file, write_channel_file};
use crate::cloners::{build_cloner_isometry, cloner_capacity_closed_form, ClonerSpec};
use crate::degradability::{classify, FeasibilityOptions, Mode};
use crate::error::Error;
use crate::qmat::DensityMatrix;
use crate::unruh::{unruh_capacity_certified, unruh_sweep, write_sweep_csv};

/// Environment variable overriding the default feasibility tolerance.
pub const TOLERANCE_ENV: &str = "QCAP_TOLERANCE";

/// Largest M accepted by the cloner commands.
pub const MAX_CLONES: usize = 128;

/// Choi dimension above which `--accept-runtime-cost` is required.
pub const DEFAULT_MAX_CHOI_DIM: usize = 64;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qcap", version, about = "Quantum capacities and degradability of quantum channels")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Feasibility residual tolerance.
    #[arg(long, global = true, env = TOLERANCE_ENV, default_value_t = 1e-6)]
    pub tolerance: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quantum capacity of a cloner or of the Unruh channel.
    #[command(subcommand)]
    Capacity(CapacityCommand),
    /// Test a channel file for (conjugate) (anti)degradability.
    Classify(ClassifyArgs),
    /// Write a channel file.
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Subcommand, Debug)]
pub enum CapacityCommand {
    /// N -> M universal cloner.
    Cloner(ClonerArgs),
    /// Unruh channel at one z or over a grid.
    Unruh(UnruhArgs),
}

#[derive(Args, Debug)]
pub struct ClonerArgs {
    /// Number of input copies N.
    #[arg(long)]
    pub n: usize,
    /// Number of clones M.
    #[arg(long)]
    pub m: usize,
    /// Also maximize the coherent information over all inputs.
    #[arg(long)]
    pub optimize: bool,
    /// Optimizer restarts.
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
}

#[derive(Args, Debug)]
pub struct UnruhArgs {
    /// Acceleration parameter in (0, 1).
    #[arg(long, conflicts_with = "sweep", required_unless_present = "sweep")]
    pub z: Option<f64>,
    /// Sweep endpoints.
    #[arg(long, num_args = 2, value_names = ["Z_MIN", "Z_MAX"], requires = "out")]
    pub sweep: Option<Vec<f64>>,
    /// Number of sweep points.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// CSV output for a sweep.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Certified bound on the neglected series tail.
    #[arg(long, default_value_t = 1e-12)]
    pub tail_tol: f64,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Channel JSON file.
    pub file: PathBuf,
    /// Comma-separated subset of degradable, antidegradable, conjugate_degradable, conjugate_antidegradable.
    #[arg(long, value_delimiter = ',')]
    pub modes: Option<Vec<String>>,
    /// Largest Choi dimension of a searched map.
    #[arg(long, default_value_t = DEFAULT_MAX_CHOI_DIM)]
    pub max_choi_dim: usize,
    /// Required for --max-choi-dim above the default.
    #[arg(long)]
    pub accept_runtime_cost: bool,
    /// Iteration cap of the feasibility search.
    #[arg(long, default_value_t = 50_000)]
    pub max_iters: usize,
}

#[derive(Subcommand, Debug)]
pub enum ExportCommand {
    /// Kraus representation of the N -> M cloner.
    Cloner(ExportClonerArgs),
}

#[derive(Args, Debug)]
pub struct ExportClonerArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub out: PathBuf,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(Error::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        })
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ResourceCap(_) => EXIT_RESOURCE,
                _ => EXIT_VALIDATION,
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    if !(cli.tolerance > 0.0 && cli.tolerance.is_finite()) {
        return Err(Failure::Usage(format!("tolerance must be positive, got {}", cli.tolerance)));
    }
    match &cli.command {
        Command::Capacity(CapacityCommand::Cloner(a)) => capacity_cloner(cli, a, out),
        Command::Capacity(CapacityCommand::Unruh(a)) => capacity_unruh(cli, a, out),
        Command::Classify(a) => classify_file(cli, a, out),
        Command::Export(ExportCommand::Cloner(a)) => export_cloner(cli, a, out),
    }
}

fn cloner_spec(n: usize, m: usize) -> std::result::Result<ClonerSpec, Failure> {
    if n == 0 || n > m {
        return Err(Failure::Usage(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
    }
    if m > MAX_CLONES {
        return Err(Failure::Usage(format!("m = {m} exceeds the limit of {MAX_CLONES}")));
    }
    Ok(ClonerSpec::new(n, m)?)
}

fn capacity_cloner(cli: &Cli, a: &ClonerArgs, out: &mut dyn Write) -> CmdResult {
    let spec = cloner_spec(a.n, a.m)?;
    let iso = build_cloner_isometry(spec)?;
    let closed = cloner_capacity_closed_form(spec);
    let numeric = coherent_information(&iso, &DensityMatrix::maximally_mixed(iso.din()))?;
    let optimized = if a.optimize {
        let opts = MaximizeOptions {
            restarts: a.restarts.max(1),
            seed: cli.seed,
            ..Default::default()
        };
        Some(maximize_coherent_information(&iso, &opts)?)
    } else {
        None
    };
    if cli.json {
        let mut doc = json!({
            "n": a.n,
            "m": a.m,
            "closed_form_bits": closed,
            "coherent_information_maximally_mixed_bits": numeric,
            "delta": (numeric - closed).abs(),
        });
        if let Some(r) = &optimized {
            doc["optimizer"] = json!({
                "value_bits": r.value,
                "evaluations": r.iterations,
                "converged": r.converged,
            });
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    } else {
        writeln!(out, "cloner {} -> {}", a.n, a.m)?;
        writeln!(out, "closed form log2((M+1)/(M-N+1)): {closed:.15}")?;
        writeln!(out, "coherent information at I/d:      {numeric:.15}")?;
        writeln!(out, "delta: {:.3e}", (numeric - closed).abs())?;
        if let Some(r) = &optimized {
            writeln!(
                out,
                "optimizer maximum: {:.15} ({} evaluations, {})",
                r.value,
                r.iterations,
                if r.converged { "converged" } else { "not converged" }
            )?;
        }
    }
    Ok(())
}

fn check_z(z: f64) -> CmdResult {
    if z > 0.0 && z < 1.0 {
        Ok(())
    } else {
        Err(Failure::Usage(format!("z must lie in (0, 1), got {z}")))
    }
}

fn capacity_unruh(cli: &Cli, a: &UnruhArgs, out: &mut dyn Write) -> CmdResult {
    if !(a.tail_tol > 0.0 && a.tail_tol.is_finite()) {
        return Err(Failure::Usage(format!("tail tolerance must be positive, got {}", a.tail_tol)));
    }
    if let Some(sweep) = &a.sweep {
        let (lo, hi) = (sweep[0], sweep[1]);
        check_z(lo)?;
        check_z(hi)?;
        if lo >= hi {
            return Err(Failure::Usage(format!("sweep needs Z_MIN < Z_MAX, got {lo} and {hi}")));
        }
        if a.steps < 2 {
            return Err(Failure::Usage("a sweep needs at least two steps".into()));
        }
        let path = a.out.as_ref().expect("clap requires --out with --sweep");
        let rows = unruh_sweep(lo, hi, a.steps, a.tail_tol)?;
        write_sweep_csv(path, &rows)?;
        if cli.json {
            let doc = json!({"rows": rows.len(), "out": path.display().to_string()});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        } else {
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        return Ok(());
    }
    let z = a.z.expect("clap requires --z without --sweep");
    check_z(z)?;
    let r = unruh_capacity_certified(z, a.tail_tol)?;
    if cli.json {
        let doc = json!({
            "z": r.z,
            "capacity_bits": r.value,
            "truncation_k": r.k_max,
            "tail_bound": r.tail_bound,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    } else {
        writeln!(out, "z = {}", r.z)?;
        writeln!(out, "Q = {:.15} bits", r.value)?;
        writeln!(out, "series truncated at k = {}, tail <= {:.3e}", r.k_max, r.tail_bound)?;
    }
    Ok(())
}

fn classify_file(cli: &Cli, a: &ClassifyArgs, out: &mut dyn Write) -> CmdResult {
    let modes = match &a.modes {
        None => Mode::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|s| Mode::parse(s.trim()).ok_or_else(|| Failure::Usage(format!("unknown mode '{s}'"))))
            .collect::<std::result::Result<Vec<_>, _>>()?,
    };
    if a.max_choi_dim > DEFAULT_MAX_CHOI_DIM && !a.accept_runtime_cost {
        return Err(Failure::Usage(format!(
            "--max-choi-dim above {DEFAULT_MAX_CHOI_DIM} needs --accept-runtime-cost"
        )));
    }
    let ch = read_channel_file(&a.file)?;
    let opts = FeasibilityOptions {
        residual_tol: cli.tolerance,
        max_iters: a.max_iters,
        max_choi_dim: a.max_choi_dim,
        ..Default::default()
    };
    let report = classify(&ch, &modes, &opts)?;
    if cli.json {
        let doc = json!({
            "file": a.file.display().to_string(),
            "report": report,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
        return Ok(());
    }
    writeln!(out, "channel: {}", a.file.display())?;
    writeln!(
        out,
        "dimensions: input {}, output {}, environment {}",
        report.din, report.dout, report.denv
    )?;
    writeln!(out, "choi rank: {}", report.choi_rank)?;
    writeln!(
        out,
        "entanglement-breaking: {}",
        if report.entanglement_breaking { "yes" } else { "no" }
    )?;
    for v in &report.verdicts {
        let name = v.mode.name().replace('_', "-");
        if v.holds {
            writeln!(
                out,
                "{name}: yes (residual {:.2e}, min eigenvalue {:.2e}, {} iterations)",
                v.residual, v.min_eigenvalue, v.iterations
            )?;
        } else {
            writeln!(
                out,
                "{name}: not found (best residual {:.2e}{})",
                v.residual,
                v.note.as_deref().map(|n| format!("; {n}")).unwrap_or_default()
            )?;
        }
    }
    Ok(())
}

fn export_cloner(cli: &Cli, a: &ExportClonerArgs, out: &mut dyn Write) -> CmdResult {
    let spec = cloner_spec(a.n, a.m)?;
    let ch = build_cloner_isometry(spec)?.to_kraus();
    write_channel_file(&a.out, &ch)?;
    if cli.json {
        let doc = json!({
            "out": a.out.display().to_string(),
            "din": ch.din(),
            "dout": ch.dout(),
            "kraus_operators": ch.num_kraus(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
    } else {
        writeln!(
            out,
            "wrote cloner {} -> {} ({} -> {}, {} Kraus operators) to {}",
            a.n,
            a.m,
            ch.din(),
            ch.dout(),
            ch.num_kraus(),
            a.out.display()
        )?;
    }
    Ok(())
}
