//! Command-line front end: argument parsing, config merging and CSV output.

pub mod commands;
pub mod config;
pub mod table;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

pub use commands::run_command;
pub use config::{CommandKind, RunConfig};
pub use table::{ErrorTable, ErrorTableRow};

use config::{read_config_file, RawValue};

#[derive(Debug, Parser)]
#[command(name = "slice-cauchy", version, about = "Numerical checks of slice Cauchy formulas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reconstruct f from the boundary (and volume) integrals at interior points.
    VerifyCauchy(RunArgs),
    /// Compare F^+ - F^- with f at boundary points.
    VerifyJump(RunArgs),
    /// Check whether the exterior limits F^- vanish near the given probes.
    ExtensionTest(RunArgs),
    /// Polar-coordinate Jacobian identities for n <= 4.
    LemmaSuite(RunArgs),
    /// Evaluate C_S(x, w) for `x|w` pairs against a linear-solve oracle.
    KernelEval(RunArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// `key=value` config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output CSV path (stdout if omitted).
    #[arg(long)]
    pub out: Option<String>,
    /// `quaternion` or `clifford:n`.
    #[arg(long)]
    pub algebra: Option<String>,
    /// `full`, `paravector` or `plane:J`.
    #[arg(long)]
    pub gis: Option<String>,
    /// `disk:c,r`, `annulus:c,r1,r2` or `ellipse:c,ax,ay`.
    #[arg(long)]
    pub domain: Option<String>,
    /// `poly:[c0,c1,...]` or `stem:identity|conj|normsq|remark`.
    #[arg(long)]
    pub function: Option<String>,
    /// `;`-separated elements (`x|w` pairs for kernel-eval).
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<String>,
    /// `Nt,Ntheta,Nr,Ns` with an optional fifth count for the volume angles.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// Override the pass tolerance of the main rows.
    #[arg(long)]
    pub tol: Option<String>,
    /// Random angle samples for lemma-suite.
    #[arg(long)]
    pub samples: Option<String>,
    /// Largest sphere dimension for lemma-suite.
    #[arg(long = "max-n")]
    pub max_n: Option<String>,
    /// Approach offsets as fractions of diam(D), e.g. `0.08,0.04,0.02`.
    #[arg(long)]
    pub offsets: Option<String>,
    /// Record wall times (the CSV is then no longer reproducible byte for byte).
    #[arg(long)]
    pub timing: bool,
}

impl Command {
    pub fn parts(&self) -> (CommandKind, &RunArgs) {
        match self {
            Command::VerifyCauchy(a) => (CommandKind::VerifyCauchy, a),
            Command::VerifyJump(a) => (CommandKind::VerifyJump, a),
            Command::ExtensionTest(a) => (CommandKind::ExtensionTest, a),
            Command::LemmaSuite(a) => (CommandKind::LemmaSuite, a),
            Command::KernelEval(a) => (CommandKind::KernelEval, a),
        }
    }
}

/// Merges the config file with the flags and parses the result.
pub fn resolve(kind: CommandKind, args: &RunArgs) -> anyhow::Result<RunConfig> {
    let mut raw: BTreeMap<String, RawValue> = match &args.config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };
    let flags = [
        ("out", &args.out),
        ("algebra", &args.algebra),
        ("gis", &args.gis),
        ("domain", &args.domain),
        ("function", &args.function),
        ("points", &args.points),
        ("grid", &args.grid),
        ("seed", &args.seed),
        ("tol", &args.tol),
        ("samples", &args.samples),
        ("max_n", &args.max_n),
        ("offsets", &args.offsets),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            let name = key.replace('_', "-");
            raw.insert(key.to_string(), RawValue::flag(&name, v));
        }
    }
    if args.timing {
        raw.insert("timing".into(), RawValue::flag("timing", "true"));
    }
    RunConfig::from_raw(kind, &raw)
}

/// Runs a parsed command line. Returns whether every row passed.
pub fn run(cli: &Cli) -> anyhow::Result<bool> {
    let (kind, args) = cli.command.parts();
    let cfg = resolve(kind, args)?;
    let table = run_command(&cfg)?;
    let bytes = table.to_csv()?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &bytes)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    eprintln!(
        "{kind}: {} rows, {} failed",
        table.rows.len(),
        table.failures()
    );
    Ok(table.all_pass())
}
