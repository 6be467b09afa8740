//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gentrig", version, about = "Certified generalised trigonometric integrals")]
pub struct Cli {
    /// Output format: text, json (one object per line) or csv.
    #[arg(long, global = true, value_name = "FORMAT")]
    pub format: Option<String>,
    /// Working precision: single, double or extended (double-double).
    #[arg(long, global = true, value_name = "PRECISION")]
    pub precision: Option<String>,
    /// `key = value` file with defaults and verification grids.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truncated expansion with its error bound.
    Eval(EvalArgs),
    /// Reference value by quadrature.
    Oracle(OracleArgs),
    /// Exact coefficient polynomials.
    Coeffs(CoeffsArgs),
    /// Indexed positive zeros of ti(a, ·, α).
    Zeros(ZerosArgs),
    /// Dingle's basic terminant and its bounds.
    Terminant(TerminantArgs),
    /// Run a verification suite against the oracle.
    Verify(VerifyArgs),
    /// One row per grid point.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    F,
    G,
    M2,
    Phi,
    X,
    Ti,
    Si,
    Ci,
    #[value(name = "fresnelS")]
    FresnelS,
    #[value(name = "fresnelC")]
    FresnelC,
    /// The tail ∫_z^∞ exp(iπt²/2) dt.
    #[value(name = "fresnelF")]
    FresnelF,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub function: EvalFn,
    /// Order a; complex (`RE,IM`) is accepted by f, g and m2.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a: String,
    /// Argument as `RE`, `RE,IM` or `MOD:ARG` (degrees, `rad` suffix or `pi` multiple).
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub alpha: String,
    /// Truncation order N or `optimal`.
    #[arg(long, default_value = "optimal")]
    pub order: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleFn {
    F,
    G,
    M2,
    Phi,
    X,
    Ti,
    /// Upper incomplete gamma Γ(a, z).
    Gamma,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long = "fn", value_enum)]
    pub function: OracleFn,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub alpha: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoeffKind {
    T,
    C,
    D,
}

#[derive(Debug, Clone, Args)]
pub struct CoeffsArgs {
    #[arg(long, value_enum)]
    pub kind: CoeffKind,
    /// Index N or inclusive range A..B.
    #[arg(long)]
    pub n: String,
    /// Second index of d; all 1 ≤ k ≤ n when omitted.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ZerosArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "0")]
    pub alpha: String,
    /// First index; defaults to the smallest index with a zero.
    #[arg(long, allow_hyphen_values = true)]
    pub k_from: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k_to: i64,
    /// Newton-refine each seed on the quadrature value of ti.
    #[arg(long)]
    pub refine: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TerminantArgs {
    /// Order as `RE` or `RE,IM`.
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    /// Skip the quadrature value.
    #[arg(long)]
    pub bounds_only: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Tables,
    Envelope,
    Bounds,
    Zeros,
    Identities,
    Terminant,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: SuiteArg,
    /// Print failing cases to stderr.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFn {
    F,
    G,
    M2,
    Phi,
    X,
    Ti,
    Si,
    Ci,
    #[value(name = "coeffs-t")]
    CoeffsT,
    #[value(name = "coeffs-c")]
    CoeffsC,
    Zeros,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long = "fn", value_enum)]
    pub function: TableFn,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value = "0")]
    pub alpha: String,
    #[arg(long, default_value = "5")]
    pub z_from: String,
    #[arg(long, default_value = "50")]
    pub z_to: String,
    #[arg(long, default_value = "5")]
    pub z_step: String,
    /// Evaluate on the ray `|z| e^{i·arg}` instead of the real axis.
    #[arg(long, allow_hyphen_values = true)]
    pub arg: Option<String>,
    #[arg(long, default_value = "optimal")]
    pub order: String,
    /// Largest coefficient index for the coefficient tables.
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub k_from: Option<i64>,
    #[arg(long, default_value_t = 12, allow_hyphen_values = true)]
    pub k_to: i64,
}
