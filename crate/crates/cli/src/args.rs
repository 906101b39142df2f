use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "kndeform",
    version,
    about = "Structure constants, cocycles and verification suites for deformed current algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a table of function products, current brackets or cocycle values.
    Tables(TablesArgs),
    /// Run a verification suite; exit 0 on success, 2 on a failed assertion.
    Verify(VerifyArgs),
    /// Specialize a family at parameter values and report its fiber.
    Specialize(SpecializeArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Family: elliptic, line-s, line-infinity, three-point, subalgebra-w,
    /// laurent, or generic:<a>:<b> with polynomials a, b.
    #[arg(long)]
    pub spec: Option<String>,
    /// Lie algebra: `sl2` or a JSON file `{dim, entries: [{a, b, c, value}]}` with 1-based indices.
    #[arg(long, default_value = "sl2")]
    pub lie: String,
    /// Basis indices range over [-window, window].
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..))]
    pub window: i64,
    /// Truncation order of the Laurent expansions.
    #[arg(long, default_value_t = 20)]
    pub order: i64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

/// Parameter values: rationals such as `-1/2`, or polynomials such as `t^2`.
#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    /// Slope of the line e2 = s e1; `inf` selects the line e1 = 0.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub e1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub e2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum What {
    Products,
    Brackets,
    Gamma,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Closed,
    Residue,
    Recursion,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Closed => "closed",
            Route::Residue => "residue",
            Route::Recursion => "recursion",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Associativity,
    Jacobi,
    GammaAgreement,
    GammaProperties,
    Coboundary,
    Harrison,
    Rescale,
    Degeneration,
    Grading,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long, value_enum)]
    pub what: What,
    #[arg(long, value_enum, default_value_t = Route::Closed)]
    pub route: Route,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Scaling polynomial of the central cocycle.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub p: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SpecializeArgs {
    #[command(flatten)]
    pub common: Common,
}
