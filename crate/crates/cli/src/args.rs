use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "frac-kit", version, about = "Fractional derivatives, integrals and Laplacians from the command line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one operator at one point and print a JSON object.
    Eval(EvalArgs),
    /// Check an identity numerically and print CSV rows.
    Identity(IdentityArgs),
    /// Tabulate normalization constants by both routes as CSV.
    Constants(ConstantsArgs),
    /// Evaluate the extension field and its boundary limit as CSV.
    Extension(ExtensionArgs),
    /// Solve a stationary problem and print the profile and window ratios as CSV.
    Harnack(HarnackArgs),
    /// Run the cross-validation suite; exits nonzero on any failure.
    Suite(SuiteArgs),
}

/// Quadrature settings. Flags override the `--config` file, which overrides
/// the defaults.
#[derive(Args, Debug, Clone, Default)]
pub struct QuadArgs {
    /// key=value file overriding quadrature defaults.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Lower cutoff of the singular integrals.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Upper truncation of the improper integrals.
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Relative tolerance.
    #[arg(long)]
    pub rtol: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Marchaud,
    MarchaudGeneral,
    Rl,
    ClassicalRep,
    Gl,
    Weyl,
    Fraclap,
    FraclapHyper,
    FraclapMultiplier,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Plus,
    Minus,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylRouteArg {
    ByParts,
    KernelDerivative,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub op: Op,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Order of the finite difference (Marchaud, hypersingular).
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    #[arg(long, value_enum, default_value_t = SideArg::Plus)]
    pub side: SideArg,
    /// Catalog function, `name:p1,p2,...`.
    #[arg(long)]
    pub function: Option<String>,
    /// Evaluation point; comma separated in several dimensions.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Lower terminal of the Riemann–Liouville integral (default -∞).
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Step sizes for the extrapolated Grünwald–Letnikov difference.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.025,0.0125,0.00625,0.003125")]
    pub h_seq: Vec<f64>,
    /// Trigonometric polynomial `k:a` or `k:a:b` terms, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub trig: Option<String>,
    #[arg(long, value_enum, default_value_t = WeylRouteArg::ByParts)]
    pub route: WeylRouteArg,
    /// Order of the fractional Laplacian.
    #[arg(long)]
    pub s: Option<f64>,
    /// Dimension; must match the function.
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityName {
    Sum1d,
    Sphere,
    Scaling,
    Semigroup,
    Product,
}

#[derive(Args, Debug)]
pub struct IdentityArgs {
    #[arg(long, value_enum)]
    pub name: IdentityName,
    #[arg(long)]
    pub alpha: f64,
    /// Second order for `semigroup`.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Dilation factor for `scaling`.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    #[arg(long, default_value = "gaussian:0,1")]
    pub function: String,
    /// Second factor for `product`.
    #[arg(long)]
    pub other: Option<String>,
    /// Evaluation points; `;` separates points, `,` separates coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Use the two-sided spherical identity.
    #[arg(long)]
    pub two_sided: bool,
    /// Quadrature nodes on the sphere.
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
    /// Step and truncation for `semigroup`.
    #[arg(long, default_value_t = 0.1)]
    pub h: f64,
    #[arg(long, default_value_t = 2000)]
    pub k_max: usize,
    /// Pass threshold for the residual (defaults depend on the identity).
    #[arg(long)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    /// Orders at which to tabulate; defaults to an even sweep of (0, 1).
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Difference orders for χ(α, l).
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub l: Vec<u32>,
    /// Dimensions for the fractional Laplacian constant.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub n: Vec<u32>,
}

#[derive(Args, Debug)]
pub struct ExtensionArgs {
    #[arg(long)]
    pub s: f64,
    /// Boundary datum from the catalog.
    #[arg(long, default_value = "gaussian:0,1")]
    pub datum: String,
    /// Heights used to extrapolate the boundary limit.
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05,0.025,0.0125")]
    pub x_seq: Vec<f64>,
    /// Boundary points.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
    pub t: Vec<f64>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarnackTable {
    Profile,
    Ratios,
    Both,
}

#[derive(Args, Debug)]
pub struct HarnackArgs {
    #[arg(long, default_value_t = 0.5)]
    pub s: f64,
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.4")]
    pub delta: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub t0: f64,
    /// Exterior data from the catalog; must vanish or settle to a limit on the left.
    #[arg(long, default_value = "bump:-2,-1", allow_hyphen_values = true)]
    pub exterior: String,
    /// Interval J where the solution is stationary.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1")]
    pub interval: Vec<f64>,
    /// Number of grid steps across J.
    #[arg(long, default_value_t = 128)]
    pub steps: usize,
    /// Truncation of the Grünwald–Letnikov sum (default 16 × steps).
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = HarnackTable::Both)]
    pub table: HarnackTable,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Fewer probe points in the largest sweeps.
    #[arg(long)]
    pub quick: bool,
    /// Seed for the random probe locations.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Only these criteria (1-10).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<usize>,
    /// Print every row, not just failures.
    #[arg(long)]
    pub verbose: bool,
    /// Print the reports as JSON instead of text.
    #[arg(long)]
    pub json: bool,
}
