use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "sphpoly",
    version,
    about = "Critical spectra and Euler characteristics of regular spherical polygon spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,

    /// Worker threads for the brute-force oracle (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical values with their strata, multiplicities and indices.
    Spectrum(OrderArgs),
    /// χ(M_n(a)) with the surgery contributions that produce it.
    Chi(ChiArgs),
    /// The table Ω_0 … Ω_{Φ(n)−1} with closed-form cross-checks.
    Omega(OrderArgs),
    /// Run every identity check; exits 1 if any fails.
    Verify(VerifyArgs),
    /// Brute-force census of degenerate polygons against the spectrum.
    Oracle(OrderArgs),
    /// Exact counts against their asymptotic growth.
    Asymptotics(AsymptoticsArgs),
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    /// Number of sides (odd, at least 3).
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    #[arg(long)]
    pub n: u64,

    /// Side length in units of π: "p/q", or a decimal together with --snap-den.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,

    /// Snap a decimal side length to the nearest fraction with this
    /// denominator bound.
    #[arg(long)]
    pub snap_den: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest order for the spectrum and Euler characteristic checks.
    #[arg(long, default_value_t = 99)]
    pub n_max: u64,

    /// Largest order for the brute-force checks.
    #[arg(long, default_value_t = 15)]
    pub oracle_max: u64,

    /// Add a check with this name that always fails.
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long, default_value_t = 2001)]
    pub n_max: u64,
}
