//! `fracyamabe`: spectra, Morse indices and bifurcation instants of the
//! trivial solution of the fractional Yamabe problem on `S^{n−k−1} × H^{k+1}`
//! quotients.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "fracyamabe", version, about = "Spectral symbol, Morse index and bifurcation instants of the trivial fractional Yamabe solution")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Dimension n of the sphere S^n.
    #[arg(long, global = true)]
    pub n: Option<u32>,

    /// Dimension k of the singular set (default 1).
    #[arg(long, global = true)]
    pub k: Option<u32>,

    /// Order γ of the fractional operator.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gamma: Option<f64>,

    /// Output format; tables default to csv, reports to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Root-finding tolerance.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Θ_{m,ℓ}, the raw symbol Θ(a, b), or a table of Θ_{m,ℓ}.
    Theta(ThetaArgs),
    /// Tabulate the thresholds c_n.
    Cn(CnArgs),
    /// Morse index and nullity for a surface spectrum.
    Morse(MorseArgs),
    /// Detect degeneracy instants along a path of spectra.
    Bifurcate(BifurcateArgs),
    /// Regime map over (n, γ) for plotting.
    Regime(RegimeArgs),
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    /// Sphere index m.
    #[arg(long, conflicts_with_all = ["a", "grid"])]
    pub m: Option<u32>,

    /// Surface eigenvalue λ.
    #[arg(long, requires = "m", allow_negative_numbers = true)]
    pub lambda: Option<f64>,

    /// Raw symbol argument a ≥ 0.
    #[arg(long, conflicts_with = "grid", allow_negative_numbers = true)]
    pub a: Option<f64>,

    /// Real symbol argument b ≥ 0.
    #[arg(long, requires = "a", conflicts_with = "beta", allow_negative_numbers = true)]
    pub b: Option<f64>,

    /// Imaginary symbol argument b = iβ, 0 < β ≤ k/2.
    #[arg(long, requires = "a", allow_negative_numbers = true)]
    pub beta: Option<f64>,

    /// Table of Θ_{m,ℓ} for m ≤ M, ℓ ≤ L.
    #[arg(long, num_args = 2, value_names = ["M", "L"], requires = "spectrum")]
    pub grid: Option<Vec<u32>>,

    /// Spectrum file for --grid.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CnArgs {
    #[arg(long, default_value_t = 4)]
    pub n_min: u32,

    #[arg(long, default_value_t = 12)]
    pub n_max: u32,
}

#[derive(Debug, Args)]
pub struct MorseArgs {
    /// Spectrum file (`lambda` column, optional `# genus:` and `# truncation_bound:`).
    #[arg(long)]
    pub spectrum: PathBuf,

    /// Absolute nullity band (default 1e-9 times the threshold).
    #[arg(long, allow_negative_numbers = true)]
    pub null_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BifurcateArgs {
    /// Path file (`t,lambda_1,...` breakpoints).
    #[arg(long)]
    pub path: PathBuf,

    /// Number of scan cells per track.
    #[arg(long, default_value_t = fracyamabe::bifurcation::DEFAULT_SCAN_RESOLUTION)]
    pub resolution: usize,

    /// Bisection tolerance in t.
    #[arg(long, default_value_t = fracyamabe::bifurcation::DEFAULT_REFINE_TOL, allow_negative_numbers = true)]
    pub refine_tol: f64,

    /// Absolute nullity band (default 1e-9 times the threshold).
    #[arg(long, allow_negative_numbers = true)]
    pub null_tol: Option<f64>,

    /// Write t, Θ_{0,ℓ}(t) per track and the threshold to this CSV file.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,

    /// Number of plot intervals (default: the scan resolution).
    #[arg(long)]
    pub plot_samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RegimeArgs {
    /// Inclusive dimension range.
    #[arg(long, num_args = 2, value_names = ["N_MIN", "N_MAX"], default_values_t = [3, 12])]
    pub n_range: Vec<u32>,

    /// Interior γ grid points per dimension, γ_j = (n/2) j / (steps + 1).
    #[arg(long, default_value_t = 20)]
    pub gamma_steps: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
