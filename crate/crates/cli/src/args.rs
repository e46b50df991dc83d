use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use xm_oscillator::verify::{DEFAULT_GRID, DEFAULT_ORDER};
use xm_oscillator::Real;

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "xmosc",
    version,
    about = "Rationally extended nonlinear oscillator toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the regularity conditions for (λ, m).
    Validate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Conventional and extended potentials on a grid in D_λ.
    Potential {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed-form energies, optionally against the finite-difference spectrum.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        levels: LevelArgs,
        #[arg(long)]
        compare_fd: bool,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Unnormalized solutions and normalized densities |Ψ_n|²μ.
    Wavefunction {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        levels: LevelArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Use the Legendre form of the unextended model instead.
        #[arg(long)]
        conventional: bool,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Weighted Gram matrix of the extended solutions.
    Gram {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        levels: LevelArgs,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value_t = 1e-6, value_parser = parse_tol)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Residual of Ψ_n in the oscillator equation, with a shifted-energy control.
    Residual {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u64).range(2..))]
        points: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Finite-difference eigenvalues mapped to oscillator energies.
    EigCompare {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write every worked example, density table and verification report to a directory.
    Repro {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u64).range(2..))]
        points: u64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Nonlinearity parameter, `p/q` or decimal.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_lambda)]
    pub lambda: Real,
    /// Extension order.
    #[arg(long, default_value_t = 0)]
    pub m: usize,
}

#[derive(Debug, Clone, Args)]
pub struct LevelArgs {
    /// Level or inclusive range `a..b`.
    #[arg(long, value_parser = parse_levels)]
    pub n: Option<RangeInclusive<usize>>,
    /// Number of levels from n = m, used when `--n` is absent.
    #[arg(long)]
    pub count: Option<usize>,
}

impl LevelArgs {
    pub fn resolve(&self, m: usize, default_count: usize) -> RangeInclusive<usize> {
        match (&self.n, self.count) {
            (Some(r), _) => r.clone(),
            (None, Some(c)) => m..=m + c.max(1) - 1,
            (None, None) => m..=m + default_count - 1,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u64).range(2..))]
    pub points: u64,
    /// Sampling interval `lo,hi`; defaults to [0.001, 0.999]·|λ|^(-1/2).
    #[arg(long, value_parser = parse_pair)]
    pub x_range: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_lambda(s: &str) -> Result<Real, String> {
    s.parse::<Real>().map_err(|e| e.to_string())
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("tolerance must be a positive number, got {s:?}")),
    }
}

fn parse_levels(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected a level `n` or a range `a..b`, got {s:?}");
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if hi < lo {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let bad = || format!("expected `lo,hi` with lo < hi, got {s:?}");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let lo: f64 = a.trim().parse().map_err(|_| bad())?;
    let hi: f64 = b.trim().parse().map_err(|_| bad())?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(bad());
    }
    Ok((lo, hi))
}
