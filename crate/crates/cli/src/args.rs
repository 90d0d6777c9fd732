use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracwave_core::rng::DEFAULT_SEED;

/// Fractional diffusion, stable laws, CTRW simulation and fractional wave
/// modes.
#[derive(Parser, Debug)]
#[command(name = "fracwave", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Output file (a directory for reproduce-figures).
    #[arg(short = 'o', long = "output")]
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Csv,
    Json,
}

/// Periodic grid `[xmin, xmax)` with `n` points (a power of two >= 64).
#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Left end of the grid; defaults to -xmax.
    #[arg(long, allow_negative_numbers = true)]
    pub xmin: Option<f64>,
    #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
    pub xmax: f64,
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    PlaneSin,
    PlaneCos,
    FresnelCos,
    FresnelSin,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode1d {
    PlaneSin,
    PlaneCos,
    FresnelCos,
    FresnelSin,
    /// Extended eigenfunction of D^(1/2) + sqrt(ik).
    EigenPlus,
    /// Extended eigenfunction of D^(1/2) + sqrt(-ik).
    EigenMinus,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    First1d,
    Mother1d,
    Product2d,
    Diagonal2d,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// residual_helmholtz of a 1-D mode on a 2-D grid
    Helmholtz1d,
    /// residual_helmholtz of a 2-D mode
    EdgeWave,
    /// wave-equation residual of the fractional wave solution (2-D)
    Wave,
    /// paraxial residual of a beam
    Pwe,
    /// defect-subtracted residual of the extended eigenfunction
    Eigen,
    /// half-order factor applied to the mother beam
    Factorization,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Heat kernel from a delta source (variance t).
    ClassicalDiffuse {
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Space-fractional diffusion from a delta source.
    FractionalDiffuse {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        t: f64,
        /// Weight of the left-sided derivative (fraction of positive jumps).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Weight of the right-sided derivative; defaults to 1 - p.
        #[arg(long)]
        q: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Isotropic fractional Laplacian diffusion on a square grid.
    #[command(name = "fractional-diffuse-2d")]
    FractionalDiffuse2d {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Time-fractional (Caputo order beta) and space-fractional diffusion.
    Zaslavsky {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Coupled space-time fractional diffusion, symbol (s + k^2)^beta.
    CoupledDiffuse {
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        t: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Continuous-time random walk ensemble observed at time T.
    Ctrw {
        /// gauss[:VARIANCE] or stable:ALPHA[:SCALE_T]
        #[arg(long, default_value = "gauss:1")]
        jumps: String,
        /// exp[:RATE] or pareto:BETA[:SCALE]
        #[arg(long, default_value = "exp:1")]
        waits: String,
        /// Draw each jump as Normal(0, variance * wait).
        #[arg(long)]
        coupled: bool,
        #[arg(long, default_value_t = 100_000)]
        walkers: usize,
        #[arg(long = "T")]
        horizon: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Symmetric stable density exp(-|k|^alpha t) on a grid.
    StableDensity {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Independent symmetric stable variates.
    StableSample {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Symmetric alpha-stable time series.
    SasSeries {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1000)]
        length: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Hill estimate of the tail index, from a file or fresh stable samples.
    TailIndex {
        /// CSV or JSON table; the `value` column (or the last column) is used.
        #[arg(long, conflicts_with = "alpha")]
        input: Option<PathBuf>,
        #[arg(long, required_unless_present = "input")]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Fraction of largest |x| used by the estimator.
        #[arg(long, default_value_t = 0.01)]
        fraction: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Real 1-D Helmholtz modes or the extended eigenfunctions, over x >= 0.
    HelmholtzMode {
        #[arg(long, value_enum)]
        family: Mode1d,
        #[arg(long)]
        k: f64,
        /// Left end of the grid (default 0).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        xmin: f64,
        #[arg(long, default_value_t = 10.0)]
        xmax: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// 2-D plane or edge-wave mode on a square grid.
    EdgeWave {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// Fractional solution of the wave equation at a fixed point, over time.
    WaveSolution {
        /// Wavevector components, comma separated.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        kvec: Vec<f64>,
        /// Observation point, same dimension as --kvec.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        x: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Lower terminal A of the integral.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lower: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        tmin: f64,
        #[arg(long, default_value_t = 10.0)]
        tmax: f64,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Paraxial beam: (x, z) field for 1-D variants, (x, y) slice for 2-D.
    PweBeam {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        k: f64,
        /// Propagation distance of the transverse slice (2-D variants).
        #[arg(long, default_value_t = 1.0)]
        z: f64,
        #[arg(long, default_value_t = 0.1)]
        zmin: f64,
        #[arg(long, default_value_t = 2.0)]
        zmax: f64,
        #[arg(long, default_value_t = 64)]
        nz: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        out: Output,
    },
    /// x-derivative order m, y-derivative order n of the product beam at fixed z.
    HermiteBeam {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        z: f64,
        #[arg(long, default_value_t = 3.0)]
        xmax: f64,
        /// Grid points per axis.
        #[arg(long, default_value_t = 128)]
        points: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Finite-difference or defect residual of a mode or beam.
    ResidualCheck {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, value_enum, default_value_t = SignArg::Plus)]
        sign: SignArg,
        /// Also exclude nodes within this radius of the origin.
        #[arg(long, default_value_t = 0.0)]
        exclude_radius: f64,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        kvec: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lower: f64,
        /// x-derivative order for the pwe target.
        #[arg(long = "order-m", default_value_t = 0)]
        order_m: usize,
        /// y-derivative order for the pwe target.
        #[arg(long = "order-n", default_value_t = 0)]
        order_n: usize,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value_t = 1.0)]
        z: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Stencil step for point residuals.
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
        /// Half-width of the square grid for the Helmholtz targets.
        #[arg(long, default_value_t = 2.56)]
        xmax: f64,
        /// Points per axis for the Helmholtz targets (h = 2 xmax / n).
        #[arg(long, default_value_t = 512)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Data behind the density, survival-tail and SaS series figures.
    ReproduceFigures {
        #[arg(long, default_value_t = 1000)]
        series_length: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}
