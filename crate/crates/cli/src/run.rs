use std::fmt;
use std::path::{Path, PathBuf};

use fracwave_core::diffusion::{
    ctrw_simulate, solve_classical, solve_coupled, solve_space_fractional,
    solve_space_fractional_2d, solve_zaslavsky, Coupling, CtrwModel, InitialData, JumpLaw,
    Propagator, WaitLaw,
};
use fracwave_core::paraxial::{
    beam_value, factorization_residual, residual_pwe, BeamField, BeamSpec, BeamVariant,
};
use fracwave_core::stable::{
    sas_series, stable_density, stable_sample, stable_survival, tail_index,
};
use fracwave_core::wavemodes::{
    eigen_defect_check, fractional_eigen_1d, helmholtz_modes_1d, residual_helmholtz, residual_wave,
    wave_fractional_solution, FieldOnGrid, ModeFamily, ModeSpec, Sign, WaveVector,
};
use fracwave_core::{
    AsymmetryWeights, Error, Format, FractionalOrder, Grid1D, Grid2D, StableParams, Table,
    TimeOrder,
};
use num_complex::Complex64;

use crate::args::{Command, Family, FormatArg, GridArgs, Mode1d, Output, SignArg, Target, Variant};
use crate::output::write_atomic;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag value; exit code 2.
    Invalid(String),
    /// Output could not be written; exit code 3.
    Write(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Write(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) | CliError::Write(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Maps a library error to a one-line diagnostic naming the flag. `flags`
/// renames library parameter names; anything else becomes `--name`.
fn flagged(err: Error, flags: &[(&str, &str)]) -> CliError {
    let lookup = |name: &str| {
        flags
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| f.to_string())
            .unwrap_or_else(|| format!("--{name}"))
    };
    let flag = match &err {
        Error::Resolution { .. } => lookup("resolution"),
        Error::Grid(_) => lookup("grid"),
        Error::SampleSize { .. } => lookup("samples"),
        Error::Inversion { .. } => lookup("t"),
        Error::DegenerateSymbol => lookup("alpha"),
        Error::NegativeDensity { .. } => lookup("grid"),
        _ => lookup(err.parameter_name().unwrap_or("input")),
    };
    CliError::Invalid(format!("invalid {flag}: {err}"))
}

const GRID_FLAGS: [(&str, &str); 3] = [
    ("grid", "--n/--xmin/--xmax"),
    ("resolution", "--n/--xmax (grid too coarse for this t)"),
    ("w0", "--n/--xmax"),
];

fn invalid(flag: &str, message: impl fmt::Display) -> CliError {
    CliError::Invalid(format!("invalid {flag}: {message}"))
}

fn format_of(arg: FormatArg) -> Format {
    match arg {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    }
}

fn extension(arg: FormatArg) -> &'static str {
    match arg {
        FormatArg::Csv => "csv",
        FormatArg::Json => "json",
    }
}

fn header(command: &str, columns: &[&str]) -> Table {
    Table::new(columns)
        .meta("command", command)
        .meta("generator", concat!("fracwave ", env!("CARGO_PKG_VERSION")))
}

fn emit(table: &Table, out: &Output) -> CliResult<()> {
    write_to(&out.path, table, out.format)
}

fn write_to(path: &Path, table: &Table, format: FormatArg) -> CliResult<()> {
    write_atomic(path, &table.render(format_of(format)))
        .map_err(|e| CliError::Write(format!("cannot write {}: {e}", path.display())))
}

fn grid1d(g: &GridArgs) -> CliResult<Grid1D> {
    Grid1D::new(g.xmin.unwrap_or(-g.xmax), g.xmax, g.n).map_err(|e| flagged(e, &GRID_FLAGS))
}

fn grid2d(g: &GridArgs) -> CliResult<Grid2D> {
    Grid2D::new(g.xmin.unwrap_or(-g.xmax), g.xmax, g.n).map_err(|e| flagged(e, &GRID_FLAGS))
}

fn with_grid(table: Table, g: &Grid1D) -> Table {
    table
        .meta("xmin", g.x_min())
        .meta("xmax", g.x_max())
        .meta("n", g.len())
}

fn propagator_table(command: &str, p: &Propagator) -> Table {
    let mut t = with_grid(header(command, &["x", "w"]), &p.grid)
        .meta("t", p.t)
        .meta("mass", p.mass);
    for (x, w) in p.grid.points().into_iter().zip(&p.values) {
        t.push(vec![x, *w]);
    }
    t
}

fn sign_of(s: SignArg) -> Sign {
    match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    }
}

fn family_of(f: Family) -> ModeFamily {
    match f {
        Family::PlaneSin => ModeFamily::PlaneSin,
        Family::PlaneCos => ModeFamily::PlaneCos,
        Family::FresnelCos => ModeFamily::FresnelCos,
        Family::FresnelSin => ModeFamily::FresnelSin,
    }
}

fn variant_of(v: Variant) -> BeamVariant {
    match v {
        Variant::First1d => BeamVariant::First1d,
        Variant::Mother1d => BeamVariant::Mother1d,
        Variant::Product2d => BeamVariant::Product2d,
        Variant::Diagonal2d => BeamVariant::Diagonal2d,
    }
}

fn sign_name(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    }
}

/// `n` points spread uniformly over `[lo, hi]`, both ends included.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64)
        .collect()
}

fn parse_fields<'a>(spec: &'a str, flag: &str) -> CliResult<(&'a str, Vec<f64>)> {
    let mut parts = spec.split(':');
    let kind = parts.next().unwrap_or_default();
    let nums = parts
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| invalid(flag, format!("'{p}' in '{spec}' is not a number")))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    Ok((kind, nums))
}

fn parse_jumps(spec: &str) -> CliResult<JumpLaw> {
    const FORMS: &str = "expected gauss[:VARIANCE] or stable:ALPHA[:SCALE_T]";
    let (kind, nums) = parse_fields(spec, "--jumps")?;
    match (kind, nums.as_slice()) {
        ("gauss" | "gaussian", []) => Ok(JumpLaw::Gaussian { variance: 1.0 }),
        ("gauss" | "gaussian", [v]) => Ok(JumpLaw::Gaussian { variance: *v }),
        ("stable", [alpha]) => StableParams::new(*alpha, 1.0)
            .map(JumpLaw::Stable)
            .map_err(|e| flagged(e, &[("alpha", "--jumps"), ("t", "--jumps")])),
        ("stable", [alpha, t]) => StableParams::new(*alpha, *t)
            .map(JumpLaw::Stable)
            .map_err(|e| flagged(e, &[("alpha", "--jumps"), ("t", "--jumps")])),
        _ => Err(invalid("--jumps", format!("'{spec}': {FORMS}"))),
    }
}

fn parse_waits(spec: &str) -> CliResult<WaitLaw> {
    const FORMS: &str = "expected exp[:RATE] or pareto:BETA[:SCALE]";
    let (kind, nums) = parse_fields(spec, "--waits")?;
    match (kind, nums.as_slice()) {
        ("exp", []) => Ok(WaitLaw::Exponential { rate: 1.0 }),
        ("exp", [rate]) => Ok(WaitLaw::Exponential { rate: *rate }),
        ("pareto", [beta]) => Ok(WaitLaw::Pareto {
            beta: *beta,
            scale: 1.0,
        }),
        ("pareto", [beta, scale]) => Ok(WaitLaw::Pareto {
            beta: *beta,
            scale: *scale,
        }),
        _ => Err(invalid("--waits", format!("'{spec}': {FORMS}"))),
    }
}

fn read_samples(path: &Path) -> CliResult<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid("--input", format!("{}: {e}", path.display())))?;
    let format = if text.trim_start().starts_with('{') {
        Format::Json
    } else {
        Format::Csv
    };
    let table = Table::parse(&text, format).map_err(|e| invalid("--input", e))?;
    let column = table
        .column("value")
        .or_else(|| table.columns.last().and_then(|c| table.column(c)))
        .ok_or_else(|| invalid("--input", "table has no columns"))?;
    Ok(column)
}

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::ClassicalDiffuse { t, grid, out } => {
            let g = grid1d(&grid)?;
            let p =
                solve_classical(&g, t, &InitialData::Delta).map_err(|e| flagged(e, &GRID_FLAGS))?;
            emit(&propagator_table("classical-diffuse", &p), &out)
        }
        Command::FractionalDiffuse {
            alpha,
            t,
            p,
            q,
            grid,
            out,
        } => {
            let g = grid1d(&grid)?;
            let order = FractionalOrder::new(alpha).map_err(|e| flagged(e, &[]))?;
            let weights =
                AsymmetryWeights::new(p, q.unwrap_or(1.0 - p)).map_err(|e| flagged(e, &[]))?;
            let prop = solve_space_fractional(&g, t, order, weights, &InitialData::Delta)
                .map_err(|e| flagged(e, &GRID_FLAGS))?;
            let table = propagator_table("fractional-diffuse", &prop)
                .meta("alpha", alpha)
                .meta("p", weights.p())
                .meta("q", weights.q());
            emit(&table, &out)
        }
        Command::FractionalDiffuse2d {
            alpha,
            t,
            grid,
            out,
        } => {
            let g = grid2d(&grid)?;
            let order = FractionalOrder::new(alpha).map_err(|e| flagged(e, &[]))?;
            let p = solve_space_fractional_2d(&g, t, order, &InitialData::Delta)
                .map_err(|e| flagged(e, &GRID_FLAGS))?;
            let mut table = with_grid(header("fractional-diffuse-2d", &["x", "y", "w"]), g.axis())
                .meta("alpha", alpha)
                .meta("t", t)
                .meta("mass", p.mass);
            let n = g.side();
            for j in 0..n {
                for i in 0..n {
                    let (x, y) = g.point(i, j);
                    table.push(vec![x, y, p.values[g.index(i, j)]]);
                }
            }
            emit(&table, &out)
        }
        Command::Zaslavsky {
            alpha,
            beta,
            t,
            grid,
            out,
        } => {
            let g = grid1d(&grid)?;
            let order = FractionalOrder::new(alpha).map_err(|e| flagged(e, &[]))?;
            let torder = TimeOrder::new(beta).map_err(|e| flagged(e, &[]))?;
            let p = solve_zaslavsky(&g, t, order, torder, &InitialData::Delta)
                .map_err(|e| flagged(e, &GRID_FLAGS))?;
            emit(
                &propagator_table("zaslavsky", &p)
                    .meta("alpha", alpha)
                    .meta("beta", beta),
                &out,
            )
        }
        Command::CoupledDiffuse { beta, t, grid, out } => {
            let g = grid1d(&grid)?;
            let torder = TimeOrder::new(beta).map_err(|e| flagged(e, &[]))?;
            let p = solve_coupled(&g, t, torder, &InitialData::Delta)
                .map_err(|e| flagged(e, &GRID_FLAGS))?;
            emit(
                &propagator_table("coupled-diffuse", &p).meta("beta", beta),
                &out,
            )
        }
        Command::Ctrw {
            jumps,
            waits,
            coupled,
            walkers,
            horizon,
            seed,
            out,
        } => {
            let jump = parse_jumps(&jumps)?;
            let wait = parse_waits(&waits)?;
            let coupling = if coupled {
                Coupling::Coupled
            } else {
                Coupling::Independent
            };
            let flags = [
                ("horizon", "--T"),
                ("variance", "--jumps"),
                ("alpha", "--jumps"),
                ("jump", "--jumps"),
                ("rate", "--waits"),
                ("beta", "--waits"),
                ("scale", "--waits"),
                ("samples", "--walkers"),
            ];
            let model =
                CtrwModel::new(jump, wait, coupling, horizon).map_err(|e| flagged(e, &flags))?;
            let e = ctrw_simulate(&model, walkers, seed).map_err(|e| flagged(e, &flags))?;
            let mut table = header("ctrw", &["position", "renewals"])
                .meta("jumps", &jumps)
                .meta("waits", &waits)
                .meta("coupled", coupled)
                .meta("walkers", walkers)
                .meta("T", horizon)
                .meta("seed", seed);
            for (x, n) in e.positions.iter().zip(&e.renewals) {
                table.push(vec![*x, *n as f64]);
            }
            emit(&table, &out)
        }
        Command::StableDensity {
            alpha,
            t,
            grid,
            out,
        } => {
            let g = grid1d(&grid)?;
            let params = StableParams::new(alpha, t).map_err(|e| flagged(e, &[]))?;
            let xs = g.points();
            let w = stable_density(&xs, params).map_err(|e| flagged(e, &[]))?;
            let mut table = with_grid(header("stable-density", &["x", "density"]), &g)
                .meta("alpha", alpha)
                .meta("t", t);
            for (x, v) in xs.into_iter().zip(w) {
                table.push(vec![x, v]);
            }
            emit(&table, &out)
        }
        Command::StableSample {
            alpha,
            t,
            count,
            seed,
            out,
        } => {
            let params = StableParams::new(alpha, t).map_err(|e| flagged(e, &[]))?;
            let s = stable_sample(count, params, seed)
                .map_err(|e| flagged(e, &[("samples", "--count")]))?;
            let mut table = header("stable-sample", &["value"])
                .meta("alpha", alpha)
                .meta("t", t)
                .meta("count", count)
                .meta("seed", seed);
            s.values.iter().for_each(|&v| table.push(vec![v]));
            emit(&table, &out)
        }
        Command::SasSeries {
            alpha,
            length,
            seed,
            out,
        } => {
            let s = sas_series(length, alpha, seed)
                .map_err(|e| flagged(e, &[("samples", "--length")]))?;
            let mut table = header("sas-series", &["index", "value"])
                .meta("alpha", alpha)
                .meta("length", length)
                .meta("seed", seed);
            for (j, v) in s.values.iter().enumerate() {
                table.push(vec![j as f64, *v]);
            }
            emit(&table, &out)
        }
        Command::TailIndex {
            input,
            alpha,
            count,
            seed,
            fraction,
            out,
        } => {
            let mut table =
                header("tail-index", &["alpha_hat", "k", "heavy_tail"]).meta("fraction", fraction);
            let values = match (&input, alpha) {
                (Some(path), _) => {
                    table = table.meta("input", path.display());
                    read_samples(path)?
                }
                (None, Some(alpha)) => {
                    let params = StableParams::new(alpha, 1.0).map_err(|e| flagged(e, &[]))?;
                    table = table
                        .meta("alpha", alpha)
                        .meta("count", count)
                        .meta("seed", seed);
                    stable_sample(count, params, seed)
                        .map_err(|e| flagged(e, &[("samples", "--count")]))?
                        .values
                }
                (None, None) => {
                    return Err(invalid("--alpha", "either --alpha or --input is required"))
                }
            };
            let samples_flag = if input.is_some() {
                "--input"
            } else {
                "--count"
            };
            let est = tail_index(&values, fraction).map_err(|e| {
                flagged(
                    e,
                    &[("top_fraction", "--fraction"), ("samples", samples_flag)],
                )
            })?;
            table.push(vec![
                est.alpha,
                est.k as f64,
                if est.heavy_tail { 1.0 } else { 0.0 },
            ]);
            emit(&table, &out)
        }
        Command::HelmholtzMode {
            family,
            k,
            xmin,
            xmax,
            n,
            out,
        } => {
            let g = Grid1D::new(xmin, xmax, n).map_err(|e| flagged(e, &GRID_FLAGS))?;
            let flags = [("x", "--xmin"), ("grid", "--n/--xmin/--xmax")];
            let (name, complex) = match family {
                Mode1d::PlaneSin => ("plane_sin", false),
                Mode1d::PlaneCos => ("plane_cos", false),
                Mode1d::FresnelCos => ("fresnel_cos", false),
                Mode1d::FresnelSin => ("fresnel_sin", false),
                Mode1d::EigenPlus => ("eigen_plus", true),
                Mode1d::EigenMinus => ("eigen_minus", true),
            };
            let columns: &[&str] = if complex {
                &["x", "re", "im"]
            } else {
                &["x", "value"]
            };
            let mut table = with_grid(header("helmholtz-mode", columns), &g)
                .meta("family", name)
                .meta("k", k);
            for x in g.points() {
                let row = match family {
                    Mode1d::EigenPlus | Mode1d::EigenMinus => {
                        let sign = if family == Mode1d::EigenPlus {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        };
                        let y = fractional_eigen_1d(k, x, sign).map_err(|e| flagged(e, &flags))?;
                        vec![x, y.re, y.im]
                    }
                    other => {
                        let fam = match other {
                            Mode1d::PlaneSin => ModeFamily::PlaneSin,
                            Mode1d::PlaneCos => ModeFamily::PlaneCos,
                            Mode1d::FresnelCos => ModeFamily::FresnelCos,
                            _ => ModeFamily::FresnelSin,
                        };
                        vec![
                            x,
                            helmholtz_modes_1d(k, x, fam).map_err(|e| flagged(e, &flags))?,
                        ]
                    }
                };
                table.push(row);
            }
            emit(&table, &out)
        }
        Command::EdgeWave {
            family,
            a,
            b,
            sign,
            grid,
            out,
        } => {
            let g = grid2d(&grid)?;
            let wv = WaveVector::new(a, b)
                .map_err(|e| flagged(e, &[("k", "--a/--b"), ("a", "--a"), ("b", "--b")]))?;
            let spec = ModeSpec::new(family_of(family), wv, sign_of(sign));
            let field = FieldOnGrid::sample(
                g,
                |x, y| {
                    fracwave_core::wavemodes::edge_wave_2d(&spec, x, y)
                        .map(|v| Complex64::new(v, 0.0))
                },
                |_, _| false,
            );
            let mut table = with_grid(header("edge-wave", &["x", "y", "value"]), g.axis())
                .meta("family", spec.family.name())
                .meta("a", a)
                .meta("b", b)
                .meta("sign", sign_name(spec.sign));
            let n = g.side();
            for j in 0..n {
                for i in 0..n {
                    let (x, y) = g.point(i, j);
                    table.push(vec![x, y, field.values[g.index(i, j)].re]);
                }
            }
            emit(&table, &out)
        }
        Command::WaveSolution {
            kvec,
            x,
            c,
            lower,
            sign,
            tmin,
            tmax,
            n,
            out,
        } => {
            if kvec.is_empty() {
                return Err(invalid("--kvec", "at least one component is required"));
            }
            if x.len() != kvec.len() {
                return Err(invalid(
                    "--x",
                    format!("has {} components, --kvec has {}", x.len(), kvec.len()),
                ));
            }
            if n == 0 || !(tmax >= tmin) {
                return Err(invalid("--n/--tmin/--tmax", "need n >= 1 and tmin <= tmax"));
            }
            let s = sign_of(sign);
            let mut table = header("wave-solution", &["t", "re", "im"])
                .meta("kvec", join(&kvec))
                .meta("x", join(&x))
                .meta("c", c)
                .meta("lower", lower)
                .meta("sign", sign_name(s));
            for t in linspace(tmin, tmax, n) {
                let v = wave_fractional_solution(&kvec, c, &x, t, lower, s).map_err(|e| {
                    flagged(
                        e,
                        &[
                            ("u^2", "--tmin (radicand |k|ct + k.x is negative)"),
                            ("A", "--lower"),
                        ],
                    )
                })?;
                table.push(vec![t, v.re, v.im]);
            }
            emit(&table, &out)
        }
        Command::PweBeam {
            variant,
            k,
            z,
            zmin,
            zmax,
            nz,
            grid,
            out,
        } => {
            let g = grid1d(&grid)?;
            let spec = BeamSpec::new(k, variant_of(variant), 0, 0).map_err(|e| flagged(e, &[]))?;
            let flags = [("z", "--z/--zmin"), ("x", "--xmin/--xmax")];
            let field = if spec.variant.is_2d() {
                BeamField::sample_xy(spec, g.points(), g.points(), z)
            } else {
                if nz == 0 || !(zmax >= zmin) {
                    return Err(invalid(
                        "--nz/--zmin/--zmax",
                        "need nz >= 1 and zmin <= zmax",
                    ));
                }
                BeamField::sample_xz(spec, g.points(), linspace(zmin, zmax, nz))
            }
            .map_err(|e| flagged(e, &flags))?;
            emit(&beam_table("pwe-beam", &field, &g), &out)
        }
        Command::HermiteBeam {
            k,
            m,
            n,
            z,
            xmax,
            points,
            out,
        } => {
            let spec = BeamSpec::new(k, BeamVariant::Product2d, m, n)
                .map_err(|e| flagged(e, &[("m", "--m/--n")]))?;
            let g = Grid1D::symmetric(xmax, points)
                .map_err(|e| flagged(e, &[("grid", "--points/--xmax")]))?;
            let field = BeamField::sample_xy(spec, g.points(), g.points(), z)
                .map_err(|e| flagged(e, &[]))?;
            emit(&beam_table("hermite-beam", &field, &g), &out)
        }
        Command::ResidualCheck {
            target,
            family,
            variant,
            k,
            a,
            b,
            sign,
            exclude_radius,
            kvec,
            c,
            lower,
            order_m,
            order_n,
            x,
            y,
            z,
            t,
            h,
            xmax,
            n,
            out,
        } => {
            let (name, residual, meta) = residual_check(
                target,
                ResidualArgs {
                    family,
                    variant,
                    k,
                    a,
                    b,
                    sign: sign_of(sign),
                    exclude_radius,
                    kvec,
                    c,
                    lower,
                    order_m,
                    order_n,
                    x,
                    y,
                    z,
                    t,
                    h,
                    xmax,
                    n,
                },
            )?;
            let mut table = header("residual-check", &["residual"]).meta("target", name);
            for (key, value) in meta {
                table = table.meta(key, value);
            }
            table.push(vec![residual]);
            emit(&table, &out)
        }
        Command::ReproduceFigures {
            series_length,
            seed,
            out,
        } => reproduce_figures(series_length, seed, &out),
    }
}

fn join(v: &[f64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn beam_table(command: &str, field: &BeamField, g: &Grid1D) -> Table {
    let second = if field.z.is_some() { "y" } else { "z" };
    let mut table = with_grid(header(command, &["x", second, "re", "im"]), g)
        .meta("variant", field.spec.variant.name())
        .meta("k", field.spec.k)
        .meta("m", field.spec.m)
        .meta("n_order", field.spec.n);
    if let Some(z) = field.z {
        table = table.meta("z", z);
    }
    let nx = field.first.len();
    for (idx, v) in field.values.iter().enumerate() {
        table.push(vec![
            field.first[idx % nx],
            field.second[idx / nx],
            v.re,
            v.im,
        ]);
    }
    table
}

struct ResidualArgs {
    family: Option<Family>,
    variant: Option<Variant>,
    k: f64,
    a: f64,
    b: f64,
    sign: Sign,
    exclude_radius: f64,
    kvec: Option<Vec<f64>>,
    c: f64,
    lower: f64,
    order_m: usize,
    order_n: usize,
    x: f64,
    y: f64,
    z: f64,
    t: f64,
    h: f64,
    xmax: f64,
    n: usize,
}

type Meta = Vec<(&'static str, String)>;

fn residual_check(target: Target, r: ResidualArgs) -> CliResult<(&'static str, f64, Meta)> {
    let need_family = || {
        r.family
            .map(family_of)
            .ok_or_else(|| invalid("--family", "required for this target"))
    };
    let helm_grid =
        || Grid2D::symmetric(r.xmax, r.n).map_err(|e| flagged(e, &[("grid", "--n/--xmax")]));
    let dx = 2.0 * r.xmax / r.n as f64;
    match target {
        Target::Helmholtz1d => {
            let family = need_family()?;
            let field = FieldOnGrid::mode_1d(r.k, family, helm_grid()?).exclude_disk(
                0.0,
                0.0,
                r.exclude_radius,
            );
            let res = residual_helmholtz(&field, r.k)
                .map_err(|e| flagged(e, &[("grid", "--n/--xmax")]))?;
            let meta = vec![
                ("family", family.name().to_string()),
                ("k", r.k.to_string()),
                ("h", dx.to_string()),
            ];
            Ok(("helmholtz-1d", res, meta))
        }
        Target::EdgeWave => {
            let family = need_family()?;
            let wv = WaveVector::new(r.a, r.b).map_err(|e| flagged(e, &[("k", "--a/--b")]))?;
            let spec = ModeSpec::new(family, wv, r.sign);
            let field = FieldOnGrid::edge_wave(&spec, helm_grid()?).exclude_disk(
                0.0,
                0.0,
                r.exclude_radius,
            );
            let res = residual_helmholtz(&field, wv.norm())
                .map_err(|e| flagged(e, &[("grid", "--n/--xmax/--exclude-radius")]))?;
            let meta = vec![
                ("family", family.name().to_string()),
                ("a", r.a.to_string()),
                ("b", r.b.to_string()),
                ("sign", sign_name(r.sign).to_string()),
                ("h", dx.to_string()),
                ("exclude_radius", r.exclude_radius.to_string()),
            ];
            Ok(("edge-wave", res, meta))
        }
        Target::Wave => {
            let kvec = r.kvec.clone().unwrap_or_else(|| vec![r.a, r.b]);
            if kvec.len() != 2 {
                return Err(invalid(
                    "--kvec",
                    "the wave residual is two-dimensional; give two components",
                ));
            }
            let norm = kvec[0].hypot(kvec[1]);
            let f = |x: f64, y: f64, t: f64| {
                wave_fractional_solution(&kvec, r.c, &[x, y], t, r.lower, r.sign)
            };
            let res = residual_wave(f, r.x, r.y, r.t, r.c, norm, r.h)
                .map_err(|e| flagged(e, &[("u^2", "--t (stencil reaches a negative radicand)")]))?;
            let meta = vec![
                ("kvec", join(&kvec)),
                ("c", r.c.to_string()),
                ("x", r.x.to_string()),
                ("y", r.y.to_string()),
                ("t", r.t.to_string()),
                ("h", r.h.to_string()),
            ];
            Ok(("wave", res, meta))
        }
        Target::Pwe => {
            let variant = r
                .variant
                .map(variant_of)
                .ok_or_else(|| invalid("--variant", "required for this target"))?;
            let spec = BeamSpec::new(r.k, variant, r.order_m, r.order_n)
                .map_err(|e| flagged(e, &[("m", "--order-m/--order-n")]))?;
            let res = residual_pwe(
                |x, y, z| beam_value(&spec, x, y, z),
                r.x,
                r.y,
                r.z,
                r.k,
                r.h,
            )
            .map_err(|e| flagged(e, &[("z", "--z (need z > 2h)")]))?;
            let meta = vec![
                ("variant", variant.name().to_string()),
                ("k", r.k.to_string()),
                ("m", r.order_m.to_string()),
                ("n_order", r.order_n.to_string()),
                ("x", r.x.to_string()),
                ("y", r.y.to_string()),
                ("z", r.z.to_string()),
                ("h", r.h.to_string()),
            ];
            Ok(("pwe", res, meta))
        }
        Target::Eigen => {
            let res = eigen_defect_check(r.k, r.x, r.sign).map_err(|e| flagged(e, &[]))?;
            let meta = vec![
                ("k", r.k.to_string()),
                ("x", r.x.to_string()),
                ("sign", sign_name(r.sign).to_string()),
            ];
            Ok(("eigen", res, meta))
        }
        Target::Factorization => {
            let res = factorization_residual(r.x, r.z, r.k, r.sign).map_err(|e| flagged(e, &[]))?;
            let meta = vec![
                ("k", r.k.to_string()),
                ("x", r.x.to_string()),
                ("z", r.z.to_string()),
                ("sign", sign_name(r.sign).to_string()),
            ];
            Ok(("factorization", res, meta))
        }
    }
}

/// Stability indices of the density and tail figures.
const DENSITY_ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
/// Stability indices of the time-series figure.
const SERIES_ALPHAS: [f64; 6] = [2.0, 1.95, 1.5, 1.0, 0.85, 0.45];

fn alpha_column(alpha: f64) -> String {
    format!("alpha_{alpha}")
}

fn reproduce_figures(series_length: usize, seed: u64, out: &Output) -> CliResult<()> {
    let dir: &PathBuf = &out.path;
    if !dir.is_dir() {
        return Err(CliError::Write(format!(
            "output directory {} does not exist",
            dir.display()
        )));
    }
    let ext = extension(out.format);
    let names: Vec<String> = DENSITY_ALPHAS.iter().map(|&a| alpha_column(a)).collect();
    let params: Vec<StableParams> = DENSITY_ALPHAS
        .iter()
        .map(|&a| StableParams::new(a, 1.0).expect("fixed alpha in (0, 2]"))
        .collect();

    let mut columns = vec!["x"];
    columns.extend(names.iter().map(String::as_str));

    let xs = linspace(-10.0, 10.0, 401);
    let mut densities = header("reproduce-figures", &columns)
        .meta("figure", "densities")
        .meta("t", 1);
    let per_alpha: Vec<Vec<f64>> = params
        .iter()
        .map(|&p| stable_density(&xs, p).map_err(|e| flagged(e, &[])))
        .collect::<CliResult<_>>()?;
    for (j, &x) in xs.iter().enumerate() {
        let mut row = vec![x];
        row.extend(per_alpha.iter().map(|d| d[j]));
        densities.push(row);
    }

    let tail_x: Vec<f64> = (0..=80)
        .map(|j| 10f64.powf(-1.0 + j as f64 / 20.0))
        .collect();
    let mut survival = header("reproduce-figures", &columns)
        .meta("figure", "survival_tails")
        .meta("t", 1);
    for &x in &tail_x {
        let mut row = vec![x];
        for &p in &params {
            row.push(stable_survival(x, p).map_err(|e| flagged(e, &[]))?);
        }
        survival.push(row);
    }

    let series_names: Vec<String> = SERIES_ALPHAS.iter().map(|&a| alpha_column(a)).collect();
    let mut series_columns = vec!["index"];
    series_columns.extend(series_names.iter().map(String::as_str));
    let mut series_table = header("reproduce-figures", &series_columns)
        .meta("figure", "sas_series")
        .meta("length", series_length);
    let mut all = Vec::new();
    for (j, &alpha) in SERIES_ALPHAS.iter().enumerate() {
        let s = seed.wrapping_add(j as u64);
        series_table = series_table.meta(&format!("seed_{}", alpha_column(alpha)), s);
        all.push(
            sas_series(series_length, alpha, s)
                .map_err(|e| flagged(e, &[("samples", "--series-length")]))?
                .values,
        );
    }
    for i in 0..series_length {
        let mut row = vec![i as f64];
        row.extend(all.iter().map(|s| s[i]));
        series_table.push(row);
    }

    for (stem, table) in [
        ("stable_densities", &densities),
        ("stable_survival_tails", &survival),
        ("sas_series", &series_table),
    ] {
        write_to(&dir.join(format!("{stem}.{ext}")), table, out.format)?;
    }
    Ok(())
}
