use std::fmt::Display;

use fracyamabe::bifurcation::{detect_instants, theta_tracks, DetectOptions, SpectralPath};
use fracyamabe::morse::{check_bifurcation_inequality, jacobi_threshold, morse_index_nullity};
use fracyamabe::symbol::{self, theta, theta_eigenvalue, BValue, HalfAxisPoint};
use fracyamabe::thresholds::{cn_table, DEFAULT_CN_TOL};
use fracyamabe::{Error, SpectralParams, SurfaceSpectrum, ThetaGrid};
use serde_json::{json, Value};

use crate::output::{emit, render_report, report, Format, Table};
use crate::{BifurcateArgs, Cli, CnArgs, Command, GlobalArgs, MorseArgs, RegimeArgs, ThetaArgs};

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn validation(message: impl Display) -> Self {
        Self { code: EXIT_VALIDATION, message: message.to_string() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_VALIDATION };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::validation(e)
    }
}

type CliResult<T = ()> = Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult {
    let g = &cli.global;
    match &cli.command {
        Command::Theta(args) => theta_cmd(g, args),
        Command::Cn(args) => cn_cmd(g, args),
        Command::Morse(args) => morse_cmd(g, args),
        Command::Bifurcate(args) => bifurcate_cmd(g, args),
        Command::Regime(args) => regime_cmd(g, args),
    }
}

/// Builds parameters, falling back to the extended evaluation for integer γ.
fn make_params(n: u32, k: u32, gamma: f64) -> CliResult<SpectralParams> {
    match SpectralParams::new(n, k, gamma) {
        Ok(p) => Ok(p),
        Err(_) if gamma == gamma.floor() => {
            let p = SpectralParams::new_extended(n, k, gamma)?;
            eprintln!("note: integer order γ = {gamma} evaluated as an extended case");
            Ok(p)
        }
        Err(e) => Err(e.into()),
    }
}

fn params_from(g: &GlobalArgs, fallback: (Option<u32>, Option<u32>, Option<f64>)) -> CliResult<SpectralParams> {
    let n = g.n.or(fallback.0).ok_or_else(|| CliError::validation("missing --n"))?;
    let k = g.k.or(fallback.1).unwrap_or(1);
    let gamma = g.gamma.or(fallback.2).ok_or_else(|| CliError::validation("missing --gamma"))?;
    make_params(n, k, gamma)
}

fn params_json(p: &SpectralParams) -> Value {
    json!({ "n": p.n(), "k": p.k(), "gamma": p.gamma(), "extended": p.is_extended() })
}

fn theta_cmd(g: &GlobalArgs, args: &ThetaArgs) -> CliResult {
    let p = params_from(g, (None, None, None))?;
    let format = g.format.unwrap_or(Format::Csv);
    if let Some(grid) = &args.grid {
        let path = args.spectrum.as_ref().ok_or_else(|| CliError::validation("--grid needs --spectrum"))?;
        let spec = SurfaceSpectrum::from_path(path)?;
        let grid = ThetaGrid::compute(&p, &spec, grid[0], grid[1] as usize)?;
        let mut columns = vec!["m".to_string()];
        columns.extend((0..=grid.l_max).map(|l| format!("l{l}")));
        let mut table = Table { columns, rows: Vec::new() };
        for m in 0..=grid.m_max {
            let mut row = vec![json!(m)];
            row.extend((0..=grid.l_max).map(|l| json!(grid.get(m, l))));
            table.push(row);
        }
        return Ok(emit(&table.render(format))?);
    }
    let (columns, row) = if let Some(m) = args.m {
        let lambda = args.lambda.ok_or_else(|| CliError::validation("--m needs --lambda"))?;
        let value = theta_eigenvalue(m, lambda, &p)?;
        (vec!["m", "lambda", "theta"], vec![json!(m), json!(lambda), json!(value)])
    } else if let Some(a) = args.a {
        let b = match (args.b, args.beta) {
            (Some(b), None) => BValue::Real(b),
            (None, Some(beta)) => BValue::Imaginary(beta),
            _ => return Err(CliError::validation("--a needs exactly one of --b or --beta")),
        };
        let value = theta(HalfAxisPoint::new(a, b, p.k())?, &p)?;
        let (b_re, b_im) = match b {
            BValue::Real(v) => (v, 0.0),
            BValue::Imaginary(v) => (0.0, v),
        };
        (vec!["a", "b_re", "b_im", "theta"], vec![json!(a), json!(b_re), json!(b_im), json!(value)])
    } else {
        return Err(CliError::validation("theta needs --m and --lambda, --a with --b or --beta, or --grid"));
    };
    let mut table = Table::new(&columns);
    table.push(row);
    Ok(emit(&table.render(format))?)
}

fn cn_cmd(g: &GlobalArgs, args: &CnArgs) -> CliResult {
    let tol = g.tol.unwrap_or(DEFAULT_CN_TOL);
    let records = cn_table(args.n_min, args.n_max, tol)?;
    let mut table = Table::new(&["n", "c_n", "residual", "gap_to_asymptote"]);
    for r in &records {
        table.push(vec![json!(r.n), json!(r.c_n), json!(r.residual), json!(r.gap_to_asymptote())]);
    }
    Ok(emit(&table.render(g.format.unwrap_or(Format::Csv)))?)
}

fn morse_cmd(g: &GlobalArgs, args: &MorseArgs) -> CliResult {
    let p = params_from(g, (None, None, None))?;
    let spec = SurfaceSpectrum::from_path(&args.spectrum)?;
    let r = morse_index_nullity(&spec, &p, args.null_tol)?;
    if !r.complete {
        eprintln!(
            "warning: truncation bound {} does not certify the count; eigenvalues beyond it may contribute",
            spec.truncation_bound()
        );
    }
    let format = g.format.unwrap_or(Format::Json);
    if format == Format::Csv {
        let mut table = Table::new(&["index", "nullity", "threshold", "null_tol", "complete"]);
        table.push(vec![json!(r.index), json!(r.nullity), json!(r.threshold), json!(r.null_tol), json!(r.complete)]);
        return Ok(emit(&table.to_csv())?);
    }
    let mut body = serde_json::to_value(&r).expect("serializable report");
    body["params"] = params_json(&p);
    Ok(emit(&render_report(&report(body), format))?)
}

fn bifurcate_cmd(g: &GlobalArgs, args: &BifurcateArgs) -> CliResult {
    let path = SpectralPath::from_path(&args.path)?;
    let meta = path.metadata;
    let p = params_from(g, (meta.n, meta.k, meta.gamma))?;
    let options = DetectOptions { scan_resolution: args.resolution, refine_tol: args.refine_tol, null_tol: args.null_tol };
    let r = detect_instants(&path, &p, &options)?;
    for w in &r.warnings {
        eprintln!("warning: {}", serde_json::to_string(w).expect("serializable warning"));
    }
    if let Some(plot) = &args.plot_data {
        let samples = args.plot_samples.unwrap_or(args.resolution);
        let threshold = jacobi_threshold(&p)?;
        let mut columns = vec!["t".to_string()];
        columns.extend((1..=path.tracks().len()).map(|l| format!("theta_{l}")));
        columns.push("threshold".into());
        let mut table = Table { columns, rows: Vec::new() };
        for (t, values) in theta_tracks(&path, &p, samples)? {
            let mut row = vec![json!(t)];
            row.extend(values.into_iter().map(|v| json!(v)));
            row.push(json!(threshold));
            table.push(row);
        }
        std::fs::write(plot, table.to_csv())?;
    }
    let format = g.format.unwrap_or(Format::Json);
    if format == Format::Csv {
        let mut table = Table::new(&["t", "track", "direction", "lambda", "theta", "residual"]);
        for c in &r.instants {
            let dir = serde_json::to_value(c.direction).expect("serializable direction");
            table.push(vec![json!(c.t), json!(c.track), dir, json!(c.lambda), json!(c.theta), json!(c.residual)]);
        }
        return Ok(emit(&table.to_csv())?);
    }
    let mut body = serde_json::to_value(&r).expect("serializable report");
    body["params"] = params_json(&p);
    Ok(emit(&render_report(&report(body), format))?)
}

fn regime_cmd(g: &GlobalArgs, args: &RegimeArgs) -> CliResult {
    let (n_min, n_max) = (args.n_range[0], args.n_range[1]);
    if n_min < 3 || n_min > n_max {
        return Err(CliError::validation(format!("need 3 ≤ N_MIN ≤ N_MAX, got {n_min} {n_max}")));
    }
    if args.gamma_steps == 0 {
        return Err(CliError::validation("--gamma-steps must be positive"));
    }
    let k = g.k.unwrap_or(1);
    let mut table =
        Table::new(&["n", "gamma", "k", "in_regime", "q_gamma", "xi", "threshold", "inequality_holds"]);
    for n in n_min..=n_max {
        if k >= n {
            return Err(CliError::validation(format!("need k < n, got k = {k}, n = {n}")));
        }
        for j in 1..=args.gamma_steps {
            let gamma = f64::from(n) / 2.0 * f64::from(j) / f64::from(args.gamma_steps + 1);
            let p = SpectralParams::new_extended(n, k, gamma)?;
            let in_regime = p.positive_regime();
            let q = match symbol::q_gamma_formula(n, k, gamma) {
                Ok(v) => json!(v),
                Err(Error::Pole(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let (xi, threshold, holds) = if k == 1 && gamma < f64::from(n) / 2.0 - 1.0 {
                let c = check_bifurcation_inequality(&p)?;
                (json!(c.xi), json!(c.threshold), json!(c.holds))
            } else {
                (Value::Null, Value::Null, Value::Null)
            };
            table.push(vec![json!(n), json!(gamma), json!(k), json!(in_regime), q, xi, threshold, holds]);
        }
    }
    Ok(emit(&table.render(g.format.unwrap_or(Format::Csv)))?)
}
