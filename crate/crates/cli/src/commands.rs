//! One function per subcommand, each producing a [`Table`].

use anyhow::Context;
use qwlab_core::genfun::{tal_total_mass, time_averaged_limit_closed, time_averaged_limit_residue};
use qwlab_core::oracle::{enumerated_series, HalfLine, MAX_PATH_LEN};
use qwlab_core::pathsum::{return_prob_limit, theta0, ReturnSeries};
use qwlab_core::series::{first_return_series_minus, first_return_series_plus, rstar_series, RationalSeries};
use qwlab_core::stationary::{eigensolution, stationary_measure, stationary_prob_measure, EigenBranch};
use qwlab_core::verify::{self, VerifyOptions};
use qwlab_core::walk::{cesaro_average, measure, step, WalkState};
use qwlab_core::{CoinField, DefectAngle, C64};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{config_error, Model, RunConfig};
use crate::output::{Cell, Table};

fn base_metadata(table: &mut Table, command: &str, cfg: &RunConfig) {
    let q = cfg.qubit;
    table.meta("command", json!(command));
    table.meta(
        "model",
        json!(match cfg.model {
            Model::OneDefect => "one-defect",
            Model::Wojcik => "wojcik",
            Model::Hadamard => "hadamard",
            Model::Custom => "custom",
        }),
    );
    table.meta("xi", cfg.xi.map_or(Value::Null, |x| json!(x)));
    table.meta("qubit", json!([q.left.re, q.left.im, q.right.re, q.right.im]));
    table.meta("N", json!(cfg.steps));
    table.meta("version", json!(env!("CARGO_PKG_VERSION")));
}

pub fn simulate(cfg: &RunConfig, every: Option<usize>) -> anyhow::Result<Table> {
    let window = cfg.window.unwrap_or(cfg.steps);
    let reach = cfg.steps.min(window) as i64;
    let mut table = Table::new(vec!["n", "x", "mu"]);
    base_metadata(&mut table, "simulate", cfg);
    table.meta("window", json!(window));
    let mut state = WalkState::point_mass(cfg.qubit, window)?;
    let emit = |state: &WalkState, table: &mut Table| {
        let profile = measure(state);
        for x in -reach..=reach {
            table.push(vec![state.time().into(), x.into(), profile.get(x).into()]);
        }
    };
    if every.is_some() {
        emit(&state, &mut table);
    }
    for n in 1..=cfg.steps {
        state = step(&state, &cfg.field).with_context(|| format!("step {n} with window {window}"))?;
        if n == cfg.steps || every.is_some_and(|k| n % k == 0) {
            emit(&state, &mut table);
        }
    }
    Ok(table)
}

pub fn cesaro(cfg: &RunConfig) -> anyhow::Result<Table> {
    let profile = cesaro_average(&cfg.field, cfg.qubit, cfg.steps)?;
    let mut table = Table::new(vec!["x", "cesaro_N"]);
    base_metadata(&mut table, "cesaro", cfg);
    for x in -cfg.xmax..=cfg.xmax {
        table.push(vec![x.into(), profile.get(x).into()]);
    }
    Ok(table)
}

pub fn stationary(cfg: &RunConfig) -> anyhow::Result<Table> {
    let angle = cfg.angle()?;
    let unit = C64::new(1.0, 0.0);
    let mut table = Table::new(vec!["x", "mu_unit_c", "mu_probability", "mu_bar_closed"]);
    base_metadata(&mut table, "stationary", cfg);
    if angle.localizes() {
        let lambdas: Vec<Value> = EigenBranch::ALL
            .iter()
            .map(|&b| eigensolution(angle, b, unit).map(|s| json!([s.lambda.re, s.lambda.im])))
            .collect::<Result<_, _>>()?;
        table.meta("eigenvalues", Value::Array(lambdas));
    }
    for x in -cfg.xmax..=cfg.xmax {
        let prob = angle.localizes().then(|| stationary_prob_measure(angle, x)).transpose()?;
        table.push(vec![
            x.into(),
            stationary_measure(angle, unit, x).into(),
            prob.into(),
            time_averaged_limit_closed(angle, x).into(),
        ]);
    }
    Ok(table)
}

pub fn limit(cfg: &RunConfig) -> anyhow::Result<Table> {
    let angle = cfg.angle()?;
    let profile = cesaro_average(&CoinField::OneDefect(angle), cfg.qubit, cfg.steps)?;
    let mut table = Table::new(vec!["x", "mu_bar_closed", "mu_bar_residue", "cesaro_N"]);
    base_metadata(&mut table, "limit", cfg);
    let xs: Vec<i64> = (-cfg.xmax..=cfg.xmax).collect();
    let residues: Vec<f64> = xs
        .par_iter()
        .map(|&x| time_averaged_limit_residue(angle, x, cfg.qubit))
        .collect::<Result<_, _>>()?;
    let (mut res_sum, mut ces_sum) = (0.0, 0.0);
    for (&x, &r) in xs.iter().zip(&residues) {
        res_sum += r;
        ces_sum += profile.get(x);
        table.push(vec![x.into(), time_averaged_limit_closed(angle, x).into(), r.into(), profile.get(x).into()]);
    }
    // Footer: exact total mass of the limit measure, partial sums of the others.
    table.push(vec!["total".into(), tal_total_mass(angle).into(), res_sum.into(), ces_sum.into()]);
    Ok(table)
}

pub fn return_prob(cfg: &RunConfig) -> anyhow::Result<Table> {
    let angle = cfg.angle()?;
    let amps = ReturnSeries::new(angle, cfg.steps).amplitudes(cfg.qubit);
    let limit = return_prob_limit(angle);
    let mut table = Table::new(vec!["n", "psi_l_sq", "psi_r_sq", "r_2n", "asymptotic"]);
    base_metadata(&mut table, "return-prob", cfg);
    if let Ok(p) = theta0(angle) {
        table.meta("theta0", json!(p.theta0));
    }
    for (n, a) in amps.iter().enumerate() {
        let (l, r) = (a.left.norm_sqr(), a.right.norm_sqr());
        table.push(vec![n.into(), l.into(), r.into(), (l + r).into(), limit.into()]);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesKind {
    /// First-return series of the two-sided walk, r*.
    Rstar,
    /// First return from the right half line, (-1 + sqrt(1 + z^4))/z.
    FirstReturnPlus,
    /// First return from the left half line.
    FirstReturnMinus,
    /// First return from the right half line by exhaustive path enumeration.
    PathsPlus,
    /// First return from the left half line by exhaustive path enumeration.
    PathsMinus,
}

pub fn series(cfg: &RunConfig, kind: SeriesKind, order: usize) -> anyhow::Result<Table> {
    let enumerated = matches!(kind, SeriesKind::PathsPlus | SeriesKind::PathsMinus);
    if enumerated && order > MAX_PATH_LEN {
        return Err(config_error(anyhow::anyhow!(
            "path enumeration is limited to --order <= {MAX_PATH_LEN}"
        )));
    }
    let s: RationalSeries = match kind {
        SeriesKind::Rstar => rstar_series(order),
        SeriesKind::FirstReturnPlus => first_return_series_plus(order),
        SeriesKind::FirstReturnMinus => first_return_series_minus(order),
        SeriesKind::PathsPlus => enumerated_series(HalfLine::Positive, order)?,
        SeriesKind::PathsMinus => enumerated_series(HalfLine::Negative, order)?,
    };
    let mut table = Table::new(vec!["n", "numerator", "denominator"]);
    base_metadata(&mut table, "series", cfg);
    table.meta("order", json!(order));
    for n in 0..=order {
        let q = s.coeff(n).context("coefficient within order")?;
        table.push(vec![n.into(), Cell::Text(q.numer().to_string()), Cell::Text(q.denom().to_string())]);
    }
    Ok(table)
}

/// Runs every invariant in parallel; the report keeps the suite order.
pub fn verify(options: &VerifyOptions) -> verify::Report {
    let checks = verify::suite()
        .par_iter()
        .map(|inv| inv.evaluate(options))
        .collect();
    verify::Report { checks }
}

pub fn verify_table(report: &verify::Report, options: &VerifyOptions) -> Table {
    let mut table = Table::new(vec!["check", "status", "detail"]);
    table.meta("command", json!("verify"));
    table.meta("horizon", json!(options.horizon));
    table.meta("inject_fault", json!(options.inject_fault));
    table.meta("version", json!(env!("CARGO_PKG_VERSION")));
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        table.push(vec![c.name.into(), status.into(), Cell::Text(c.detail.clone())]);
    }
    table
}

/// Human-readable report for the terminal.
pub fn verify_text(report: &verify::Report) -> String {
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status}  {:<width$}  {}\n", c.name, c.detail));
    }
    let failed = report.failures().count();
    out.push_str(&format!("{} of {} checks passed\n", report.checks.len() - failed, report.checks.len()));
    out
}

pub fn sweep(cfg: &RunConfig, from: f64, to: f64, count: usize) -> anyhow::Result<Table> {
    if count < 2 {
        return Err(config_error(anyhow::anyhow!("--count must be at least 2")));
    }
    if cfg.model != Model::OneDefect {
        return Err(config_error(anyhow::anyhow!("sweep varies xi and needs --model one-defect")));
    }
    let grid: Vec<f64> = (0..count)
        .map(|i| from + (to - from) * i as f64 / (count - 1) as f64)
        .collect();
    let angles: Vec<DefectAngle> = grid
        .iter()
        .map(|&xi| DefectAngle::new(xi))
        .collect::<Result<_, _>>()
        .map_err(|e| config_error(e.into()))?;
    let rows: Vec<Vec<Cell>> = angles
        .par_iter()
        .map(|&a| -> anyhow::Result<Vec<Cell>> {
            let profile = cesaro_average(&CoinField::OneDefect(a), cfg.qubit, cfg.steps)?;
            let t0 = theta0(a).ok().map(|p| p.theta0);
            Ok(vec![
                a.radians().into(),
                Cell::Int(a.localizes() as i64),
                return_prob_limit(a).into(),
                tal_total_mass(a).into(),
                time_averaged_limit_closed(a, 0).into(),
                t0.into(),
                profile.get(0).into(),
            ])
        })
        .collect::<anyhow::Result<_>>()?;
    let mut table = Table::new(vec![
        "xi",
        "localized",
        "return_prob_limit",
        "mu_bar_total",
        "mu_bar_0",
        "theta0",
        "cesaro_N_0",
    ]);
    base_metadata(&mut table, "sweep", cfg);
    table.meta("xi", Value::Null);
    table.meta("grid", json!({"from": from, "to": to, "count": count}));
    table.rows = rows;
    Ok(table)
}

pub fn check_window(cfg: &RunConfig) -> anyhow::Result<()> {
    if let Some(w) = cfg.window {
        if w < cfg.steps {
            return Err(config_error(anyhow::anyhow!(
                "--window {w} is smaller than --steps {}; the walk would leave the window",
                cfg.steps
            )));
        }
    }
    Ok(())
}
