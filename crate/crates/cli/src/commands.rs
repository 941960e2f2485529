use anyhow::{bail, ensure, Context, Result};
use groverts::cost::LARGE_SWEEP_QUBITS;
use groverts::{
    critical_polarization, grover_constants, k_search_max, sample_monotone_schedule,
    speedup_report_up_to, ts_pure_analytic, verify, GroverParams, PolarizationSchedule,
    VerifyConfig, VerifyReport,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::output::{Cell, Table};

pub const MAX_FIGURE_ROWS: usize = 2000;
pub const DEFAULT_N: u32 = 30;
pub const DEFAULT_EPS_F: f64 = 0.3;
pub const DEFAULT_SWEEP_POINTS: usize = 16;

/// Steps `0..=end` thinned to a uniform stride so that at most
/// [`MAX_FIGURE_ROWS`] remain, always keeping `0`, `round(k_Gr/2)` and `k_Gr`
/// when they are in range.
pub fn figure_steps(end: u64, k_grover: u64) -> Vec<u64> {
    if end < MAX_FIGURE_ROWS as u64 {
        return (0..=end).collect();
    }
    // Leaves room for the two landmarks off the stride.
    let stride = end.div_ceil(MAX_FIGURE_ROWS as u64 - 4);
    let mut steps: Vec<u64> = (0..=end).step_by(stride as usize).collect();
    let half = (k_grover as f64 / 2.0).round() as u64;
    steps.extend([half, k_grover].into_iter().filter(|&k| k <= end));
    steps.sort_unstable();
    steps.dedup();
    steps
}

fn params(config: &RunConfig, default_n: Option<u32>) -> Result<GroverParams> {
    let n = config.n.or(default_n).context("--n is required")?;
    Ok(GroverParams::new(n)?)
}

fn ratio(k: u64, k_grover: u64) -> f64 {
    k as f64 / k_grover.max(1) as f64
}

pub fn constants(config: &RunConfig) -> Result<Table> {
    let p = params(config, Some(DEFAULT_N))?;
    let c = grover_constants();
    let mut t = Table::new(&[
        "n",
        "r",
        "k_factor",
        "theta",
        "k_grover",
        "k_grover_cost",
        "eps_c",
        "ts_pure_max",
    ]);
    t.push(vec![
        Cell::Int(p.n() as u64),
        Cell::Float(c.r),
        Cell::Float(c.k_factor),
        Cell::Float(p.theta()),
        Cell::Int(p.k_grover()),
        Cell::Int(p.k_cost_optimal_estimate(&c)),
        Cell::Float(critical_polarization(&p)),
        Cell::Float(groverts::ts_pure_max(&p)),
    ]);
    Ok(t)
}

pub fn fig1(config: &RunConfig) -> Result<Table> {
    let p = params(config, Some(DEFAULT_N))?;
    ensure!(p.n() >= 2, "fig1 needs n >= 2");
    let kg = p.k_grover();
    let nf = p.n() as f64;
    let thresholds = [nf.sqrt(), (2.0 * nf).sqrt(), (nf * nf / 2.0).sqrt()];
    let mut t = Table::new(&[
        "k",
        "k_over_kgr",
        "ts_pure",
        "thr_bipartite",
        "thr_tripartite",
        "thr_half",
    ]);
    for k in figure_steps(config.k_max.unwrap_or(kg), kg) {
        let mut row = vec![
            Cell::Int(k),
            Cell::Float(ratio(k, kg)),
            Cell::Float(ts_pure_analytic(&p, k)),
        ];
        row.extend(thresholds.iter().map(|&v| Cell::Float(v)));
        t.push(row);
    }
    Ok(t)
}

pub fn fig2(config: &RunConfig) -> Result<Table> {
    let p = params(config, Some(DEFAULT_N))?;
    ensure!(p.n() >= 2, "fig2 needs n >= 2");
    let eps_f = config.eps_f.unwrap_or(DEFAULT_EPS_F);
    ensure!(
        eps_f > 0.0 && eps_f <= 1.0,
        "--eps-f must lie in (0, 1], got {eps_f}"
    );
    let kg = p.k_grover();
    let schedules = [
        PolarizationSchedule::constant(eps_f)?,
        PolarizationSchedule::linear(1.0, eps_f, None)?,
        PolarizationSchedule::exponential(1.0, eps_f, None)?,
    ];
    let mut t = Table::new(&[
        "k",
        "k_over_kgr",
        "eps_constant",
        "eps_linear",
        "eps_exponential",
        "ts_constant",
        "ts_linear",
        "ts_exponential",
    ]);
    for k in figure_steps(config.k_max.unwrap_or(kg), kg) {
        let eps: Vec<f64> = schedules
            .iter()
            .map(|s| s.eval(k, kg))
            .collect::<groverts::Result<_>>()?;
        let ts = ts_pure_analytic(&p, k);
        let mut row = vec![Cell::Int(k), Cell::Float(ratio(k, kg))];
        row.extend(eps.iter().map(|&e| Cell::Float(e)));
        row.extend(eps.iter().map(|&e| Cell::Float(e * ts)));
        t.push(row);
    }
    Ok(t)
}

/// `count` log-spaced polarizations from `ε_c/4` to 1.
pub fn default_eps_grid(params: &GroverParams, count: usize) -> Vec<f64> {
    let lo = (critical_polarization(params) / 4.0).ln();
    let count = count.max(2);
    (0..count)
        .map(|i| (lo * (1.0 - i as f64 / (count - 1) as f64)).exp())
        .collect()
}

const SWEEP_COLUMNS: [&str; 7] = [
    "eps",
    "k_opt",
    "c_qu",
    "c_cl",
    "speedup",
    "bound",
    "bound_satisfied",
];

pub fn cost_sweep(config: &RunConfig) -> Result<Table> {
    let p = params(config, None)?;
    if p.n() > LARGE_SWEEP_QUBITS && !config.force_large.unwrap_or(false) {
        bail!(
            "n = {} exceeds {LARGE_SWEEP_QUBITS}; pass --force-large to run it anyway",
            p.n()
        );
    }
    let k_max = config.k_max.unwrap_or_else(|| k_search_max(&p));
    let schedules: Vec<PolarizationSchedule> = match (&config.schedule, &config.eps) {
        (Some(_), Some(_)) => bail!("give either a schedule or a list of eps values, not both"),
        (Some(spec), None) => vec![spec.resolve()?],
        (None, Some(eps)) => eps
            .iter()
            .map(|&e| PolarizationSchedule::constant(e))
            .collect::<groverts::Result<_>>()?,
        (None, None) => default_eps_grid(&p, DEFAULT_SWEEP_POINTS)
            .into_iter()
            .map(PolarizationSchedule::constant)
            .collect::<groverts::Result<_>>()?,
    };
    let mut t = Table::new(&SWEEP_COLUMNS);
    for s in &schedules {
        let r = speedup_report_up_to(&p, s, k_max)?;
        t.push(vec![
            Cell::Float(s.eps_initial()),
            Cell::Int(r.k_opt),
            Cell::Float(r.c_qu),
            Cell::Float(r.c_cl),
            Cell::Float(r.speedup),
            Cell::Float(r.bound),
            Cell::Bool(r.bound_satisfied),
        ]);
    }
    Ok(t)
}

/// Randomized bound suite over seeded monotone schedules. The flag is false
/// when any row violates the bound.
pub fn bound_check(config: &RunConfig) -> Result<(Table, bool)> {
    let n_min = config.n_min.unwrap_or(12);
    let n_max = config.n_max.unwrap_or(24);
    ensure!(n_min >= 1 && n_min <= n_max, "need 1 <= n_min <= n_max");
    ensure!(
        n_max <= LARGE_SWEEP_QUBITS || config.force_large.unwrap_or(false),
        "n_max = {n_max} exceeds {LARGE_SWEEP_QUBITS}; pass --force-large to run it anyway"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed());
    let mut t = Table::new(&[
        "index",
        "n",
        "eps_initial",
        "k_opt",
        "speedup",
        "bound",
        "bound_satisfied",
    ]);
    let mut all = true;
    for i in 0..config.count.unwrap_or(200) {
        let p = GroverParams::new(rng.gen_range(n_min..=n_max))?;
        let s = sample_monotone_schedule(&mut rng, &p);
        let r = groverts::speedup_report(&p, &s)?;
        all &= r.bound_satisfied;
        t.push(vec![
            Cell::Int(i as u64),
            Cell::Int(p.n() as u64),
            Cell::Float(s.eps_initial()),
            Cell::Int(r.k_opt),
            Cell::Float(r.speedup),
            Cell::Float(r.bound),
            Cell::Bool(r.bound_satisfied),
        ]);
    }
    Ok((t, all))
}

pub fn verify_report(config: &RunConfig) -> Result<VerifyReport> {
    let defaults = VerifyConfig::default();
    let v = VerifyConfig {
        n_max: config.n_max.unwrap_or(defaults.n_max),
        n_min: config.n_min.unwrap_or(defaults.n_min),
        seed: config.seed(),
        inject_fault: config.inject_fault.unwrap_or(false),
        ..defaults
    };
    ensure!(
        v.n_min >= 1 && v.n_min <= v.n_max,
        "need 1 <= n_min <= n_max"
    );
    Ok(verify::run(&v)?)
}

pub fn verify_table(report: &VerifyReport) -> Table {
    let mut t = Table::new(&[
        "check",
        "passed",
        "worst",
        "tolerance",
        "margin",
        "cases",
        "detail",
    ]);
    for c in &report.checks {
        t.push(vec![
            Cell::Text(c.name.clone()),
            Cell::Bool(c.passed),
            Cell::Float(c.worst),
            Cell::Float(c.tolerance),
            Cell::Float(c.margin),
            Cell::Int(c.cases as u64),
            Cell::Text(c.detail.clone()),
        ]);
    }
    t
}
