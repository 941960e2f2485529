//! Seeded cross-check suite: closed forms against the dense oracle, plus the
//! randomized speed-up bound properties.
//!
//! Every check reports its worst case against its tolerance; a positive
//! margin means the check passed. Each check draws from its own ChaCha8
//! stream, so results do not depend on which other checks ran.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cost::{speedup_report, BOUND_SLACK};
use crate::dynamics::PolarizationSchedule;
use crate::error::Result;
use crate::grover::{grover_constants, success_prob_pure, GroverParams};
use crate::oracle::{
    gamma_numeric, kolmogorov_speed, optimize_kolmogorov_basis, random_density,
    simulate_grover_statevector, ts_direct, ts_optimized_numeric, MeasurementBasis,
    OptimizerSettings, SpinDirection, DENSITY_MAX_QUBITS, STATE_MAX_QUBITS,
};
use crate::sampling::sample_monotone_schedule;
use crate::statspeed::{gamma_analytic, ts_pure_analytic};

pub const PROBABILITY_TOL: f64 = 1e-12;
pub const NUMERIC_TS_TOL: f64 = 1e-6;
pub const LINEARITY_TOL: f64 = 1e-10;
pub const KOLMOGOROV_SLACK: f64 = 1e-4;
pub const KOLMOGOROV_SATURATION: f64 = 0.95;
pub const KOLMOGOROV_DT: f64 = 1e-4;
/// Relative tolerance of the large-`n` speed-up formula `√N ε / (2K)`.
pub const SPEEDUP_FORMULA_TOL: f64 = 5e-3;
/// Register sizes used for the speed-up formula check.
pub const SPEEDUP_FORMULA_QUBITS: [u32; 2] = [20, 24];
pub const BOUND_QUBITS: std::ops::RangeInclusive<u32> = 12..=24;

/// `10 n² / √N`: allowed gap between the closed-form Γ and the exact one.
pub fn truncation_tolerance(params: &GroverParams) -> f64 {
    10.0 * (params.n() as f64).powi(2) / params.sqrt_big_n()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub seed: u64,
    /// Fibonacci seeds for the direction search.
    pub direction_grid: usize,
    pub linearity_samples: usize,
    pub kolmogorov_samples: usize,
    /// Grid points per angle of the measurement-basis search.
    pub kolmogorov_points: usize,
    pub bound_schedules: usize,
    /// Perturbs `K` by 1% in the speed-up formula check (negative control).
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n_min: 2,
            n_max: 8,
            seed: 0,
            direction_grid: 2000,
            linearity_samples: 50,
            kolmogorov_samples: 30,
            kolmogorov_points: 5,
            bound_schedules: 200,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
    pub tolerance: f64,
    /// Distance from failure; negative when the check fails.
    pub margin: f64,
    pub cases: usize,
    /// Where the worst case occurred.
    pub detail: String,
}

impl CheckOutcome {
    /// A `worst <= tolerance` check.
    fn at_most(name: &str, worst: f64, tolerance: f64, cases: usize, detail: String) -> Self {
        Self {
            name: name.into(),
            passed: worst <= tolerance,
            worst,
            tolerance,
            margin: tolerance - worst,
            cases,
            detail,
        }
    }

    /// A `worst >= tolerance` check.
    fn at_least(name: &str, worst: f64, tolerance: f64, cases: usize, detail: String) -> Self {
        Self {
            name: name.into(),
            passed: worst >= tolerance,
            worst,
            tolerance,
            margin: worst - tolerance,
            cases,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Tracks the case with the largest score.
struct Worst {
    score: f64,
    value: f64,
    detail: String,
    cases: usize,
}

impl Worst {
    fn new() -> Self {
        Self {
            score: f64::NEG_INFINITY,
            value: f64::NAN,
            detail: String::new(),
            cases: 0,
        }
    }

    fn record(&mut self, score: f64, value: f64, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if score > self.score || score.is_nan() {
            self.score = score;
            self.value = value;
            self.detail = detail();
        }
    }
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn random_direction<R: Rng + ?Sized>(rng: &mut R) -> SpinDirection {
    let z = 2.0 * rng.gen::<f64>() - 1.0;
    SpinDirection::from_angles(z.acos(), TAU * rng.gen::<f64>())
}

fn qubit_range(config: &VerifyConfig, cap: u32) -> std::ops::RangeInclusive<u32> {
    config.n_min.max(1)..=config.n_max.min(cap)
}

/// Runs every check. Errors only on invalid configuration; numerical
/// disagreements are reported as failed checks.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut checks = vec![check_probabilities(config)?];
    checks.extend(check_gamma_and_speed(config)?);
    checks.push(check_linearity(config)?);
    checks.extend(check_kolmogorov(config)?);
    checks.push(check_bound_suite(config)?);
    checks.push(check_speedup_formula(config)?);
    for c in &checks {
        log::info!(
            "{}: passed={} margin={:e} ({})",
            c.name,
            c.passed,
            c.margin,
            c.detail
        );
    }
    Ok(VerifyReport {
        config: config.clone(),
        checks,
    })
}

/// Dense Grover iterations reproduce `sin²((2k+1)θ)` for `k <= 2 k_Gr`.
pub fn check_probabilities(config: &VerifyConfig) -> Result<CheckOutcome> {
    let mut worst = Worst::new();
    for n in qubit_range(config, STATE_MAX_QUBITS) {
        let params = GroverParams::new(n)?;
        for k in 0..=2 * params.k_grover() {
            let state = simulate_grover_statevector(n, k, 0)?;
            let amps = state.statevector().expect("statevector");
            let err = (amps[0].norm_sqr() - success_prob_pure(&params, k)).abs();
            let norm_err = (amps.norm() - 1.0).abs();
            let e = err.max(norm_err);
            worst.record(e, e, || format!("n={n} k={k}"));
        }
    }
    Ok(CheckOutcome::at_most(
        "probabilities",
        worst.value,
        PROBABILITY_TOL,
        worst.cases,
        worst.detail,
    ))
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = points.iter().fold((0.0, 0.0), |(a, b), p| {
        (a + (p.0 - mx) * (p.1 - my), b + (p.0 - mx).powi(2))
    });
    num / den
}

/// Γ and trace speed on Grover states:
///
/// * `gamma`: closed-form vs exact Γ entrywise, scaled by `10 n²/√N`,
/// * `ts_numeric`: direction-optimized dense trace speed vs `√λ_max(Γ)`,
/// * `ts_analytic`: closed-form trace speed vs the dense optimum, scaled,
/// * `ts_trend`: slope of log mean relative closed-form error against `n`.
pub fn check_gamma_and_speed(config: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let settings = OptimizerSettings::with_grid(config.direction_grid);
    let mut gamma = Worst::new();
    let mut numeric = Worst::new();
    let mut analytic = Worst::new();
    let mut trend = Vec::new();
    for n in qubit_range(config, DENSITY_MAX_QUBITS) {
        let params = GroverParams::new(n)?;
        let tol = truncation_tolerance(&params);
        let mut rel_sum = 0.0;
        let steps = 2 * params.k_grover() + 1;
        for k in 0..steps {
            let state = simulate_grover_statevector(n, k, 0)?;
            let exact = gamma_numeric(&state)?;
            let closed = gamma_analytic(&params, k);
            let diff = (exact.entries() - closed.entries()).abs().max();
            gamma.record(diff / tol, diff, || format!("n={n} k={k} tol={tol:e}"));

            let (ts_num, _) = ts_optimized_numeric(&state, &settings)?;
            let ts_gamma = exact.optimized_trace_speed();
            let e = (ts_num - ts_gamma).abs();
            numeric.record(e, e, || format!("n={n} k={k}"));

            let ts_closed = ts_pure_analytic(&params, k);
            let a = (ts_closed - ts_num).abs();
            analytic.record(a / tol, a, || format!("n={n} k={k} tol={tol:e}"));
            rel_sum += a / ts_num;
        }
        trend.push((n as f64, (rel_sum / steps as f64).ln()));
    }
    let trend_outcome = if trend.len() >= 3 {
        let slope = least_squares_slope(&trend);
        CheckOutcome::at_most(
            "ts_trend",
            slope,
            0.0,
            trend.len(),
            format!("slope of ln(mean relative error) per qubit = {slope:.4}"),
        )
    } else {
        CheckOutcome::at_most(
            "ts_trend",
            f64::NEG_INFINITY,
            0.0,
            0,
            "fewer than 3 sizes".into(),
        )
    };
    Ok(vec![
        CheckOutcome::at_most(
            "gamma",
            gamma.score,
            1.0,
            gamma.cases,
            format!("{} |dGamma|={:e}", gamma.detail, gamma.value),
        ),
        CheckOutcome::at_most(
            "ts_numeric",
            numeric.value,
            NUMERIC_TS_TOL,
            numeric.cases,
            numeric.detail,
        ),
        CheckOutcome::at_most(
            "ts_analytic",
            analytic.score,
            1.0,
            analytic.cases,
            format!("{} |dTS|={:e}", analytic.detail, analytic.value),
        ),
        trend_outcome,
    ])
}

/// Trace speed of `ε ρ + (1−ε) I/N` is exactly `ε` times that of `ρ`.
pub fn check_linearity(config: &VerifyConfig) -> Result<CheckOutcome> {
    let mut rng = stream(config.seed, 1);
    let mut worst = Worst::new();
    let range = qubit_range(config, DENSITY_MAX_QUBITS);
    if range.is_empty() {
        return Ok(CheckOutcome::at_most(
            "linearity",
            0.0,
            LINEARITY_TOL,
            0,
            "no sizes".into(),
        ));
    }
    for _ in 0..config.linearity_samples {
        let n = rng.gen_range(range.clone());
        let params = GroverParams::new(n)?;
        let k = rng.gen_range(0..=2 * params.k_grover());
        let eps = rng.gen::<f64>();
        let dir = random_direction(&mut rng);
        let pure = simulate_grover_statevector(n, k, 0)?;
        let mixed = pure.pseudo_pure(eps)?;
        let e = (ts_direct(&mixed, &dir)? - eps * ts_direct(&pure, &dir)?).abs();
        worst.record(e, e, || format!("n={n} k={k} eps={eps:.4}"));
    }
    Ok(CheckOutcome::at_most(
        "linearity",
        worst.value.max(0.0),
        LINEARITY_TOL,
        worst.cases,
        worst.detail,
    ))
}

/// Kolmogorov speed never exceeds the trace speed on random mixed states
/// and bases, and the basis search nearly saturates it on `n = 4` Grover
/// states (when 4 is within the configured sizes).
pub fn check_kolmogorov(config: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let mut rng = stream(config.seed, 2);
    let mut worst = Worst::new();
    let range = qubit_range(config, 6);
    if !range.is_empty() {
        for _ in 0..config.kolmogorov_samples {
            let n = rng.gen_range(range.clone());
            let rank = rng.gen_range(1..=1usize << n);
            let state = random_density(&mut rng, n, rank)?;
            let dir = random_direction(&mut rng);
            let basis = MeasurementBasis::Twisted {
                alpha1: TAU * rng.gen::<f64>(),
                beta1: PI * rng.gen::<f64>(),
                chi: PI * rng.gen::<f64>(),
                alpha2: TAU * rng.gen::<f64>(),
                beta2: PI * rng.gen::<f64>(),
            };
            let excess =
                kolmogorov_speed(&state, &dir, &basis, KOLMOGOROV_DT)? - ts_direct(&state, &dir)?;
            worst.record(excess, excess, || format!("n={n} rank={rank}"));
        }
    }
    let bound = CheckOutcome::at_most(
        "kolmogorov_bound",
        if worst.cases == 0 {
            f64::NEG_INFINITY
        } else {
            worst.value
        },
        KOLMOGOROV_SLACK,
        worst.cases,
        worst.detail,
    );

    let mut ratio = Worst::new();
    if qubit_range(config, DENSITY_MAX_QUBITS).contains(&4) {
        let params = GroverParams::new(4)?;
        let settings = OptimizerSettings::with_grid(config.direction_grid);
        for k in 0..=2 * params.k_grover() {
            let state = simulate_grover_statevector(4, k, 0)?;
            let (ts, dir) = ts_optimized_numeric(&state, &settings)?;
            let (kol, _) =
                optimize_kolmogorov_basis(&state, &dir, config.kolmogorov_points, KOLMOGOROV_DT)?;
            let r = kol / ts;
            ratio.record(-r, r, || format!("n=4 k={k}"));
        }
    }
    let saturation = if ratio.cases == 0 {
        CheckOutcome::at_least(
            "kolmogorov_saturation",
            f64::INFINITY,
            KOLMOGOROV_SATURATION,
            0,
            "n=4 not requested".into(),
        )
    } else {
        CheckOutcome::at_least(
            "kolmogorov_saturation",
            ratio.value,
            KOLMOGOROV_SATURATION,
            ratio.cases,
            ratio.detail,
        )
    };
    Ok(vec![bound, saturation])
}

/// Random monotone schedules never beat the trace-speed bound on the
/// speed-up.
pub fn check_bound_suite(config: &VerifyConfig) -> Result<CheckOutcome> {
    let mut rng = stream(config.seed, 3);
    let mut worst = Worst::new();
    for _ in 0..config.bound_schedules {
        let n = rng.gen_range(BOUND_QUBITS);
        let params = GroverParams::new(n)?;
        let schedule = sample_monotone_schedule(&mut rng, &params);
        let report = speedup_report(&params, &schedule)?;
        let excess = report.speedup - report.bound;
        worst.record(excess, excess, || format!("n={n} {schedule:?}"));
    }
    Ok(CheckOutcome::at_most(
        "bound_suite",
        worst.value,
        BOUND_SLACK,
        worst.cases,
        worst.detail,
    ))
}

/// For constant polarization well above critical, the discrete optimum
/// matches `√N ε / (2K)`.
pub fn check_speedup_formula(config: &VerifyConfig) -> Result<CheckOutcome> {
    let mut k_factor = grover_constants().k_factor;
    if config.inject_fault {
        k_factor *= 1.01;
    }
    let mut worst = Worst::new();
    for n in SPEEDUP_FORMULA_QUBITS {
        let params = GroverParams::new(n)?;
        for eps in [1.0, 0.5, 0.2] {
            let report = speedup_report(&params, &PolarizationSchedule::constant(eps)?)?;
            let predicted = params.sqrt_big_n() * eps / (2.0 * k_factor);
            let e = (report.speedup / predicted - 1.0).abs();
            worst.record(e, e, || {
                format!("n={n} eps={eps} S={} predicted={predicted}", report.speedup)
            });
        }
    }
    Ok(CheckOutcome::at_most(
        "speedup_formula",
        worst.value,
        SPEEDUP_FORMULA_TOL,
        worst.cases,
        worst.detail,
    ))
}
