//! Query-cost accounting.
//!
//! A run of `k` oracle iterations followed by one oracle measurement costs
//! `k + 1` queries and succeeds with probability `p_k`, so the expected cost
//! of repeating it until success is `C(k) = (k+1)/p_k`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, SQRT_2};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::PolarizationSchedule;
use crate::error::{Error, Result};
use crate::grover::{
    critical_polarization_with, grover_constants, pseudopure_prob_unchecked, GroverParams,
};
use crate::statspeed::{ts_pure_analytic, ts_pure_max};

/// Sweeps above this size must be requested explicitly by front ends.
pub const LARGE_SWEEP_QUBITS: u32 = 40;

/// Slack on the speed-up bound comparison.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub n: u32,
    pub cost_curve: Vec<(u64, f64)>,
    pub k_opt: u64,
    pub c_qu: f64,
    pub c_cl: f64,
    pub speedup: f64,
    pub ts_max_observed: f64,
    pub bound: f64,
    pub bound_satisfied: bool,
}

fn cost_at(params: &GroverParams, schedule: &PolarizationSchedule, k: u64, k_ref: u64) -> f64 {
    let eps = schedule.eval_unchecked(k, k_ref);
    let p = pseudopure_prob_unchecked(params, k, eps);
    if p > 0.0 {
        (k + 1) as f64 / p
    } else {
        f64::INFINITY
    }
}

/// `(k, (k+1)/p_k)` for `k = 0..=k_max`; an unreachable target (`p_k = 0`)
/// is reported as an infinite cost.
pub fn cost_curve(
    params: &GroverParams,
    schedule: &PolarizationSchedule,
    k_max: u64,
) -> Result<Vec<(u64, f64)>> {
    schedule.validate()?;
    let k_ref = params.k_grover();
    Ok((0..=k_max)
        .into_par_iter()
        .map(|k| (k, cost_at(params, schedule, k, k_ref)))
        .collect())
}

/// Last step examined by [`optimal_cost`], `ceil(2 (π/4) √N)`.
pub fn k_search_max(params: &GroverParams) -> u64 {
    (FRAC_PI_2 * params.sqrt_big_n()).ceil() as u64
}

/// Smallest-`k` minimum of a cost curve.
fn argmin(curve: &[(u64, f64)]) -> (u64, f64) {
    curve.iter().copied().fold(
        (0, f64::INFINITY),
        |best, c| if c.1 < best.1 { c } else { best },
    )
}

/// Exact discrete minimum of `(k+1)/p_k` over `0..=k_search_max`.
pub fn optimal_cost(params: &GroverParams, schedule: &PolarizationSchedule) -> Result<(u64, f64)> {
    let curve = cost_curve(params, schedule, k_search_max(params))?;
    Ok(argmin(&curve))
}

/// Classical baseline: `2^n` for memoryless guessing, `2^n / 2` when
/// already-opened boxes are remembered (the `O(1)` correction is dropped).
pub fn classical_cost(params: &GroverParams, with_memory: bool) -> f64 {
    let n = params.big_n_f64();
    if with_memory {
        n / 2.0
    } else {
        n
    }
}

/// `(√N / 2K) · TS_max / TS_max^pure`.
pub fn speedup_bound(params: &GroverParams, ts_max_observed: f64) -> f64 {
    speedup_bound_with(params, ts_max_observed, grover_constants().k_factor)
}

pub(crate) fn speedup_bound_with(params: &GroverParams, ts_max: f64, k_factor: f64) -> f64 {
    params.sqrt_big_n() / (2.0 * k_factor) * ts_max / ts_pure_max(params)
}

/// Full cost and speed-up accounting against the memory-assisted classical
/// search.
pub fn speedup_report(
    params: &GroverParams,
    schedule: &PolarizationSchedule,
) -> Result<CostReport> {
    speedup_report_up_to(params, schedule, k_search_max(params))
}

/// [`speedup_report`] with the step search limited to `0..=k_max`.
pub fn speedup_report_up_to(
    params: &GroverParams,
    schedule: &PolarizationSchedule,
    k_max: u64,
) -> Result<CostReport> {
    let cost_curve = cost_curve(params, schedule, k_max)?;
    let (k_opt, c_qu) = argmin(&cost_curve);
    let c_cl = classical_cost(params, true);
    let speedup = c_cl / c_qu;
    let k_ref = params.k_grover();
    let ts_max_observed = (0..=k_opt)
        .into_par_iter()
        .map(|k| schedule.eval_unchecked(k, k_ref) * ts_pure_analytic(params, k))
        .reduce(|| 0.0, f64::max);
    let bound = speedup_bound(params, ts_max_observed);
    Ok(CostReport {
        n: params.n(),
        cost_curve,
        k_opt,
        c_qu,
        c_cl,
        speedup,
        ts_max_observed,
        bound,
        bound_satisfied: speedup <= bound + BOUND_SLACK,
    })
}

/// Large-`n` optimal cost of a pseudo-pure run, `K√N / ε`, valid only above
/// the critical polarization.
pub fn pseudo_pure_cost_formula(params: &GroverParams, eps: f64) -> Result<f64> {
    let k = grover_constants().k_factor;
    let eps_c = critical_polarization_with(params, k);
    if !(eps > eps_c && eps <= 1.0) {
        if eps > 1.0 || eps.is_nan() {
            return Err(Error::InvalidPolarization { eps });
        }
        return Err(Error::BelowCriticalPolarization { eps, eps_c });
    }
    Ok(k * params.sqrt_big_n() / eps)
}

/// `a(k) − b` for an interruption at step `k <= k_Gr/2`, with `x = k/√N`.
pub fn early_interruption_margin(params: &GroverParams, k: u64) -> Result<f64> {
    let hi = (params.k_grover() as f64 / 2.0).round() as u64;
    if k == 0 || k > hi {
        return Err(Error::StepOutOfRange { k, lo: 1, hi });
    }
    Ok(margin_unchecked(params, k as f64 / params.sqrt_big_n()))
}

/// `a − b` as a function of the continuous `x ∈ (0, π/8]`:
/// `n√N / (√8 sin²2x) · (K(cos 4x − 1) + 2x sin 4x)`.
pub fn interruption_margin_at(params: &GroverParams, x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= FRAC_PI_8 * (1.0 + 1e-12)) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
            lo: 0.0,
            hi: FRAC_PI_8,
        });
    }
    Ok(margin_unchecked(params, x))
}

// round(k_Gr/2)/√N can exceed π/8 by up to 1/√N, so the step-indexed entry
// point skips the domain check.
fn margin_unchecked(params: &GroverParams, x: f64) -> f64 {
    let k = grover_constants().k_factor;
    let prefactor = params.n() as f64 * params.sqrt_big_n() / (2.0 * SQRT_2);
    let (s4, c4) = (4.0 * x).sin_cos();
    // cos 4x − 1 = −2 sin² 2x keeps precision for small x.
    let cos_m1 = -2.0 * (2.0 * x).sin().powi(2);
    debug_assert!((cos_m1 - (c4 - 1.0)).abs() < 1e-12);
    prefactor * (k * cos_m1 + 2.0 * x * s4) / (2.0 * x).sin().powi(2)
}
