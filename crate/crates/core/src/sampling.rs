//! Random monotone polarization schedules for property suites.

use rand::Rng;

use crate::cost::k_search_max;
use crate::dynamics::PolarizationSchedule;
use crate::grover::{critical_polarization, GroverParams};

/// Lowest polarization drawn, in units of the critical polarization.
///
/// Near and below `ε_c` the maximally mixed floor `(1−ε)/N` dominates the
/// success probability and the trace-speed bound no longer applies.
pub const FLOOR_OVER_CRITICAL: f64 = 4.0;

/// Draws a valid non-increasing schedule: constant, linear, exponential or a
/// 2 to 6 point table, with reference steps within the cost search range
/// and `ε(k)` in `[4 ε_c, 1]` for every step up to it.
pub fn sample_monotone_schedule<R: Rng + ?Sized>(
    rng: &mut R,
    params: &GroverParams,
) -> PolarizationSchedule {
    let floor = (FLOOR_OVER_CRITICAL * critical_polarization(params)).min(1.0);
    let eps_initial = floor + (1.0 - floor) * rng.gen::<f64>();
    let eps_final = floor + (eps_initial - floor) * rng.gen::<f64>();
    let k_max = k_search_max(params);
    let kind = rng.gen_range(0..4u8);
    let k_ref = rng.gen_range(1..=k_max);
    let schedule = match kind {
        0 => PolarizationSchedule::constant(eps_initial),
        1 => PolarizationSchedule::linear(eps_initial, eps_final, Some(k_ref)),
        2 => {
            // Exponential decay continues past k_ref; keep ε(k_max) above the floor.
            let k_ref_f = k_ref as f64;
            let lowest = eps_initial * (floor / eps_initial).powf(k_ref_f / k_max as f64);
            let eps_final = lowest + (eps_initial - lowest) * rng.gen::<f64>();
            PolarizationSchedule::exponential(eps_initial, eps_final, Some(k_ref))
        }
        _ => {
            let len = rng.gen_range(2..=6usize);
            let mut ks: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=k_max)).collect();
            ks.sort_unstable();
            ks.dedup();
            let mut values: Vec<f64> = (0..ks.len())
                .map(|_| floor + (1.0 - floor) * rng.gen::<f64>())
                .collect();
            values.sort_unstable_by(|a, b| b.total_cmp(a));
            PolarizationSchedule::table(ks.into_iter().zip(values).collect())
        }
    };
    schedule.expect("sampled schedule is valid by construction")
}
