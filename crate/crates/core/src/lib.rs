//! Trace-speed accounting of the speed-up of Grover search.
//!
//! The crate relates the query cost of a Grover search run on a pseudo-pure
//! (partially depolarized) register to the optimized trace speed
//! `TS = ‖[ρ, H]‖₁` of the state along the run:
//!
//! * [`grover`]: angle, success probabilities and the `tan 2r = 4r` constants,
//! * [`dynamics`]: the closed-form trajectory and polarization schedules,
//! * [`statspeed`]: the analytic optimized trace speed and entanglement witness,
//! * [`cost`]: cost curves, speed-up and the trace-speed bound on it,
//! * [`oracle`]: brute-force dense simulation used to check all of the above,
//! * [`verify`]: the seeded cross-check suite behind `groverts verify`.

pub mod cost;
pub mod dynamics;
pub mod error;
pub mod grover;
pub mod oracle;
pub mod sampling;
pub mod statspeed;
pub mod verify;

pub use cost::{
    classical_cost, cost_curve, early_interruption_margin, interruption_margin_at, k_search_max,
    optimal_cost, pseudo_pure_cost_formula, speedup_bound, speedup_report, speedup_report_up_to,
    CostReport,
};
pub use dynamics::{
    dense_density_matrix, polarization_at, pure_state_at, snapshot, PolarizationSchedule,
    PseudoPureSnapshot, PureTrajectoryPoint,
};
pub use error::{Error, Result};
pub use grover::{
    critical_polarization, grover_angle, grover_constants, solve_grover_constants,
    success_prob_pseudopure, success_prob_pure, GroverConstants, GroverParams,
};
pub use sampling::sample_monotone_schedule;
pub use statspeed::{
    entanglement_depth_witness, gamma_analytic, speed_curve, ts_pseudopure, ts_pure_analytic,
    ts_pure_max, GammaMatrix, SpeedCurve,
};
pub use verify::{CheckOutcome, VerifyConfig, VerifyReport};
