//! Brute-force verification layer for small registers.
//!
//! Everything here works on explicit `2^n`-dimensional vectors and matrices
//! and carries no `O(1/2^n)` truncation, so it serves as the reference the
//! closed forms in [`crate::statspeed`] and [`crate::cost`] are checked
//! against.

mod kolmogorov;
mod norm;
mod search;
mod speed;
mod spin;
mod state;

pub use kolmogorov::{
    kolmogorov_speed, optimize_kolmogorov_basis, KolmogorovProbe, MeasurementBasis, DT_RANGE,
};
pub use norm::trace_norm;
pub use speed::{gamma_numeric, ts_direct, ts_optimized_numeric, OptimizerSettings};
pub use spin::{apply_collective, collective_hamiltonian, fibonacci_sphere, SpinDirection};
pub use state::{random_density, random_statevector, simulate_grover_statevector, DenseState};

/// Statevector routines accept at most this many qubits.
pub const STATE_MAX_QUBITS: u32 = 12;
/// Density-operator optimizations accept at most this many qubits.
pub const DENSITY_MAX_QUBITS: u32 = 10;
