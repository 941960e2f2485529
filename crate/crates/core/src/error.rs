use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid problem size: n = {n} (allowed 1..={max})")]
    InvalidQubitCount { n: u32, max: u32 },

    #[error("polarization {eps} outside [0, 1]")]
    InvalidPolarization { eps: f64 },

    #[error("invalid polarization schedule: {0}")]
    InvalidSchedule(String),

    #[error("step {k} outside the valid range {lo}..={hi}")]
    StepOutOfRange { k: u64, lo: u64, hi: u64 },

    #[error("argument {name} = {value} outside the valid range [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("polarization {eps} is at or below the critical polarization {eps_c}; the classical search is cheaper")]
    BelowCriticalPolarization { eps: f64, eps_c: f64 },

    #[error("dense oracle operations are limited to n <= {max} qubits, got {n}")]
    OracleTooLarge { n: u32, max: u32 },

    #[error("target index {target} out of range for {n} qubits")]
    TargetOutOfRange { target: usize, n: u32 },

    #[error("invalid dense state: {0}")]
    InvalidState(String),

    #[error("numeric failure: {0}")]
    Numeric(String),
}
