//! Scalar kernels for a single-target Grover search on `n` qubits.
//!
//! The marked element is fixed to `|0…0⟩`; every quantity here depends on the
//! problem only through `n` and the Grover angle `θ = arcsin(2^{-n/2})`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported register, so that `2^n` fits in a `u64`.
pub const DEFAULT_MAX_QUBITS: u32 = 63;

/// Absolute tolerance of the `tan(2r) = 4r` root.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// A validated problem instance: `n` qubits, `N = 2^n` register states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroverParams {
    n: u32,
    big_n: u64,
    theta: f64,
}

impl GroverParams {
    pub fn new(n: u32) -> Result<Self> {
        Self::with_max(n, DEFAULT_MAX_QUBITS)
    }

    /// Like [`GroverParams::new`] with a caller-chosen cap (never above 63).
    pub fn with_max(n: u32, max: u32) -> Result<Self> {
        let max = max.min(DEFAULT_MAX_QUBITS);
        let theta = grover_angle_capped(n, max)?;
        Ok(Self {
            n,
            big_n: 1u64 << n,
            theta,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Register size `N = 2^n`.
    pub fn big_n(&self) -> u64 {
        self.big_n
    }

    /// `N` as a float; exact for every supported `n`.
    pub fn big_n_f64(&self) -> f64 {
        self.big_n as f64
    }

    /// `√N = 2^{n/2}`.
    pub fn sqrt_big_n(&self) -> f64 {
        1.0 / inv_sqrt_pow2(self.n)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Rotation angle after `k` iterations, `(2k+1)θ`.
    pub fn theta_k(&self, k: u64) -> f64 {
        (2.0 * k as f64 + 1.0) * self.theta
    }

    /// Number of iterations that maximizes the success probability,
    /// `round((π/4)√N)`.
    pub fn k_grover(&self) -> u64 {
        (FRAC_PI_4 * self.sqrt_big_n()).round() as u64
    }

    /// Large-`n` estimate of the cost-optimal step count, `round(r√N)`.
    pub fn k_cost_optimal_estimate(&self, constants: &GroverConstants) -> u64 {
        (constants.r * self.sqrt_big_n()).round() as u64
    }
}

/// The root `r` of `tan(2r) = 4r` and the cost prefactor `K = r / sin²(2r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroverConstants {
    pub r: f64,
    pub k_factor: f64,
}

/// `θ = arcsin(2^{-n/2})` for `1 <= n <= 63`.
pub fn grover_angle(n: u32) -> Result<f64> {
    grover_angle_capped(n, DEFAULT_MAX_QUBITS)
}

fn grover_angle_capped(n: u32, max: u32) -> Result<f64> {
    if n == 0 || n > max {
        return Err(Error::InvalidQubitCount { n, max });
    }
    Ok(inv_sqrt_pow2(n).asin())
}

/// `2^{-n/2}`, exact for even `n`.
fn inv_sqrt_pow2(n: u32) -> f64 {
    let half = 0.5f64.powi((n / 2) as i32);
    if n % 2 == 1 {
        half * FRAC_1_SQRT_2
    } else {
        half
    }
}

/// `p_k = sin²((2k+1)θ)`.
pub fn success_prob_pure(params: &GroverParams, k: u64) -> f64 {
    params.theta_k(k).sin().powi(2)
}

/// `p_k = ε sin²((2k+1)θ) + (1-ε)/N`.
pub fn success_prob_pseudopure(params: &GroverParams, k: u64, eps: f64) -> Result<f64> {
    check_polarization(eps)?;
    Ok(pseudopure_prob_unchecked(params, k, eps))
}

pub(crate) fn pseudopure_prob_unchecked(params: &GroverParams, k: u64, eps: f64) -> f64 {
    eps * success_prob_pure(params, k) + (1.0 - eps) / params.big_n_f64()
}

pub(crate) fn check_polarization(eps: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eps) {
        Ok(())
    } else {
        Err(Error::InvalidPolarization { eps })
    }
}

const ROOT_BRACKET: (f64, f64) = (0.4, FRAC_PI_4 - 1e-9);

/// Solves `tan(2r) = 4r` by bisection on `(0.4, π/4)`.
pub fn solve_grover_constants() -> Result<GroverConstants> {
    let g = |r: f64| (2.0 * r).tan() - 4.0 * r;
    let (mut lo, mut hi) = ROOT_BRACKET;
    let (mut g_lo, g_hi) = (g(lo), g(hi));
    if !(g_lo < 0.0 && g_hi > 0.0) {
        return Err(Error::Numeric(format!(
            "tan(2r) - 4r does not change sign on [{lo}, {hi}]"
        )));
    }
    // The bracket halves every pass; 200 passes is far beyond f64 resolution.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g_mid = g(mid);
        if g_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (g_mid < 0.0) == (g_lo < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
        if hi - lo < ROOT_TOLERANCE * 1e-3 {
            break;
        }
    }
    let r = 0.5 * (lo + hi);
    Ok(GroverConstants {
        r,
        k_factor: r / (2.0 * r).sin().powi(2),
    })
}

/// Process-wide solved constants.
pub fn grover_constants() -> GroverConstants {
    use std::sync::OnceLock;
    static CONSTANTS: OnceLock<GroverConstants> = OnceLock::new();
    *CONSTANTS.get_or_init(|| solve_grover_constants().expect("static bracket brackets the root"))
}

/// `ε_c = K / √N`: below it, measuring immediately beats iterating.
pub fn critical_polarization(params: &GroverParams) -> f64 {
    critical_polarization_with(params, grover_constants().k_factor)
}

pub(crate) fn critical_polarization_with(params: &GroverParams, k_factor: f64) -> f64 {
    k_factor / params.sqrt_big_n()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angle_small_registers() {
        assert!((grover_angle(2).unwrap() - PI / 6.0).abs() < 1e-15);
        assert!((grover_angle(1).unwrap() - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn angle_n30_first_order() {
        // arcsin(x) = x + x³/6 + …; x = 2^-15.
        let x = 2f64.powi(-15);
        let expected = x + x.powi(3) / 6.0;
        assert!((grover_angle(30).unwrap() - expected).abs() < 1e-20);
        assert!((grover_angle(30).unwrap() - 3.0517578e-5).abs() < 1e-12);
    }

    #[test]
    fn angle_rejects_bad_sizes() {
        assert!(matches!(
            grover_angle(0),
            Err(Error::InvalidQubitCount { .. })
        ));
        assert!(matches!(
            grover_angle(64),
            Err(Error::InvalidQubitCount { .. })
        ));
        assert!(grover_angle(63).is_ok());
        assert!(GroverParams::with_max(11, 10).is_err());
    }

    #[test]
    fn angle_decreasing_and_asymptotic() {
        let mut prev = f64::INFINITY;
        for n in 1..=63 {
            let t = grover_angle(n).unwrap();
            assert!(t < prev);
            prev = t;
            if n >= 10 {
                let p = GroverParams::new(n).unwrap();
                assert!((t * p.sqrt_big_n() - 1.0).abs() < 2f64.powi(-(n as i32)).max(1e-15));
            }
        }
    }

    #[test]
    fn pure_probabilities() {
        let p2 = GroverParams::new(2).unwrap();
        assert!((success_prob_pure(&p2, 0) - 0.25).abs() < 1e-15);
        assert!((success_prob_pure(&p2, 1) - 1.0).abs() < 1e-15);
        let p4 = GroverParams::new(4).unwrap();
        assert!((success_prob_pure(&p4, 0) - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn pseudopure_probabilities() {
        let p = GroverParams::new(2).unwrap();
        assert!((success_prob_pseudopure(&p, 1, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((success_prob_pseudopure(&p, 0, 0.0).unwrap() - 0.25).abs() < 1e-15);
        assert!((success_prob_pseudopure(&p, 1, 0.5).unwrap() - 0.625).abs() < 1e-15);
        assert!(success_prob_pseudopure(&p, 1, 1.5).is_err());
        assert!(success_prob_pseudopure(&p, 1, -0.1).is_err());
    }

    #[test]
    fn constants_root_and_k() {
        let c = solve_grover_constants().unwrap();
        assert!(((2.0 * c.r).tan() - 4.0 * c.r).abs() < 1e-12);
        assert!((c.r - 0.5826).abs() < 5e-4);
        assert!((c.k_factor - 0.69).abs() < 0.005);
        assert!((2.0 * c.r).tan() > 0.0 && 2.0 * c.r < PI / 2.0);
        assert!((c.r / (2.0 * c.r).sin().powi(2) - c.k_factor).abs() < 1e-12);
    }

    #[test]
    fn critical_polarization_values() {
        let k = grover_constants().k_factor;
        let e10 = critical_polarization(&GroverParams::new(10).unwrap());
        assert!((e10 - k / 32.0).abs() < 1e-15);
        assert!((e10 - 0.0216).abs() < 1e-4);
        let e30 = critical_polarization(&GroverParams::new(30).unwrap());
        assert!((e30 - 2.11e-5).abs() < 5e-8);
        for n in 1..=60 {
            let a = critical_polarization(&GroverParams::new(n).unwrap());
            let b = critical_polarization(&GroverParams::new(n + 2).unwrap());
            assert!((b - a / 2.0).abs() <= 1e-15 * a);
        }
    }

    #[test]
    fn grover_step_counts() {
        let c = grover_constants();
        let p = GroverParams::new(2).unwrap();
        assert_eq!(p.k_grover(), 2);
        assert_eq!(p.k_cost_optimal_estimate(&c), 1);
        assert_eq!(GroverParams::new(30).unwrap().k_grover(), 25736);
    }
}
