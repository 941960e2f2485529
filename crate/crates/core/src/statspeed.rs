//! Optimized trace speed of the Grover trajectory over collective spin
//! generators.
//!
//! For a pure permutation-symmetric state the trace speed optimized over
//! `H = m·J` equals `√λ_max(Γ)`, with `Γ_ij = 4(Re⟨J_iJ_j⟩ − ⟨J_i⟩⟨J_j⟩)`.
//! Along the Grover trajectory `Γ` is block diagonal (`y` decouples), so its
//! top eigenvalue has a closed form. Terms of order `1/2^n` are dropped.

use std::ops::Index;

use nalgebra::Matrix3;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::PolarizationSchedule;
use crate::error::Result;
use crate::grover::GroverParams;

/// Below `LINEARITY_FACTOR / 2^n` the `ε`-linearity of the pseudo-pure
/// trace speed is no longer trusted.
pub const LINEARITY_FACTOR: f64 = 16.0;

/// Symmetric 3×3 spin covariance matrix, indexed `x, y, z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaMatrix(pub Matrix3<f64>);

impl GammaMatrix {
    pub fn new(entries: Matrix3<f64>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.0 - self.0.transpose()).abs().max() <= tol
    }

    /// Largest eigenvalue from the characteristic polynomial.
    ///
    /// The `x–z` block is solved as a 2×2 problem when `y` decouples;
    /// otherwise the trigonometric solution of the full cubic is used.
    pub fn largest_eigenvalue(&self) -> f64 {
        let g = &self.0;
        let sym = |i: usize, j: usize| 0.5 * (g[(i, j)] + g[(j, i)]);
        let (xx, yy, zz) = (g[(0, 0)], g[(1, 1)], g[(2, 2)]);
        let (xy, xz, yz) = (sym(0, 1), sym(0, 2), sym(1, 2));
        if xy == 0.0 && yz == 0.0 {
            let mean = 0.5 * (xx + zz);
            let half_gap = 0.5 * (xx - zz);
            let block = mean + half_gap.hypot(xz);
            return block.max(yy);
        }
        let q = (xx + yy + zz) / 3.0;
        let p1 = xy * xy + xz * xz + yz * yz;
        let p2 = (xx - q).powi(2) + (yy - q).powi(2) + (zz - q).powi(2) + 2.0 * p1;
        let p = (p2 / 6.0).sqrt();
        if p == 0.0 {
            return q;
        }
        let b = (g.symmetric_part() - Matrix3::identity() * q) / p;
        let half_det = (b.determinant() / 2.0).clamp(-1.0, 1.0);
        q + 2.0 * p * (half_det.acos() / 3.0).cos()
    }

    /// `√λ_max`, clamping tiny negative rounding to zero.
    pub fn optimized_trace_speed(&self) -> f64 {
        self.largest_eigenvalue().max(0.0).sqrt()
    }
}

impl Index<(usize, usize)> for GammaMatrix {
    type Output = f64;
    fn index(&self, idx: (usize, usize)) -> &f64 {
        &self.0[idx]
    }
}

/// Closed-form `Γ` at step `k` (`O(1/2^n)` terms dropped).
pub fn gamma_analytic(params: &GroverParams, k: u64) -> GammaMatrix {
    gamma_at_angle(params.n(), params.theta_k(k))
}

/// `Γ` for `|ψ⟩ = sin φ |0…0⟩ + cos φ |ω⊥⟩` in the large-register limit.
pub fn gamma_at_angle(n: u32, theta_k: f64) -> GammaMatrix {
    let n = n as f64;
    let (s, c) = theta_k.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let xx = n + n * (n - 1.0) * c2 - n * n * c2 * c2;
    let zz = n + n * (n - 1.0) * s2 - n * n * s2 * s2;
    let xz = -n * n * s2 * c2;
    GammaMatrix(Matrix3::new(xx, 0.0, xz, 0.0, n, 0.0, xz, 0.0, zz))
}

/// Optimized trace speed of the pure state after `k` steps:
/// `√(n(4 + n − fn + √(8(1+f) + n²(1−f)²)) / 8)` with `f = cos 4θ_k`.
pub fn ts_pure_analytic(params: &GroverParams, k: u64) -> f64 {
    ts_pure_at_angle(params.n(), params.theta_k(k))
}

pub fn ts_pure_at_angle(n: u32, theta_k: f64) -> f64 {
    let n = n as f64;
    let f = (4.0 * theta_k).cos();
    let inner = (8.0 * (1.0 + f) + n * n * (1.0 - f).powi(2)).sqrt();
    (n * (4.0 + n - f * n + inner) / 8.0).max(0.0).sqrt()
}

/// Peak of the pure-state curve, `√(n(n+1)/2)`, reached at `θ_k = π/4`.
pub fn ts_pure_max(params: &GroverParams) -> f64 {
    let n = params.n() as f64;
    (n * (n + 1.0) / 2.0).sqrt()
}

/// Whether `ε` is large enough for `TS(ρ_ε) = ε TS(ψ)` to be meaningful.
pub fn linear_regime_holds(params: &GroverParams, eps: f64, factor: f64) -> bool {
    eps >= factor / params.big_n_f64()
}

/// `ε · TS_pure(k)`. Logs a warning (but still answers) when `ε` is within
/// [`LINEARITY_FACTOR`]`/2^n` of the maximally mixed state.
pub fn ts_pseudopure(params: &GroverParams, k: u64, eps: f64) -> f64 {
    ts_pseudopure_with_threshold(params, k, eps, LINEARITY_FACTOR)
}

pub fn ts_pseudopure_with_threshold(params: &GroverParams, k: u64, eps: f64, factor: f64) -> f64 {
    if !linear_regime_holds(params, eps, factor) {
        log::warn!(
            "polarization {eps:e} below {factor}/2^{}: pseudo-pure trace speed scaling is unreliable",
            params.n()
        );
    }
    eps * ts_pure_analytic(params, k)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeedCurve {
    pub n: u32,
    pub points: Vec<(u64, f64)>,
    pub ts_max: f64,
    pub k_at_max: u64,
}

impl SpeedCurve {
    /// Builds the curve from points, keeping the first (smallest-`k`) maximum.
    pub fn from_points(n: u32, points: Vec<(u64, f64)>) -> Self {
        let (k_at_max, ts_max) = points
            .iter()
            .copied()
            .fold(
                (0, f64::NEG_INFINITY),
                |best, p| if p.1 > best.1 { p } else { best },
            );
        Self {
            n,
            points,
            ts_max,
            k_at_max,
        }
    }
}

/// `ε(k) · TS_pure(k)` over `k ∈ lo..=hi`; disjoint ranges may be evaluated
/// independently and concatenated.
pub fn speed_points(
    params: &GroverParams,
    schedule: &PolarizationSchedule,
    lo: u64,
    hi: u64,
) -> Result<Vec<(u64, f64)>> {
    schedule.validate()?;
    let k_ref = params.k_grover();
    Ok((lo..=hi)
        .into_par_iter()
        .map(|k| {
            (
                k,
                schedule.eval_unchecked(k, k_ref) * ts_pure_analytic(params, k),
            )
        })
        .collect())
}

pub fn speed_curve(
    params: &GroverParams,
    schedule: &PolarizationSchedule,
    k_max: u64,
) -> Result<SpeedCurve> {
    let points = speed_points(params, schedule, 0, k_max)?;
    Ok(SpeedCurve::from_points(params.n(), points))
}

/// Entanglement depth certified by a collective-generator trace speed:
/// `r + 1` for the largest `r` with `ts² > n r`.
///
/// Values within one part in `10^12` of a threshold count as not exceeding
/// it.
pub fn entanglement_depth_witness(ts: f64, n: u32) -> u32 {
    if ts.is_nan() || ts <= 0.0 || n == 0 {
        return 1;
    }
    let ratio = ts * ts / n as f64;
    let r = (ratio * (1.0 - 1e-12)).ceil() - 1.0;
    (r.max(0.0) as u32 + 1).min(n)
}
