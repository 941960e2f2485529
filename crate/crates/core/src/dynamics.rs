//! The Grover trajectory in the `{|ω⟩, |ω⊥⟩}` plane and the polarization
//! schedules that turn it into a pseudo-pure (globally depolarized) run.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grover::{check_polarization, GroverParams};

/// Largest register for which dense `2^n × 2^n` matrices are built.
pub const DENSE_MAX_QUBITS: u32 = 12;

/// `|ψ_k⟩ = sin θ_k |ω⟩ + cos θ_k |ω⊥⟩` with `θ_k = (2k+1)θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureTrajectoryPoint {
    pub k: u64,
    pub amp_target: f64,
    pub amp_perp: f64,
    pub theta_k: f64,
}

/// Closed-form state after `k` Grover iterations.
pub fn pure_state_at(params: &GroverParams, k: u64) -> PureTrajectoryPoint {
    let theta_k = params.theta_k(k);
    let (s, c) = theta_k.sin_cos();
    PureTrajectoryPoint {
        k,
        amp_target: s,
        amp_perp: c,
        theta_k,
    }
}

/// Non-increasing polarization `ε(k)`.
///
/// The serialized form is a flat object with a `kind` tag, e.g.
/// `{"kind": "linear", "eps_initial": 1.0, "eps_final": 0.3, "k_ref": 100}`.
/// When `k_ref` is omitted it defaults to `k_Gr` of whatever problem the
/// schedule is evaluated against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PolarizationSchedule {
    Constant {
        eps_initial: f64,
    },
    /// `max(ε_f, ε_0 − (ε_0 − ε_f) k / k_ref)`.
    Linear {
        eps_initial: f64,
        eps_final: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k_ref: Option<u64>,
    },
    /// `ε_0 (ε_f / ε_0)^{k / k_ref}`, continuing to decay past `k_ref`.
    Exponential {
        eps_initial: f64,
        eps_final: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k_ref: Option<u64>,
    },
    /// Piecewise-linear through `(k, ε)` knots, clamped outside them.
    Table {
        table: Vec<(u64, f64)>,
    },
}

impl PolarizationSchedule {
    pub fn constant(eps: f64) -> Result<Self> {
        let s = Self::Constant { eps_initial: eps };
        s.validate()?;
        Ok(s)
    }

    pub fn linear(eps_initial: f64, eps_final: f64, k_ref: Option<u64>) -> Result<Self> {
        let s = Self::Linear {
            eps_initial,
            eps_final,
            k_ref,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn exponential(eps_initial: f64, eps_final: f64, k_ref: Option<u64>) -> Result<Self> {
        let s = Self::Exponential {
            eps_initial,
            eps_final,
            k_ref,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn table(table: Vec<(u64, f64)>) -> Result<Self> {
        let s = Self::Table { table };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSchedule(m.to_owned()));
        match self {
            Self::Constant { eps_initial } => check_polarization(*eps_initial),
            Self::Linear {
                eps_initial,
                eps_final,
                k_ref,
            }
            | Self::Exponential {
                eps_initial,
                eps_final,
                k_ref,
            } => {
                check_polarization(*eps_initial)?;
                check_polarization(*eps_final)?;
                if eps_final > eps_initial {
                    return bad("eps_final exceeds eps_initial");
                }
                if *k_ref == Some(0) {
                    return bad("k_ref must be positive");
                }
                if matches!(self, Self::Exponential { .. }) && *eps_final <= 0.0 {
                    return bad("exponential decay needs eps_final > 0");
                }
                Ok(())
            }
            Self::Table { table } => {
                if table.is_empty() {
                    return bad("empty table");
                }
                for &(_, e) in table {
                    check_polarization(e)?;
                }
                for w in table.windows(2) {
                    if w[1].0 <= w[0].0 {
                        return bad("table steps must be strictly increasing");
                    }
                    if w[1].1 > w[0].1 {
                        return bad("table polarization increases with k");
                    }
                }
                Ok(())
            }
        }
    }

    /// Polarization at `k = 0`.
    pub fn eps_initial(&self) -> f64 {
        match self {
            Self::Constant { eps_initial }
            | Self::Linear { eps_initial, .. }
            | Self::Exponential { eps_initial, .. } => *eps_initial,
            Self::Table { table } => table.first().map_or(f64::NAN, |&(_, e)| e),
        }
    }

    pub fn k_ref(&self) -> Option<u64> {
        match self {
            Self::Linear { k_ref, .. } | Self::Exponential { k_ref, .. } => *k_ref,
            _ => None,
        }
    }

    /// Copy with a missing `k_ref` replaced by `k_Gr` of `params`.
    pub fn resolved_for(&self, params: &GroverParams) -> Self {
        let mut out = self.clone();
        if let Self::Linear { k_ref, .. } | Self::Exponential { k_ref, .. } = &mut out {
            k_ref.get_or_insert(params.k_grover().max(1));
        }
        out
    }

    /// `ε(k)`, using `default_k_ref` when the schedule leaves `k_ref` open.
    pub fn eval(&self, k: u64, default_k_ref: u64) -> Result<f64> {
        self.validate()?;
        Ok(self.eval_unchecked(k, default_k_ref))
    }

    pub(crate) fn eval_unchecked(&self, k: u64, default_k_ref: u64) -> f64 {
        let kf = k as f64;
        match self {
            Self::Constant { eps_initial } => *eps_initial,
            Self::Linear {
                eps_initial,
                eps_final,
                k_ref,
            } => {
                let k_ref = k_ref.unwrap_or(default_k_ref).max(1) as f64;
                (eps_initial - (eps_initial - eps_final) * kf / k_ref).max(*eps_final)
            }
            Self::Exponential {
                eps_initial,
                eps_final,
                k_ref,
            } => {
                let k_ref = k_ref.unwrap_or(default_k_ref).max(1) as f64;
                eps_initial * (eps_final / eps_initial).powf(kf / k_ref)
            }
            Self::Table { table } => interpolate_table(table, kf),
        }
    }
}

fn interpolate_table(table: &[(u64, f64)], k: f64) -> f64 {
    let (k0, e0) = table[0];
    if k <= k0 as f64 {
        return e0;
    }
    for w in table.windows(2) {
        let ((ka, ea), (kb, eb)) = (w[0], w[1]);
        if k <= kb as f64 {
            let t = (k - ka as f64) / (kb - ka) as f64;
            // Convex combination; clamp so rounding cannot break monotonicity.
            return (ea + t * (eb - ea)).clamp(eb, ea);
        }
    }
    table[table.len() - 1].1
}

/// `ε(k)` for a schedule whose `k_ref` (if any) is set explicitly.
pub fn polarization_at(schedule: &PolarizationSchedule, k: u64) -> Result<f64> {
    if matches!(
        schedule,
        PolarizationSchedule::Linear { k_ref: None, .. }
            | PolarizationSchedule::Exponential { k_ref: None, .. }
    ) {
        return Err(Error::InvalidSchedule(
            "k_ref unresolved; use resolved_for or eval with a default".into(),
        ));
    }
    schedule.eval(k, 1)
}

/// State after `k` steps of a run with polarization schedule `ε(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PseudoPureSnapshot {
    pub point: PureTrajectoryPoint,
    pub eps: f64,
    pub n: u32,
}

pub fn snapshot(
    params: &GroverParams,
    schedule: &PolarizationSchedule,
    k: u64,
) -> Result<PseudoPureSnapshot> {
    let eps = schedule.eval(k, params.k_grover())?;
    Ok(PseudoPureSnapshot {
        point: pure_state_at(params, k),
        eps,
        n: params.n(),
    })
}

/// Dense amplitudes of `|ψ_k⟩` with `|ω⟩ = |0…0⟩` and `|ω⊥⟩` uniform over
/// the other `2^n − 1` basis states.
pub fn dense_amplitudes(point: &PureTrajectoryPoint, n: u32) -> Result<Vec<f64>> {
    if n == 0 || n > DENSE_MAX_QUBITS {
        return Err(Error::OracleTooLarge {
            n,
            max: DENSE_MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let rest = point.amp_perp / ((dim - 1) as f64).sqrt();
    let mut amps = vec![rest; dim];
    amps[0] = point.amp_target;
    Ok(amps)
}

/// `ρ_k = ε|ψ_k⟩⟨ψ_k| + (1−ε) I / 2^n` as a dense matrix (`n <= 12`).
pub fn dense_density_matrix(snap: &PseudoPureSnapshot) -> Result<DMatrix<Complex64>> {
    let amps = dense_amplitudes(&snap.point, snap.n)?;
    let dim = amps.len();
    let mixed = (1.0 - snap.eps) / dim as f64;
    Ok(DMatrix::from_fn(dim, dim, |i, j| {
        let v = snap.eps * amps[i] * amps[j] + if i == j { mixed } else { 0.0 };
        Complex64::new(v, 0.0)
    }))
}
