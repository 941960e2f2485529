//! Kolmogorov speed: the rate at which the outcome distribution of a fixed
//! projective measurement moves under `e^{-iHt}`. It never exceeds the
//! trace speed, and reaches it for the best measurement.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::search::coordinate_ascent;
use super::spin::{collective_hamiltonian, SpinDirection};
use super::state::DenseState;
use super::DENSITY_MAX_QUBITS;

/// Accepted finite-difference steps.
pub const DT_RANGE: (f64, f64) = (1e-6, 1e-3);

const REFINE_STARTS: usize = 8;

/// Measurement basis, given as the unitary whose columns are the basis
/// vectors.
///
/// `Rotated` applies the same single-qubit rotation `R_z(α) R_y(β)` to every
/// qubit. `Twisted` sandwiches a one-axis twist `e^{-iχ J_z²}` between two
/// such collective rotations, which reaches entangled bases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MeasurementBasis {
    Computational,
    Rotated {
        alpha: f64,
        beta: f64,
    },
    Twisted {
        alpha1: f64,
        beta1: f64,
        chi: f64,
        alpha2: f64,
        beta2: f64,
    },
}

fn single_qubit_rotation(alpha: f64, beta: f64) -> DMatrix<Complex64> {
    let (s, c) = (0.5 * beta).sin_cos();
    let phase = Complex64::from_polar(1.0, -0.5 * alpha);
    // R_z(α) R_y(β)
    DMatrix::from_row_slice(
        2,
        2,
        &[phase * c, -phase * s, phase.conj() * s, phase.conj() * c],
    )
}

fn collective_rotation(n: u32, alpha: f64, beta: f64) -> DMatrix<Complex64> {
    let u = single_qubit_rotation(alpha, beta);
    (1..n).fold(u.clone(), |acc, _| acc.kronecker(&u))
}

impl MeasurementBasis {
    fn from_params(p: &[f64]) -> Self {
        Self::Twisted {
            alpha1: p[0],
            beta1: p[1],
            chi: p[2],
            alpha2: p[3],
            beta2: p[4],
        }
    }

    pub fn unitary(&self, n: u32) -> DMatrix<Complex64> {
        let dim = 1usize << n;
        match *self {
            Self::Computational => DMatrix::identity(dim, dim),
            Self::Rotated { alpha, beta } => collective_rotation(n, alpha, beta),
            Self::Twisted {
                alpha1,
                beta1,
                chi,
                alpha2,
                beta2,
            } => {
                let twist = DVector::from_fn(dim, |r, _| {
                    let m = 0.5 * (n as f64 - 2.0 * r.count_ones() as f64);
                    Complex64::from_polar(1.0, -chi * m * m)
                });
                let mut inner = collective_rotation(n, alpha1, beta1);
                for (r, mut row) in inner.row_iter_mut().enumerate() {
                    row *= twist[r];
                }
                collective_rotation(n, alpha2, beta2) * inner
            }
        }
    }
}

/// `ρ` and `H` pre-diagonalized so that many bases can be probed cheaply.
pub struct KolmogorovProbe {
    n: u32,
    energies: DVector<f64>,
    eigvecs: DMatrix<Complex64>,
    rho_eig: DMatrix<Complex64>,
}

impl KolmogorovProbe {
    pub fn new(state: &DenseState, dir: &SpinDirection) -> Result<Self> {
        let n = state.n();
        if n > DENSITY_MAX_QUBITS {
            return Err(Error::OracleTooLarge {
                n,
                max: DENSITY_MAX_QUBITS,
            });
        }
        let eig = collective_hamiltonian(n, dir)?.symmetric_eigen();
        let rho = state.density();
        let rho_eig = eig.eigenvectors.adjoint() * rho * &eig.eigenvectors;
        Ok(Self {
            n,
            energies: eig.eigenvalues,
            eigvecs: eig.eigenvectors,
            rho_eig,
        })
    }

    fn probabilities(&self, w: &DMatrix<Complex64>, t: f64) -> Vec<f64> {
        let d = self.energies.len();
        let evolved = DMatrix::from_fn(d, d, |a, b| {
            self.rho_eig[(a, b)]
                * Complex64::from_polar(1.0, -(self.energies[a] - self.energies[b]) * t)
        });
        let tmp = &evolved * w;
        (0..d)
            .map(|i| w.column(i).dotc(&tmp.column(i)).re)
            .collect()
    }

    /// `Σ_i |p_i(dt) − p_i(−dt)| / (2 dt)`.
    pub fn speed(&self, basis: &MeasurementBasis, dt: f64) -> Result<f64> {
        check_dt(dt)?;
        Ok(self.speed_unchecked(basis, dt))
    }

    fn speed_unchecked(&self, basis: &MeasurementBasis, dt: f64) -> f64 {
        let w = self.eigvecs.adjoint() * basis.unitary(self.n);
        let plus = self.probabilities(&w, dt);
        let minus = self.probabilities(&w, -dt);
        plus.iter()
            .zip(&minus)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            / (2.0 * dt)
    }
}

fn check_dt(dt: f64) -> Result<()> {
    let (lo, hi) = DT_RANGE;
    if dt >= lo && dt <= hi {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "dt",
            value: dt,
            lo,
            hi,
        })
    }
}

/// Central-difference Kolmogorov speed of `state` under `dir·J`, measured
/// in `basis`.
pub fn kolmogorov_speed(
    state: &DenseState,
    dir: &SpinDirection,
    basis: &MeasurementBasis,
    dt: f64,
) -> Result<f64> {
    check_dt(dt)?;
    KolmogorovProbe::new(state, dir)?.speed(basis, dt)
}

/// Coarse search over [`MeasurementBasis::Twisted`]: a `points^5` grid over
/// the five angles, then coordinate refinement from the best few grid points.
pub fn optimize_kolmogorov_basis(
    state: &DenseState,
    dir: &SpinDirection,
    points_per_angle: usize,
    dt: f64,
) -> Result<(f64, MeasurementBasis)> {
    check_dt(dt)?;
    let probe = KolmogorovProbe::new(state, dir)?;
    let m = points_per_angle.max(1);
    let periods = [TAU, PI, PI, TAU, PI];
    let steps: Vec<f64> = periods.iter().map(|p| p / m as f64).collect();
    let total = m.pow(5);
    let grid_point = |mut idx: usize| -> Vec<f64> {
        (0..5)
            .map(|a| {
                let i = idx % m;
                idx /= m;
                i as f64 * steps[a]
            })
            .collect()
    };
    let mut scored: Vec<(usize, f64)> = (0..total)
        .into_par_iter()
        .map(|i| {
            (
                i,
                probe.speed_unchecked(&MeasurementBasis::from_params(&grid_point(i)), dt),
            )
        })
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    scored.truncate(REFINE_STARTS);
    let (x, value) = scored
        .into_par_iter()
        .map(|(i, v)| {
            coordinate_ascent(
                |p| probe.speed_unchecked(&MeasurementBasis::from_params(p), dt),
                grid_point(i),
                v,
                &steps,
                1e-6,
                60,
            )
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((Vec::new(), f64::NEG_INFINITY), |best, c| {
            if c.1 > best.1 {
                c
            } else {
                best
            }
        });
    Ok((value, MeasurementBasis::from_params(&x)))
}
