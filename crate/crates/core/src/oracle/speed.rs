use nalgebra::{DMatrix, DVector, Matrix3};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::statspeed::GammaMatrix;

use super::norm::trace_norm;
use super::search::coordinate_ascent;
use super::spin::{apply_collective_left, apply_collective_vec, fibonacci_sphere, SpinDirection};
use super::state::DenseState;
use super::{DENSITY_MAX_QUBITS, STATE_MAX_QUBITS};

/// Direction search settings for [`ts_optimized_numeric`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    /// Fibonacci-sphere seed directions.
    pub grid: usize,
    /// Angular tolerance of the golden-section refinement.
    pub angular_tol: f64,
    pub max_sweeps: usize,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            grid: 2000,
            angular_tol: 1e-6,
            max_sweeps: 40,
        }
    }
}

impl OptimizerSettings {
    pub fn with_grid(grid: usize) -> Self {
        Self {
            grid,
            ..Self::default()
        }
    }
}

fn commutator_with_collective(
    n: u32,
    rho: &DMatrix<Complex64>,
    dir: &SpinDirection,
) -> DMatrix<Complex64> {
    // ρH = (Hρ†)†, exact even if ρ carries rounding-level non-Hermiticity.
    let h_rho = apply_collective_left(n, dir, rho);
    let h_rho_dag = apply_collective_left(n, dir, &rho.adjoint());
    h_rho_dag.adjoint() - h_rho
}

/// `‖[ρ, m·J]‖₁` for the collective generator along `dir`.
pub fn ts_direct(state: &DenseState, dir: &SpinDirection) -> Result<f64> {
    let n = state.n();
    if n > STATE_MAX_QUBITS {
        return Err(Error::OracleTooLarge {
            n,
            max: STATE_MAX_QUBITS,
        });
    }
    let rho = state.density();
    Ok(trace_norm(&commutator_with_collective(n, &rho, dir)))
}

/// `‖[|ψ⟩⟨ψ|, H]‖₁` without forming the dense commutator: its range lies in
/// `span{ψ, Hψ}`, so it is compressed onto an orthonormal basis of that
/// span and the 2×2 block is normed instead.
fn pure_commutator_norm(n: u32, psi: &DVector<Complex64>, dir: &SpinDirection) -> f64 {
    let h_psi = apply_collective_vec(n, dir, psi);
    let q = DMatrix::from_columns(&[psi.clone(), h_psi.clone()])
        .qr()
        .q();
    let x = q.adjoint() * psi;
    let y = q.adjoint() * h_psi;
    let block = &x * y.adjoint() - &y * x.adjoint();
    trace_norm(&block)
}

/// Maximizes [`ts_direct`] over collective directions: a Fibonacci-sphere
/// scan followed by golden-section refinement of the two angles.
///
/// Statevector inputs are evaluated through an exact rank-two reduction of
/// the commutator; density inputs through the dense trace norm.
/// Ties on the scan go to the lexicographically smallest direction.
pub fn ts_optimized_numeric(
    state: &DenseState,
    settings: &OptimizerSettings,
) -> Result<(f64, SpinDirection)> {
    let n = state.n();
    if n > DENSITY_MAX_QUBITS {
        return Err(Error::OracleTooLarge {
            n,
            max: DENSITY_MAX_QUBITS,
        });
    }
    let eval: Box<dyn Fn(&SpinDirection) -> f64 + Sync> = match state {
        DenseState::Statevector { amps, .. } => {
            Box::new(move |d: &SpinDirection| pure_commutator_norm(n, amps, d))
        }
        DenseState::Density { rho, .. } => {
            Box::new(move |d: &SpinDirection| trace_norm(&commutator_with_collective(n, rho, d)))
        }
    };

    let seeds = fibonacci_sphere(settings.grid.max(1));
    let (best_dir, best) = seeds.par_iter().map(|d| (*d, eval(d))).reduce(
        || (SpinDirection::Z, f64::NEG_INFINITY),
        |a, b| {
            if b.1 > a.1 || (b.1 == a.1 && b.0.lexicographic_lt(&a.0)) {
                b
            } else {
                a
            }
        },
    );

    let spacing = (4.0 * std::f64::consts::PI / seeds.len() as f64)
        .sqrt()
        .min(1.0);
    let (polar, azimuth) = best_dir.angles();
    let (x, value) = coordinate_ascent(
        |p| eval(&SpinDirection::from_angles(p[0], p[1])),
        vec![polar, azimuth],
        best,
        &[spacing, 2.0 * spacing],
        settings.angular_tol,
        settings.max_sweeps,
    );
    Ok((value, SpinDirection::from_angles(x[0], x[1])))
}

/// Exact `Γ_ij = 4(Re⟨J_iJ_j⟩ − ⟨J_i⟩⟨J_j⟩)` on a statevector.
pub fn gamma_numeric(state: &DenseState) -> Result<GammaMatrix> {
    let DenseState::Statevector { n, amps } = state else {
        return Err(Error::InvalidState(
            "gamma_numeric needs a statevector".into(),
        ));
    };
    let applied: Vec<_> = [SpinDirection::X, SpinDirection::Y, SpinDirection::Z]
        .iter()
        .map(|d| apply_collective_vec(*n, d, amps))
        .collect();
    let mean: Vec<f64> = applied.iter().map(|v| amps.dotc(v).re).collect();
    Ok(GammaMatrix::new(Matrix3::from_fn(|i, j| {
        4.0 * (applied[i].dotc(&applied[j]).re - mean[i] * mean[j])
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grover::GroverParams;
    use crate::oracle::{random_density, simulate_grover_statevector};
    use crate::statspeed::{gamma_analytic, ts_pure_analytic};
    use nalgebra::DVector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn plus_state(n: u32) -> DenseState {
        simulate_grover_statevector(n, 0, 0).unwrap()
    }

    #[test]
    fn rank_two_reduction_matches_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=5u32 {
            let psi = crate::oracle::random_statevector(&mut rng, n).unwrap();
            let amps = psi.statevector().unwrap().clone();
            for _ in 0..4 {
                let d = SpinDirection::new(
                    rng.gen::<f64>() - 0.5,
                    rng.gen::<f64>() - 0.5,
                    rng.gen::<f64>() - 0.5,
                )
                .unwrap();
                let dense = ts_direct(&psi.to_density(), &d).unwrap();
                assert!((pure_commutator_norm(n, &amps, &d) - dense).abs() < 1e-12);
            }
        }
        // Eigenstate of H: Hψ ∥ ψ.
        let z = DenseState::from_real_amplitudes(2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let amps = z.statevector().unwrap().clone();
        assert!(pure_commutator_norm(2, &amps, &SpinDirection::Z).abs() < 1e-14);
    }

    #[test]
    fn commuting_state_has_zero_speed() {
        let mut diag = DVector::from_element(4, Complex64::new(0.0, 0.0));
        diag[0] = Complex64::new(0.7, 0.0);
        diag[3] = Complex64::new(0.3, 0.0);
        let s = DenseState::from_density(2, DMatrix::from_diagonal(&diag)).unwrap();
        assert!(ts_direct(&s, &SpinDirection::Z).unwrap().abs() < 1e-14);
    }

    #[test]
    fn single_qubit_plus() {
        let v = ts_direct(&plus_state(1), &SpinDirection::Z).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        for n in 2..=6 {
            let v = ts_direct(&plus_state(n), &SpinDirection::Z).unwrap();
            assert!((v - (n as f64).sqrt()).abs() < 1e-10);
        }
    }

    #[test]
    fn pseudo_pure_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let psi = simulate_grover_statevector(5, 2, 0).unwrap();
        let d = SpinDirection::new(rng.gen(), rng.gen(), rng.gen()).unwrap();
        let pure = ts_direct(&psi, &d).unwrap();
        let half = ts_direct(&psi.pseudo_pure(0.5).unwrap(), &d).unwrap();
        assert!((half - 0.5 * pure).abs() < 1e-12);
    }

    #[test]
    fn gamma_of_product_states() {
        for n in 1..=6u32 {
            let nf = n as f64;
            let g = gamma_numeric(&plus_state(n)).unwrap();
            let expected = Matrix3::from_diagonal(&nalgebra::Vector3::new(0.0, nf, nf));
            assert!((g.entries() - expected).amax() < 1e-10);
            let mut zero = vec![0.0; 1 << n];
            zero[0] = 1.0;
            let g = gamma_numeric(&DenseState::from_real_amplitudes(n, &zero).unwrap()).unwrap();
            let expected = Matrix3::from_diagonal(&nalgebra::Vector3::new(nf, nf, 0.0));
            assert!((g.entries() - expected).amax() < 1e-10);
        }
    }

    #[test]
    fn gamma_numeric_near_closed_form() {
        let params = GroverParams::new(8).unwrap();
        let g = gamma_numeric(&simulate_grover_statevector(8, 5, 0).unwrap()).unwrap();
        let a = gamma_analytic(&params, 5);
        assert!((g.entries() - a.entries()).amax() <= 10.0 * 64.0 / 16.0);
        assert!(g.is_symmetric(1e-10));
    }

    #[test]
    fn optimizer_matches_gamma_route() {
        let params = GroverParams::new(6).unwrap();
        let psi = simulate_grover_statevector(6, 2, 0).unwrap();
        let (ts, dir) = ts_optimized_numeric(&psi, &OptimizerSettings::with_grid(60)).unwrap();
        let exact = gamma_numeric(&psi).unwrap().optimized_trace_speed();
        assert!((ts - exact).abs() < 1e-6, "{ts} vs {exact}");
        assert!((ts - ts_pure_analytic(&params, 2)).abs() < 10.0 * 36.0 / 8.0);
        assert!((ts_direct(&psi, &dir).unwrap() - ts).abs() < 1e-12);
        let mixed = psi.pseudo_pure(0.3).unwrap();
        let (ts_mixed, _) =
            ts_optimized_numeric(&mixed, &OptimizerSettings::with_grid(60)).unwrap();
        assert!((ts_mixed - 0.3 * ts).abs() < 1e-9);
    }

    #[test]
    fn maximally_mixed_has_no_speed() {
        let m = DMatrix::<Complex64>::identity(8, 8).scale(1.0 / 8.0);
        let s = DenseState::from_density(3, m).unwrap();
        let (ts, _) = ts_optimized_numeric(&s, &OptimizerSettings::with_grid(20)).unwrap();
        assert!(ts.abs() < 1e-14);
    }

    #[test]
    fn optimum_dominates_sampled_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let s = random_density(&mut rng, 3, 2).unwrap();
        let (ts, dir) = ts_optimized_numeric(&s, &OptimizerSettings::with_grid(40)).unwrap();
        for d in fibonacci_sphere(100) {
            assert!(ts_direct(&s, &d).unwrap() <= ts + 1e-9);
        }
        assert!((ts_direct(&s, &dir).unwrap() - ts).abs() < 1e-12);
    }
}
