use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

use super::STATE_MAX_QUBITS;

const NORM_TOL: f64 = 1e-12;
const DENSITY_TOL: f64 = 1e-9;

/// Explicit `n`-qubit state: either amplitudes or a density operator.
#[derive(Debug, Clone, PartialEq)]
pub enum DenseState {
    Statevector { n: u32, amps: DVector<Complex64> },
    Density { n: u32, rho: DMatrix<Complex64> },
}

fn check_size(n: u32, len: usize) -> Result<()> {
    if n == 0 || n > STATE_MAX_QUBITS {
        return Err(Error::OracleTooLarge {
            n,
            max: STATE_MAX_QUBITS,
        });
    }
    if len != 1usize << n {
        return Err(Error::InvalidState(format!(
            "dimension {len} does not match {n} qubits"
        )));
    }
    Ok(())
}

impl DenseState {
    pub fn from_statevector(n: u32, amps: DVector<Complex64>) -> Result<Self> {
        check_size(n, amps.len())?;
        let norm = amps.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("statevector norm {norm}")));
        }
        Ok(Self::Statevector { n, amps })
    }

    pub fn from_real_amplitudes(n: u32, amps: &[f64]) -> Result<Self> {
        Self::from_statevector(
            n,
            DVector::from_iterator(amps.len(), amps.iter().map(|&a| Complex64::new(a, 0.0))),
        )
    }

    /// Validates Hermiticity, unit trace and positivity (all within `1e-9`).
    pub fn from_density(n: u32, rho: DMatrix<Complex64>) -> Result<Self> {
        if rho.nrows() != rho.ncols() {
            return Err(Error::InvalidState("density matrix is not square".into()));
        }
        check_size(n, rho.nrows())?;
        let skew = (&rho - rho.adjoint()).camax();
        if skew > DENSITY_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {skew:e})"
            )));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let herm = (&rho + rho.adjoint()).scale(0.5);
        let lowest = herm.symmetric_eigenvalues().min();
        if lowest < -DENSITY_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self::Density { n, rho })
    }

    /// `ε|ψ⟩⟨ψ| + (1−ε) I / 2^n` from a statevector.
    pub fn pseudo_pure(&self, eps: f64) -> Result<Self> {
        crate::grover::check_polarization(eps)?;
        let Self::Statevector { n, amps } = self else {
            return Err(Error::InvalidState(
                "pseudo-pure mixing needs a statevector".into(),
            ));
        };
        let dim = amps.len();
        let mut rho = (amps * amps.adjoint()).scale(eps);
        let mixed = (1.0 - eps) / dim as f64;
        for i in 0..dim {
            rho[(i, i)] += mixed;
        }
        Ok(Self::Density { n: *n, rho })
    }

    pub fn n(&self) -> u32 {
        match self {
            Self::Statevector { n, .. } | Self::Density { n, .. } => *n,
        }
    }

    pub fn dim(&self) -> usize {
        1usize << self.n()
    }

    pub fn statevector(&self) -> Option<&DVector<Complex64>> {
        match self {
            Self::Statevector { amps, .. } => Some(amps),
            Self::Density { .. } => None,
        }
    }

    /// The density operator (outer product for statevectors).
    pub fn density(&self) -> DMatrix<Complex64> {
        match self {
            Self::Statevector { amps, .. } => amps * amps.adjoint(),
            Self::Density { rho, .. } => rho.clone(),
        }
    }

    pub fn to_density(&self) -> Self {
        Self::Density {
            n: self.n(),
            rho: self.density(),
        }
    }
}

/// Applies `(U_d U_ω)^k` to `|ψ_in⟩` with `U_ω = I − 2|ω⟩⟨ω|` and
/// `U_d = 2|ψ_in⟩⟨ψ_in| − I`.
pub fn simulate_grover_statevector(n: u32, k: u64, target: usize) -> Result<DenseState> {
    if n == 0 || n > STATE_MAX_QUBITS {
        return Err(Error::OracleTooLarge {
            n,
            max: STATE_MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    if target >= dim {
        return Err(Error::TargetOutOfRange { target, n });
    }
    let mut psi = vec![1.0 / (dim as f64).sqrt(); dim];
    for _ in 0..k {
        psi[target] = -psi[target];
        // 2|s⟩⟨s|ψ⟩ has every entry equal to twice the mean amplitude.
        let twice_mean = 2.0 * psi.iter().sum::<f64>() / dim as f64;
        for a in psi.iter_mut() {
            *a = twice_mean - *a;
        }
    }
    DenseState::from_real_amplitudes(n, &psi)
}

pub fn random_statevector<R: Rng + ?Sized>(rng: &mut R, n: u32) -> Result<DenseState> {
    let dim = 1usize << n.min(STATE_MAX_QUBITS);
    let v = DVector::from_fn(dim, |_, _| Complex64::new(gauss(rng), gauss(rng)));
    let norm = v.norm();
    DenseState::from_statevector(n, v.unscale(norm))
}

/// Random density operator `G G† / tr(G G†)` with `G` a `2^n × rank` complex
/// Gaussian matrix.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, n: u32, rank: usize) -> Result<DenseState> {
    let dim = 1usize << n.min(STATE_MAX_QUBITS);
    let g = DMatrix::from_fn(dim, rank.max(1), |_, _| {
        Complex64::new(gauss(rng), gauss(rng))
    });
    let rho = &g * g.adjoint();
    let tr = rho.trace().re;
    let rho = rho.unscale(tr);
    let rho = (&rho + rho.adjoint()).scale(0.5);
    DenseState::from_density(n, rho)
}

/// Box–Muller standard normal.
fn gauss<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grover::{success_prob_pure, GroverParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn n2_one_step_hits_target() {
        let s = simulate_grover_statevector(2, 1, 0).unwrap();
        let amps = s.statevector().unwrap();
        assert!((amps[0].re - 1.0).abs() < 1e-15);
        for i in 1..4 {
            assert!(amps[i].norm() < 1e-15);
        }
    }

    #[test]
    fn zero_steps_is_uniform() {
        for n in 1..=8 {
            let s = simulate_grover_statevector(n, 0, 3 % (1 << n)).unwrap();
            let expected = 2f64.powf(-(n as f64) / 2.0);
            assert!(s
                .statevector()
                .unwrap()
                .iter()
                .all(|a| (a.re - expected).abs() < 1e-15));
        }
    }

    #[test]
    fn matches_closed_form_and_is_unitary() {
        for n in 1..=10u32 {
            let params = GroverParams::new(n).unwrap();
            for k in 0..=2 * params.k_grover() {
                let target = (k as usize * 7) % (1 << n);
                let s = simulate_grover_statevector(n, k, target).unwrap();
                let amps = s.statevector().unwrap();
                assert!((amps.norm() - 1.0).abs() < 1e-12);
                let p = amps[target].norm_sqr();
                assert!(
                    (p - success_prob_pure(&params, k)).abs() < 1e-12,
                    "n={n} k={k}"
                );
            }
        }
        let params = GroverParams::new(6).unwrap();
        let s = simulate_grover_statevector(6, 3, 0).unwrap();
        assert!(
            (s.statevector().unwrap()[0].norm_sqr() - success_prob_pure(&params, 3)).abs() < 1e-12
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(simulate_grover_statevector(13, 0, 0).is_err());
        assert!(matches!(
            simulate_grover_statevector(3, 0, 8),
            Err(Error::TargetOutOfRange { .. })
        ));
        assert!(DenseState::from_real_amplitudes(2, &[1.0, 0.0, 0.0]).is_err());
        assert!(DenseState::from_real_amplitudes(1, &[1.0, 1.0]).is_err());
        let bad = DMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(1.5, 0.0),
            Complex64::new(-0.5, 0.0),
        ]));
        assert!(DenseState::from_density(1, bad).is_err());
    }

    #[test]
    fn random_states_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=5 {
            let s = random_statevector(&mut rng, n).unwrap();
            assert!(DenseState::from_density(n, s.density()).is_ok());
            assert!(random_density(&mut rng, n, 3).is_ok());
        }
    }
}
