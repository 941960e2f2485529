use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::STATE_MAX_QUBITS;

/// Unit vector `m` selecting the collective generator `H = m·J`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinDirection {
    x: f64,
    y: f64,
    z: f64,
}

impl SpinDirection {
    pub const X: Self = Self {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const Y: Self = Self {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const Z: Self = Self {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    /// Normalizes `(x, y, z)`; rejects the zero and non-finite vectors.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidState(format!(
                "direction ({x}, {y}, {z}) cannot be normalized"
            )));
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// Polar angle from `+z`, azimuth from `+x`.
    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        let (sp, cp) = polar.sin_cos();
        let (sa, ca) = azimuth.sin_cos();
        Self {
            x: sp * ca,
            y: sp * sa,
            z: cp,
        }
    }

    pub fn angles(&self) -> (f64, f64) {
        (self.z.clamp(-1.0, 1.0).acos(), self.y.atan2(self.x))
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub(crate) fn lexicographic_lt(&self, other: &Self) -> bool {
        self.components()
            .partial_cmp(&other.components())
            .is_some_and(|o| o.is_lt())
    }
}

/// `count` nearly uniform directions on the unit sphere.
pub fn fibonacci_sphere(count: usize) -> Vec<SpinDirection> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            SpinDirection::from_angles(z.clamp(-1.0, 1.0).acos(), golden * i as f64)
        })
        .collect()
}

/// `out = (m·J) v` for a `2^n` vector, applied qubit by qubit.
pub fn apply_collective(n: u32, dir: &SpinDirection, v: &[Complex64], out: &mut [Complex64]) {
    let dim = 1usize << n;
    debug_assert_eq!(v.len(), dim);
    let [mx, my, mz] = dir.components();
    let flip_lo = Complex64::new(0.5 * mx, -0.5 * my);
    let flip_hi = Complex64::new(0.5 * mx, 0.5 * my);
    for (r, o) in out.iter_mut().enumerate().take(dim) {
        let jz = 0.5 * (n as f64 - 2.0 * r.count_ones() as f64);
        let mut acc = v[r] * (mz * jz);
        if mx != 0.0 || my != 0.0 {
            for q in 0..n {
                let mask = 1usize << q;
                let c = if r & mask == 0 { flip_lo } else { flip_hi };
                acc += c * v[r ^ mask];
            }
        }
        *o = acc;
    }
}

/// `(m·J) A` for a square `2^n` matrix, column by column.
pub(crate) fn apply_collective_left(
    n: u32,
    dir: &SpinDirection,
    a: &DMatrix<Complex64>,
) -> DMatrix<Complex64> {
    let dim = a.nrows();
    let mut out = DMatrix::zeros(dim, a.ncols());
    for j in 0..a.ncols() {
        let col = a.column(j);
        let src = col.as_slice();
        let mut dst = out.column_mut(j);
        apply_collective(n, dir, src, dst.as_mut_slice());
    }
    out
}

pub(crate) fn apply_collective_vec(
    n: u32,
    dir: &SpinDirection,
    v: &DVector<Complex64>,
) -> DVector<Complex64> {
    let mut out = DVector::zeros(v.len());
    apply_collective(n, dir, v.as_slice(), out.as_mut_slice());
    out
}

fn pauli(dir: &SpinDirection) -> DMatrix<Complex64> {
    let [mx, my, mz] = dir.components();
    DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(mz, 0.0),
            Complex64::new(mx, -my),
            Complex64::new(mx, my),
            Complex64::new(-mz, 0.0),
        ],
    )
}

/// Dense `Σ_i m·σ^(i) / 2`, built from explicit Kronecker products.
pub fn collective_hamiltonian(n: u32, dir: &SpinDirection) -> Result<DMatrix<Complex64>> {
    if n == 0 || n > STATE_MAX_QUBITS {
        return Err(Error::OracleTooLarge {
            n,
            max: STATE_MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let id2 = DMatrix::<Complex64>::identity(2, 2);
    let local = pauli(dir).scale(0.5);
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    // Qubit q lives on bit q, i.e. the (n-1-q)-th Kronecker factor.
    for q in 0..n {
        let mut term = DMatrix::<Complex64>::identity(1, 1);
        for factor in (0..n).rev() {
            term = term.kronecker(if factor == q { &local } else { &id2 });
        }
        h += term;
    }
    Ok(h)
}
