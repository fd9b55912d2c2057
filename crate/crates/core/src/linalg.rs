//! Fixed-size complex matrices: local operators and random unitaries.

use std::ops::Mul;

use rand::Rng;

use crate::error::{GeometryError, Result};
use crate::spinor::random::complex_normal;
use crate::spinor::Spinor;
use crate::Complex;

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Dense `N x N` complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix<const N: usize>(pub [[Complex; N]; N]);

/// Operator acting on a single qubit.
pub type Matrix2 = Matrix<2>;

impl<const N: usize> Matrix<N> {
    pub fn zero() -> Self {
        Matrix([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = Complex::from(1.0);
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scaled(&self, k: Complex) -> Self {
        let mut m = *self;
        m.0.iter_mut()
            .flat_map(|r| r.iter_mut())
            .for_each(|z| *z *= k);
        m
    }

    /// Matrix with i.i.d. standard complex normal entries.
    pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut m = Self::zero();
        m.0.iter_mut()
            .flat_map(|r| r.iter_mut())
            .for_each(|z| *z = complex_normal(rng));
        m
    }

    /// Haar-random unitary: Gram-Schmidt on the columns of a Gaussian matrix.
    pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let g = Self::random_gaussian(rng);
            if let Some(u) = g.orthonormalized_columns() {
                return u;
            }
        }
    }

    fn orthonormalized_columns(&self) -> Option<Self> {
        let mut q = *self;
        for j in 0..N {
            for k in 0..j {
                let mut proj = ZERO;
                for i in 0..N {
                    proj += q.0[i][k].conj() * q.0[i][j];
                }
                for i in 0..N {
                    let v = q.0[i][k];
                    q.0[i][j] -= proj * v;
                }
            }
            let norm = (0..N).map(|i| q.0[i][j].norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-10 {
                return None;
            }
            for i in 0..N {
                q.0[i][j] /= norm;
            }
        }
        Some(q)
    }

    /// Applies the matrix to the full component vector of a spinor.
    ///
    /// Panics if `S::DIM != N`.
    pub fn apply<S: Spinor>(&self, s: &S) -> S {
        assert_eq!(S::DIM, N, "matrix size must match spinor dimension");
        let src = s.components();
        let mut out = S::zero();
        for (i, o) in out.components_mut().iter_mut().enumerate() {
            *o = (0..N).map(|j| self.0[i][j] * src[j]).sum();
        }
        out
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Matrix<N>;
    fn mul(self, rhs: Matrix<N>) -> Matrix<N> {
        let mut m = Matrix::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = (0..N).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        m
    }
}

impl Matrix2 {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Self {
        Matrix([[a, b], [c, d]])
    }

    pub fn det(&self) -> Complex {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Rescales to unit determinant (principal square root of `det`).
    pub fn sl_normalized(&self) -> Result<Self> {
        let det = self.det();
        if det.norm() == 0.0 || !det.is_finite() {
            return Err(GeometryError::SingularMatrix { det: det.norm() });
        }
        Ok(self.scaled(Complex::from(1.0) / det.sqrt()))
    }
}

/// Applies a one-qubit operator to slot `slot` of a spinor.
pub fn apply_to_slot<S: Spinor>(m: &Matrix2, s: &S, slot: usize) -> Result<S> {
    if slot >= S::RANK {
        return Err(GeometryError::InvalidSlot {
            slot,
            rank: S::RANK,
        });
    }
    let bit = 1 << (S::RANK - 1 - slot);
    let src = s.components();
    let mut out = S::zero();
    for (i, o) in out.components_mut().iter_mut().enumerate() {
        let row = usize::from(i & bit != 0);
        let lo = src[i & !bit];
        let hi = src[i | bit];
        *o = m.0[row][0] * lo + m.0[row][1] * hi;
    }
    Ok(out)
}

/// Applies `ops[0] ⊗ ops[1] ⊗ ...` slot by slot. `ops.len()` must equal the rank.
pub fn apply_local<S: Spinor>(ops: &[Matrix2], s: &S) -> Result<S> {
    if ops.len() != S::RANK {
        return Err(GeometryError::RankMismatch {
            left: ops.len(),
            right: S::RANK,
        });
    }
    ops.iter()
        .enumerate()
        .try_fold(*s, |acc, (slot, m)| apply_to_slot(m, &acc, slot))
}
