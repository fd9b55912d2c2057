//! One qubit: spinors, spherical angles, Bloch vectors and 2x2 density
//! matrices.
//!
//! Orientation: `|up> = (1, 0)` sits at the north pole, `z = +1/2`. The
//! density matrix is therefore
//!
//! ```text
//!     | t + z    x - iy |
//!     | x + iy   t - z  |
//! ```
//!
//! with the Bloch vector `(x, y, z)` of radius at most `1/2` and `t = 1/2`.

use std::f64::consts::{PI, TAU};

use crate::error::{GeometryError, Result};
use crate::spinor::{check_nonzero, Spinor, Spinor1};
use crate::Complex;

/// Slack on the ball radius and the purity test.
pub const BALL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalDirection {
    theta: f64,
    phi: f64,
}

impl SphericalDirection {
    /// `theta` in `[0, pi]`, `phi` in `[0, 2 pi)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(GeometryError::OutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(GeometryError::OutOfRange {
                name: "phi",
                value: phi,
                range: "[0, 2pi)",
            });
        }
        Ok(SphericalDirection { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Unit vector in R^3.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// `(cos theta/2, sin theta/2 e^{i phi})`.
pub fn spinor_from_angles(d: &SphericalDirection) -> Spinor1 {
    let (s, c) = (0.5 * d.theta).sin_cos();
    Spinor1::new(Complex::from(c), Complex::from_polar(s, d.phi))
}

/// Inverse of [`spinor_from_angles`] up to scale. The gauge makes the first
/// nonzero component real positive; at either pole `phi` is reported as 0.
pub fn angles_from_spinor(s: &Spinor1) -> Result<SphericalDirection> {
    check_nonzero(s)?;
    let (a, b) = (s.0[0], s.0[1]);
    let theta = 2.0 * b.norm().atan2(a.norm());
    let at_pole = a.norm() == 0.0 || b.norm() == 0.0;
    let phi = if at_pole {
        0.0
    } else {
        let p = (b.arg() - a.arg()).rem_euclid(TAU);
        if p >= TAU {
            0.0
        } else {
            p
        }
    };
    SphericalDirection::new(theta.min(PI), phi)
}

/// A 2x2 density matrix in `(t, x, y, z)` form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl DensityMatrix2 {
    /// Unit-trace density matrix with Bloch vector `(x, y, z)`.
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(0.5, x, y, z)
    }

    /// Trace-normalizes `(t, x, y, z)` to `t = 1/2` and checks positivity.
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        if ![t, x, y, z].iter().all(|v| v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        if t <= 0.0 {
            return Err(GeometryError::InvalidDensity("trace must be positive"));
        }
        let k = 0.5 / t;
        let d = DensityMatrix2 {
            t: 0.5,
            x: x * k,
            y: y * k,
            z: z * k,
        };
        if d.radius_sqr() > 0.25 + BALL_TOL {
            return Err(GeometryError::InvalidDensity(
                "Bloch vector outside the ball of radius 1/2",
            ));
        }
        Ok(d)
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn radius_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn radius(&self) -> f64 {
        self.radius_sqr().sqrt()
    }

    pub fn is_pure(&self) -> bool {
        (self.radius_sqr() - 0.25).abs() <= BALL_TOL
    }

    pub fn matrix(&self) -> [[Complex; 2]; 2] {
        [
            [
                Complex::from(self.t + self.z),
                Complex::new(self.x, -self.y),
            ],
            [Complex::new(self.x, self.y), Complex::from(self.t - self.z)],
        ]
    }
}

/// Pauli correspondence: the pure-state density matrix of a spinor.
pub fn bloch_from_spinor(s: &Spinor1) -> Result<DensityMatrix2> {
    let u = s.normalized()?;
    let (a, b) = (u.0[0], u.0[1]);
    let ab = a.conj() * b;
    Ok(DensityMatrix2 {
        t: 0.5,
        x: ab.re,
        y: ab.im,
        z: 0.5 * (a.norm_sqr() - b.norm_sqr()),
    })
}

/// `(t + r, t - r)` with `r` the Bloch radius.
pub fn density_eigenvalues(d: &DensityMatrix2) -> (f64, f64) {
    let r = d.radius();
    (d.t + r, d.t - r)
}
