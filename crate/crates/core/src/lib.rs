//! Geometry of one-, two- and three-qubit pure states.
//!
//! States are two-spinors `psi^A`, `psi^{AB}`, `psi^{ABC}` with components
//! stored big-endian (`|up> = index 0`). Index gymnastics use
//! `eps^{01} = eps_{01} = 1` with `psi_B = psi^A eps_{AB}`.
//!
//! * [`spinor`]: spinor types, the epsilon calculus, antipodes, projective
//!   points and seeded random states.
//! * [`projective`]: Fubini-Study distance and metric, lines, hyperplanes
//!   and line-quadric intersection.
//! * [`qubit1`], [`qubit2`], [`qubit3`]: the Bloch sphere, the Segre quadric
//!   and the three-qubit varieties, invariants and SLOCC classes.

pub mod error;
pub mod linalg;
pub mod projective;
pub mod qubit1;
pub mod qubit2;
pub mod qubit3;
pub mod spinor;

/// Complex scalar used throughout.
pub type Complex = num_complex::Complex64;

pub use error::{GeometryError, Result};
pub use linalg::{Matrix, Matrix2};
pub use spinor::{AnySpinor, ProjectivePoint, Spinor, Spinor1, Spinor2, Spinor3, Tensor, Variance};

/// Common imports.
pub mod prelude {
    pub use crate::error::{GeometryError, Result};
    pub use crate::linalg::{apply_local, Matrix2};
    pub use crate::projective::{fs_distance, fs_distance_spinors, transition_probability};
    pub use crate::qubit3::{
        ghz_state, hyperdeterminant, slocc_classify, three_tangle, w_state, SloccLabel,
    };
    pub use crate::spinor::{
        conjugate_state, inner_product, random_spinor, seeded_rng, AnySpinor, ProjectivePoint,
        Spinor, Spinor1, Spinor2, Spinor3,
    };
    pub use crate::Complex;
}
