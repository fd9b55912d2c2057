//! Three qubits: the symmetric/antisymmetric split, the twisted cubic and
//! its tangent developable, the Cayley hyperdeterminant and the SLOCC
//! classes.

mod invariants;
mod slocc;
mod varieties;

pub use invariants::{hyperdeterminant, quartic_h_value, three_tangle, ThreeTangle};
pub use slocc::{
    apply_slocc, flattening_singular_values, local_ranks, random_slocc, slocc_classify,
    slocc_classify_with, ClassifyTolerance, SloccClass, SloccLabel, RANK_TOL, TANGLE_TOL,
};
pub use varieties::{
    on_tangent_developable_sym, on_twisted_cubic, osculating_plane_membership, q_tensor,
    tangent_line_membership, tangent_osculating_intersection, QTensor,
};

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{GeometryError, Result};
use crate::spinor::{check_nonzero, conjugate_state, symmetrize, Spinor, Spinor1, Spinor3};

/// Relative size below which the symmetric or antisymmetric part of a
/// state is treated as absent.
pub const SYM_TOL: f64 = 1e-10;

/// One of the three particles, in slot order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    /// Slot index, 0 for `A`.
    pub fn slot(self) -> usize {
        match self {
            Party::A => 0,
            Party::B => 1,
            Party::C => 2,
        }
    }

    /// Parses the 1-based particle number.
    pub fn from_number(n: usize) -> Result<Party> {
        match n {
            1 => Ok(Party::A),
            2 => Ok(Party::B),
            3 => Ok(Party::C),
            _ => Err(GeometryError::OutOfRange {
                name: "party",
                value: n as f64,
                range: "{1, 2, 3}",
            }),
        }
    }
}

fn eps(a: usize, b: usize) -> f64 {
    match (a, b) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

/// Splits `psi` into its totally symmetric part and the orthogonal remainder.
pub fn sym_asym_split(psi: &Spinor3) -> (Spinor3, Spinor3) {
    let sym = symmetrize(psi);
    (sym, *psi - sym)
}

/// Relative size of the antisymmetric remainder; 0 for symmetric states.
pub(crate) fn asym_fraction(psi: &Spinor3) -> f64 {
    let n = psi.norm();
    if n == 0.0 {
        return 0.0;
    }
    (*psi - symmetrize(psi)).norm() / n
}

pub(crate) fn is_symmetric(psi: &Spinor3) -> bool {
    psi.norm() > 0.0 && psi.is_finite() && asym_fraction(psi) < SYM_TOL
}

/// Spinor triple parametrizing the antisymmetric subspace via
/// `alpha^A eps^{BC} + beta^B eps^{CA} + gamma^C eps^{AB}`, stored in the
/// gauge `alpha + beta + gamma = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymTriple {
    alpha: Spinor1,
    beta: Spinor1,
    gamma: Spinor1,
}

impl AsymTriple {
    /// Applies the gauge by subtracting the mean, which leaves the composed
    /// state unchanged.
    pub fn new(alpha: Spinor1, beta: Spinor1, gamma: Spinor1) -> Self {
        let mean = (alpha + beta + gamma) * (1.0 / 3.0);
        AsymTriple {
            alpha: alpha - mean,
            beta: beta - mean,
            gamma: gamma - mean,
        }
    }

    pub fn alpha(&self) -> &Spinor1 {
        &self.alpha
    }

    pub fn beta(&self) -> &Spinor1 {
        &self.beta
    }

    pub fn gamma(&self) -> &Spinor1 {
        &self.gamma
    }

    pub fn compose(&self) -> Spinor3 {
        let mut out = Spinor3::zero();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    out[(a, b, c)] = self.alpha[a] * eps(b, c)
                        + self.beta[b] * eps(c, a)
                        + self.gamma[c] * eps(a, b);
                }
            }
        }
        out
    }
}

pub fn asym_compose(t: &AsymTriple) -> Spinor3 {
    t.compose()
}

/// Inverts [`asym_compose`] on the antisymmetric subspace.
pub fn asym_extract(psi: &Spinor3) -> Result<AsymTriple> {
    if !psi.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    let n = psi.norm();
    let sym = symmetrize(psi).norm();
    if n > 0.0 && sym >= SYM_TOL * n {
        return Err(GeometryError::HasSymmetricPart { relative: sym / n });
    }
    // In gauge, each upper-index value of the triple is fixed by the two
    // components of psi that carry it.
    let third = 1.0 / 3.0;
    let p = |a, b, c| psi[(a, b, c)];
    let alpha = Spinor1::new(
        (p(0, 0, 1) - p(0, 1, 0)) * third,
        (p(1, 0, 1) - p(1, 1, 0)) * third,
    );
    let beta = Spinor1::new(
        (p(1, 0, 0) - p(0, 0, 1)) * third,
        (p(1, 1, 0) - p(0, 1, 1)) * third,
    );
    let gamma = Spinor1::new(
        (p(0, 1, 0) - p(1, 0, 0)) * third,
        (p(0, 1, 1) - p(1, 0, 1)) * third,
    );
    Ok(AsymTriple { alpha, beta, gamma })
}

/// Particle `party` in state `alpha`, the other two in the singlet; unit norm.
pub fn singlet_line_point(party: Party, alpha: &Spinor1) -> Result<Spinor3> {
    let u = alpha.normalized()?;
    let z = Spinor1::zero();
    let triple = match party {
        Party::A => AsymTriple {
            alpha: u,
            beta: z,
            gamma: z,
        },
        Party::B => AsymTriple {
            alpha: z,
            beta: u,
            gamma: z,
        },
        Party::C => AsymTriple {
            alpha: z,
            beta: z,
            gamma: u,
        },
    };
    Ok(triple.compose() * FRAC_1_SQRT_2)
}

/// `psi^A psi^B psi^C`.
pub fn veronese3(psi: &Spinor1) -> Result<Spinor3> {
    check_nonzero(psi)?;
    Ok(Spinor3::outer(psi, psi, psi))
}

/// `(psi psi psi + hat hat hat) / sqrt 2` for unit `psi` and its antipode.
pub fn ghz_state(psi: &Spinor1) -> Result<Spinor3> {
    let u = psi.normalized()?;
    let v = conjugate_state(&u)?;
    Ok((Spinor3::outer(&u, &u, &u) + Spinor3::outer(&v, &v, &v)) * FRAC_1_SQRT_2)
}

/// `(psi psi hat + psi hat psi + hat psi psi) / sqrt 3`.
pub fn w_state(psi: &Spinor1) -> Result<Spinor3> {
    let u = psi.normalized()?;
    let v = conjugate_state(&u)?;
    let sum = Spinor3::outer(&u, &u, &v) + Spinor3::outer(&u, &v, &u) + Spinor3::outer(&v, &u, &u);
    Ok(sum * (1.0 / 3f64.sqrt()))
}

/// `x beta gamma + alpha y gamma + alpha beta z`: a point of the tangent
/// space to the product variety at `alpha beta gamma`.
pub fn tangent_plane_form(
    alpha: &Spinor1,
    beta: &Spinor1,
    gamma: &Spinor1,
    x: &Spinor1,
    y: &Spinor1,
    z: &Spinor1,
) -> Result<Spinor3> {
    check_nonzero(alpha)?;
    check_nonzero(beta)?;
    check_nonzero(gamma)?;
    Ok(Spinor3::outer(x, beta, gamma)
        + Spinor3::outer(alpha, y, gamma)
        + Spinor3::outer(alpha, beta, z))
}
