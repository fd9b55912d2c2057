use std::fmt;

use rand::Rng;

use crate::error::{GeometryError, Result};
use crate::linalg::{apply_local, Matrix2};
use crate::qubit3::invariants::three_tangle;
use crate::qubit3::Party;
use crate::spinor::{check_nonzero, Spinor, Spinor3};

/// Rank cut: a flattening has rank 1 when `sigma_2 < RANK_TOL * sigma_1`.
pub const RANK_TOL: f64 = 1e-8;
/// Tangle cut separating GHZ from W.
pub const TANGLE_TOL: f64 = 1e-8;
/// Smallest `|det|` accepted from a random draw.
pub const MIN_RANDOM_DET: f64 = 1e-6;

/// Singular values `(sigma_1, sigma_2)`, descending, of the 2x4 matrix that
/// separates `party` from the other two qubits.
pub fn flattening_singular_values(psi: &Spinor3, party: Party) -> [f64; 2] {
    let bit = 1usize << (2 - party.slot());
    let mut rows = [[crate::Complex::new(0.0, 0.0); 4]; 2];
    let mut fill = [0usize; 2];
    for (idx, &z) in psi.components().iter().enumerate() {
        let r = usize::from(idx & bit != 0);
        rows[r][fill[r]] = z;
        fill[r] += 1;
    }
    let trace: f64 = psi.norm_sqr();
    // Cauchy-Binet: det(M M^+) is the sum of squared 2x2 minors.
    let mut det = 0.0;
    for j in 0..4 {
        for k in j + 1..4 {
            det += (rows[0][j] * rows[1][k] - rows[0][k] * rows[1][j]).norm_sqr();
        }
    }
    let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
    let l1 = 0.5 * (trace + disc);
    let l2 = if l1 > 0.0 { det / l1 } else { 0.0 };
    [l1.sqrt(), l2.max(0.0).sqrt()]
}

fn ranks_with(psi: &Spinor3, tol: f64) -> Result<[u8; 3]> {
    check_nonzero(psi)?;
    let mut out = [2u8; 3];
    for (r, party) in out.iter_mut().zip(Party::ALL) {
        let [s1, s2] = flattening_singular_values(psi, party);
        if s2 < tol * s1 {
            *r = 1;
        }
    }
    Ok(out)
}

/// Numerical ranks of the three single-qubit flattenings.
pub fn local_ranks(psi: &Spinor3) -> Result<[u8; 3]> {
    ranks_with(psi, RANK_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SloccLabel {
    Separable,
    BisepA,
    BisepB,
    BisepC,
    W,
    Ghz,
}

impl SloccLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            SloccLabel::Separable => "Separable",
            SloccLabel::BisepA => "BisepA",
            SloccLabel::BisepB => "BisepB",
            SloccLabel::BisepC => "BisepC",
            SloccLabel::W => "W",
            SloccLabel::Ghz => "GHZ",
        }
    }
}

impl fmt::Display for SloccLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Class label with the diagnostics that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SloccClass {
    pub label: SloccLabel,
    pub ranks: [u8; 3],
    pub tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyTolerance {
    pub rank: f64,
    pub tangle: f64,
}

impl Default for ClassifyTolerance {
    fn default() -> Self {
        ClassifyTolerance {
            rank: RANK_TOL,
            tangle: TANGLE_TOL,
        }
    }
}

pub fn slocc_classify(psi: &Spinor3) -> Result<SloccClass> {
    slocc_classify_with(psi, ClassifyTolerance::default())
}

pub fn slocc_classify_with(psi: &Spinor3, tol: ClassifyTolerance) -> Result<SloccClass> {
    let ranks = ranks_with(psi, tol.rank)?;
    let tau = three_tangle(psi)?.value();
    let label = match ranks {
        [1, 1, 1] => SloccLabel::Separable,
        [1, 2, 2] => SloccLabel::BisepA,
        [2, 1, 2] => SloccLabel::BisepB,
        [2, 2, 1] => SloccLabel::BisepC,
        [2, 2, 2] if tau > tol.tangle => SloccLabel::Ghz,
        [2, 2, 2] => SloccLabel::W,
        _ => return Err(GeometryError::InconsistentRanks(ranks)),
    };
    Ok(SloccClass { label, ranks, tau })
}

/// `(A ⊗ B ⊗ C) psi`; every operator must be invertible.
pub fn apply_slocc(psi: &Spinor3, ops: &[Matrix2; 3]) -> Result<Spinor3> {
    for m in ops {
        let det = m.det().norm();
        let scale = m.frobenius_norm().powi(2);
        if det.is_nan() || det <= 1e-14 * scale {
            return Err(GeometryError::SingularMatrix { det });
        }
    }
    apply_local(ops, psi)
}

/// Three complex-Gaussian operators with `|det| > 1e-6`, optionally scaled
/// to unit determinant.
pub fn random_slocc<R: Rng + ?Sized>(rng: &mut R, sl_normalize: bool) -> [Matrix2; 3] {
    let mut draw = || loop {
        let m = Matrix2::random_gaussian(rng);
        if m.det().norm() > MIN_RANDOM_DET {
            return if sl_normalize {
                m.sl_normalized().expect("nonsingular draw")
            } else {
                m
            };
        }
    };
    [draw(), draw(), draw()]
}
