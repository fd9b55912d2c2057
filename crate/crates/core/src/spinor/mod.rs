//! Two-spinor algebra for one, two and three qubits.
//!
//! Components are stored flat in big-endian slot order, so a rank-3 spinor
//! `psi^{ABC}` lives at index `4A + 2B + C`. Index `0` is spin up.
//!
//! The epsilon convention is `eps^{01} = eps_{01} = +1` with
//! `psi_B = psi^A eps_{AB}` and `psi^A = eps^{AB} psi_B`. Under this choice
//! `eps^{AB} eps_{CB} = delta^A_C`, so raising undoes lowering exactly.

mod epsilon;
pub(crate) mod random;

pub use epsilon::{Tensor, Variance, MAX_RANK};
pub use random::{random_spinor, random_state, seeded_rng};

use std::fmt::Debug;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{GeometryError, Result};
use crate::Complex;

/// Default tolerance on the normalized overlap for projective equality.
pub const PROJECTIVE_TOL: f64 = 1e-9;

const ZERO: Complex = Complex::new(0.0, 0.0);

/// A rank-`RANK` two-spinor with `DIM = 2^RANK` complex components.
pub trait Spinor: Copy + Debug + PartialEq + Send + Sync + 'static {
    const RANK: usize;
    const DIM: usize;

    fn zero() -> Self;
    fn components(&self) -> &[Complex];
    fn components_mut(&mut self) -> &mut [Complex];

    /// Builds a spinor from a flat component slice; `None` on a length mismatch.
    fn from_components(c: &[Complex]) -> Option<Self> {
        if c.len() != Self::DIM {
            return None;
        }
        let mut s = Self::zero();
        s.components_mut().copy_from_slice(c);
        Some(s)
    }

    fn norm_sqr(&self) -> f64 {
        self.components().iter().map(|z| z.norm_sqr()).sum()
    }

    fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    fn is_zero(&self) -> bool {
        self.components().iter().all(|z| *z == ZERO)
    }

    fn is_finite(&self) -> bool {
        self.components().iter().all(|z| z.is_finite())
    }

    fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        let mut out = *self;
        out.components_mut().iter_mut().for_each(|z| *z = f(*z));
        out
    }

    fn scaled(&self, k: Complex) -> Self {
        self.map(|z| z * k)
    }

    /// Componentwise complex conjugate (not the antipodal map).
    fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// `a * self + b * other`.
    fn combine(&self, a: Complex, other: &Self, b: Complex) -> Self {
        let mut out = Self::zero();
        for ((o, x), y) in out
            .components_mut()
            .iter_mut()
            .zip(self.components())
            .zip(other.components())
        {
            *o = a * x + b * y;
        }
        out
    }

    fn normalized(&self) -> Result<Self> {
        check_nonzero(self)?;
        Ok(self.scaled(Complex::from(1.0 / self.norm())))
    }

    /// Largest componentwise modulus of `self - other`.
    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn check_nonzero<S: Spinor>(s: &S) -> Result<()> {
    if !s.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    if s.is_zero() {
        return Err(GeometryError::ZeroSpinor);
    }
    Ok(())
}

macro_rules! spinor_type {
    ($(#[$meta:meta])* $name:ident, $rank:expr, $dim:expr) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct $name(pub [Complex; $dim]);

        impl Spinor for $name {
            const RANK: usize = $rank;
            const DIM: usize = $dim;

            fn zero() -> Self {
                $name([ZERO; $dim])
            }
            fn components(&self) -> &[Complex] {
                &self.0
            }
            fn components_mut(&mut self) -> &mut [Complex] {
                &mut self.0
            }
        }

        impl Default for $name {
            fn default() -> Self {
                Self::zero()
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                self.combine(Complex::from(1.0), &rhs, Complex::from(1.0))
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                self.combine(Complex::from(1.0), &rhs, Complex::from(-1.0))
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                self.map(|z| -z)
            }
        }

        impl Mul<Complex> for $name {
            type Output = $name;
            fn mul(self, k: Complex) -> $name {
                self.scaled(k)
            }
        }

        impl Mul<f64> for $name {
            type Output = $name;
            fn mul(self, k: f64) -> $name {
                self.scaled(Complex::from(k))
            }
        }
    };
}

spinor_type!(
    /// One-qubit spinor `psi^A`.
    Spinor1, 1, 2
);
spinor_type!(
    /// Two-qubit spinor `psi^{AB}`, index `2A + B`.
    Spinor2, 2, 4
);
spinor_type!(
    /// Three-qubit spinor `psi^{ABC}`, index `4A + 2B + C`.
    Spinor3, 3, 8
);

impl Spinor1 {
    pub const UP: Spinor1 = Spinor1([Complex::new(1.0, 0.0), ZERO]);
    pub const DOWN: Spinor1 = Spinor1([ZERO, Complex::new(1.0, 0.0)]);

    pub fn new(a: Complex, b: Complex) -> Self {
        Spinor1([a, b])
    }

    /// Lowered form `psi_B = psi^A eps_{AB}`, i.e. `(a, b) -> (-b, a)`.
    pub fn lowered(&self) -> Spinor1 {
        Spinor1([-self.0[1], self.0[0]])
    }

    /// The invariant skew pairing `self^A other_A = eps_{AB} self^A other^B`.
    pub fn skew(&self, other: &Spinor1) -> Complex {
        self.0[0] * other.0[1] - self.0[1] * other.0[0]
    }
}

impl Spinor2 {
    pub fn outer(a: &Spinor1, b: &Spinor1) -> Self {
        let mut out = Spinor2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[2 * i + j] = a.0[i] * b.0[j];
            }
        }
        out
    }

    /// The component `psi^{AB}` viewed as a 2x2 matrix with rows `A`.
    pub fn matrix(&self) -> [[Complex; 2]; 2] {
        [[self.0[0], self.0[1]], [self.0[2], self.0[3]]]
    }

    /// `psi^{BA}`.
    pub fn transposed(&self) -> Spinor2 {
        Spinor2([self.0[0], self.0[2], self.0[1], self.0[3]])
    }
}

impl Spinor3 {
    pub fn outer(a: &Spinor1, b: &Spinor1, c: &Spinor1) -> Self {
        let mut out = Spinor3::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out.0[4 * i + 2 * j + k] = a.0[i] * b.0[j] * c.0[k];
                }
            }
        }
        out
    }

    /// A single computational basis state `|abc>`.
    pub fn basis(a: usize, b: usize, c: usize) -> Self {
        let mut out = Spinor3::zero();
        out.0[4 * a + 2 * b + c] = Complex::from(1.0);
        out
    }

    /// Reorders slots so that result slot `i` is input slot `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Spinor3 {
        let mut out = Spinor3::zero();
        for idx in 0..8 {
            let bits = [idx >> 2 & 1, idx >> 1 & 1, idx & 1];
            let mut src = [0usize; 3];
            for i in 0..3 {
                src[perm[i]] = bits[i];
            }
            out.0[idx] = self.0[4 * src[0] + 2 * src[1] + src[2]];
        }
        out
    }
}

impl Index<usize> for Spinor1 {
    type Output = Complex;
    fn index(&self, a: usize) -> &Complex {
        &self.0[a]
    }
}

impl IndexMut<usize> for Spinor1 {
    fn index_mut(&mut self, a: usize) -> &mut Complex {
        &mut self.0[a]
    }
}

impl Index<(usize, usize)> for Spinor2 {
    type Output = Complex;
    fn index(&self, (a, b): (usize, usize)) -> &Complex {
        &self.0[2 * a + b]
    }
}

impl IndexMut<(usize, usize)> for Spinor2 {
    fn index_mut(&mut self, (a, b): (usize, usize)) -> &mut Complex {
        &mut self.0[2 * a + b]
    }
}

impl Index<(usize, usize, usize)> for Spinor3 {
    type Output = Complex;
    fn index(&self, (a, b, c): (usize, usize, usize)) -> &Complex {
        &self.0[4 * a + 2 * b + c]
    }
}

impl IndexMut<(usize, usize, usize)> for Spinor3 {
    fn index_mut(&mut self, (a, b, c): (usize, usize, usize)) -> &mut Complex {
        &mut self.0[4 * a + 2 * b + c]
    }
}

fn slot_bit<S: Spinor>(slot: usize) -> Result<usize> {
    if slot >= S::RANK {
        return Err(GeometryError::InvalidSlot {
            slot,
            rank: S::RANK,
        });
    }
    Ok(1 << (S::RANK - 1 - slot))
}

/// Lowers one slot: `psi_B = psi^A eps_{AB}`.
pub fn lower_index<S: Spinor>(s: &S, slot: usize) -> Result<S> {
    let bit = slot_bit::<S>(slot)?;
    let src = s.components();
    let mut out = S::zero();
    let dst = out.components_mut();
    for i in 0..S::DIM {
        dst[i] = if i & bit == 0 {
            -src[i | bit]
        } else {
            src[i & !bit]
        };
    }
    Ok(out)
}

/// Raises one slot: `psi^A = eps^{AB} psi_B`. Exact inverse of [`lower_index`].
pub fn raise_index<S: Spinor>(s: &S, slot: usize) -> Result<S> {
    let bit = slot_bit::<S>(slot)?;
    let src = s.components();
    let mut out = S::zero();
    let dst = out.components_mut();
    for i in 0..S::DIM {
        dst[i] = if i & bit == 0 {
            src[i | bit]
        } else {
            -src[i & !bit]
        };
    }
    Ok(out)
}

/// Lowers every slot.
pub fn lower_all<S: Spinor>(s: &S) -> S {
    (0..S::RANK).fold(*s, |acc, slot| {
        lower_index(&acc, slot).expect("slot within rank")
    })
}

/// Average over the six slot permutations, `psi^{(ABC)}`.
pub fn symmetrize(s: &Spinor3) -> Spinor3 {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Spinor3::zero();
    for p in PERMS {
        let q = s.permuted(p);
        for (o, z) in out.0.iter_mut().zip(q.0) {
            *o += z;
        }
    }
    out * (1.0 / 6.0)
}

/// The antipodal state `(a, b) -> (-conj b, conj a)`.
pub fn conjugate_state(s: &Spinor1) -> Result<Spinor1> {
    check_nonzero(s)?;
    Ok(Spinor1([-s.0[1].conj(), s.0[0].conj()]))
}

/// Hermitian inner product, conjugate-linear in `p`.
pub fn inner_product<S: Spinor>(p: &S, q: &S) -> Complex {
    p.components()
        .iter()
        .zip(q.components())
        .map(|(a, b)| a.conj() * b)
        .sum()
}

/// Normalized overlap `|<p,q>|^2 / (<p,p><q,q>)`, clamped to `[0, 1]`.
pub(crate) fn normalized_overlap<S: Spinor>(p: &S, q: &S) -> f64 {
    let num = inner_product(p, q).norm_sqr();
    let den = p.norm_sqr() * q.norm_sqr();
    (num / den).clamp(0.0, 1.0)
}

pub(crate) fn projectively_close<S: Spinor>(p: &S, q: &S, tol: f64) -> bool {
    let num = inner_product(p, q).norm_sqr();
    num >= (1.0 - tol) * p.norm_sqr() * q.norm_sqr()
}

/// A ray through the origin, represented by any nonzero spinor.
#[derive(Debug, Clone, Copy)]
pub struct ProjectivePoint<S: Spinor> {
    rep: S,
    tol: f64,
}

impl<S: Spinor> ProjectivePoint<S> {
    pub fn new(rep: S) -> Result<Self> {
        check_nonzero(&rep)?;
        Ok(ProjectivePoint {
            rep,
            tol: PROJECTIVE_TOL,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn rep(&self) -> &S {
        &self.rep
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Unit-norm representative.
    pub fn unit(&self) -> S {
        self.rep.scaled(Complex::from(1.0 / self.rep.norm()))
    }
}

impl<S: Spinor> PartialEq for ProjectivePoint<S> {
    fn eq(&self, other: &Self) -> bool {
        projective_equal(self, other)
    }
}

/// Scale-invariant equality, using the tolerance of `p`.
pub fn projective_equal<S: Spinor>(p: &ProjectivePoint<S>, q: &ProjectivePoint<S>) -> bool {
    projectively_close(&p.rep, &q.rep, p.tol)
}

/// A spinor whose rank is only known at run time, e.g. one read from a file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnySpinor {
    One(Spinor1),
    Two(Spinor2),
    Three(Spinor3),
}

impl AnySpinor {
    pub fn from_components(qubits: usize, c: &[Complex]) -> Result<Self> {
        let expected = match qubits {
            1..=3 => 1usize << qubits,
            n => return Err(GeometryError::UnsupportedQubits(n)),
        };
        if c.len() != expected {
            return Err(GeometryError::RankMismatch {
                left: expected,
                right: c.len(),
            });
        }
        Ok(match qubits {
            1 => AnySpinor::One(Spinor1::from_components(c).expect("length checked")),
            2 => AnySpinor::Two(Spinor2::from_components(c).expect("length checked")),
            _ => AnySpinor::Three(Spinor3::from_components(c).expect("length checked")),
        })
    }

    pub fn qubits(&self) -> usize {
        match self {
            AnySpinor::One(_) => 1,
            AnySpinor::Two(_) => 2,
            AnySpinor::Three(_) => 3,
        }
    }

    pub fn components(&self) -> &[Complex] {
        match self {
            AnySpinor::One(s) => s.components(),
            AnySpinor::Two(s) => s.components(),
            AnySpinor::Three(s) => s.components(),
        }
    }

    pub fn inner_product(&self, other: &AnySpinor) -> Result<Complex> {
        match (self, other) {
            (AnySpinor::One(p), AnySpinor::One(q)) => Ok(inner_product(p, q)),
            (AnySpinor::Two(p), AnySpinor::Two(q)) => Ok(inner_product(p, q)),
            (AnySpinor::Three(p), AnySpinor::Three(q)) => Ok(inner_product(p, q)),
            _ => Err(GeometryError::RankMismatch {
                left: self.qubits(),
                right: other.qubits(),
            }),
        }
    }

    pub fn normalized(&self) -> Result<AnySpinor> {
        Ok(match self {
            AnySpinor::One(s) => AnySpinor::One(s.normalized()?),
            AnySpinor::Two(s) => AnySpinor::Two(s.normalized()?),
            AnySpinor::Three(s) => AnySpinor::Three(s.normalized()?),
        })
    }
}

impl From<Spinor1> for AnySpinor {
    fn from(s: Spinor1) -> Self {
        AnySpinor::One(s)
    }
}

impl From<Spinor2> for AnySpinor {
    fn from(s: Spinor2) -> Self {
        AnySpinor::Two(s)
    }
}

impl From<Spinor3> for AnySpinor {
    fn from(s: Spinor3) -> Self {
        AnySpinor::Three(s)
    }
}
