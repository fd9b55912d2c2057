use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("slot {slot} is out of range for a rank-{rank} spinor")]
    InvalidSlot { slot: usize, rank: usize },

    #[error("invalid contraction pairing: {0}")]
    InvalidPairing(&'static str),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("zero spinor has no projective meaning")]
    ZeroSpinor,

    #[error("non-finite component")]
    NonFinite,

    #[error("unsupported qubit count {0}; expected 1, 2 or 3")]
    UnsupportedQubits(usize),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("line endpoints are projectively identical")]
    DegenerateLine,

    #[error("line lies entirely on the quadric")]
    LineOnQuadric,

    #[error("not a product state (concurrence {concurrence:e})")]
    NotProductState { concurrence: f64 },

    #[error("state is off the singlet/triplet line (residual {residual:e})")]
    NotOnLine { residual: f64 },

    #[error("state has a symmetric part (relative size {relative:e})")]
    HasSymmetricPart { relative: f64 },

    #[error("base points coincide projectively")]
    CoincidentPoints,

    #[error("inconsistent local ranks {0:?}")]
    InconsistentRanks([u8; 3]),

    #[error("singular local operator (|det| = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(&'static str),
}
