use crate::error::{GeometryError, Result};
use crate::spinor::Spinor;
use crate::Complex;

/// Largest rank a [`Tensor`] can hold; enough for the outer product of two
/// three-qubit spinors.
pub const MAX_RANK: usize = 6;

const CAP: usize = 1 << MAX_RANK;
const ZERO: Complex = Complex::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Upper,
    Lower,
}

impl Variance {
    pub fn flipped(self) -> Variance {
        match self {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        }
    }
}

/// A two-spinor with per-slot variance, stored inline (no heap).
///
/// Slot 0 is the most significant bit of the flat component index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tensor {
    rank: usize,
    variance: [Variance; MAX_RANK],
    data: [Complex; CAP],
}

impl Tensor {
    fn empty(rank: usize) -> Tensor {
        Tensor {
            rank,
            variance: [Variance::Upper; MAX_RANK],
            data: [ZERO; CAP],
        }
    }

    pub fn scalar(z: Complex) -> Tensor {
        let mut t = Tensor::empty(0);
        t.data[0] = z;
        t
    }

    /// Upper-index tensor with the components of `s`.
    pub fn from_spinor<S: Spinor>(s: &S) -> Tensor {
        let mut t = Tensor::empty(S::RANK);
        t.data[..S::DIM].copy_from_slice(s.components());
        t
    }

    /// Builds a tensor from explicit variances and components.
    pub fn from_parts(variance: &[Variance], data: &[Complex]) -> Result<Tensor> {
        if variance.len() > MAX_RANK {
            return Err(GeometryError::InvalidPairing(
                "rank exceeds tensor capacity",
            ));
        }
        if data.len() != 1 << variance.len() {
            return Err(GeometryError::RankMismatch {
                left: 1 << variance.len(),
                right: data.len(),
            });
        }
        let mut t = Tensor::empty(variance.len());
        t.variance[..variance.len()].copy_from_slice(variance);
        t.data[..data.len()].copy_from_slice(data);
        Ok(t)
    }

    fn epsilon(v: Variance) -> Tensor {
        let mut t = Tensor::empty(2);
        t.variance[0] = v;
        t.variance[1] = v;
        t.data[1] = Complex::from(1.0);
        t.data[2] = Complex::from(-1.0);
        t
    }

    /// `eps^{AB}` with `eps^{01} = +1`.
    pub fn epsilon_upper() -> Tensor {
        Tensor::epsilon(Variance::Upper)
    }

    /// `eps_{AB}`, numerically identical to `eps^{AB}`.
    pub fn epsilon_lower() -> Tensor {
        Tensor::epsilon(Variance::Lower)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn variance(&self, slot: usize) -> Option<Variance> {
        (slot < self.rank).then(|| self.variance[slot])
    }

    pub fn data(&self) -> &[Complex] {
        &self.data[..1 << self.rank]
    }

    pub fn get(&self, idx: &[usize]) -> Option<Complex> {
        if idx.len() != self.rank || idx.iter().any(|&i| i > 1) {
            return None;
        }
        Some(self.data[flat(idx)])
    }

    /// Value of a rank-0 tensor.
    pub fn scalar_value(&self) -> Option<Complex> {
        (self.rank == 0).then(|| self.data[0])
    }

    /// Components as a spinor of matching rank, ignoring variance.
    pub fn to_spinor<S: Spinor>(&self) -> Result<S> {
        if self.rank != S::RANK {
            return Err(GeometryError::RankMismatch {
                left: self.rank,
                right: S::RANK,
            });
        }
        Ok(S::from_components(self.data()).expect("length matches rank"))
    }

    /// Moves slot `from` to position `to`, shifting the slots in between.
    pub fn move_slot(&self, from: usize, to: usize) -> Result<Tensor> {
        for s in [from, to] {
            if s >= self.rank {
                return Err(GeometryError::InvalidSlot {
                    slot: s,
                    rank: self.rank,
                });
            }
        }
        let mut order = [0usize; MAX_RANK];
        let mut n = 0;
        for s in 0..self.rank {
            if s != from {
                order[n] = s;
                n += 1;
            }
        }
        // order[..rank-1] holds the remaining slots; splice `from` in at `to`.
        order.copy_within(to..self.rank - 1, to + 1);
        order[to] = from;
        Ok(self.permuted(&order[..self.rank]))
    }

    /// Result slot `i` is input slot `perm[i]`.
    fn permuted(&self, perm: &[usize]) -> Tensor {
        let mut out = Tensor::empty(self.rank);
        for (i, &p) in perm.iter().enumerate() {
            out.variance[i] = self.variance[p];
        }
        let mut idx = [0usize; MAX_RANK];
        let mut src = [0usize; MAX_RANK];
        for k in 0..1 << self.rank {
            unflat(k, &mut idx[..self.rank]);
            for (i, &p) in perm.iter().enumerate() {
                src[p] = idx[i];
            }
            out.data[k] = self.data[flat(&src[..self.rank])];
        }
        out
    }

    /// Einstein summation over the paired slots `(slot of self, slot of other)`.
    ///
    /// The free slots of `self` come first in the result, then those of
    /// `other`, each in their original order.
    pub fn contract(&self, other: &Tensor, pairs: &[(usize, usize)]) -> Result<Tensor> {
        let mut used_a = [false; MAX_RANK];
        let mut used_b = [false; MAX_RANK];
        for &(a, b) in pairs {
            if a >= self.rank || b >= other.rank {
                return Err(GeometryError::InvalidPairing("slot out of range"));
            }
            if used_a[a] || used_b[b] {
                return Err(GeometryError::InvalidPairing("slot paired twice"));
            }
            if self.variance[a] == other.variance[b] {
                return Err(GeometryError::InvalidPairing(
                    "paired slots must have opposite variance",
                ));
            }
            used_a[a] = true;
            used_b[b] = true;
        }
        let out_rank = self.rank + other.rank - 2 * pairs.len();
        if out_rank > MAX_RANK {
            return Err(GeometryError::InvalidPairing(
                "result rank exceeds capacity",
            ));
        }

        let mut out = Tensor::empty(out_rank);
        let mut n = 0;
        for s in (0..self.rank).filter(|&s| !used_a[s]) {
            out.variance[n] = self.variance[s];
            n += 1;
        }
        for s in (0..other.rank).filter(|&s| !used_b[s]) {
            out.variance[n] = other.variance[s];
            n += 1;
        }

        let mut ia = [0usize; MAX_RANK];
        let mut ib = [0usize; MAX_RANK];
        let mut io = [0usize; MAX_RANK];
        for ka in 0..1 << self.rank {
            if self.data[ka] == ZERO {
                continue;
            }
            unflat(ka, &mut ia[..self.rank]);
            'inner: for kb in 0..1 << other.rank {
                unflat(kb, &mut ib[..other.rank]);
                for &(a, b) in pairs {
                    if ia[a] != ib[b] {
                        continue 'inner;
                    }
                }
                let mut n = 0;
                for s in (0..self.rank).filter(|&s| !used_a[s]) {
                    io[n] = ia[s];
                    n += 1;
                }
                for s in (0..other.rank).filter(|&s| !used_b[s]) {
                    io[n] = ib[s];
                    n += 1;
                }
                out.data[flat(&io[..out_rank])] += self.data[ka] * other.data[kb];
            }
        }
        Ok(out)
    }

    /// Lowers an upper slot via `psi_B = psi^A eps_{AB}`.
    pub fn lower_index(&self, slot: usize) -> Result<Tensor> {
        match self.variance(slot) {
            None => Err(GeometryError::InvalidSlot {
                slot,
                rank: self.rank,
            }),
            Some(Variance::Lower) => Err(GeometryError::InvalidPairing("slot is already lower")),
            Some(Variance::Upper) => {
                let t = self.contract(&Tensor::epsilon_lower(), &[(slot, 0)])?;
                t.move_slot(self.rank - 1, slot)
            }
        }
    }

    /// Raises a lower slot via `psi^A = eps^{AB} psi_B`.
    pub fn raise_index(&self, slot: usize) -> Result<Tensor> {
        match self.variance(slot) {
            None => Err(GeometryError::InvalidSlot {
                slot,
                rank: self.rank,
            }),
            Some(Variance::Upper) => Err(GeometryError::InvalidPairing("slot is already upper")),
            Some(Variance::Lower) => {
                let t = Tensor::epsilon_upper().contract(self, &[(1, slot)])?;
                t.move_slot(0, slot)
            }
        }
    }

    /// Tensor with every slot lowered.
    pub fn all_lowered(&self) -> Result<Tensor> {
        let mut t = *self;
        for s in 0..self.rank {
            if t.variance[s] == Variance::Upper {
                t = t.lower_index(s)?;
            }
        }
        Ok(t)
    }
}

fn flat(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| (acc << 1) | i)
}

fn unflat(mut k: usize, idx: &mut [usize]) {
    for slot in idx.iter_mut().rev() {
        *slot = k & 1;
        k >>= 1;
    }
}
