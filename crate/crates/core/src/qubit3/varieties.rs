use crate::error::{GeometryError, Result};
use crate::qubit3::is_symmetric;
use crate::spinor::{
    check_nonzero, lower_all, projectively_close, symmetrize, Spinor, Spinor1, Spinor3, Tensor,
    Variance, PROJECTIVE_TOL,
};
use crate::Complex;

/// Relative tolerance for the twisted cubic, developable, tangent-line and
/// osculating-plane predicates.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// The symmetric 2x2 tensor `Q_{AB} = psi_A^{CD} psi_{BCD}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QTensor(pub [[Complex; 2]; 2]);

impl QTensor {
    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `Q_{AB} Q^{AB}`.
    pub fn self_contraction(&self) -> Complex {
        let flat = [self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1]];
        let lower = Tensor::from_parts(&[Variance::Lower; 2], &flat).expect("rank 2");
        let upper = lower
            .raise_index(0)
            .and_then(|t| t.raise_index(1))
            .expect("rank 2");
        lower
            .contract(&upper, &[(0, 0), (1, 1)])
            .and_then(|t| {
                t.scalar_value()
                    .ok_or(GeometryError::InvalidPairing("rank"))
            })
            .expect("opposite variance")
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.0[0][1] - self.0[1][0]).norm() <= tol * self.norm().max(f64::MIN_POSITIVE)
    }
}

/// `M_{AB} = psi_A^{CD} psi_{BCD}` for an arbitrary (not symmetrized) state.
pub(crate) fn pair_contraction(psi: &Spinor3) -> QTensor {
    let up = Tensor::from_spinor(psi);
    let first = up.lower_index(0).expect("slot 0");
    let all = up.all_lowered().expect("rank 3");
    let m = first
        .contract(&all, &[(1, 1), (2, 2)])
        .expect("opposite variance");
    let d = m.data();
    QTensor([[d[0], d[1]], [d[2], d[3]]])
}

/// `Q_{AB}` of the symmetric part of `psi`.
pub fn q_tensor(psi: &Spinor3) -> QTensor {
    pair_contraction(&symmetrize(psi))
}

/// Symmetric with vanishing `Q`: the state is `v v v` for some `v`.
pub fn on_twisted_cubic(psi: &Spinor3) -> bool {
    is_symmetric(psi) && q_tensor(psi).norm() < MEMBERSHIP_TOL * psi.norm_sqr()
}

/// Symmetric with `Q_{AB} Q^{AB} = 0`: on the quartic swept out by tangent
/// lines of the twisted cubic.
pub fn on_tangent_developable_sym(psi: &Spinor3) -> bool {
    if !is_symmetric(psi) {
        return false;
    }
    let q = q_tensor(psi);
    let n2 = psi.norm_sqr();
    q.self_contraction().norm() < MEMBERSHIP_TOL * (q.norm().powi(2) + n2 * n2)
}

/// `r_A = psi_{ABC} alpha^B alpha^C`.
fn tangent_residual(psi: &Spinor3, alpha: &Spinor1) -> [Complex; 2] {
    let low = lower_all(psi);
    let mut r = [Complex::new(0.0, 0.0); 2];
    for (a, ra) in r.iter_mut().enumerate() {
        for b in 0..2 {
            for c in 0..2 {
                *ra += low[(a, b, c)] * alpha[b] * alpha[c];
            }
        }
    }
    r
}

/// `psi_{ABC} alpha^A alpha^B alpha^C`.
fn osculating_residual(psi: &Spinor3, alpha: &Spinor1) -> Complex {
    let r = tangent_residual(psi, alpha);
    r[0] * alpha[0] + r[1] * alpha[1]
}

/// Whether a symmetric `psi` lies on the tangent line of the twisted cubic
/// at `alpha alpha alpha`, i.e. `psi_{ABC} alpha^B alpha^C = 0`.
///
/// Non-symmetric states are never members.
pub fn tangent_line_membership(psi: &Spinor3, alpha: &Spinor1) -> Result<bool> {
    check_nonzero(alpha)?;
    if !is_symmetric(psi) {
        return Ok(false);
    }
    let r = tangent_residual(psi, alpha);
    let size = (r[0].norm_sqr() + r[1].norm_sqr()).sqrt();
    Ok(size < MEMBERSHIP_TOL * psi.norm() * alpha.norm_sqr())
}

/// Whether a symmetric `psi` lies on the osculating plane at
/// `alpha alpha alpha`, i.e. `psi_{ABC} alpha^A alpha^B alpha^C = 0`.
pub fn osculating_plane_membership(psi: &Spinor3, alpha: &Spinor1) -> Result<bool> {
    check_nonzero(alpha)?;
    if !is_symmetric(psi) {
        return Ok(false);
    }
    let r = osculating_residual(psi, alpha);
    Ok(r.norm() < MEMBERSHIP_TOL * psi.norm() * alpha.norm().powi(3))
}

/// Basis of the symmetric subspace: `e_k` sums the basis states with `k`
/// down spins.
fn symmetric_basis() -> [Spinor3; 4] {
    let mut e = [Spinor3::zero(); 4];
    for idx in 0..8usize {
        e[idx.count_ones() as usize].0[idx] = Complex::from(1.0);
    }
    e
}

fn det3(m: [[Complex; 3]; 3]) -> Complex {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// The symmetric state where the tangent line at `alpha alpha alpha` meets
/// the osculating plane at `beta beta beta`, unit norm.
///
/// Solved as the one-dimensional kernel of the three linear conditions on
/// the symmetric subspace. For `beta` the antipode of `alpha` this is the
/// W state along `alpha`; swapping the arguments gives the opposite
/// `S_z = -1/2` member.
pub fn tangent_osculating_intersection(alpha: &Spinor1, beta: &Spinor1) -> Result<Spinor3> {
    let a = alpha.normalized()?;
    let b = beta.normalized()?;
    if projectively_close(&a, &b, PROJECTIVE_TOL) {
        return Err(GeometryError::CoincidentPoints);
    }
    let basis = symmetric_basis();
    let mut rows = [[Complex::new(0.0, 0.0); 4]; 3];
    for (k, e) in basis.iter().enumerate() {
        let t = tangent_residual(e, &a);
        rows[0][k] = t[0];
        rows[1][k] = t[1];
        rows[2][k] = osculating_residual(e, &b);
    }
    // Kernel of a rank-3 3x4 system by signed maximal minors.
    let mut coeffs = [Complex::new(0.0, 0.0); 4];
    for (j, cj) in coeffs.iter_mut().enumerate() {
        let mut minor = [[Complex::new(0.0, 0.0); 3]; 3];
        for (r, row) in rows.iter().enumerate() {
            let mut col = 0;
            for (k, &v) in row.iter().enumerate() {
                if k != j {
                    minor[r][col] = v;
                    col += 1;
                }
            }
        }
        let d = det3(minor);
        *cj = if j % 2 == 0 { d } else { -d };
    }
    let size = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if size < 1e-12 {
        return Err(GeometryError::CoincidentPoints);
    }
    let mut psi = Spinor3::zero();
    for (e, k) in basis.iter().zip(coeffs) {
        psi = psi + *e * k;
    }
    psi.normalized()
}
