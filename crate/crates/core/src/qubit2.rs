//! Two qubits: the Segre quadric of product states, concurrence,
//! singlet/triplet states and the conic of symmetric product states.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{GeometryError, Result};
use crate::projective::{line_quadric_intersect, BilinearForm, ProjectiveLine};
use crate::spinor::{check_nonzero, conjugate_state, inner_product, Spinor, Spinor1, Spinor2};
use crate::Complex;

/// Concurrence below which a state is treated as a product.
pub const FACTOR_TOL: f64 = 1e-8;

/// Relative tolerance for the conic and quadric predicates.
pub const CONIC_TOL: f64 = 1e-10;

/// Relative residual allowed when checking membership of the
/// singlet/triplet line.
pub const LINE_TOL: f64 = 1e-9;

fn eps(a: usize, b: usize) -> f64 {
    match (a, b) {
        (0, 1) => 1.0,
        (1, 0) => -1.0,
        _ => 0.0,
    }
}

/// The symmetric form `(phi, psi) -> eps_{AC} eps_{BD} phi^{AB} psi^{CD}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QuadricForm2;

impl BilinearForm<Spinor2> for QuadricForm2 {
    fn eval(&self, phi: &Spinor2, psi: &Spinor2) -> Complex {
        let mut acc = Complex::from(0.0);
        for a in 0..2 {
            for c in 0..2 {
                let e1 = eps(a, c);
                if e1 == 0.0 {
                    continue;
                }
                for b in 0..2 {
                    for d in 0..2 {
                        let e2 = eps(b, d);
                        if e2 != 0.0 {
                            acc += e1 * e2 * phi[(a, b)] * psi[(c, d)];
                        }
                    }
                }
            }
        }
        acc
    }
}

/// `eps_{AC} eps_{BD} psi^{AB} psi^{CD}`; vanishes exactly on product states.
pub fn quadric_value(psi: &Spinor2) -> Complex {
    QuadricForm2.eval(psi, psi)
}

/// `|quadric_value| / <psi, psi>`: 0 on products, 1 on maximally entangled
/// states.
pub fn concurrence(psi: &Spinor2) -> Result<f64> {
    check_nonzero(psi)?;
    Ok(quadric_value(psi).norm() / psi.norm_sqr())
}

/// A pair of one-qubit factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductPair {
    pub first: Spinor1,
    pub second: Spinor1,
}

impl ProductPair {
    pub fn new(first: Spinor1, second: Spinor1) -> Result<Self> {
        check_nonzero(&first)?;
        check_nonzero(&second)?;
        Ok(ProductPair { first, second })
    }
}

/// `psi^{AB} = phi_1^A phi_2^B`.
pub fn segre_embed(p: &ProductPair) -> Spinor2 {
    Spinor2::outer(&p.first, &p.second)
}

/// Recovers the factors of a product state from its dominant row and column.
pub fn segre_factor(psi: &Spinor2) -> Result<ProductPair> {
    segre_factor_with_tol(psi, FACTOR_TOL)
}

/// [`segre_factor`] with an explicit concurrence cut.
pub fn segre_factor_with_tol(psi: &Spinor2, tol: f64) -> Result<ProductPair> {
    let c = concurrence(psi)?;
    if c >= tol {
        return Err(GeometryError::NotProductState { concurrence: c });
    }
    let m = psi.matrix();
    let (mut bi, mut bj) = (0, 0);
    for i in 0..2 {
        for j in 0..2 {
            if m[i][j].norm() > m[bi][bj].norm() {
                (bi, bj) = (i, j);
            }
        }
    }
    // psi = u v^T = column(bj) ⊗ row(bi) / psi[bi][bj]
    let column = Spinor1::new(m[0][bj], m[1][bj]);
    let row = Spinor1::new(m[bi][0], m[bi][1]) * (Complex::from(1.0) / m[bi][bj]);
    let n = column.norm();
    ProductPair::new(column * (1.0 / n), row * n)
}

/// `eps^{AB} / sqrt 2`.
pub fn singlet() -> Spinor2 {
    let h = FRAC_1_SQRT_2;
    Spinor2([
        Complex::from(0.0),
        Complex::from(h),
        Complex::from(-h),
        Complex::from(0.0),
    ])
}

/// Spin projection of a triplet state along a chosen axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripletProjection {
    Plus,
    Zero,
    Minus,
}

impl TryFrom<i32> for TripletProjection {
    type Error = GeometryError;
    fn try_from(m: i32) -> Result<Self> {
        match m {
            1 => Ok(TripletProjection::Plus),
            0 => Ok(TripletProjection::Zero),
            -1 => Ok(TripletProjection::Minus),
            _ => Err(GeometryError::OutOfRange {
                name: "m",
                value: m as f64,
                range: "{-1, 0, 1}",
            }),
        }
    }
}

/// Unit-norm triplet state along the axis of `psi`: `psi psi`,
/// `(psi hat + hat psi)/sqrt 2` or `hat hat`, where `hat` is the antipode.
pub fn triplet(psi: &Spinor1, m: TripletProjection) -> Result<Spinor2> {
    let u = psi.normalized()?;
    let v = conjugate_state(&u)?;
    let state = match m {
        TripletProjection::Plus => Spinor2::outer(&u, &u),
        TripletProjection::Minus => Spinor2::outer(&v, &v),
        TripletProjection::Zero => {
            (Spinor2::outer(&u, &v) + Spinor2::outer(&v, &u)) * FRAC_1_SQRT_2
        }
    };
    state.normalized()
}

/// The two product states reached by measuring spin along `direction` on a
/// state of the line joining the singlet and the `m = 0` triplet.
///
/// Returned as `(psi ⊗ hat, hat ⊗ psi)`, each unit norm.
pub fn measurement_outcomes(state: &Spinor2, direction: &Spinor1) -> Result<(Spinor2, Spinor2)> {
    check_nonzero(state)?;
    let t0 = triplet(direction, TripletProjection::Zero)?;
    let line = ProjectiveLine::through(&singlet(), &t0)?;
    let residual = line.residual(state)?;
    if residual > LINE_TOL {
        return Err(GeometryError::NotOnLine { residual });
    }
    let hit = line_quadric_intersect(&line, &QuadricForm2)?;
    let u = direction.normalized()?;
    let v = conjugate_state(&u)?;
    let first = Spinor2::outer(&u, &v);
    let [a, b] = hit.points;
    let overlap = |x: &Spinor2| inner_product(&first, x).norm_sqr();
    if overlap(&a) >= overlap(&b) {
        Ok((a, b))
    } else {
        Ok((b, a))
    }
}

/// Symmetric (antisymmetric part below tolerance) and on the quadric.
pub fn on_conic(psi: &Spinor2) -> bool {
    let n = psi.norm();
    if n == 0.0 || !psi.is_finite() {
        return false;
    }
    let antisym = (psi[(0, 1)] - psi[(1, 0)]).norm() * FRAC_1_SQRT_2;
    antisym < CONIC_TOL * n && quadric_value(psi).norm() < CONIC_TOL * n * n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{apply_local, Matrix2};
    use crate::projective::fs_distance_spinors;
    use crate::qubit1::{spinor_from_angles, SphericalDirection};
    use crate::spinor::{random_spinor, seeded_rng};
    use rand::Rng;

    fn c(re: f64) -> Complex {
        Complex::from(re)
    }

    /// Closed-form oracle `2 (psi00 psi11 - psi01 psi10)`.
    fn det_oracle(s: &Spinor2) -> Complex {
        2.0 * (s.0[0] * s.0[3] - s.0[1] * s.0[2])
    }

    #[test]
    fn quadric_examples() {
        let ud = Spinor2::outer(&Spinor1::UP, &Spinor1::DOWN);
        assert_eq!(quadric_value(&ud), c(0.0));
        assert!((quadric_value(&singlet()).norm() - 1.0).abs() < 1e-15);
        let mut rng = seeded_rng(31);
        for _ in 0..100 {
            let a: Spinor1 = random_spinor(&mut rng);
            let b: Spinor1 = random_spinor(&mut rng);
            assert!(quadric_value(&segre_embed(&ProductPair::new(a, b).unwrap())).norm() < 1e-12);
        }
    }

    #[test]
    fn quadric_matches_oracle() {
        let mut rng = seeded_rng(32);
        for _ in 0..200 {
            let s: Spinor2 = random_spinor(&mut rng);
            let s = s * 1.7;
            assert!((quadric_value(&s) - det_oracle(&s)).norm() < 1e-14);
            let unit = s.normalized().unwrap();
            assert!((concurrence(&s).unwrap() - det_oracle(&unit).norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn concurrence_examples() {
        let h = FRAC_1_SQRT_2;
        let bell = Spinor2([c(h), c(0.0), c(0.0), c(h)]);
        assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-15);
        let partial = Spinor2([c(1.0), c(0.0), c(0.0), c(0.5)]);
        assert!((concurrence(&partial).unwrap() - 0.8).abs() < 1e-15);
        let prod = Spinor2::outer(&Spinor1::UP, &Spinor1::new(c(0.6), c(0.8)));
        assert_eq!(concurrence(&prod).unwrap(), 0.0);
        assert_eq!(
            concurrence(&Spinor2::zero()),
            Err(GeometryError::ZeroSpinor)
        );
    }

    #[test]
    fn concurrence_local_unitary_invariance() {
        let mut rng = seeded_rng(33);
        for _ in 0..1000 {
            let s: Spinor2 = random_spinor(&mut rng);
            let ops = [
                Matrix2::random_unitary(&mut rng),
                Matrix2::random_unitary(&mut rng),
            ];
            let t = apply_local(&ops, &s).unwrap();
            assert!((concurrence(&s).unwrap() - concurrence(&t).unwrap()).abs() < 1e-10);

            // invertible local maps keep products on the quadric
            let a: Spinor1 = random_spinor(&mut rng);
            let b: Spinor1 = random_spinor(&mut rng);
            let g = [
                Matrix2::random_gaussian(&mut rng),
                Matrix2::random_gaussian(&mut rng),
            ];
            let p = apply_local(&g, &Spinor2::outer(&a, &b)).unwrap();
            assert!(concurrence(&p).unwrap() < 1e-12);
        }
    }

    #[test]
    fn segre_embed_examples() {
        let pair = ProductPair::new(Spinor1::UP, Spinor1::DOWN).unwrap();
        assert_eq!(
            segre_embed(&pair),
            Spinor2([c(0.0), c(1.0), c(0.0), c(0.0)])
        );
        assert!(ProductPair::new(Spinor1::zero(), Spinor1::UP).is_err());

        // Bloch directions survive the embedding.
        let d1 = SphericalDirection::new(0.7, 1.1).unwrap();
        let d2 = SphericalDirection::new(2.2, 4.0).unwrap();
        let pair = ProductPair::new(spinor_from_angles(&d1), spinor_from_angles(&d2)).unwrap();
        let back = segre_factor(&segre_embed(&pair)).unwrap();
        for (orig, got) in [(d1, back.first), (d2, back.second)] {
            let got = crate::qubit1::angles_from_spinor(&got).unwrap();
            assert!((got.theta() - orig.theta()).abs() < 1e-12);
            assert!((got.phi() - orig.phi()).abs() < 1e-12);
        }
    }

    #[test]
    fn segre_factor_examples() {
        let ud = Spinor2::outer(&Spinor1::UP, &Spinor1::DOWN);
        let f = segre_factor(&ud).unwrap();
        assert!(fs_distance_spinors(&f.first, &Spinor1::UP).unwrap() < 1e-15);
        assert!(fs_distance_spinors(&f.second, &Spinor1::DOWN).unwrap() < 1e-15);
        assert!(matches!(
            segre_factor(&singlet()),
            Err(GeometryError::NotProductState { .. })
        ));

        let mut rng = seeded_rng(34);
        for _ in 0..1000 {
            let a: Spinor1 = random_spinor(&mut rng);
            let b: Spinor1 = random_spinor(&mut rng);
            let k = Complex::from_polar(rng.random_range(0.1..10.0), rng.random_range(0.0..6.0));
            let psi = Spinor2::outer(&a, &b) * k;
            let f = segre_factor(&psi).unwrap();
            assert!(fs_distance_spinors(&segre_embed(&f), &psi).unwrap() < 1e-8);
            assert!(segre_embed(&f).max_abs_diff(&psi) < 1e-12 * psi.norm());
        }
    }

    #[test]
    fn singlet_examples() {
        let s = singlet();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert_eq!(s.transposed(), -s);
        let mut rng = seeded_rng(35);
        for _ in 0..100 {
            let u = Matrix2::random_unitary(&mut rng);
            let t = apply_local(&[u, u], &s).unwrap();
            assert!(fs_distance_spinors(&s, &t).unwrap() < 1e-12);
        }
    }

    #[test]
    fn triplet_examples() {
        let t0 = triplet(&Spinor1::UP, TripletProjection::Zero).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!(t0.max_abs_diff(&Spinor2([c(0.0), c(h), c(h), c(0.0)])) < 1e-16);

        let mut rng = seeded_rng(36);
        for _ in 0..100 {
            let psi: Spinor1 = random_spinor(&mut rng);
            let plus = triplet(&psi, TripletProjection::Plus).unwrap();
            let minus = triplet(&psi, TripletProjection::Minus).unwrap();
            let zero = triplet(&psi, TripletProjection::Zero).unwrap();
            assert!(on_conic(&plus) && on_conic(&minus));
            assert!(!on_conic(&zero));
            assert!(inner_product(&plus, &zero).norm() < 1e-15);
            assert!(inner_product(&minus, &zero).norm() < 1e-15);
            assert!(inner_product(&singlet(), &zero).norm() < 1e-15);
        }
        assert!(TripletProjection::try_from(2).is_err());
        assert!(triplet(&Spinor1::zero(), TripletProjection::Plus).is_err());
    }

    #[test]
    fn measurement_examples() {
        let t0 = triplet(&Spinor1::UP, TripletProjection::Zero).unwrap();
        let ud = Spinor2::outer(&Spinor1::UP, &Spinor1::DOWN);
        let du = Spinor2::outer(&Spinor1::DOWN, &Spinor1::UP);
        for (a, b) in [(1.0, 0.0), (0.0, 1.0), (0.3, -0.8), (1.0, 2.0)] {
            let state = singlet() * c(a) + t0 * c(b);
            let (x, y) = measurement_outcomes(&state, &Spinor1::UP).unwrap();
            assert!(fs_distance_spinors(&x, &ud).unwrap() < 1e-12);
            assert!(fs_distance_spinors(&y, &du).unwrap() < 1e-12);
        }

        let off = Spinor2::outer(&Spinor1::UP, &Spinor1::UP);
        assert!(matches!(
            measurement_outcomes(&off, &Spinor1::UP),
            Err(GeometryError::NotOnLine { .. })
        ));
    }

    #[test]
    fn measurement_random_directions() {
        let mut rng = seeded_rng(37);
        for _ in 0..100 {
            let psi: Spinor1 = random_spinor(&mut rng);
            let hat = conjugate_state(&psi).unwrap();
            let t0 = triplet(&psi, TripletProjection::Zero).unwrap();
            let state = singlet() * Complex::new(rng.random_range(-1.0..1.0), 0.4) + t0;
            let (x, y) = measurement_outcomes(&state, &psi).unwrap();
            assert!(fs_distance_spinors(&x, &Spinor2::outer(&psi, &hat)).unwrap() < 1e-9);
            assert!(fs_distance_spinors(&y, &Spinor2::outer(&hat, &psi)).unwrap() < 1e-9);
            assert!(quadric_value(&x).norm() < 1e-12 && quadric_value(&y).norm() < 1e-12);
        }
    }

    #[test]
    fn conic_examples() {
        let mut rng = seeded_rng(38);
        for _ in 0..100 {
            let psi: Spinor1 = random_spinor(&mut rng);
            let vv = Spinor2::outer(&psi, &psi);
            assert!(on_conic(&vv));
            // conic membership ⇔ factorization with equal factors
            let f = segre_factor(&vv).unwrap();
            assert!(fs_distance_spinors(&f.first, &f.second).unwrap() < 1e-12);

            let other: Spinor1 = random_spinor(&mut rng);
            assert!(!on_conic(&Spinor2::outer(&psi, &other)));
        }
        assert!(!on_conic(&singlet()));
        assert!(!on_conic(
            &triplet(&Spinor1::UP, TripletProjection::Zero).unwrap()
        ));
        assert!(!on_conic(&Spinor2::zero()));
    }
}
