//! Fubini-Study geometry on ray space, projective lines and hyperplanes,
//! and the line/quadric intersection solver.

use crate::error::{GeometryError, Result};
use crate::spinor::{check_nonzero, inner_product, projectively_close, ProjectivePoint, Spinor};
use crate::Complex;

/// Discriminants below this fraction of the squared coefficient scale are
/// treated as a double root.
pub const TANGENCY_TOL: f64 = 1e-12;

/// Restricted forms whose coefficients all fall below this (unit endpoints)
/// mean the whole line lies on the quadric.
pub const LINE_ON_QUADRIC_TOL: f64 = 1e-12;

/// Fubini-Study angle `theta` in `[0, pi]`, `cos^2(theta/2)` being the
/// transition probability.
///
/// Evaluated as `2 atan2(sin, cos)` of the half angle so that nearby points
/// keep full relative precision.
pub fn fs_distance<S: Spinor>(p: &ProjectivePoint<S>, q: &ProjectivePoint<S>) -> f64 {
    fs_angle(&p.unit(), &q.unit())
}

pub(crate) fn fs_angle<S: Spinor>(p_unit: &S, q_unit: &S) -> f64 {
    let ov = inner_product(p_unit, q_unit);
    let cos_half = ov.norm();
    // Both residuals, averaged, so the result is exactly symmetric.
    let r_q = q_unit.combine(Complex::from(1.0), p_unit, -ov).norm();
    let r_p = p_unit
        .combine(Complex::from(1.0), q_unit, -ov.conj())
        .norm();
    let sin_half = 0.5 * (r_q + r_p);
    2.0 * sin_half.atan2(cos_half)
}

/// Fubini-Study angle between two arbitrary nonzero spinors.
pub fn fs_distance_spinors<S: Spinor>(p: &S, q: &S) -> Result<f64> {
    Ok(fs_distance(
        &ProjectivePoint::new(*p)?,
        &ProjectivePoint::new(*q)?,
    ))
}

/// `cos^2(theta/2) = |<p,q>|^2 / (<p,p><q,q>)`.
pub fn transition_probability<S: Spinor>(p: &ProjectivePoint<S>, q: &ProjectivePoint<S>) -> f64 {
    crate::spinor::normalized_overlap(p.rep(), q.rep())
}

/// The Fubini-Study line element
/// `ds^2 = 4 (<psi,psi><dpsi,dpsi> - |<psi,dpsi>|^2) / <psi,psi>^2`.
pub fn line_element<S: Spinor>(p: &S, dp: &S) -> f64 {
    let nn = p.norm_sqr();
    let dd = dp.norm_sqr();
    let cross = inner_product(p, dp).norm_sqr();
    (4.0 * (nn * dd - cross) / (nn * nn)).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricCheck {
    /// Squared Fubini-Study distance across the step.
    pub finite_difference: f64,
    /// `h^2 ds^2` from the line element.
    pub line_element: f64,
    pub relative_error: f64,
}

/// Compares the squared geodesic distance across a step of size `h` along
/// `dp` with the line-element prediction.
///
/// The step is centred on `p` (from `p - h dp/2` to `p + h dp/2`), which
/// removes the first-order correction a one-sided step would carry whenever
/// `dp` has a component along `p`. For pure-gauge directions (`dp ∝ p`) the
/// prediction is zero and the error is reported relative to
/// `4 h^2 |dp|^2 / |p|^2` instead.
pub fn metric_finite_difference_check<S: Spinor>(
    p: &ProjectivePoint<S>,
    dp: &S,
    h: f64,
) -> Result<MetricCheck> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(GeometryError::InvalidStep(h));
    }
    if !dp.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    let p = p.rep();
    let half = Complex::from(0.5 * h);
    let one = Complex::from(1.0);
    let lo = p.combine(one, dp, -half);
    let hi = p.combine(one, dp, half);
    let theta = fs_distance_spinors(&lo, &hi)?;
    let lhs = theta * theta;
    let rhs = h * h * line_element(p, dp);
    let scale = 4.0 * h * h * dp.norm_sqr() / p.norm_sqr();
    let relative_error = if scale == 0.0 {
        0.0
    } else if rhs <= 1e-12 * scale {
        (lhs - rhs).abs() / scale
    } else {
        (lhs - rhs).abs() / rhs
    };
    Ok(MetricCheck {
        finite_difference: lhs,
        line_element: rhs,
        relative_error,
    })
}

/// The set of states Hermitian-orthogonal to a given state, stored as the
/// conjugated covector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperplane<S: Spinor> {
    covector: S,
}

/// Relative overlap below which a state counts as lying on a hyperplane.
pub const HYPERPLANE_TOL: f64 = 1e-9;

impl<S: Spinor> Hyperplane<S> {
    pub fn covector(&self) -> &S {
        &self.covector
    }

    pub fn evaluate(&self, x: &S) -> Complex {
        self.covector
            .components()
            .iter()
            .zip(x.components())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn contains(&self, x: &S) -> bool {
        self.contains_with_tol(x, HYPERPLANE_TOL)
    }

    pub fn contains_with_tol(&self, x: &S, tol: f64) -> bool {
        let n = self.covector.norm() * x.norm();
        n > 0.0 && self.evaluate(x).norm() <= tol * n
    }
}

/// Hermitian correspondence: the hyperplane `{x : <p, x> = 0}`.
pub fn hermitian_hyperplane<S: Spinor>(p: &ProjectivePoint<S>) -> Hyperplane<S> {
    Hyperplane {
        covector: p.rep().conj(),
    }
}

/// All superpositions `a p + b q` of two distinct states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveLine<S: Spinor> {
    p: S,
    q: S,
}

impl<S: Spinor> ProjectiveLine<S> {
    pub fn new(p: &ProjectivePoint<S>, q: &ProjectivePoint<S>) -> Result<Self> {
        if projectively_close(p.rep(), q.rep(), p.tol()) {
            return Err(GeometryError::DegenerateLine);
        }
        Ok(ProjectiveLine {
            p: p.unit(),
            q: q.unit(),
        })
    }

    pub fn through(p: &S, q: &S) -> Result<Self> {
        Self::new(&ProjectivePoint::new(*p)?, &ProjectivePoint::new(*q)?)
    }

    /// Unit-norm endpoint representatives.
    pub fn endpoints(&self) -> (&S, &S) {
        (&self.p, &self.q)
    }

    pub fn point(&self, a: Complex, b: Complex) -> S {
        self.p.combine(a, &self.q, b)
    }

    /// Squared norm of the component of `x` outside the line's span,
    /// relative to `|x|^2`.
    pub fn residual(&self, x: &S) -> Result<f64> {
        check_nonzero(x)?;
        // Orthonormal basis of span{p, q}.
        let e1 = self.p;
        let ov = inner_product(&e1, &self.q);
        let e2 = self.q.combine(Complex::from(1.0), &e1, -ov).normalized()?;
        let c1 = inner_product(&e1, x);
        let c2 = inner_product(&e2, x);
        let inside = e1.combine(c1, &e2, c2);
        let outside = x.combine(Complex::from(1.0), &inside, Complex::from(-1.0));
        Ok(outside.norm_sqr() / x.norm_sqr())
    }
}

/// A symmetric bilinear form on spinors of one rank.
pub trait BilinearForm<S: Spinor> {
    fn eval(&self, x: &S, y: &S) -> Complex;
}

/// A quadric restricted to a line: `pp a^2 + 2 pq a b + qq b^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFormOnLine {
    pub pp: Complex,
    pub pq: Complex,
    pub qq: Complex,
}

impl QuadraticFormOnLine {
    pub fn restrict<S: Spinor, F: BilinearForm<S>>(form: &F, line: &ProjectiveLine<S>) -> Self {
        let (p, q) = line.endpoints();
        QuadraticFormOnLine {
            pp: form.eval(p, p),
            pq: form.eval(p, q),
            qq: form.eval(q, q),
        }
    }

    pub fn scale(&self) -> f64 {
        self.pp.norm().max(self.pq.norm()).max(self.qq.norm())
    }

    pub fn discriminant(&self) -> Complex {
        self.pq * self.pq - self.pp * self.qq
    }

    /// Homogeneous roots `(a : b)`; the second flag marks a double root.
    pub fn roots(&self) -> Result<([(Complex, Complex); 2], bool)> {
        let scale = self.scale();
        if scale <= LINE_ON_QUADRIC_TOL {
            return Err(GeometryError::LineOnQuadric);
        }
        let disc = self.discriminant();
        if disc.norm() < TANGENCY_TOL * scale * scale {
            let root = if self.pp.norm() >= self.qq.norm() {
                (-self.pq, self.pp)
            } else {
                (self.qq, -self.pq)
            };
            return Ok(([root, root], true));
        }
        // Pick the square-root branch that avoids cancellation in pq + s.
        let mut s = disc.sqrt();
        if (self.pq.conj() * s).re < 0.0 {
            s = -s;
        }
        let w = -(self.pq + s);
        Ok(([(w, self.pp), (self.qq, w)], false))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineIntersection<S: Spinor> {
    /// Unit-norm intersection points; equal when `tangent`.
    pub points: [S; 2],
    pub tangent: bool,
}

/// Intersects a line with the quadric `form(x, x) = 0`.
pub fn line_quadric_intersect<S: Spinor, F: BilinearForm<S>>(
    line: &ProjectiveLine<S>,
    form: &F,
) -> Result<LineIntersection<S>> {
    let restricted = QuadraticFormOnLine::restrict(form, line);
    let (roots, tangent) = restricted.roots()?;
    let mut points = [S::zero(); 2];
    for (pt, (a, b)) in points.iter_mut().zip(roots) {
        *pt = line.point(a, b).normalized()?;
    }
    Ok(LineIntersection { points, tangent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::spinor::{conjugate_state, random_spinor, seeded_rng, Spinor1, Spinor2, Spinor3};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn pt<S: Spinor>(s: S) -> ProjectivePoint<S> {
        ProjectivePoint::new(s).unwrap()
    }

    fn c(re: f64) -> Complex {
        Complex::from(re)
    }

    /// eps_{AC} eps_{BD} x^{AB} y^{CD}, written out.
    struct Segre;
    impl BilinearForm<Spinor2> for Segre {
        fn eval(&self, x: &Spinor2, y: &Spinor2) -> Complex {
            x.0[0] * y.0[3] + x.0[3] * y.0[0] - x.0[1] * y.0[2] - x.0[2] * y.0[1]
        }
    }

    #[test]
    fn distance_examples() {
        let up = pt(Spinor1::UP);
        assert_eq!(fs_distance(&up, &up), 0.0);
        assert!((fs_distance(&up, &pt(Spinor1::DOWN)) - PI).abs() < 1e-15);
        let plus = pt(Spinor1::new(c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)));
        assert!((fs_distance(&up, &plus) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn transition_probability_examples() {
        let h = FRAC_1_SQRT_2;
        let mut ghz = Spinor3::zero();
        ghz.0[0] = c(h);
        ghz.0[7] = c(h);
        let up3 = Spinor3::basis(0, 0, 0);
        assert!((transition_probability(&pt(ghz), &pt(up3)) - 0.5).abs() < 1e-15);
        assert_eq!(transition_probability(&pt(up3), &pt(up3)), 1.0);
        assert_eq!(
            transition_probability(&pt(up3), &pt(Spinor3::basis(0, 1, 0))),
            0.0
        );
    }

    #[test]
    fn hyperplane_examples() {
        let h = hermitian_hyperplane(&pt(Spinor1::UP));
        assert!(h.contains(&Spinor1::DOWN));
        assert!(!h.contains(&Spinor1::UP));

        let up3 = Spinor3::basis(0, 0, 0);
        let w = Spinor3::basis(0, 0, 1) + Spinor3::basis(0, 1, 0) + Spinor3::basis(1, 0, 0);
        let h3 = hermitian_hyperplane(&pt(up3));
        assert!(h3.contains(&w));
        assert!(!h3.contains(&up3));
    }

    #[test]
    fn intersect_through_product_endpoints() {
        let ud = Spinor2::outer(&Spinor1::UP, &Spinor1::DOWN);
        let du = Spinor2::outer(&Spinor1::DOWN, &Spinor1::UP);
        let line = ProjectiveLine::through(&ud, &du).unwrap();
        let hit = line_quadric_intersect(&line, &Segre).unwrap();
        assert!(!hit.tangent);
        assert!(fs_distance_spinors(&hit.points[0], &ud).unwrap() < 1e-12);
        assert!(fs_distance_spinors(&hit.points[1], &du).unwrap() < 1e-12);
    }

    #[test]
    fn intersect_tangent_line() {
        let mut rng = seeded_rng(11);
        for _ in 0..20 {
            let a: Spinor1 = random_spinor(&mut rng);
            let b: Spinor1 = random_spinor(&mut rng);
            let a2: Spinor1 = random_spinor(&mut rng);
            let b2: Spinor1 = random_spinor(&mut rng);
            // A tangent direction at a⊗b that is not itself on the quadric.
            let p = Spinor2::outer(&a, &b);
            let q = Spinor2::outer(&a, &b2) + Spinor2::outer(&a2, &b);
            let line = ProjectiveLine::through(&p, &q).unwrap();
            let hit = line_quadric_intersect(&line, &Segre).unwrap();
            assert!(hit.tangent);
            for x in hit.points {
                assert!(fs_distance_spinors(&x, &p).unwrap() < 1e-12);
            }
        }
    }

    #[test]
    fn intersect_errors() {
        let ud = Spinor2::outer(&Spinor1::UP, &Spinor1::DOWN);
        assert_eq!(
            ProjectiveLine::through(&ud, &(ud * c(2.0))),
            Err(GeometryError::DegenerateLine)
        );
        // A ruling of the quadric: up ⊗ (anything).
        let uu = Spinor2::outer(&Spinor1::UP, &Spinor1::UP);
        let line = ProjectiveLine::through(&uu, &ud).unwrap();
        assert_eq!(
            line_quadric_intersect(&line, &Segre),
            Err(GeometryError::LineOnQuadric)
        );
    }

    #[test]
    fn random_lines_hit_quadric() {
        let mut rng = seeded_rng(12);
        for _ in 0..200 {
            let p: Spinor2 = random_spinor(&mut rng);
            let q: Spinor2 = random_spinor(&mut rng);
            let line = ProjectiveLine::through(&p, &q).unwrap();
            let hit = line_quadric_intersect(&line, &Segre).unwrap();
            for x in hit.points {
                assert!(Segre.eval(&x, &x).norm() / x.norm_sqr() < 1e-10);
                assert!(line.residual(&x).unwrap() < 1e-20);
            }
        }
    }

    #[test]
    fn metric_check_examples() {
        let mut rng = seeded_rng(13);
        let p: Spinor3 = random_spinor(&mut rng);
        // Pure gauge.
        let gauge = p * Complex::new(0.3, -1.2);
        let check = metric_finite_difference_check(&pt(p), &gauge, 1e-4).unwrap();
        assert!(check.line_element.abs() < 1e-20);
        assert!(check.relative_error < 1e-10);

        // Orthogonal unit direction: ds^2 = 4 and theta ≈ 2h.
        let up = Spinor1::UP;
        let dp = Spinor1::DOWN;
        assert!((line_element(&up, &dp) - 4.0).abs() < 1e-15);
        let h = 1e-4;
        let theta = fs_distance_spinors(&up, &(up + dp * h)).unwrap();
        assert!((theta - 2.0 * h).abs() < 1e-11);

        for _ in 0..50 {
            let p: Spinor2 = random_spinor(&mut rng);
            let dp: Spinor2 = random_spinor(&mut rng);
            let check = metric_finite_difference_check(&pt(p), &dp, 1e-4).unwrap();
            assert!(check.relative_error < 1e-5, "{check:?}");
        }

        assert_eq!(
            metric_finite_difference_check(&pt(p), &p, 0.0),
            Err(GeometryError::InvalidStep(0.0))
        );
    }

    #[test]
    fn distance_is_a_metric() {
        let mut rng = seeded_rng(14);
        for _ in 0..500 {
            let a: Spinor3 = random_spinor(&mut rng);
            let b: Spinor3 = random_spinor(&mut rng);
            let cc: Spinor3 = random_spinor(&mut rng);
            let (a, b, cc) = (pt(a), pt(b), pt(cc));
            let ab = fs_distance(&a, &b);
            assert_eq!(ab, fs_distance(&b, &a));
            assert!(ab <= fs_distance(&a, &cc) + fs_distance(&cc, &b) + 1e-12);
            assert!((0.0..=PI).contains(&ab));
        }
    }

    #[test]
    fn distance_unitarily_invariant() {
        let mut rng = seeded_rng(15);
        for _ in 0..100 {
            let u: Matrix<4> = Matrix::random_unitary(&mut rng);
            let p: Spinor2 = random_spinor(&mut rng);
            let q: Spinor2 = random_spinor(&mut rng);
            let before = fs_distance_spinors(&p, &q).unwrap();
            let after = fs_distance_spinors(&u.apply(&p), &u.apply(&q)).unwrap();
            assert!((before - after).abs() < 1e-12);
        }
    }

    #[test]
    fn probability_complements_antipode() {
        let mut rng = seeded_rng(16);
        for _ in 0..100 {
            let s: Spinor1 = random_spinor(&mut rng);
            let x: Spinor1 = random_spinor(&mut rng);
            let t = conjugate_state(&s).unwrap();
            let sum =
                transition_probability(&pt(x), &pt(s)) + transition_probability(&pt(x), &pt(t));
            assert!((sum - 1.0).abs() < 1e-14);
        }
    }
}
