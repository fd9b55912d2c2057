use crate::error::Result;
use crate::qubit3::varieties::pair_contraction;
use crate::spinor::{check_nonzero, Spinor, Spinor3};
use crate::Complex;

/// Cayley's hyperdeterminant of the 2x2x2 array of components.
pub fn hyperdeterminant(psi: &Spinor3) -> Complex {
    let a = |i: usize, j: usize, k: usize| psi[(i, j, k)];
    let (a000, a001, a010, a011) = (a(0, 0, 0), a(0, 0, 1), a(0, 1, 0), a(0, 1, 1));
    let (a100, a101, a110, a111) = (a(1, 0, 0), a(1, 0, 1), a(1, 1, 0), a(1, 1, 1));

    let d1 = a000 * a000 * a111 * a111
        + a001 * a001 * a110 * a110
        + a010 * a010 * a101 * a101
        + a100 * a100 * a011 * a011;
    let d2 = a000 * a111 * (a011 * a100 + a101 * a010 + a110 * a001)
        + a011 * a100 * (a101 * a010 + a110 * a001)
        + a101 * a010 * a110 * a001;
    let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    d1 - 2.0 * d2 + 4.0 * d3
}

/// The three-tangle `4 |Det psi| / |psi|^4`, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ThreeTangle(pub f64);

impl ThreeTangle {
    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn three_tangle(psi: &Spinor3) -> Result<ThreeTangle> {
    check_nonzero(psi)?;
    let n2 = psi.norm_sqr();
    Ok(ThreeTangle(4.0 * hyperdeterminant(psi).norm() / (n2 * n2)))
}

/// `H = M_{AB} M^{AB}` with `M_{AB} = psi_A^{CD} psi_{BCD}`; a fixed
/// multiple of the hyperdeterminant.
pub fn quartic_h_value(psi: &Spinor3) -> Complex {
    pair_contraction(psi).self_contraction()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{apply_local, Matrix2};
    use crate::qubit3::{ghz_state, singlet_line_point, veronese3, w_state, Party};
    use crate::spinor::{random_spinor, seeded_rng, Spinor1};

    /// Oracle: discriminant of the binary quadratic `det(x A0 + y A1)`, where
    /// `A_i` is the slice with first index `i`.
    fn slice_discriminant(psi: &Spinor3) -> Complex {
        let m = |i: usize, j: usize, k: usize| psi[(i, j, k)];
        let det = |p: [[Complex; 2]; 2]| p[0][0] * p[1][1] - p[0][1] * p[1][0];
        let a0 = [[m(0, 0, 0), m(0, 0, 1)], [m(0, 1, 0), m(0, 1, 1)]];
        let a1 = [[m(1, 0, 0), m(1, 0, 1)], [m(1, 1, 0), m(1, 1, 1)]];
        let a = det(a0);
        let c = det(a1);
        let b =
            a0[0][0] * a1[1][1] + a1[0][0] * a0[1][1] - a0[0][1] * a1[1][0] - a1[0][1] * a0[1][0];
        b * b - 4.0 * a * c
    }

    #[test]
    fn matches_slice_discriminant() {
        let mut rng = seeded_rng(61);
        for _ in 0..200 {
            let psi: Spinor3 = random_spinor(&mut rng);
            let d = hyperdeterminant(&psi);
            assert!((d - slice_discriminant(&psi)).norm() < 1e-14);
        }
    }

    #[test]
    fn known_values() {
        let ghz = ghz_state(&Spinor1::UP).unwrap();
        assert!((hyperdeterminant(&ghz) - 0.25).norm() < 1e-15);
        assert!((three_tangle(&ghz).unwrap().value() - 1.0).abs() < 1e-14);

        let w = w_state(&Spinor1::UP).unwrap();
        assert!(hyperdeterminant(&w).norm() < 1e-16);

        let mut rng = seeded_rng(62);
        for _ in 0..50 {
            let v: Spinor1 = random_spinor(&mut rng);
            let u: Spinor1 = random_spinor(&mut rng);
            assert!(three_tangle(&veronese3(&v).unwrap()).unwrap().value() < 1e-14);
            for party in Party::ALL {
                let s = singlet_line_point(party, &u).unwrap();
                assert!(three_tangle(&s).unwrap().value() < 1e-14);
            }
            let g = ghz_state(&v).unwrap();
            assert!((three_tangle(&g).unwrap().value() - 1.0).abs() < 1e-12);
        }
        assert!(three_tangle(&Spinor3::zero()).is_err());
    }

    #[test]
    fn tangle_in_unit_interval_and_scale_free() {
        let mut rng = seeded_rng(63);
        for _ in 0..200 {
            let psi: Spinor3 = random_spinor(&mut rng);
            let t = three_tangle(&psi).unwrap().value();
            assert!((0.0..=1.0 + 1e-12).contains(&t));
            let scaled = psi * Complex::new(-1.7, 0.4);
            assert!((three_tangle(&scaled).unwrap().value() - t).abs() < 1e-12);
        }
    }

    #[test]
    fn quartic_is_fixed_multiple() {
        let mut rng = seeded_rng(64);
        let samples: Vec<(Complex, Complex)> = (0..100)
            .map(|_| {
                let psi: Spinor3 = random_spinor(&mut rng);
                (quartic_h_value(&psi), hyperdeterminant(&psi))
            })
            .collect();
        let (h0, d0) = samples[0];
        let ratio = h0 / d0;
        assert!((ratio.im).abs() < 1e-10);
        assert!(ratio.norm() > 0.5);
        for (h, d) in samples {
            assert!((h / d - ratio).norm() < 1e-8);
        }
        let ghz = ghz_state(&Spinor1::UP).unwrap();
        assert!((quartic_h_value(&ghz) - ratio * 0.25).norm() < 1e-12);
    }

    #[test]
    fn sl_covariance() {
        let mut rng = seeded_rng(65);
        for _ in 0..100 {
            let psi: Spinor3 = random_spinor(&mut rng);
            let ops: Vec<Matrix2> = (0..3).map(|_| Matrix2::random_gaussian(&mut rng)).collect();
            let det_prod = ops.iter().fold(Complex::from(1.0), |acc, m| acc * m.det());
            let moved = apply_local(&ops, &psi).unwrap();
            let lhs = hyperdeterminant(&moved);
            let rhs = hyperdeterminant(&psi) * det_prod * det_prod;
            assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
        }
    }
}
