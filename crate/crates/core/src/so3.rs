//! Rotation-vector algebra on SO(3).
//!
//! The orientation of a cross-section is a proper orthogonal matrix
//! parametrized by a rotational vector through the exponential map
//! (Rodrigues form). This module provides the spin (hat) operator, the
//! exponential, the rotation angle, and a logarithm that is robust at the
//! small-angle and near-pi degeneracies.

use nalgebra::{Matrix3, Vector3};

use crate::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Angle below which trigonometric ratios switch to truncated series.
const SMALL_ANGLE: f64 = 1e-4;
/// Distance from pi below which the logarithm switches to the symmetric
/// extraction.
const NEAR_PI: f64 = 1e-3;

/// Rotational vector, canonical branch `|phi| < 2*pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationVector {
    phi: Vec3,
}

impl RotationVector {
    pub fn new(phi: Vec3) -> Result<Self> {
        if !phi.iter().all(|c| c.is_finite()) {
            return Err(Error::Invalid("rotation vector must be finite".into()));
        }
        let n = phi.norm();
        if n >= 2.0 * std::f64::consts::PI {
            return Err(Error::RotationBranch(n));
        }
        Ok(RotationVector { phi })
    }

    pub fn vector(&self) -> Vec3 {
        self.phi
    }

    pub fn angle(&self) -> f64 {
        self.phi.norm()
    }
}

/// Proper orthogonal 3x3 matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationMatrix {
    m: Mat3,
}

impl RotationMatrix {
    /// Validates orthogonality and unit determinant to 1e-12.
    pub fn new(m: Mat3) -> Result<Self> {
        let defect = (m.transpose() * m - Mat3::identity()).norm();
        if defect > 1e-12 {
            return Err(Error::NotRotation(format!(
                "orthogonality defect {defect:e}"
            )));
        }
        let det = m.determinant();
        if (det - 1.0).abs() > 1e-12 {
            return Err(Error::NotRotation(format!("determinant {det}")));
        }
        Ok(RotationMatrix { m })
    }

    /// For matrices orthogonal by construction.
    pub(crate) fn new_unchecked(m: Mat3) -> Self {
        debug_assert!((m.transpose() * m - Mat3::identity()).norm() < 1e-9);
        RotationMatrix { m }
    }

    pub fn identity() -> Self {
        RotationMatrix { m: Mat3::identity() }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }
}

/// Spin (hat) matrix of a vector: `spin(a) * b = a x b`.
pub fn spin(a: &Vec3) -> Mat3 {
    Mat3::new(
        0.0, -a.z, a.y, //
        a.z, 0.0, -a.x, //
        -a.y, a.x, 0.0,
    )
}

/// Inverse of `spin` for antisymmetric matrices.
fn axial(m: &Mat3) -> Vec3 {
    Vec3::new(-m[(1, 2)], m[(0, 2)], -m[(0, 1)])
}

/// `sin(x)/x` with series fallback.
fn sinc(x: f64) -> f64 {
    if x.abs() < SMALL_ANGLE {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `(1 - cos(x))/x^2` with series fallback.
fn cosc(x: f64) -> f64 {
    if x.abs() < SMALL_ANGLE {
        0.5 - x * x / 24.0
    } else {
        (1.0 - x.cos()) / (x * x)
    }
}

/// Rodrigues exponential: `R = I + sinc(phi) S + cosc(phi) S^2`.
pub fn exp_rotvec(phi: &RotationVector) -> RotationMatrix {
    let v = phi.vector();
    let a = phi.angle();
    let s = spin(&v);
    let m = Mat3::identity() + s * sinc(a) + s * s * cosc(a);
    RotationMatrix::new_unchecked(m)
}

/// Rotation angle `acos((tr R - 1)/2)`, clamped into `[0, pi]`.
pub fn rot_angle(r: &RotationMatrix) -> f64 {
    let arg = ((r.matrix().trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
    arg.acos()
}

/// Matrix logarithm returning the canonical rotational vector
/// (`|phi| <= pi`).
///
/// Away from the endpoints this is `phi/(2 sin phi) (R - R^T)` read off as
/// an axial vector, with `sin phi` taken from the antisymmetric part itself
/// and the angle from `atan2` so neither endpoint amplifies rounding. Near
/// `phi = pi` the antisymmetric part degenerates, so the axis is taken from
/// the dominant diagonal of `(R + I)/2 = n n^T` with signs fixed from its
/// off-diagonal entries.
pub fn log_rotmat(r: &RotationMatrix) -> RotationVector {
    let m = r.matrix();
    let w = axial(&(m - m.transpose())) * 0.5; // sin(phi) * axis
    let sin_phi = w.norm();
    let cos_phi = ((m.trace() - 1.0) * 0.5).clamp(-1.0, 1.0);
    let angle = sin_phi.atan2(cos_phi);
    if angle < std::f64::consts::PI - NEAR_PI {
        if angle < SMALL_ANGLE {
            // w / sinc(phi)
            RotationVector {
                phi: w * (1.0 + angle * angle / 6.0),
            }
        } else {
            RotationVector {
                phi: w * (angle / sin_phi),
            }
        }
    } else {
        // Symmetrizing removes the O(pi - phi) antisymmetric contamination,
        // leaving (R + I)/2 = n n^T up to second order in (pi - phi).
        let b = ((m + m.transpose()) * 0.5 + Mat3::identity()) * 0.5;
        let k = (0..3)
            .max_by(|&i, &j| b[(i, i)].partial_cmp(&b[(j, j)]).unwrap())
            .unwrap();
        let nk = b[(k, k)].max(0.0).sqrt();
        let mut n = Vec3::zeros();
        n[k] = nk;
        for i in 0..3 {
            if i != k {
                n[i] = b[(k, i)] / nk;
            }
        }
        n.normalize_mut();
        // Orient along the antisymmetric part when it is resolvable,
        // otherwise make the first nonzero component positive.
        let w = axial(&(m - m.transpose()));
        let d = w.dot(&n);
        let sign = if d.abs() > 1e-12 {
            d.signum()
        } else {
            let lead = n.iter().find(|c| c.abs() > 1e-12).copied().unwrap_or(1.0);
            lead.signum()
        };
        RotationVector {
            phi: n * (sign * angle),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn spin_layout_and_cross_product() {
        assert_eq!(spin(&Vec3::zeros()), Mat3::zeros());
        let s = spin(&Vec3::new(1.0, 2.0, 3.0));
        let expect = Mat3::new(0.0, -3.0, 2.0, 3.0, 0.0, -1.0, -2.0, 1.0, 0.0);
        assert_eq!(s, expect);

        let a = Vec3::new(0.3, -0.7, 1.1);
        let b = Vec3::new(-0.2, 0.5, 0.9);
        assert_relative_eq!((spin(&a) * b - a.cross(&b)).norm(), 0.0, epsilon = 1e-15);
        assert_relative_eq!((spin(&a) * a).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn spin_is_linear() {
        let a = Vec3::new(0.1, 0.2, 0.3);
        let b = Vec3::new(-0.5, 0.4, 0.8);
        let alpha = 2.5;
        assert_eq!(spin(&(a * alpha + b)), spin(&a) * alpha + spin(&b));
    }

    #[test]
    fn exp_at_zero_and_quarter_turn() {
        let id = exp_rotvec(&RotationVector::new(Vec3::zeros()).unwrap());
        assert_relative_eq!((id.matrix() - Mat3::identity()).norm(), 0.0, epsilon = 1e-15);

        let r = exp_rotvec(&RotationVector::new(Vec3::new(0.0, 0.0, PI / 2.0)).unwrap());
        let expect = Mat3::new(0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0);
        assert_relative_eq!((r.matrix() - expect).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn exp_matches_truncated_matrix_series() {
        // Cross-oracle: 20 partial sums of exp(S) for |phi| <= 1.
        let samples = [
            Vec3::new(0.3, -0.2, 0.1),
            Vec3::new(0.9, 0.1, -0.4).normalize() * 0.99,
            Vec3::new(-0.5, 0.5, 0.5),
            Vec3::new(1e-6, -2e-6, 1.5e-6),
        ];
        for v in samples {
            let s = spin(&v);
            let mut sum = Mat3::identity();
            let mut term = Mat3::identity();
            for n in 1..=20 {
                term = term * s / n as f64;
                sum += term;
            }
            let r = exp_rotvec(&RotationVector::new(v).unwrap());
            assert!((r.matrix() - sum).norm() < 1e-12, "series mismatch for {v:?}");
        }
    }

    #[test]
    fn rot_angle_examples() {
        assert_relative_eq!(rot_angle(&RotationMatrix::identity()), 0.0);
        let quarter = exp_rotvec(&RotationVector::new(Vec3::new(0.0, 0.0, PI / 2.0)).unwrap());
        assert_relative_eq!(rot_angle(&quarter), PI / 2.0, epsilon = 1e-12);
        let half = RotationMatrix::new(Mat3::from_diagonal(&Vec3::new(1.0, -1.0, -1.0))).unwrap();
        assert_relative_eq!(rot_angle(&half), PI);
    }

    #[test]
    fn log_examples() {
        let id = log_rotmat(&RotationMatrix::identity());
        assert_eq!(id.vector(), Vec3::zeros());

        let half = RotationMatrix::new(Mat3::from_diagonal(&Vec3::new(1.0, -1.0, -1.0))).unwrap();
        let phi = log_rotmat(&half);
        assert_relative_eq!((phi.vector() - Vec3::new(PI, 0.0, 0.0)).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn log_exp_roundtrip_dense_sweep() {
        // 1000 deterministic pseudo-random axes, |phi| in (1e-6, pi - 1e-3).
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let axis = Vec3::new(next() - 0.5, next() - 0.5, next() - 0.5);
            if axis.norm() < 1e-3 {
                continue;
            }
            let angle = 1e-6 + (PI - 1e-3 - 1e-6) * next();
            let v = axis.normalize() * angle;
            let phi = RotationVector::new(v).unwrap();
            let back = log_rotmat(&exp_rotvec(&phi));
            let err = (back.vector() - v).norm() / v.norm().max(1e-300);
            assert!(err < 1e-10, "roundtrip error {err:e} at angle {angle}");
        }
    }

    #[test]
    fn log_near_pi_recovers_rotation() {
        // The vector may flip orientation at the branch, so compare the
        // reconstructed rotations instead. The diagonal extraction leaves an
        // axis error of order (pi - phi)^2, and the trace formula resolves
        // the angle no finer than sqrt(eps) here, hence graded tolerances.
        for &(angle, tol) in &[(PI - 9e-4, 5e-6), (PI - 1e-5, 1e-9), (PI - 1e-8, 1e-7), (PI, 1e-11)]
        {
            for axis in [
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(0.0, 1.0, 0.0),
                Vec3::new(1.0, 1.0, 1.0).normalize(),
                Vec3::new(-0.3, 0.4, 0.86).normalize(),
            ] {
                let r = exp_rotvec(&RotationVector::new(axis * angle).unwrap());
                let back = exp_rotvec(&log_rotmat(&r));
                assert!(
                    (r.matrix() - back.matrix()).norm() < tol,
                    "near-pi reconstruction failed for axis {axis:?} angle {angle}"
                );
            }
        }
    }

    #[test]
    fn rotation_vector_rejects_out_of_branch() {
        assert!(RotationVector::new(Vec3::new(7.0, 0.0, 0.0)).is_err());
        assert!(RotationVector::new(Vec3::new(f64::NAN, 0.0, 0.0)).is_err());
    }

    proptest! {
        #[test]
        fn exp_is_orthogonal(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0,
                             scale in 0.0f64..3.0) {
            let v = Vec3::new(x, y, z);
            let v = if v.norm() > 1e-12 { v.normalize() * scale } else { v };
            let r = exp_rotvec(&RotationVector::new(v).unwrap());
            let m = r.matrix();
            prop_assert!(((m.transpose() * m) - Mat3::identity()).norm() < 1e-12);
            prop_assert!((m.determinant() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn log_exp_identity(x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0,
                            angle in 0.0f64..3.1405) {
            let v = Vec3::new(x, y, z);
            prop_assume!(v.norm() > 1e-6);
            let v = v.normalize() * angle;
            let phi = RotationVector::new(v).unwrap();
            let back = log_rotmat(&exp_rotvec(&phi));
            prop_assert!((back.vector() - v).norm() <= 1e-10 * v.norm().max(1.0));
        }
    }
}
