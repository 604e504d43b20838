//! Director frames, rotation-parameter maps, and strain measures.
//!
//! A cross-section's orientation is built from two successive rotations:
//! a twist about `e3` by the torsion angle, then a tilt taking `e3` onto the
//! unit tangent whose direction cosines are `(nu1, nu2, nu3)`. The module
//! provides the exact frame, its third-order polynomial expansion, the
//! third-order maps between `(nu1, nu2, varphi)` and the rotational-vector
//! components `(phi_x, phi_y, phi_z)`, and the angular strain extracted from
//! a frame field. All maps are written over generic arithmetic carriers so
//! the same code path serves numeric evaluation and jet expansion.

use crate::scalar::{Analytic, Ring, TiltRatio};
use crate::so3::Vec3;
use crate::{Error, Result};

/// Direction cosines of the unit tangent plus the torsion angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectorState {
    pub nu1: f64,
    pub nu2: f64,
    pub nu3: f64,
    /// Torsion angle (rad).
    pub varphi: f64,
}

impl DirectorState {
    pub fn new(nu1: f64, nu2: f64, nu3: f64, varphi: f64) -> Self {
        DirectorState { nu1, nu2, nu3, varphi }
    }

    /// Reference state: tangent along `e3`, no twist.
    pub fn reference() -> Self {
        DirectorState::new(0.0, 0.0, 1.0, 0.0)
    }

    pub fn unit_defect(&self) -> f64 {
        (self.nu1 * self.nu1 + self.nu2 * self.nu2 + self.nu3 * self.nu3 - 1.0).abs()
    }
}

/// Orthonormal director triad; `d3` is the cross-section normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
}

impl Frame {
    pub fn identity() -> Self {
        Frame {
            d1: Vec3::new(1.0, 0.0, 0.0),
            d2: Vec3::new(0.0, 1.0, 0.0),
            d3: Vec3::new(0.0, 0.0, 1.0),
        }
    }

    pub fn director(&self, i: usize) -> Vec3 {
        match i {
            0 => self.d1,
            1 => self.d2,
            2 => self.d3,
            _ => panic!("director index out of range"),
        }
    }

    /// Largest deviation of the pairwise dot products from orthonormality.
    pub fn orthonormality_defect(&self) -> f64 {
        let d = [self.d1, self.d2, self.d3];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((d[i].dot(&d[j]) - target).abs());
            }
        }
        worst
    }
}

/// Components of the nodal rotational vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotParams {
    pub phix: f64,
    pub phiy: f64,
    pub phiz: f64,
}

impl RotParams {
    pub fn new(phix: f64, phiy: f64, phiz: f64) -> Self {
        RotParams { phix, phiy, phiz }
    }
}

/// Exact directors for given direction cosines and torsion angle.
///
/// Columns of `R_b(nu) R_a(varphi)`: the twist about `e3` followed by the
/// tilt taking `e3` onto the tangent. The tilt matrix is evaluated through
/// the ratio `(1 - nu3)/(nu1^2 + nu2^2)`, whose removable singularity on the
/// reference axis is handled by the carrier.
pub fn frame_exact_generic<S: Analytic + TiltRatio>(
    nu1: &S,
    nu2: &S,
    nu3: &S,
    varphi: &S,
) -> Result<[[S; 3]; 3]> {
    let p = nu1.square().add(&nu2.square());
    let h = p.tilt_ratio()?;
    let one = nu1.one_like();
    // Tilt matrix columns.
    let c1 = [
        one.sub(&nu1.square().mul(&h)),
        nu1.mul(nu2).mul(&h).neg(),
        nu1.neg(),
    ];
    let c2 = [
        nu1.mul(nu2).mul(&h).neg(),
        one.sub(&nu2.square().mul(&h)),
        nu2.neg(),
    ];
    let cv = varphi.cos();
    let sv = varphi.sin();
    let mut d1 = [one.zero_like(), one.zero_like(), one.zero_like()];
    let mut d2 = [one.zero_like(), one.zero_like(), one.zero_like()];
    for i in 0..3 {
        d1[i] = c1[i].mul(&cv).add(&c2[i].mul(&sv));
        d2[i] = c2[i].mul(&cv).sub(&c1[i].mul(&sv));
    }
    let d3 = [nu1.clone(), nu2.clone(), nu3.clone()];
    Ok([d1, d2, d3])
}

/// Third-order polynomial directors.
pub fn frame_cubic_generic<S: Ring>(nu1: &S, nu2: &S, varphi: &S) -> [[S; 3]; 3] {
    let one = nu1.one_like();
    let n1s = nu1.square();
    let n2s = nu2.square();
    let vs = varphi.square();
    let n12 = nu1.mul(nu2);
    let v3 = vs.mul(varphi);

    let d1 = [
        one.sub(&vs.scale(0.5))
            .sub(&n1s.scale(0.5))
            .sub(&n12.mul(varphi).scale(0.5)),
        varphi
            .sub(&n12.scale(0.5))
            .sub(&n2s.mul(varphi).scale(0.5))
            .sub(&v3.scale(1.0 / 6.0)),
        nu1.neg()
            .sub(&nu2.mul(varphi))
            .add(&nu1.mul(&vs).scale(0.5)),
    ];
    let d2 = [
        varphi
            .neg()
            .sub(&n12.scale(0.5))
            .add(&n1s.mul(varphi).scale(0.5))
            .add(&v3.scale(1.0 / 6.0)),
        one.sub(&vs.scale(0.5))
            .sub(&n2s.scale(0.5))
            .add(&n12.mul(varphi).scale(0.5)),
        nu2.neg()
            .add(&nu1.mul(varphi))
            .add(&nu2.mul(&vs).scale(0.5)),
    ];
    let d3 = [
        nu1.clone(),
        nu2.clone(),
        one.sub(&n1s.scale(0.5)).sub(&n2s.scale(0.5)),
    ];
    [d1, d2, d3]
}

/// Third-order map `(nu1, nu2, varphi) -> (phi_x, phi_y, phi_z)`.
pub fn phi_from_nu_generic<S: Ring>(nu1: &S, nu2: &S, varphi: &S) -> (S, S, S) {
    let n1s = nu1.square();
    let n2s = nu2.square();
    let vs = varphi.square();
    // nu1^2 + nu2^2 - varphi^2/2
    let mix = n1s.add(&n2s).sub(&vs.scale(0.5));
    let phix = nu2
        .neg()
        .add(&varphi.mul(nu1).scale(0.5))
        .sub(&mix.mul(nu2).scale(1.0 / 6.0));
    let phiy = nu1
        .add(&varphi.mul(nu2).scale(0.5))
        .add(&mix.mul(nu1).scale(1.0 / 6.0));
    let phiz = varphi.sub(&n1s.add(&n2s).mul(varphi).scale(1.0 / 12.0));
    (phix, phiy, phiz)
}

/// Third-order inverse map `(phi_x, phi_y, phi_z) -> (nu1, nu2, varphi)`.
pub fn nu_from_phi_generic<S: Ring>(phix: &S, phiy: &S, phiz: &S) -> (S, S, S) {
    let sq = phix.square().add(&phiy.square()).add(&phiz.square());
    let nu1 = phiy
        .add(&phix.mul(phiz).scale(0.5))
        .sub(&sq.mul(phiy).scale(1.0 / 6.0));
    let nu2 = phix
        .neg()
        .add(&phiy.mul(phiz).scale(0.5))
        .add(&sq.mul(phix).scale(1.0 / 6.0));
    let varphi = phiz.add(&phix.square().add(&phiy.square()).mul(phiz).scale(1.0 / 12.0));
    (nu1, nu2, varphi)
}

fn frame_from_parts(parts: [[f64; 3]; 3]) -> Frame {
    Frame {
        d1: Vec3::new(parts[0][0], parts[0][1], parts[0][2]),
        d2: Vec3::new(parts[1][0], parts[1][1], parts[1][2]),
        d3: Vec3::new(parts[2][0], parts[2][1], parts[2][2]),
    }
}

/// Exact director triad for a numeric state.
pub fn frame_exact(st: &DirectorState) -> Frame {
    let parts = frame_exact_generic(&st.nu1, &st.nu2, &st.nu3, &st.varphi)
        .expect("numeric frame construction cannot fail for |nu| = 1");
    frame_from_parts(parts)
}

/// Third-order polynomial director triad for a numeric state.
pub fn frame_cubic(st: &DirectorState) -> Frame {
    frame_from_parts(frame_cubic_generic(&st.nu1, &st.nu2, &st.varphi))
}

/// Rotational-vector components of a numeric state, third order.
pub fn phi_from_nu(st: &DirectorState) -> RotParams {
    let (x, y, z) = phi_from_nu_generic(&st.nu1, &st.nu2, &st.varphi);
    RotParams::new(x, y, z)
}

/// Director state from rotational-vector components, third order; `nu3` is
/// completed from the unit constraint.
pub fn nu_from_phi(p: &RotParams) -> Result<DirectorState> {
    let (n1, n2, vp) = nu_from_phi_generic(&p.phix, &p.phiy, &p.phiz);
    let rest = 1.0 - n1 * n1 - n2 * n2;
    if rest < 0.0 {
        return Err(Error::Invalid(format!(
            "rotation parameters too large: nu1^2 + nu2^2 = {}",
            n1 * n1 + n2 * n2
        )));
    }
    Ok(DirectorState::new(n1, n2, rest.sqrt(), vp))
}

/// Direction cosines and stretch from a (dimensionless) position derivative.
///
/// Returns the director state of the tangent (`varphi = 0`) together with
/// `v3 = |r'|`.
pub fn tangent_params(r_prime: &Vec3) -> Result<(DirectorState, f64)> {
    let v3 = r_prime.norm();
    if v3 <= 0.0 || !v3.is_finite() {
        return Err(Error::DegenerateAxis { norm: v3 });
    }
    Ok((
        DirectorState::new(r_prime.x / v3, r_prime.y / v3, r_prime.z / v3, 0.0),
        v3,
    ))
}

/// Angular strain components in the moving basis from a frame and its
/// arc-length derivative: `u = 1/2 sum_i d_i x d_i'`, returned as
/// `(u.d1, u.d2, u.d3)`.
pub fn angular_strain_from_pair(frame: &Frame, deriv: &Frame) -> Vec3 {
    let u = (frame.d1.cross(&deriv.d1) + frame.d2.cross(&deriv.d2) + frame.d3.cross(&deriv.d3))
        * 0.5;
    Vec3::new(u.dot(&frame.d1), u.dot(&frame.d2), u.dot(&frame.d3))
}

/// Angular strain of a frame field at `sigma`, differentiating the field
/// with a fourth-order central stencil.
pub fn angular_strain<F: Fn(f64) -> Frame>(field: F, sigma: f64) -> Vec3 {
    let h = 1e-3 * sigma.abs().max(1.0);
    let stencil = |d: &dyn Fn(&Frame) -> Vec3| -> Vec3 {
        (d(&field(sigma - 2.0 * h)) - d(&field(sigma - h)) * 8.0 + d(&field(sigma + h)) * 8.0
            - d(&field(sigma + 2.0 * h)))
            / (12.0 * h)
    };
    let deriv = Frame {
        d1: stencil(&|f| f.d1),
        d2: stencil(&|f| f.d2),
        d3: stencil(&|f| f.d3),
    };
    angular_strain_from_pair(&field(sigma), &deriv)
}
