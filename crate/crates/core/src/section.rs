//! Cross-section constitutive and inertial properties.
//!
//! Stiffness and inertia coefficients follow the Kirchhoff constitutive
//! relations with the section axes chosen as principal axes of inertia, so
//! all off-diagonal couplings vanish and the identities
//! `J33 = (G/E)(J11 + J22)` and `I33 = I11 + I22` hold by construction.

use crate::{Error, Result};

/// Isotropic elastic material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    /// Young's modulus (Pa).
    pub e: f64,
    /// Shear modulus (Pa).
    pub g: f64,
    /// Mass density (kg/m^3).
    pub rho: f64,
}

impl Material {
    pub fn new(e: f64, g: f64, rho: f64) -> Result<Self> {
        if e <= 0.0 || g <= 0.0 || rho <= 0.0 {
            return Err(Error::BadSection(format!(
                "material constants must be positive: E = {e}, G = {g}, rho = {rho}"
            )));
        }
        Ok(Material { e, g, rho })
    }
}

/// `G = E / (2 (1 + nu))` for an isotropic material.
pub fn shear_modulus_default(e: f64, nu_poisson: f64) -> Result<f64> {
    if !(-1.0 < nu_poisson && nu_poisson <= 0.5) {
        return Err(Error::BadSection(format!(
            "Poisson ratio {nu_poisson} outside (-1, 0.5]"
        )));
    }
    Ok(e / (2.0 * (1.0 + nu_poisson)))
}

/// Section stiffness and inertia coefficients in principal axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionProperties {
    /// Area (m^2).
    pub a: f64,
    /// Axial stiffness `E A` (N).
    pub k33: f64,
    /// Bending stiffness about `d1` (N m^2); pairs with displacement along `e2`.
    pub j11: f64,
    /// Bending stiffness about `d2` (N m^2); pairs with displacement along `e1`.
    pub j22: f64,
    /// Torsional stiffness (N m^2).
    pub j33: f64,
    /// Rotary inertia about `d1` (kg m).
    pub i11: f64,
    /// Rotary inertia about `d2` (kg m).
    pub i22: f64,
    /// Polar rotary inertia (kg m).
    pub i33: f64,
    /// Mass per unit length `rho A` (kg/m).
    pub mu: f64,
}

impl SectionProperties {
    /// Build from the two section integrals `int eta^2 dA` (about `d1`) and
    /// `int xi^2 dA` (about `d2`), for any section shape.
    pub fn from_integrals(area: f64, int_eta2: f64, int_xi2: f64, mat: &Material) -> Result<Self> {
        if area <= 0.0 || int_eta2 <= 0.0 || int_xi2 <= 0.0 {
            return Err(Error::BadSection(
                "area and second moments must be positive".into(),
            ));
        }
        let s = SectionProperties {
            a: area,
            k33: mat.e * area,
            j11: mat.e * int_eta2,
            j22: mat.e * int_xi2,
            j33: mat.g * (int_eta2 + int_xi2),
            i11: mat.rho * int_eta2,
            i22: mat.rho * int_xi2,
            i33: mat.rho * (int_eta2 + int_xi2),
            mu: mat.rho * area,
        };
        debug_assert!(s.invariant_defect(mat) < 1e-12);
        Ok(s)
    }

    /// Relative defect of the principal-axis identities.
    pub fn invariant_defect(&self, mat: &Material) -> f64 {
        let j = (self.j33 - mat.g / mat.e * (self.j11 + self.j22)).abs() / self.j33;
        let i = (self.i33 - (self.i11 + self.i22)).abs() / self.i33;
        j.max(i)
    }
}

/// Rectangular section of width `b` along `d1` and thickness `d` along `d2`.
///
/// `int eta^2 dA = b d^3 / 12` and `int xi^2 dA = d b^3 / 12`, so for
/// `b > d` the softer bending direction is along `e2`.
pub fn rect_section(b: f64, d: f64, mat: &Material) -> Result<SectionProperties> {
    if b <= 0.0 || d <= 0.0 {
        return Err(Error::BadSection(format!(
            "rectangle dimensions must be positive: B = {b}, D = {d}"
        )));
    }
    SectionProperties::from_integrals(b * d, b * d.powi(3) / 12.0, d * b.powi(3) / 12.0, mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cantilever_material() -> Material {
        let e = 2.08e8;
        Material::new(e, shear_modulus_default(e, 0.3).unwrap(), 3000.0).unwrap()
    }

    #[test]
    fn shear_modulus_values() {
        assert_relative_eq!(shear_modulus_default(2.08e8, 0.3).unwrap(), 8.0e7);
        assert_relative_eq!(shear_modulus_default(1.0, 0.0).unwrap(), 0.5);
        assert_relative_eq!(shear_modulus_default(1.0, 0.5).unwrap(), 1.0 / 3.0);
        assert!(shear_modulus_default(1.0, -1.0).is_err());
        assert!(shear_modulus_default(1.0, 0.6).is_err());
    }

    #[test]
    fn benchmark_rectangle_values() {
        let mat = cantilever_material();
        let s = rect_section(0.01, 0.005, &mat).unwrap();
        assert_relative_eq!(s.a, 5.0e-5, max_relative = 1e-12);
        assert_relative_eq!(s.k33, 1.04e4, max_relative = 1e-12);
        assert_relative_eq!(s.j11, 2.1666666666666667e-2, max_relative = 1e-12);
        assert_relative_eq!(s.j22, 8.666666666666667e-2, max_relative = 1e-12);
        assert_relative_eq!(s.i11, 3.125e-7, max_relative = 1e-12);
        assert_relative_eq!(s.i22, 1.25e-6, max_relative = 1e-12);
        assert_relative_eq!(s.mu, 0.15, max_relative = 1e-12);
        assert!(s.invariant_defect(&mat) < 1e-12);
    }

    #[test]
    fn square_section_symmetry() {
        let mat = cantilever_material();
        let s = rect_section(0.01, 0.01, &mat).unwrap();
        assert_relative_eq!(s.j11, s.j22);
        assert_relative_eq!(s.i11, s.i22);
    }

    #[test]
    fn thickness_scaling() {
        let mat = cantilever_material();
        let s1 = rect_section(0.01, 0.005, &mat).unwrap();
        let s2 = rect_section(0.01, 0.01, &mat).unwrap();
        assert_relative_eq!(s2.j11 / s1.j11, 8.0, max_relative = 1e-12);
        assert_relative_eq!(s2.j22 / s1.j22, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_dimensions() {
        let mat = cantilever_material();
        assert!(rect_section(0.0, 0.005, &mat).is_err());
        assert!(rect_section(0.01, -1.0, &mat).is_err());
        assert!(Material::new(-1.0, 1.0, 1.0).is_err());
    }
}
