//! Arithmetic carriers for the kinematic maps.
//!
//! Every kinematic map in this crate is written once, generically, and then
//! instantiated with plain numbers (for pointwise evaluation), with [`Jet`]s
//! (to expand quantities in the nodal displacements), or with [`Dual`] pairs
//! (to carry an arc-length derivative alongside the value).
//!
//! [`Jet`]: crate::jets::Jet

use crate::Result;

/// Commutative ring operations plus scaling by `f64`.
///
/// Constants are minted from an existing value (`constant_like`) because
/// jet-valued carriers need shape information (variable count, truncation
/// degree) that a bare `f64` cannot supply.
pub trait Ring: Clone {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: f64) -> Self;
    fn constant_like(&self, c: f64) -> Self;
    fn is_zero(&self) -> bool;

    fn zero_like(&self) -> Self {
        self.constant_like(0.0)
    }
    fn one_like(&self) -> Self {
        self.constant_like(1.0)
    }
    fn square(&self) -> Self {
        self.mul(self)
    }
}

/// Ring with the analytic functions the director construction needs.
pub trait Analytic: Ring {
    /// Square root; errors when the carrier's base point is not positive.
    fn sqrt(&self) -> Result<Self>;
    /// Reciprocal; errors when the carrier's base point is zero.
    fn recip(&self) -> Result<Self>;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
}

/// The ratio `(1 - sqrt(1 - p)) / p` with its removable singularity at
/// `p = 0` filled in. This is the tilt factor of the rotation taking `e3`
/// onto the unit tangent; `tilt_ratio_pair` also returns the derivative
/// with respect to `p` so dual carriers can chain through it.
pub trait TiltRatio: Ring {
    fn tilt_ratio(&self) -> Result<Self> {
        Ok(self.tilt_ratio_pair()?.0)
    }
    fn tilt_ratio_pair(&self) -> Result<(Self, Self)>;
}

impl Ring for f64 {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: f64) -> Self {
        self * c
    }
    fn constant_like(&self, c: f64) -> Self {
        c
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Analytic for f64 {
    fn sqrt(&self) -> Result<Self> {
        if *self < 0.0 {
            return Err(crate::Error::JetDomain(format!(
                "sqrt of negative value {self}"
            )));
        }
        Ok(f64::sqrt(*self))
    }
    fn recip(&self) -> Result<Self> {
        if *self == 0.0 {
            return Err(crate::Error::JetDomain("reciprocal of zero".into()));
        }
        Ok(1.0 / self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
}

impl TiltRatio for f64 {
    fn tilt_ratio_pair(&self) -> Result<(Self, Self)> {
        // (1 - sqrt(1-p))/p = 1/(1 + sqrt(1-p)), cancellation-free on [0, 1].
        let s = (1.0 - self).max(0.0).sqrt();
        let h = 1.0 / (1.0 + s);
        let dh = if s > 0.0 {
            1.0 / (2.0 * s * (1.0 + s) * (1.0 + s))
        } else {
            // p = 1 endpoint: one-sided derivative diverges.
            f64::INFINITY
        };
        Ok((h, dh))
    }
}

/// Value/derivative pair: first-order automatic differentiation in one
/// independent direction, generic over the underlying carrier.
#[derive(Debug, Clone)]
pub struct Dual<S> {
    pub val: S,
    pub der: S,
}

impl<S: Ring> Dual<S> {
    pub fn new(val: S, der: S) -> Self {
        Dual { val, der }
    }
    pub fn constant(val: S) -> Self {
        let der = val.zero_like();
        Dual { val, der }
    }
}

impl<S: Ring> Ring for Dual<S> {
    fn add(&self, other: &Self) -> Self {
        Dual {
            val: self.val.add(&other.val),
            der: self.der.add(&other.der),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Dual {
            val: self.val.sub(&other.val),
            der: self.der.sub(&other.der),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Dual {
            val: self.val.mul(&other.val),
            der: self.val.mul(&other.der).add(&self.der.mul(&other.val)),
        }
    }
    fn neg(&self) -> Self {
        Dual {
            val: self.val.neg(),
            der: self.der.neg(),
        }
    }
    fn scale(&self, c: f64) -> Self {
        Dual {
            val: self.val.scale(c),
            der: self.der.scale(c),
        }
    }
    fn constant_like(&self, c: f64) -> Self {
        Dual {
            val: self.val.constant_like(c),
            der: self.val.zero_like(),
        }
    }
    fn is_zero(&self) -> bool {
        self.val.is_zero() && self.der.is_zero()
    }
}

impl<S: Analytic> Analytic for Dual<S> {
    fn sqrt(&self) -> Result<Self> {
        let s = self.val.sqrt()?;
        let der = self.der.mul(&s.scale(2.0).recip()?);
        Ok(Dual { val: s, der })
    }
    fn recip(&self) -> Result<Self> {
        let r = self.val.recip()?;
        let der = self.der.mul(&r.square()).neg();
        Ok(Dual { val: r, der })
    }
    fn sin(&self) -> Self {
        Dual {
            val: self.val.sin(),
            der: self.der.mul(&self.val.cos()),
        }
    }
    fn cos(&self) -> Self {
        Dual {
            val: self.val.cos(),
            der: self.der.mul(&self.val.sin()).neg(),
        }
    }
}

impl<S: TiltRatio> TiltRatio for Dual<S> {
    fn tilt_ratio_pair(&self) -> Result<(Self, Self)> {
        let (h, dh) = self.val.tilt_ratio_pair()?;
        let val = Dual {
            val: h,
            der: self.der.mul(&dh),
        };
        // No second derivative available through this carrier.
        let zero = val.zero_like();
        Ok((val, zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tilt_ratio_matches_series() {
        // h(p) = 1/2 + p/8 + p^2/16 + 5p^3/128 + ...
        for &p in &[1e-8f64, 1e-5, 1e-3] {
            let series = 0.5 + p / 8.0 + p * p / 16.0 + 5.0 * p.powi(3) / 128.0;
            let (h, _) = p.tilt_ratio_pair().unwrap();
            assert_relative_eq!(h, series, max_relative = 1e-13);
        }
        assert_relative_eq!(0.0f64.tilt_ratio().unwrap(), 0.5);
        assert_relative_eq!(1.0f64.tilt_ratio().unwrap(), 1.0);
    }

    #[test]
    fn tilt_derivative_matches_finite_difference() {
        for &p in &[1e-3, 0.2, 0.7] {
            let (_, dh) = p.tilt_ratio_pair().unwrap();
            let e = 1e-7;
            let fd = ((p + e).tilt_ratio().unwrap() - (p - e).tilt_ratio().unwrap()) / (2.0 * e);
            assert_relative_eq!(dh, fd, max_relative = 1e-5);
        }
    }

    #[test]
    fn dual_chain_rule() {
        // f(x) = sqrt(1 + x^2) at x = 0.7, seeded with dx = 1.
        let x = Dual::new(0.7f64, 1.0);
        let f = x.square().add(&x.one_like()).sqrt().unwrap();
        let v = (1.0f64 + 0.49).sqrt();
        assert_relative_eq!(f.val, v, max_relative = 1e-15);
        assert_relative_eq!(f.der, 0.7 / v, max_relative = 1e-14);
    }
}
