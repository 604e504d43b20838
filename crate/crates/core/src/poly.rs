//! Polynomials in the dimensionless arc-length coordinate.
//!
//! [`SigmaPoly`] holds coefficients of ascending powers of sigma over any
//! [`Ring`] carrier. With jet coefficients it represents a field whose value
//! at each arc-length station is itself a truncated polynomial in the nodal
//! displacements; [`poly_sqrt`] and [`poly_recip`] expand the non-polynomial
//! functions of such fields as terminating series in the jet grading.

use crate::jets::Jet;
use crate::scalar::Ring;
use crate::{Error, Result};

/// Polynomial in sigma with `Ring`-valued coefficients, ascending powers.
/// The coefficient list is never empty.
#[derive(Debug, Clone)]
pub struct SigmaPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Ring> SigmaPoly<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        SigmaPoly { coeffs }
    }

    pub fn constant(c: S) -> Self {
        SigmaPoly { coeffs: vec![c] }
    }

    /// The monomial `c * sigma^power`.
    pub fn monomial(c: S, power: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); power + 1];
        coeffs[power] = c;
        SigmaPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> S {
        self.coeffs
            .get(power)
            .cloned()
            .unwrap_or_else(|| self.coeffs[0].zero_like())
    }

    fn template(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> SigmaPoly<T> {
        SigmaPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Exact first derivative in sigma.
    pub fn derivative(&self) -> SigmaPoly<S> {
        if self.coeffs.len() == 1 {
            return SigmaPoly::constant(self.template().zero_like());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(p, c)| c.scale(p as f64))
            .collect();
        SigmaPoly::new(coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> SigmaPoly<S> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(self.template().zero_like());
        for (p, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(1.0 / (p as f64 + 1.0)));
        }
        SigmaPoly::new(coeffs)
    }

    /// Evaluate at a numeric sigma.
    pub fn eval(&self, sigma: f64) -> S {
        let mut acc = self.template().zero_like();
        let mut pw = 1.0;
        for c in &self.coeffs {
            acc = acc.add(&c.scale(pw));
            pw *= sigma;
        }
        acc
    }

    pub fn truncate_trailing_zeros(&mut self) {
        let d = self.degree();
        self.coeffs.truncate(d + 1);
    }
}

impl<S: Ring> Ring for SigmaPoly<S> {
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.template().zero_like();
        let mut coeffs = Vec::with_capacity(n);
        for p in 0..n {
            let a = self.coeffs.get(p).unwrap_or(&zero);
            let b = other.coeffs.get(p).unwrap_or(&zero);
            coeffs.push(a.add(b));
        }
        SigmaPoly::new(coeffs)
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        let zero = self.template().zero_like();
        let mut coeffs = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (pa, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (pb, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                coeffs[pa + pb] = coeffs[pa + pb].add(&ca.mul(cb));
            }
        }
        SigmaPoly::new(coeffs)
    }

    fn neg(&self) -> Self {
        SigmaPoly::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    fn scale(&self, s: f64) -> Self {
        SigmaPoly::new(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    fn constant_like(&self, c: f64) -> Self {
        SigmaPoly::constant(self.template().constant_like(c))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// A sigma-polynomial with jet coefficients, viewed through its jet grading:
/// `p = base + w` where `base` is the numeric part (jet order zero) and `w`
/// collects every term of jet order >= 1. Analytic functions of `p` are
/// polynomial in sigma order by order exactly when `base` is constant in
/// sigma, which is how the straight reference configuration shows up here.
fn split_base(p: &SigmaPoly<Jet>) -> Result<(f64, SigmaPoly<Jet>)> {
    let base = p.coeffs()[0].constant_term();
    let mut w = p.clone();
    for (power, c) in p.coeffs().iter().enumerate() {
        if power == 0 {
            let mut c0 = c.clone();
            c0.set_coeff(crate::jets::Mono::ONE, 0.0);
            w.coeffs[0] = c0;
        } else if c.constant_term() != 0.0 {
            return Err(Error::JetDomain(format!(
                "sigma^{power} coefficient has a numeric part; \
                 series expansion in the jet grading does not terminate"
            )));
        }
    }
    Ok((base, w))
}

/// Series in the nilpotent jet part: `f(base + w) = sum f^(k)(base)/k! w^k`,
/// exact because `w^k` vanishes beyond the jet truncation degree.
fn poly_series(p: &SigmaPoly<Jet>, taylor: impl Fn(f64, usize) -> Vec<f64>) -> Result<SigmaPoly<Jet>> {
    let (base, w) = split_base(p)?;
    let jet_degree = p.coeffs()[0].max_degree();
    let t = taylor(base, jet_degree);
    let mut acc = p.constant_like(t[0]);
    let mut wp = p.constant_like(1.0);
    for coef in t.iter().skip(1) {
        wp = wp.mul(&w);
        wp.truncate_trailing_zeros();
        if wp.is_zero() {
            break;
        }
        acc = acc.add(&wp.scale(*coef));
    }
    acc.truncate_trailing_zeros();
    Ok(acc)
}

/// Square root of a jet-valued sigma-polynomial about its numeric base,
/// which must be a positive constant.
pub fn poly_sqrt(p: &SigmaPoly<Jet>) -> Result<SigmaPoly<Jet>> {
    let base = p.coeffs()[0].constant_term();
    if base <= 0.0 {
        return Err(Error::JetDomain(format!(
            "polynomial sqrt requires positive numeric base, got {base}"
        )));
    }
    poly_series(p, |c, deg| {
        let mut t = Vec::with_capacity(deg + 1);
        let mut b = 1.0;
        for k in 0..=deg {
            if k > 0 {
                b *= (0.5 - (k as f64 - 1.0)) / k as f64;
            }
            t.push(b * c.powf(0.5 - k as f64));
        }
        t
    })
}

/// Reciprocal of a jet-valued sigma-polynomial about its numeric base,
/// which must be a nonzero constant.
pub fn poly_recip(p: &SigmaPoly<Jet>) -> Result<SigmaPoly<Jet>> {
    let base = p.coeffs()[0].constant_term();
    if base == 0.0 {
        return Err(Error::JetDomain(
            "polynomial reciprocal requires nonzero numeric base".into(),
        ));
    }
    poly_series(p, |c, deg| {
        let mut t = Vec::with_capacity(deg + 1);
        let mut v = 1.0 / c;
        for k in 0..=deg {
            if k > 0 {
                v *= -1.0 / c;
            }
            t.push(v);
        }
        t
    })
}
