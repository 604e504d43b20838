//! Truncated multivariate polynomial ("jet") arithmetic.
//!
//! A [`Jet`] is a polynomial in up to [`MAX_VARS`] variables truncated at a
//! fixed total degree. Jets carry the perturbation expansions of kinematic
//! and energy quantities in the twelve nodal displacements of a rod element:
//! multiplying jets discards every term whose total degree exceeds the
//! truncation, which is exactly the bookkeeping a perturbation series needs.
//! Terms are held in a sparse map keyed by packed exponent multi-indices in
//! graded lexicographic order, so iteration (and therefore every generated
//! file) is deterministic.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Analytic, Ring, TiltRatio};
use crate::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 12;
const EXP_BITS: u32 = 4;
const MAX_EXP: usize = (1 << EXP_BITS) - 1;

/// Exponent multi-index packed into a `u64`: total degree in bits 48..56,
/// then four bits per variable. Comparing the packed words orders monomials
/// by total degree first, then lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    fn shift(var: usize) -> u32 {
        debug_assert!(var < MAX_VARS);
        (MAX_VARS - 1 - var) as u32 * EXP_BITS
    }

    /// The monomial `q_var`.
    pub fn var(var: usize) -> Mono {
        Mono((1 << 48) | (1 << Self::shift(var)))
    }

    pub fn degree(self) -> usize {
        (self.0 >> 48) as usize
    }

    pub fn exponent(self, var: usize) -> usize {
        ((self.0 >> Self::shift(var)) & MAX_EXP as u64) as usize
    }

    /// Product of two monomials (exponents add).
    pub fn times(self, other: Mono) -> Mono {
        let m = Mono(self.0 + other.0);
        debug_assert!(
            (0..MAX_VARS).all(|v| m.exponent(v) <= MAX_EXP),
            "monomial exponent overflow"
        );
        m
    }

    /// Divide by `q_var` once; `None` when the exponent is already zero.
    pub fn div_var(self, var: usize) -> Option<Mono> {
        if self.exponent(var) == 0 {
            None
        } else {
            Some(Mono(self.0 - (1 << 48) - (1 << Self::shift(var))))
        }
    }

    pub fn exponents(self, nvars: usize) -> Vec<usize> {
        (0..nvars).map(|v| self.exponent(v)).collect()
    }

    /// Render with the given variable names, e.g. `X_b^2*Z_b`; `1` for the
    /// empty monomial.
    pub fn render(self, names: &[&str]) -> String {
        let mut parts = Vec::new();
        for (v, name) in names.iter().enumerate() {
            match self.exponent(v) {
                0 => {}
                1 => parts.push((*name).to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Sparse truncated polynomial in `nvars` variables, total degree at most
/// `degree`. Absent terms are zero; stored coefficients are finite and
/// nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Mono, f64>,
}

impl Jet {
    pub fn zero(nvars: usize, degree: usize) -> Jet {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        assert!(degree <= MAX_EXP, "truncation degree too large");
        Jet {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, degree: usize, c: f64) -> Jet {
        let mut j = Jet::zero(nvars, degree);
        if c != 0.0 {
            j.terms.insert(Mono::ONE, c);
        }
        j
    }

    /// The jet `q_var` (plus nothing else).
    pub fn variable(nvars: usize, degree: usize, var: usize) -> Jet {
        assert!(var < nvars, "variable index out of range");
        assert!(degree >= 1, "degree-0 jet cannot hold a variable");
        let mut j = Jet::zero(nvars, degree);
        j.terms.insert(Mono::var(var), 1.0);
        j
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, f64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn coeff(&self, m: Mono) -> f64 {
        self.terms.get(&m).copied().unwrap_or(0.0)
    }

    pub fn constant_term(&self) -> f64 {
        self.coeff(Mono::ONE)
    }

    pub fn set_coeff(&mut self, m: Mono, c: f64) {
        assert!(m.degree() <= self.degree, "term exceeds truncation degree");
        if c == 0.0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, c);
        }
    }

    fn check_shape(&self, other: &Jet) {
        assert!(
            self.nvars == other.nvars && self.degree == other.degree,
            "jet shape mismatch: ({}, {}) vs ({}, {})",
            self.nvars,
            self.degree,
            other.nvars,
            other.degree
        );
    }

    /// Lowest total degree present (None for the zero jet).
    pub fn min_order(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Terms of exact total degree `k`.
    pub fn homogeneous_part(&self, k: usize) -> Jet {
        let mut out = Jet::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            if m.degree() == k {
                out.terms.insert(*m, *c);
            }
        }
        out
    }

    /// Same terms under a (weakly larger) truncation degree.
    pub fn with_max_degree(&self, degree: usize) -> Jet {
        assert!(degree >= self.degree, "cannot lower the truncation degree");
        let mut out = Jet::zero(self.nvars, degree);
        out.terms = self.terms.clone();
        out
    }

    /// Drop coefficients smaller than `threshold` in magnitude.
    pub fn snapped(&self, threshold: f64) -> Jet {
        let mut out = Jet::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            if c.abs() > threshold {
                out.terms.insert(*m, *c);
            }
        }
        out
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.abs()))
    }

    /// Evaluate at a numeric point.
    pub fn eval(&self, point: &[f64]) -> f64 {
        assert!(point.len() >= self.nvars, "evaluation point too short");
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut term = *c;
            for v in 0..self.nvars {
                for _ in 0..m.exponent(v) {
                    term *= point[v];
                }
            }
            total += term;
        }
        total
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Jet {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Jet::zero(self.nvars, self.degree);
        for (m, c) in &self.terms {
            if let Some(d) = m.div_var(var) {
                let e = m.exponent(var) as f64;
                *out.terms.entry(d).or_insert(0.0) += c * e;
            }
        }
        out.prune();
        out
    }

    /// All formal partials, one jet per variable.
    pub fn gradient(&self) -> Vec<Jet> {
        (0..self.nvars).map(|v| self.partial(v)).collect()
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| *c != 0.0);
    }

    /// Compose an analytic function given the Taylor coefficients of `f`
    /// about this jet's constant term: `taylor[k] = f^(k)(c) / k!`.
    fn compose_about_constant(&self, taylor: &[f64]) -> Jet {
        let c = self.constant_term();
        let mut w = self.clone();
        w.set_coeff(Mono::ONE, self.coeff(Mono::ONE) - c);
        let mut acc = Jet::constant(self.nvars, self.degree, taylor[0]);
        let mut wp = Jet::constant(self.nvars, self.degree, 1.0);
        for t in taylor.iter().skip(1) {
            wp = wp.mul(&w);
            if wp.terms.is_empty() {
                break;
            }
            acc = acc.add(&wp.scale(*t));
        }
        acc
    }
}

impl Ring for Jet {
    fn add(&self, other: &Jet) -> Jet {
        self.check_shape(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let e = out.terms.entry(*m).or_insert(0.0);
            *e += c;
            if *e == 0.0 {
                out.terms.remove(m);
            }
        }
        out
    }

    fn sub(&self, other: &Jet) -> Jet {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Jet) -> Jet {
        self.check_shape(other);
        let mut out = Jet::zero(self.nvars, self.degree);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > self.degree {
                break;
            }
            for (mb, cb) in &other.terms {
                // Keys are degree-major, so once the sum overflows we are done
                // with this row.
                if da + mb.degree() > self.degree {
                    break;
                }
                let m = ma.times(*mb);
                *out.terms.entry(m).or_insert(0.0) += ca * cb;
            }
        }
        out.prune();
        out
    }

    fn neg(&self) -> Jet {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    fn scale(&self, s: f64) -> Jet {
        if s == 0.0 {
            return Jet::zero(self.nvars, self.degree);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= s;
        }
        out
    }

    fn constant_like(&self, c: f64) -> Jet {
        Jet::constant(self.nvars, self.degree, c)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Analytic for Jet {
    /// Truncated binomial series about the constant term, which must be
    /// positive: a degenerate base point has no real square root branch.
    fn sqrt(&self) -> Result<Jet> {
        let c = self.constant_term();
        if c <= 0.0 {
            return Err(Error::JetDomain(format!(
                "jet sqrt requires a positive constant term, got {c}"
            )));
        }
        let mut taylor = Vec::with_capacity(self.degree + 1);
        // f^(k)(c)/k! = binomial(1/2, k) c^(1/2 - k)
        let mut b = 1.0;
        for k in 0..=self.degree {
            if k > 0 {
                b *= (0.5 - (k as f64 - 1.0)) / k as f64;
            }
            taylor.push(b * c.powf(0.5 - k as f64));
        }
        Ok(self.compose_about_constant(&taylor))
    }

    /// Truncated geometric series about the constant term, which must be
    /// nonzero.
    fn recip(&self) -> Result<Jet> {
        let c = self.constant_term();
        if c == 0.0 {
            return Err(Error::JetDomain(
                "jet reciprocal requires a nonzero constant term".into(),
            ));
        }
        let mut taylor = Vec::with_capacity(self.degree + 1);
        let mut t = 1.0 / c;
        for k in 0..=self.degree {
            if k > 0 {
                t *= -1.0 / c;
            }
            taylor.push(t);
        }
        Ok(self.compose_about_constant(&taylor))
    }

    fn sin(&self) -> Jet {
        let c = self.constant_term();
        let (s, co) = c.sin_cos();
        let mut taylor = Vec::with_capacity(self.degree + 1);
        let mut fact = 1.0;
        for k in 0..=self.degree {
            if k > 0 {
                fact *= k as f64;
            }
            let d = match k % 4 {
                0 => s,
                1 => co,
                2 => -s,
                _ => -co,
            };
            taylor.push(d / fact);
        }
        self.compose_about_constant(&taylor)
    }

    fn cos(&self) -> Jet {
        let c = self.constant_term();
        let (s, co) = c.sin_cos();
        let mut taylor = Vec::with_capacity(self.degree + 1);
        let mut fact = 1.0;
        for k in 0..=self.degree {
            if k > 0 {
                fact *= k as f64;
            }
            let d = match k % 4 {
                0 => co,
                1 => -s,
                2 => -co,
                _ => s,
            };
            taylor.push(d / fact);
        }
        self.compose_about_constant(&taylor)
    }
}

impl TiltRatio for Jet {
    fn tilt_ratio_pair(&self) -> Result<(Jet, Jet)> {
        // (1 - sqrt(1-p))/p = 1/(1 + sqrt(1-p)): regular for any base point
        // with p < 1, including p = 0.
        let one = self.one_like();
        let s = one.sub(self).sqrt().map_err(|_| {
            Error::JetDomain(format!(
                "tilt ratio needs a base point below 1, got {}",
                self.constant_term()
            ))
        })?;
        let h = one.add(&s).recip()?;
        // h'(p) = 1 / (2 sqrt(1-p) (1 + sqrt(1-p))^2)
        let dh = s.scale(2.0).mul(&one.add(&s).square()).recip()?;
        Ok((h, dh))
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = (0..self.nvars).map(|v| format!("q{v}")).collect();
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let mut first = true;
        for (m, c) in &self.terms {
            if first {
                write!(f, "{c}*{}", m.render(&name_refs))?;
                first = false;
            } else {
                write!(f, " + {c}*{}", m.render(&name_refs))?;
            }
        }
        Ok(())
    }
}
