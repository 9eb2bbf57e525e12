//! Truncated single-variable Dirichlet series `Σ aₙ n^{-s}`.
//!
//! A series stores its nonzero coefficients sorted by index together with a
//! truncation bound `N`: every stored index is `≤ N`, and products drop any
//! index above the bound requested by the caller.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Coefficient = Complex64;

/// Coefficients at or below this magnitude are treated as exact zeros.
pub const PRUNE_EPS: f64 = 1e-300;

pub(crate) fn is_negligible(c: Complex64) -> bool {
    c.norm() <= PRUNE_EPS
}

pub(crate) fn check_finite(c: Complex64) -> Result<()> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("{c}")))
    }
}

/// `n^{-s}` on the principal branch, `exp(-s ln n)`.
#[inline]
pub fn index_power(n: u64, s: Complex64) -> Complex64 {
    if n == 1 {
        return Complex64::new(1.0, 0.0);
    }
    let ln = (n as f64).ln();
    let modulus = (-s.re * ln).exp();
    let (sin, cos) = (s.im * ln).sin_cos();
    Complex64::new(modulus * cos, -modulus * sin)
}

/// Scan of `σ' ∈ [0, σ]` for the smallest `N^{-(σ−σ')} · majorant(σ')`.
pub(crate) fn tail_scan(sigma: f64, bound: u64, majorant: impl Fn(f64) -> f64) -> f64 {
    let steps = 64;
    (0..=steps)
        .map(|i| {
            let sp = sigma * i as f64 / steps as f64;
            (bound as f64 + 1.0).powf(-(sigma - sp)) * majorant(sp)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Sparse accumulator used by the convolution kernels: dense when the output
/// is expected to fill a good fraction of `1..=bound`, ordered map otherwise.
pub(crate) enum Accumulator {
    Dense(Vec<Complex64>),
    Sparse(BTreeMap<u64, Complex64>),
}

impl Accumulator {
    pub(crate) fn new(bound: u64, expected_terms: usize) -> Self {
        if bound <= (1 << 22) && (expected_terms as u64).saturating_mul(8) >= bound {
            Accumulator::Dense(vec![Complex64::new(0.0, 0.0); bound as usize + 1])
        } else {
            Accumulator::Sparse(BTreeMap::new())
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, index: u64, value: Complex64) {
        match self {
            Accumulator::Dense(v) => v[index as usize] += value,
            Accumulator::Sparse(m) => *m.entry(index).or_insert(Complex64::new(0.0, 0.0)) += value,
        }
    }

    pub(crate) fn into_terms(self) -> Vec<(u64, Complex64)> {
        match self {
            Accumulator::Dense(v) => v
                .into_iter()
                .enumerate()
                .skip(1)
                .filter(|(_, c)| !is_negligible(*c))
                .map(|(n, c)| (n as u64, c))
                .collect(),
            Accumulator::Sparse(m) => m.into_iter().filter(|(_, c)| !is_negligible(*c)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirichletSeries {
    terms: Vec<(u64, Complex64)>,
    truncation: u64,
}

impl DirichletSeries {
    /// Builds a series from explicit terms. Zero coefficients are dropped.
    pub fn new<I>(terms: I, truncation: u64) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Complex64)>,
    {
        if truncation == 0 {
            return Err(Error::ZeroTruncation);
        }
        let mut map = BTreeMap::new();
        for (n, c) in terms {
            if n == 0 || n > truncation {
                return Err(Error::IndexOutOfRange { index: n.to_string(), bound: truncation.to_string() });
            }
            check_finite(c)?;
            if map.insert(n, c).is_some() {
                return Err(Error::DuplicateIndex(n.to_string()));
            }
        }
        Ok(Self { terms: map.into_iter().filter(|(_, c)| !is_negligible(*c)).collect(), truncation })
    }

    /// Builds a series from real coefficients; convenience for tests and examples.
    pub fn from_real<I>(terms: I, truncation: u64) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, f64)>,
    {
        Self::new(terms.into_iter().map(|(n, x)| (n, Complex64::new(x, 0.0))), truncation)
    }

    /// Internal constructor: `terms` sorted, unique, in range.
    pub(crate) fn from_sorted(terms: Vec<(u64, Complex64)>, truncation: u64) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|&(n, _)| n >= 1 && n <= truncation));
        Self { terms: terms.into_iter().filter(|(_, c)| !is_negligible(*c)).collect(), truncation }
    }

    pub fn zero(truncation: u64) -> Self {
        Self { terms: Vec::new(), truncation: truncation.max(1) }
    }

    pub fn constant(c: Complex64, truncation: u64) -> Self {
        Self::from_sorted(vec![(1, c)], truncation.max(1))
    }

    /// `c · n^{-s}`; the truncation is raised to `n` if needed.
    pub fn monomial(n: u64, c: Complex64, truncation: u64) -> Self {
        assert!(n >= 1, "Dirichlet indices start at 1");
        Self::from_sorted(vec![(n, c)], truncation.max(n))
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn terms(&self) -> &[(u64, Complex64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: u64) -> Complex64 {
        self.terms.binary_search_by_key(&n, |&(k, _)| k).map(|i| self.terms[i].1).unwrap_or_default()
    }

    pub fn min_index(&self) -> Option<u64> {
        self.terms.first().map(|&(n, _)| n)
    }

    pub fn max_index(&self) -> Option<u64> {
        self.terms.last().map(|&(n, _)| n)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|&(n, _)| n == 1)
    }

    /// Restricts to indices `≤ bound` and sets the truncation to `bound`.
    pub fn truncate(&self, bound: u64) -> Self {
        let bound = bound.max(1);
        Self { terms: self.terms.iter().copied().filter(|&(n, _)| n <= bound).collect(), truncation: bound }
    }

    /// Same terms under a new truncation bound (raised to cover the support).
    pub fn with_truncation(&self, bound: u64) -> Self {
        let bound = bound.max(self.max_index().unwrap_or(1));
        Self { terms: self.terms.clone(), truncation: bound }
    }

    /// Termwise sum; the result carries `min(N_A, N_B)`.
    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let bound = self.truncation.min(other.truncation);
        let zero = Complex64::new(0.0, 0.0);
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let (n, c) = match (a.get(i), b.get(j)) {
                (Some(&(n, x)), Some(&(m, y))) if n == m => {
                    i += 1;
                    j += 1;
                    (n, f(x, y))
                }
                (Some(&(n, x)), Some(&(m, _))) if n < m => {
                    i += 1;
                    (n, f(x, zero))
                }
                (Some(_), Some(&(m, y))) => {
                    j += 1;
                    (m, f(zero, y))
                }
                (Some(&(n, x)), None) => {
                    i += 1;
                    (n, f(x, zero))
                }
                (None, Some(&(m, y))) => {
                    j += 1;
                    (m, f(zero, y))
                }
                (None, None) => unreachable!(),
            };
            if n <= bound {
                out.push((n, c));
            }
        }
        Self::from_sorted(out, bound)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_sorted(self.terms.iter().map(|&(n, a)| (n, a * c)).collect(), self.truncation)
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    /// Dirichlet convolution `c_n = Σ_{de=n} a_d b_e` for `n ≤ truncation`.
    pub fn mul(&self, other: &Self, truncation: u64) -> Self {
        let truncation = truncation.max(1);
        let mut acc = Accumulator::new(truncation, self.len().saturating_mul(other.len()));
        for &(d, a) in &self.terms {
            if d > truncation {
                break;
            }
            let limit = truncation / d;
            for &(e, b) in &other.terms {
                if e > limit {
                    break;
                }
                acc.add(d * e, a * b);
            }
        }
        Self::from_sorted(acc.into_terms(), truncation)
    }

    /// `Σ aₙ n^{-s}` as an exact finite sum.
    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        self.terms.iter().map(|&(n, a)| a * index_power(n, s)).sum()
    }

    /// Horizontal translate: coefficients `aₙ n^{-σ}`, so that
    /// `translate(σ)(s) = D(s + σ)`.
    pub fn translate(&self, sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma < 0.0 {
            return Err(Error::InvalidArgument(format!("translation {sigma} must be finite and >= 0")));
        }
        Ok(Self::from_sorted(
            self.terms.iter().map(|&(n, a)| (n, a * (n as f64).powf(-sigma))).collect(),
            self.truncation,
        ))
    }

    /// `Σ |aₙ| n^{-σ}`, the trivial bound for `sup_{Re s ≥ σ} |D(s)|`.
    pub fn l1_norm_at(&self, sigma: f64) -> f64 {
        self.terms.iter().map(|&(n, a)| a.norm() * (n as f64).powf(-sigma)).sum()
    }

    pub fn l2_norm_squared(&self) -> f64 {
        self.terms.iter().map(|&(_, a)| a.norm_sqr()).sum()
    }

    /// The series without its constant term.
    pub fn without_constant(&self) -> Self {
        Self { terms: self.terms.iter().copied().filter(|&(n, _)| n != 1).collect(), truncation: self.truncation }
    }

    /// Formal `exp`: `exp(a₁) · Σ_r (D − a₁)^r / r!`. The constant-free part
    /// has minimum index ≥ 2, so its `r`-th power vanishes once `2^r > N`.
    pub fn exp_series(&self, truncation: u64) -> Self {
        let truncation = truncation.max(1);
        let a1 = self.coeff(1);
        let nilpotent = self.without_constant().truncate(truncation);
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Accumulator::new(truncation, 0);
        acc.add(1, one);
        let mut power = Self::constant(one, truncation);
        let mut r = 1u32;
        loop {
            power = power.mul(&nilpotent, truncation).scale(Complex64::new(1.0 / r as f64, 0.0));
            if power.is_zero() {
                break;
            }
            for &(n, c) in &power.terms {
                acc.add(n, c);
            }
            r += 1;
        }
        Self::from_sorted(acc.into_terms(), truncation).scale(a1.exp())
    }

    /// Bound on `|exp(D)(s) − exp_series(D, N)(s)|` for `Re s ≥ sigma`:
    /// dropped indices exceed `N`, and the full exponential has coefficient
    /// ℓ¹ norm at most `|e^{a₁}| exp(Σ_{n≥2} |aₙ| n^{-σ'})` at abscissa `σ'`.
    pub fn exp_tail_bound(&self, truncation: u64, sigma: f64) -> f64 {
        let a1 = self.coeff(1).re.exp();
        let rest = self.without_constant();
        tail_scan(sigma, truncation, |sp| a1 * rest.l1_norm_at(sp).exp())
    }

    /// Formal logarithm, the inverse of [`exp_series`](Self::exp_series):
    /// `ln a₁ + Σ_r (−1)^{r+1} u^r / r` with `u = D/a₁ − 1`.
    pub fn log_series(&self, truncation: u64) -> Result<Self> {
        let truncation = truncation.max(1);
        let a1 = self.coeff(1);
        if is_negligible(a1) {
            return Err(Error::VanishingConstantTerm);
        }
        let u = self.without_constant().truncate(truncation).scale(a1.inv());
        let mut acc = Accumulator::new(truncation, 0);
        acc.add(1, a1.ln());
        let mut power = Self::constant(Complex64::new(1.0, 0.0), truncation);
        let mut r = 1u32;
        loop {
            power = power.mul(&u, truncation);
            if power.is_zero() {
                break;
            }
            let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
            let w = Complex64::new(sign / r as f64, 0.0);
            for &(n, c) in &power.terms {
                acc.add(n, c * w);
            }
            r += 1;
        }
        Ok(Self::from_sorted(acc.into_terms(), truncation))
    }

    /// Maps every index `n` to `n · factor`, dropping anything above `truncation`.
    pub fn dilate(&self, factor: u64, truncation: u64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|&(n, c)| n.checked_mul(factor).filter(|&m| m <= truncation).map(|m| (m, c)))
            .collect();
        Self::from_sorted(terms, truncation.max(1))
    }

    /// Inverse of [`dilate`](Self::dilate); fails if some index is not a multiple of `factor`.
    pub fn contract(&self, factor: u64) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.len());
        for &(n, c) in &self.terms {
            if n % factor != 0 {
                return Err(Error::InvalidArgument(format!("index {n} is not a multiple of {factor}")));
            }
            terms.push((n / factor, c));
        }
        Ok(Self::from_sorted(terms, (self.truncation / factor).max(1)))
    }

    /// Largest coefficientwise difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub_untruncated(other).terms.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }

    fn sub_untruncated(&self, other: &Self) -> Self {
        let bound = self.truncation.max(other.truncation);
        self.with_truncation(bound).sub(&other.with_truncation(bound))
    }
}

impl fmt::Display for DirichletSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(n, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if n == 1 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{n}^-s")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(terms: &[(u64, f64)], n: u64) -> DirichletSeries {
        DirichletSeries::from_real(terms.iter().copied(), n).unwrap()
    }

    #[test]
    fn construction() {
        let one = real(&[(1, 1.0)], 10);
        assert!(one.is_constant());
        assert_eq!(one.coeff(1), c(1.0, 0.0));
        let d = real(&[(2, 1.0), (6, -0.5)], 10);
        assert_eq!(d.terms(), &[(2, c(1.0, 0.0)), (6, c(-0.5, 0.0))]);
        assert!(matches!(real_err(&[(12, 1.0)], 10), Error::IndexOutOfRange { .. }));
        assert!(matches!(real_err(&[(2, 1.0), (2, 3.0)], 10), Error::DuplicateIndex(_)));
        assert!(matches!(real_err(&[(0, 1.0)], 10), Error::IndexOutOfRange { .. }));
        assert!(matches!(real_err(&[(2, f64::NAN)], 10), Error::NonFinite(_)));
        assert_eq!(DirichletSeries::from_real([(1, 1.0)], 0), Err(Error::ZeroTruncation));
    }

    fn real_err(terms: &[(u64, f64)], n: u64) -> Error {
        DirichletSeries::from_real(terms.iter().copied(), n).unwrap_err()
    }

    #[test]
    fn addition() {
        let a = real(&[(1, 1.0), (2, 1.0)], 10);
        let b = real(&[(2, 1.0)], 8);
        let s = a.add(&b);
        assert_eq!(s, real(&[(1, 1.0), (2, 2.0)], 8));
        assert_eq!(a.add(&DirichletSeries::zero(10)), a);
        let cancel = b.add(&b.neg());
        assert!(cancel.is_zero());
    }

    #[test]
    fn multiplication() {
        let a = real(&[(1, 1.0), (2, 1.0)], 10);
        let b = real(&[(1, 1.0), (3, 1.0)], 10);
        assert_eq!(a.mul(&b, 10), real(&[(1, 1.0), (2, 1.0), (3, 1.0), (6, 1.0)], 10));
        assert_eq!(a.mul(&DirichletSeries::constant(c(1.0, 0.0), 10), 10), a);

        // divisor-pair brute force for (Σ_{n≤8} n^{-s})² at index 4
        let zeta8 = real(&(1..=8).map(|n| (n, 1.0)).collect::<Vec<_>>(), 8);
        let sq = zeta8.mul(&zeta8, 8);
        let pairs = (1..=8u64).flat_map(|d| (1..=8u64).map(move |e| (d, e))).filter(|&(d, e)| d * e == 4).count();
        assert_eq!(pairs, 3);
        assert_eq!(sq.coeff(4), c(pairs as f64, 0.0));
    }

    #[test]
    fn scaling() {
        assert!(real(&[(2, 1.0)], 4).scale(c(0.0, 0.0)).is_zero());
        assert_eq!(real(&[(1, 1.0), (2, 1.0)], 4).scale(c(2.0, 0.0)), real(&[(1, 2.0), (2, 2.0)], 4));
        let a = real(&[(1, 0.3), (3, -0.7), (4, 0.1)], 4);
        let k = c(1.7, -0.4);
        assert!(a.scale(k).scale(k.inv()).max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn evaluation() {
        assert_eq!(real(&[(1, 1.0), (2, 1.0)], 2).evaluate(c(1.0, 0.0)), c(1.5, 0.0));
        assert_eq!(real(&[(2, 1.0)], 2).evaluate(c(0.0, 0.0)), c(1.0, 0.0));
        let d = real(&(1..=100).map(|n| (n, 1.0)).collect::<Vec<_>>(), 100);
        let naive: f64 = (1..=100).map(|n| 1.0 / (n as f64 * n as f64)).sum();
        assert!((d.evaluate(c(2.0, 0.0)) - c(naive, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn translation() {
        assert_eq!(real(&[(2, 1.0)], 2).translate(1.0).unwrap(), real(&[(2, 0.5)], 2));
        let d = real(&[(1, 0.2), (3, -1.0), (7, 0.5)], 8);
        assert_eq!(d.translate(0.0).unwrap(), d);
        assert!(d.translate(-0.1).is_err());
        let s = c(1.0, 1.0);
        let lhs = d.translate(0.3).unwrap().evaluate(s);
        let rhs = d.evaluate(s + 0.3);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn exp_of_zero_and_monomial() {
        assert_eq!(DirichletSeries::zero(16).exp_series(16), DirichletSeries::constant(c(1.0, 0.0), 16));
        let b = c(0.7, -0.2);
        let e = DirichletSeries::new([(2, b)], 16).unwrap().exp_series(16);
        let mut fact = 1.0;
        for r in 0..=4u32 {
            if r > 0 {
                fact *= r as f64;
            }
            let expected = b.powu(r) / fact;
            assert!((e.coeff(1 << r) - expected).norm() < 1e-15);
        }
        assert_eq!(e.len(), 5);
    }

    #[test]
    fn log_examples() {
        let one = DirichletSeries::constant(c(1.0, 0.0), 8);
        assert!(one.log_series(8).unwrap().is_zero());
        let l = real(&[(1, 1.0), (2, 1.0)], 8).log_series(8).unwrap();
        let expected = real(&[(2, 1.0), (4, -0.5), (8, 1.0 / 3.0)], 8);
        assert!(l.max_abs_diff(&expected) < 1e-15);
        assert!(l.exp_series(8).max_abs_diff(&real(&[(1, 1.0), (2, 1.0)], 8)) < 1e-14);
        assert_eq!(real(&[(2, 1.0)], 8).log_series(8), Err(Error::VanishingConstantTerm));
    }

    #[test]
    fn dilate_contract() {
        let d = real(&[(1, 1.0), (3, 2.0)], 3);
        let up = d.dilate(4, 12);
        assert_eq!(up.terms(), &[(4, c(1.0, 0.0)), (12, c(2.0, 0.0))]);
        assert_eq!(up.contract(4).unwrap().terms(), d.terms());
        assert!(up.contract(8).is_err());
    }
}
