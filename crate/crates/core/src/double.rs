//! Truncated double Dirichlet series `Σ a_{m,n} m^{-s} n^{-t}`.
//!
//! The first index always pairs with `s`, the second with `t`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{check_finite, index_power, is_negligible, DirichletSeries};

pub type Index2 = (u64, u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Coefficients land on `(m, 1)`: the series depends on `s` only.
    First,
    /// Coefficients land on `(1, n)`: the series depends on `t` only.
    Second,
}

enum Accumulator2 {
    Dense { width: u64, data: Vec<Complex64> },
    Sparse(BTreeMap<Index2, Complex64>),
}

impl Accumulator2 {
    fn new(bounds: Index2, expected_terms: usize) -> Self {
        let cells = (bounds.0 + 1).saturating_mul(bounds.1 + 1);
        if cells <= (1 << 22) && (expected_terms as u64).saturating_mul(8) >= cells {
            Accumulator2::Dense { width: bounds.1 + 1, data: vec![Complex64::new(0.0, 0.0); cells as usize] }
        } else {
            Accumulator2::Sparse(BTreeMap::new())
        }
    }

    #[inline]
    fn add(&mut self, (m, n): Index2, value: Complex64) {
        match self {
            Accumulator2::Dense { width, data } => data[(m * *width + n) as usize] += value,
            Accumulator2::Sparse(map) => *map.entry((m, n)).or_insert(Complex64::new(0.0, 0.0)) += value,
        }
    }

    fn into_terms(self) -> Vec<(Index2, Complex64)> {
        match self {
            Accumulator2::Dense { width, data } => data
                .into_iter()
                .enumerate()
                .map(|(k, c)| (((k as u64) / width, (k as u64) % width), c))
                .filter(|&((m, n), c)| m >= 1 && n >= 1 && !is_negligible(c))
                .collect(),
            Accumulator2::Sparse(map) => map.into_iter().filter(|(_, c)| !is_negligible(*c)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleDirichletSeries {
    terms: Vec<(Index2, Complex64)>,
    truncations: Index2,
}

impl DoubleDirichletSeries {
    pub fn new<I>(terms: I, truncations: Index2) -> Result<Self>
    where
        I: IntoIterator<Item = (Index2, Complex64)>,
    {
        let (bm, bn) = truncations;
        if bm == 0 || bn == 0 {
            return Err(Error::ZeroTruncation);
        }
        let mut map = BTreeMap::new();
        for ((m, n), c) in terms {
            if m == 0 || n == 0 || m > bm || n > bn {
                return Err(Error::IndexOutOfRange { index: format!("({m},{n})"), bound: format!("({bm},{bn})") });
            }
            check_finite(c)?;
            if map.insert((m, n), c).is_some() {
                return Err(Error::DuplicateIndex(format!("({m},{n})")));
            }
        }
        Ok(Self { terms: map.into_iter().filter(|(_, c)| !is_negligible(*c)).collect(), truncations })
    }

    pub fn from_real<I>(terms: I, truncations: Index2) -> Result<Self>
    where
        I: IntoIterator<Item = (Index2, f64)>,
    {
        Self::new(terms.into_iter().map(|(k, x)| (k, Complex64::new(x, 0.0))), truncations)
    }

    pub(crate) fn from_sorted(terms: Vec<(Index2, Complex64)>, truncations: Index2) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        Self { terms: terms.into_iter().filter(|(_, c)| !is_negligible(*c)).collect(), truncations }
    }

    pub fn zero(truncations: Index2) -> Self {
        Self { terms: Vec::new(), truncations: (truncations.0.max(1), truncations.1.max(1)) }
    }

    pub fn constant(c: Complex64, truncations: Index2) -> Self {
        Self::from_sorted(vec![((1, 1), c)], (truncations.0.max(1), truncations.1.max(1)))
    }

    /// `c · m^{-s} n^{-t}`; truncations are raised to cover `(m, n)`.
    pub fn monomial((m, n): Index2, c: Complex64, truncations: Index2) -> Self {
        assert!(m >= 1 && n >= 1, "Dirichlet indices start at 1");
        Self::from_sorted(vec![((m, n), c)], (truncations.0.max(m), truncations.1.max(n)))
    }

    pub fn truncations(&self) -> Index2 {
        self.truncations
    }

    pub fn terms(&self) -> &[(Index2, Complex64)] {
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

    pub fn coeff(&self, index: Index2) -> Complex64 {
        self.terms.binary_search_by_key(&index, |&(k, _)| k).map(|i| self.terms[i].1).unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|&(k, _)| k == (1, 1))
    }

    pub fn with_truncations(&self, bounds: Index2) -> Self {
        let mm = self.terms.iter().map(|&((m, _), _)| m).max().unwrap_or(1);
        let mn = self.terms.iter().map(|&((_, n), _)| n).max().unwrap_or(1);
        Self { terms: self.terms.clone(), truncations: (bounds.0.max(mm), bounds.1.max(mn)) }
    }

    /// Restriction to indices `≤ (m0, n0)`; the truncations become `(m0, n0)`.
    pub fn truncate(&self, (m0, n0): Index2) -> Self {
        let bounds = (m0.max(1), n0.max(1));
        Self {
            terms: self.terms.iter().copied().filter(|&((m, n), _)| m <= bounds.0 && n <= bounds.1).collect(),
            truncations: bounds,
        }
    }

    /// Rectangular partial sum `Σ_{m≤m0, n≤n0}` as a series in its own right.
    pub fn rectangular_partial_sum(&self, m0: u64, n0: u64) -> Result<Self> {
        let (bm, bn) = self.truncations;
        if m0 == 0 || n0 == 0 || m0 > bm || n0 > bn {
            return Err(Error::IndexOutOfRange { index: format!("({m0},{n0})"), bound: format!("({bm},{bn})") });
        }
        Ok(self.truncate((m0, n0)))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let bounds = (self.truncations.0.min(other.truncations.0), self.truncations.1.min(other.truncations.1));
        let zero = Complex64::new(0.0, 0.0);
        let mut map: BTreeMap<Index2, (Complex64, Complex64)> = BTreeMap::new();
        for &(k, c) in &self.terms {
            map.entry(k).or_insert((zero, zero)).0 = c;
        }
        for &(k, c) in &other.terms {
            map.entry(k).or_insert((zero, zero)).1 = c;
        }
        let terms = map
            .into_iter()
            .filter(|&((m, n), _)| m <= bounds.0 && n <= bounds.1)
            .map(|(k, (a, b))| (k, f(a, b)))
            .collect();
        Self::from_sorted(terms, bounds)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_sorted(self.terms.iter().map(|&(k, a)| (k, a * c)).collect(), self.truncations)
    }

    /// `c_{m,n} = Σ_{d|m, e|n} a_{d,e} b_{m/d, n/e}` for `(m, n) ≤ truncations`.
    pub fn mul(&self, other: &Self, truncations: Index2) -> Self {
        let bounds = (truncations.0.max(1), truncations.1.max(1));
        let mut acc = Accumulator2::new(bounds, self.len().saturating_mul(other.len()));
        for &((m1, n1), a) in &self.terms {
            if m1 > bounds.0 || n1 > bounds.1 {
                continue;
            }
            let (lm, ln) = (bounds.0 / m1, bounds.1 / n1);
            for &((m2, n2), b) in &other.terms {
                if m2 > lm {
                    break;
                }
                if n2 <= ln {
                    acc.add((m1 * m2, n1 * n2), a * b);
                }
            }
        }
        Self::from_sorted(acc.into_terms(), bounds)
    }

    pub fn evaluate(&self, s: Complex64, t: Complex64) -> Complex64 {
        self.terms.iter().map(|&((m, n), a)| a * index_power(m, s) * index_power(n, t)).sum()
    }

    /// Row subseries `α_m(t) = Σ_n a_{m,n} n^{-t}`.
    pub fn row_series(&self, m: u64) -> Result<DirichletSeries> {
        let (bm, bn) = self.truncations;
        if m == 0 || m > bm {
            return Err(Error::IndexOutOfRange { index: m.to_string(), bound: bm.to_string() });
        }
        let terms = self.terms.iter().filter(|&&((i, _), _)| i == m).map(|&((_, n), c)| (n, c)).collect();
        Ok(DirichletSeries::from_sorted(terms, bn))
    }

    /// Column subseries `Σ_m a_{m,n} m^{-s}`.
    pub fn column_series(&self, n: u64) -> Result<DirichletSeries> {
        let (bm, bn) = self.truncations;
        if n == 0 || n > bn {
            return Err(Error::IndexOutOfRange { index: n.to_string(), bound: bn.to_string() });
        }
        let mut terms: Vec<_> = self.terms.iter().filter(|&&((_, j), _)| j == n).map(|&((m, _), c)| (m, c)).collect();
        terms.sort_by_key(|&(m, _)| m);
        Ok(DirichletSeries::from_sorted(terms, bm))
    }

    /// Indices of rows that carry at least one term.
    pub fn row_indices(&self) -> Vec<u64> {
        let mut rows: Vec<u64> = self.terms.iter().map(|&((m, _), _)| m).collect();
        rows.dedup();
        rows
    }

    pub fn column_indices(&self) -> Vec<u64> {
        let mut cols: Vec<u64> = self.terms.iter().map(|&((_, n), _)| n).collect();
        cols.sort_unstable();
        cols.dedup();
        cols
    }

    pub fn embed_single(d: &DirichletSeries, axis: Axis) -> Self {
        let (terms, bounds) = match axis {
            Axis::First => (d.terms().iter().map(|&(m, c)| ((m, 1), c)).collect(), (d.truncation(), 1)),
            Axis::Second => (d.terms().iter().map(|&(n, c)| ((1, n), c)).collect(), (1, d.truncation())),
        };
        Self::from_sorted(terms, bounds)
    }

    /// Sums in the three natural orders at `(s, t)`: rows first, columns
    /// first, and the flat double sum.
    pub fn regular_check(&self, s: Complex64, t: Complex64) -> RegularityReport {
        let total = self.evaluate(s, t);
        let row_first: Complex64 = self
            .row_indices()
            .into_iter()
            .map(|m| self.row_series(m).expect("stored row").evaluate(t) * index_power(m, s))
            .sum();
        let column_first: Complex64 = self
            .column_indices()
            .into_iter()
            .map(|n| self.column_series(n).expect("stored column").evaluate(s) * index_power(n, t))
            .sum();
        let discrepancy = (row_first - total).norm().max((column_first - total).norm());
        RegularityReport { total, row_first, column_first, discrepancy }
    }

    pub fn translate(&self, sigma: f64, tau: f64) -> Result<Self> {
        if !(sigma.is_finite() && tau.is_finite()) || sigma < 0.0 || tau < 0.0 {
            return Err(Error::InvalidArgument(format!("translation ({sigma},{tau}) must be finite and >= 0")));
        }
        Ok(Self::from_sorted(
            self.terms
                .iter()
                .map(|&((m, n), a)| ((m, n), a * (m as f64).powf(-sigma) * (n as f64).powf(-tau)))
                .collect(),
            self.truncations,
        ))
    }

    pub fn l1_norm_at(&self, sigma: f64, tau: f64) -> f64 {
        self.terms.iter().map(|&((m, n), a)| a.norm() * (m as f64).powf(-sigma) * (n as f64).powf(-tau)).sum()
    }

    pub fn without_constant(&self) -> Self {
        Self {
            terms: self.terms.iter().copied().filter(|&(k, _)| k != (1, 1)).collect(),
            truncations: self.truncations,
        }
    }

    /// Formal `exp` in two variables; terminates because every non-constant
    /// index has `m·n ≥ 2`.
    pub fn exp_series(&self, truncations: Index2) -> Self {
        let bounds = (truncations.0.max(1), truncations.1.max(1));
        let a11 = self.coeff((1, 1));
        let nilpotent = self.without_constant().truncate(bounds);
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Accumulator2::new(bounds, 0);
        acc.add((1, 1), one);
        let mut power = Self::constant(one, bounds);
        let mut r = 1u32;
        loop {
            power = power.mul(&nilpotent, bounds).scale(Complex64::new(1.0 / r as f64, 0.0));
            if power.is_zero() {
                break;
            }
            for &(k, c) in &power.terms {
                acc.add(k, c);
            }
            r += 1;
        }
        Self::from_sorted(acc.into_terms(), bounds).scale(a11.exp())
    }

    /// Maps `(m, n) → (m·fm, n·fn)`, dropping indices beyond `truncations`.
    pub fn dilate(&self, (fm, fn_): Index2, truncations: Index2) -> Self {
        let bounds = (truncations.0.max(1), truncations.1.max(1));
        let terms = self
            .terms
            .iter()
            .filter_map(|&((m, n), c)| {
                let m2 = m.checked_mul(fm).filter(|&x| x <= bounds.0)?;
                let n2 = n.checked_mul(fn_).filter(|&x| x <= bounds.1)?;
                Some(((m2, n2), c))
            })
            .collect();
        Self::from_sorted(terms, bounds)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let bounds = (self.truncations.0.max(other.truncations.0), self.truncations.1.max(other.truncations.1));
        self.with_truncations(bounds)
            .sub(&other.with_truncations(bounds))
            .terms
            .iter()
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularityReport {
    pub total: Complex64,
    pub row_first: Complex64,
    pub column_first: Complex64,
    /// Largest deviation of either iterated sum from the flat sum.
    pub discrepancy: f64,
}

impl fmt::Display for DoubleDirichletSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &((m, n), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}^-s*{n}^-t")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn dd(terms: &[(Index2, f64)], b: Index2) -> DoubleDirichletSeries {
        DoubleDirichletSeries::from_real(terms.iter().copied(), b).unwrap()
    }

    #[test]
    fn add_and_scale() {
        let a = dd(&[((1, 1), 1.0), ((2, 3), -2.0)], (4, 4));
        assert_eq!(a.add(&DoubleDirichletSeries::zero((4, 4))), a);
        assert!(a.scale(c(0.0)).is_zero());
        let s = dd(&[((2, 1), 1.0)], (4, 4)).add(&dd(&[((1, 3), 1.0)], (4, 4)));
        assert_eq!(s.terms().iter().map(|&(k, _)| k).collect::<Vec<_>>(), vec![(1, 3), (2, 1)]);
    }

    #[test]
    fn multiplication() {
        let a = dd(&[((1, 1), 1.0), ((2, 1), 1.0)], (6, 6));
        let b = dd(&[((1, 1), 1.0), ((1, 3), 1.0)], (6, 6));
        let p = a.mul(&b, (6, 6));
        assert_eq!(p, dd(&[((1, 1), 1.0), ((1, 3), 1.0), ((2, 1), 1.0), ((2, 3), 1.0)], (6, 6)));
        assert_eq!(a.mul(&DoubleDirichletSeries::constant(c(1.0), (6, 6)), (6, 6)), a);

        let all: Vec<_> = (1..=12).flat_map(|m| (1..=12).map(move |n| ((m, n), 1.0))).collect();
        let z = dd(&all, (12, 12));
        let sq = z.mul(&z, (12, 12));
        let count = |x: u64| (1..=x).filter(|d| x.is_multiple_of(*d)).count();
        assert_eq!(sq.coeff((4, 9)), c((count(4) * count(9)) as f64));
        assert_eq!(sq.coeff((4, 9)), c(9.0));
    }

    #[test]
    fn evaluation() {
        let d = dd(&[((2, 3), 1.0)], (3, 3));
        assert!((d.evaluate(c(1.0), c(1.0)) - c(1.0 / 6.0)).norm() < 1e-16);
        let e = dd(&[((1, 1), 0.5), ((2, 3), 1.5), ((4, 1), -1.0)], (4, 4));
        assert_eq!(e.evaluate(c(0.0), c(0.0)), c(1.0));
    }

    #[test]
    fn rows() {
        let d = dd(&[((2, 3), 1.0), ((2, 1), 1.0)], (4, 4));
        let row = d.row_series(2).unwrap();
        assert_eq!(row, DirichletSeries::from_real([(1, 1.0), (3, 1.0)], 4).unwrap());
        assert!(DoubleDirichletSeries::zero((4, 4)).row_series(3).unwrap().is_zero());
        assert!(d.row_series(5).is_err());
        assert!(d.row_series(0).is_err());
    }

    #[test]
    fn embedding() {
        let d = DirichletSeries::from_real([(2, 1.0)], 4).unwrap();
        let e = DoubleDirichletSeries::embed_single(&d, Axis::First);
        assert_eq!(e.terms(), &[((2, 1), c(1.0))]);
        let e2 = DoubleDirichletSeries::embed_single(&d, Axis::Second);
        assert_eq!(e2.terms(), &[((1, 2), c(1.0))]);
        assert!(DoubleDirichletSeries::embed_single(&DirichletSeries::zero(4), Axis::First).is_zero());
        let s = Complex64::new(0.7, 2.0);
        for t in [0.1, 1.0, 3.0, 7.5, 20.0] {
            assert_eq!(e.evaluate(s, Complex64::new(t, -t)), d.evaluate(s));
        }
    }

    #[test]
    fn partial_sums() {
        let d = dd(&[((1, 1), 2.0), ((2, 3), 1.0), ((3, 1), -1.0)], (3, 3));
        assert_eq!(d.rectangular_partial_sum(3, 3).unwrap(), d);
        assert_eq!(d.rectangular_partial_sum(1, 1).unwrap().terms(), &[((1, 1), c(2.0))]);
        assert!(d.rectangular_partial_sum(4, 1).is_err());
        let report = d.regular_check(c(1.0), c(1.0));
        assert!(report.discrepancy < 1e-15);
    }

    #[test]
    fn dilation() {
        let d = dd(&[((1, 1), 1.0), ((2, 3), 2.0)], (3, 3));
        let up = d.dilate((2, 5), (8, 10));
        assert_eq!(up.terms(), &[((2, 5), c(1.0))]);
    }
}
