//! Superposition operators `S_φ(f) = φ ∘ f` for polynomial (and truncated
//! entire) `φ`, and the Monte Carlo check of the `H^p → H^q` degree bound.

use std::fmt;

use num_complex::Complex64;

use crate::bohr::{hp_norm_estimate, NormEstimate};
use crate::compose::ProbeGrid;
use crate::error::{Error, Result};
use crate::series::{tail_scan, DirichletSeries};

/// `Σ_k b_k w^k`, coefficients by degree. Trailing zeros are trimmed, so
/// the leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarPolynomial {
    coefficients: Vec<Complex64>,
}

impl ScalarPolynomial {
    pub fn new(mut coefficients: Vec<Complex64>) -> Self {
        while coefficients.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_real(coefficients: &[f64]) -> Self {
        Self::new(coefficients.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// `w ↦ w`.
    pub fn identity() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); degree + 1];
        c[degree] = Complex64::new(1.0, 0.0);
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn evaluate(&self, w: Complex64) -> Complex64 {
        self.coefficients.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &b| acc * w + b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            for (j, &b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coefficients.len().max(other.coefficients.len());
        let get = |v: &[Complex64], i: usize| v.get(i).copied().unwrap_or_default();
        Self::new((0..len).map(|i| get(&self.coefficients, i) + get(&other.coefficients, i)).collect())
    }

    /// `self ∘ inner`, i.e. `w ↦ self(inner(w))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coefficients.iter().rev().fold(Self::new(Vec::new()), |acc, &b| acc.mul(inner).add(&Self::new(vec![b])))
    }
}

impl fmt::Display for ScalarPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})w"),
                _ => format!("({c})w^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Σ_k b_k D^k`, evaluated in Horner order with truncated products.
pub fn superpose(phi: &ScalarPolynomial, d: &DirichletSeries, truncation: u64) -> DirichletSeries {
    let truncation = truncation.max(1);
    let d = d.truncate(truncation);
    phi.coefficients.iter().rev().fold(DirichletSeries::zero(truncation), |acc, &b| {
        acc.mul(&d, truncation).add(&DirichletSeries::constant(b, truncation))
    })
}

/// Bound on `|superpose(φ, D, N)(s) − φ(D(s))|` for `Re s ≥ sigma`, from the
/// majorant `Σ |b_k| ‖D‖_{ℓ¹,σ'}^k` of the untruncated composite.
pub fn superpose_tail_bound(phi: &ScalarPolynomial, d: &DirichletSeries, truncation: u64, sigma: f64) -> f64 {
    tail_scan(sigma, truncation, |sp| {
        let r = d.l1_norm_at(sp);
        phi.coefficients.iter().rev().fold(0.0, |acc, b| acc * r + b.norm())
    })
}

/// `⌊p/q⌋`: the largest degree of a polynomial superposition `H^p → H^q`.
pub fn degree_bound(p: f64, q: f64) -> Result<u32> {
    if !(p >= 1.0 && q >= 1.0 && p.is_finite() && q.is_finite()) {
        return Err(Error::InvalidArgument(format!("exponents p = {p}, q = {q} must be finite and >= 1")));
    }
    Ok((p / q).floor() as u32)
}

#[derive(Clone, Debug, PartialEq)]
pub struct YoungReport {
    pub k: u32,
    pub p: f64,
    pub q: f64,
    /// Estimate of `‖P^k‖_q`; its `moment` field is `‖P^k‖_q^q`.
    pub power: NormEstimate,
    /// Estimate of `‖P‖_p`; its `moment` field is `‖P‖_p^p`.
    pub base: NormEstimate,
    pub sigma_combined: f64,
    pub slack: f64,
    /// `‖P^k‖_q^q ≤ ‖P‖_p^p` held within slack.
    pub holds: bool,
    /// `‖P‖_p^{kq}`, which bounds `‖P^k‖_q^q` by Hölder for every `P`.
    pub holder_bound: f64,
}

impl YoungReport {
    pub fn margin(&self) -> f64 {
        self.base.moment + self.slack - self.power.moment
    }
}

/// Absolute slack added to the `3σ` allowance of [`young_bound_verify`].
pub const YOUNG_ABSOLUTE_SLACK: f64 = 1e-3;

/// Compares Monte Carlo estimates of `‖P^k‖_q^q` and `‖P‖_p^p` (same seed,
/// hence the same torus points) and reports whether the first is at most
/// the second within `3σ + 1e-3`.
///
/// The comparison is guaranteed only when `‖P‖_p ≥ 1` (for instance when
/// `|a₁| ≥ 1`); below that `‖P‖_p^{kq}` can exceed `‖P‖_p^p`, and the
/// report's `holder_bound` is the inequality that always holds.
pub fn young_bound_verify(
    p_series: &DirichletSeries,
    k: u32,
    p: f64,
    q: f64,
    samples: usize,
    seed: u64,
) -> Result<YoungReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("power k must be positive".into()));
    }
    degree_bound(p, q)?;
    if k as f64 * q > p {
        return Err(Error::InvalidArgument(format!("k*q = {} exceeds p = {p}", k as f64 * q)));
    }
    let max_index = p_series.max_index().unwrap_or(1);
    let bound = max_index.checked_pow(k).ok_or_else(|| Error::InvalidArgument("P^k exceeds the index range".into()))?;
    let mut power = DirichletSeries::constant(Complex64::new(1.0, 0.0), bound);
    for _ in 0..k {
        power = power.mul(p_series, bound);
    }
    let power_est = hp_norm_estimate(&power, q, samples, seed)?;
    let base_est = hp_norm_estimate(p_series, p, samples, seed)?;
    let sigma_combined = power_est.moment_stderr.hypot(base_est.moment_stderr);
    let slack = 3.0 * sigma_combined + YOUNG_ABSOLUTE_SLACK;
    let holds = power_est.moment <= base_est.moment + slack;
    let holder_bound = base_est.value.powf(k as f64 * q);
    Ok(YoungReport { k, p, q, power: power_est, base: base_est, sigma_combined, slack, holds, holder_bound })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntireSuperposition {
    pub series: DirichletSeries,
    /// Largest sampled `|D(s)|` on the probe grid.
    pub radius: f64,
    /// Estimated size of `Σ_{k>T} c_k D(s)^k` on the grid.
    pub dropped_degree_bound: f64,
}

/// `S_φ` for an entire `φ` given by its Taylor coefficients of degree
/// `0..=T`. The series is `superpose` of the Taylor polynomial; the report
/// bounds the dropped degrees by `Σ_{k>T} C R^k / k!`, with `R` the largest
/// sampled `|D|` and `C = max_{k≤T} |c_k| k!` (exponential type 1, which
/// covers `exp`, `sin`, `cos`).
pub fn superpose_entire(
    taylor: &[Complex64],
    d: &DirichletSeries,
    truncation: u64,
    grid: &ProbeGrid,
) -> EntireSuperposition {
    let poly = ScalarPolynomial::new(taylor.to_vec());
    let series = superpose(&poly, d, truncation);
    let radius = grid.points(0.0).iter().map(|&s| d.evaluate(s).norm()).fold(0.0, f64::max);
    let mut fact = 1.0;
    let mut growth: f64 = 0.0;
    for (k, c) in taylor.iter().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        growth = growth.max(c.norm() * fact);
    }
    // Σ_{k ≥ T+1} R^k / k!, summed until the terms underflow
    let mut term = 1.0;
    let mut tail = 0.0;
    for k in 1..taylor.len() + 400 {
        term *= radius / k as f64;
        if k >= taylor.len() {
            tail += term;
            if term < 1e-300 * tail.max(1e-300) {
                break;
            }
        }
    }
    EntireSuperposition { series, radius, dropped_degree_bound: growth * tail }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single(terms: &[(u64, Complex64)], n: u64) -> DirichletSeries {
        DirichletSeries::new(terms.iter().copied(), n).unwrap()
    }

    #[test]
    fn polynomial_basics() {
        let p = ScalarPolynomial::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.evaluate(c(3.0, 0.0)), c(7.0, 0.0));
        let sq = ScalarPolynomial::monomial(2);
        let comp = sq.compose(&p);
        assert_eq!(comp.coefficients(), &[c(1.0, 0.0), c(4.0, 0.0), c(4.0, 0.0)]);
    }

    #[test]
    fn superpose_examples() {
        let d = single(&[(1, c(0.5, 0.2)), (2, c(-1.0, 0.3)), (5, c(0.1, 0.0))], 5);
        assert_eq!(superpose(&ScalarPolynomial::identity(), &d, 5), d);

        let (a, b) = (c(0.7, -0.1), c(0.2, 0.4));
        let d = single(&[(1, a), (2, b)], 2);
        let out = superpose(&ScalarPolynomial::monomial(2), &d, 4);
        let expected = single(&[(1, a * a), (2, 2.0 * a * b), (4, b * b)], 4);
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn pointwise_oracle() {
        let phi = ScalarPolynomial::new(vec![c(0.1, 0.0), c(-1.0, 0.5), c(0.3, 0.0), c(0.0, 0.2)]);
        let d = single(&[(1, c(0.3, 0.0)), (2, c(0.4, -0.2)), (3, c(-0.25, 0.1)), (7, c(0.2, 0.0))], 7);
        let n = 64;
        let out = superpose(&phi, &d, n);
        let bound = superpose_tail_bound(&phi, &d, n, 2.0);
        for s in [c(2.0, 0.0), c(2.0, 3.0), c(2.0, -17.5)] {
            let err = (out.evaluate(s) - phi.evaluate(d.evaluate(s))).norm();
            assert!(err <= bound, "{err} > {bound}");
        }
        // exact once the truncation covers every index of D^3
        let exact = superpose(&phi, &d, 343);
        let s = c(0.4, 1.0);
        assert!((exact.evaluate(s) - phi.evaluate(d.evaluate(s))).norm() < 1e-13);
    }

    #[test]
    fn composition_of_polynomials() {
        let phi = ScalarPolynomial::from_real(&[1.0, 0.0, -0.5]);
        let psi = ScalarPolynomial::new(vec![c(0.0, 0.1), c(1.0, 0.0), c(0.2, 0.0)]);
        let d = single(&[(1, c(0.2, 0.0)), (2, c(0.3, 0.1)), (3, c(0.0, -0.4))], 3);
        let n = 81;
        let lhs = superpose(&phi.compose(&psi), &d, n);
        let rhs = superpose(&phi, &superpose(&psi, &d, n), n);
        assert!(lhs.max_abs_diff(&rhs) < 1e-11);
    }

    #[test]
    fn superposition_is_not_linear() {
        let d = single(&[(2, c(1.0, 0.0))], 2);
        let sq = ScalarPolynomial::monomial(2);
        let lhs = superpose(&sq, &d.add(&d), 8);
        let rhs = superpose(&sq, &d, 8).scale(c(2.0, 0.0));
        assert!((lhs.coeff(4) - c(4.0, 0.0)).norm() < 1e-15);
        assert!((rhs.coeff(4) - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(degree_bound(4.0, 2.0).unwrap(), 2);
        assert_eq!(degree_bound(2.0, 2.0).unwrap(), 1);
        assert_eq!(degree_bound(5.0, 2.0).unwrap(), 2);
        assert!(degree_bound(0.5, 2.0).is_err());
    }

    #[test]
    fn young_examples() {
        let k = DirichletSeries::constant(c(1.5, 0.0), 1);
        let r = young_bound_verify(&k, 1, 3.0, 3.0, 100, 1).unwrap();
        assert!(r.holds);
        assert!((r.power.moment - r.base.moment).abs() < 1e-12);

        let one_plus = single(&[(1, c(1.0, 0.0)), (2, c(1.0, 0.0))], 2);
        let r = young_bound_verify(&one_plus, 2, 4.0, 2.0, 40_000, 7).unwrap();
        assert!(r.holds);
        // ‖(1+z)^2‖_2^2 = 1 + 4 + 1 and ‖1+z‖_4^4 = 6 as well
        assert!((r.power.moment - 6.0).abs() < 4.0 * r.power.moment_stderr + 1e-12);
        assert!((r.base.moment - 6.0).abs() < 4.0 * r.base.moment_stderr + 1e-12);

        let z = single(&[(2, c(1.0, 0.0))], 2);
        let r = young_bound_verify(&z, 3, 6.0, 2.0, 1000, 3).unwrap();
        assert!(r.holds);
        assert!((r.power.moment - 1.0).abs() < 1e-12 && (r.base.moment - 1.0).abs() < 1e-12);

        assert!(young_bound_verify(&z, 3, 5.0, 2.0, 10, 3).is_err());
    }

    #[test]
    fn young_chain_needs_norm_at_least_one() {
        // ‖P‖₁ = 1/2 exceeds ‖P‖₂² = 1/4, while Hölder still holds
        let small = single(&[(2, c(0.5, 0.0))], 2);
        let r = young_bound_verify(&small, 1, 2.0, 1.0, 1000, 5).unwrap();
        assert!(!r.holds);
        assert!((r.power.moment - 0.5).abs() < 1e-12 && (r.base.moment - 0.25).abs() < 1e-12);
        assert!(r.power.moment <= r.holder_bound + 1e-12);
    }

    #[test]
    fn entire_examples() {
        let grid = ProbeGrid { real_parts: 4, heights: 5, ..ProbeGrid::default() };
        let d = single(&[(2, c(0.1, 0.0))], 2);
        let mut fact = 1.0;
        let taylor: Vec<Complex64> = (0..=20)
            .map(|k| {
                if k > 0 {
                    fact *= k as f64;
                }
                c(1.0 / fact, 0.0)
            })
            .collect();
        let out = superpose_entire(&taylor, &d, 1 << 20, &grid);
        assert!(out.series.max_abs_diff(&d.exp_series(1 << 20)) < 1e-12);
        assert!(out.dropped_degree_bound < 1e-30);

        let poly = vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 0.0)];
        let e = superpose_entire(&poly, &d, 16, &grid);
        assert_eq!(e.series, superpose(&ScalarPolynomial::new(poly), &d, 16));

        let d = single(&[(3, c(0.2, 0.0))], 3);
        let mut fact = 1.0;
        let sin: Vec<Complex64> = (0..=15)
            .map(|k| {
                if k > 0 {
                    fact *= k as f64;
                }
                let v = match k % 4 {
                    1 => 1.0,
                    3 => -1.0,
                    _ => 0.0,
                };
                c(v / fact, 0.0)
            })
            .collect();
        let out = superpose_entire(&sin, &d, 3u64.pow(16), &grid);
        for s in [c(2.0, 0.0), c(2.0, 5.0)] {
            assert!((out.series.evaluate(s) - d.evaluate(s).sin()).norm() < 1e-10);
        }
    }
}
