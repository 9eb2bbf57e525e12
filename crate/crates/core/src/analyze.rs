//! Numerical checks on half-planes: sups along vertical lines, the
//! three-lines inequality, coefficient extraction by mean values, and
//! coefficient bounds.
//!
//! Every sup here is a sampled lower bound: heights on the line(s) are
//! sampled, then the best ones are refined on the torus, whose closure of
//! Kronecker points is the whole torus. The coefficient ℓ¹ norm is attached
//! as the rigorous upper bound.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bohr::{DoublePrimePolynomial, NormEstimate, NormKind, TorusSample, TrigPolynomial};
use crate::double::DoubleDirichletSeries;
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::series::DirichletSeries;

/// Heights sampled on `[−height, height]`, and how many of the best are refined.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSampling {
    pub height: f64,
    pub samples: usize,
    pub refine: usize,
}

impl Default for LineSampling {
    fn default() -> Self {
        Self { height: 100.0, samples: 2001, refine: 16 }
    }
}

impl LineSampling {
    fn heights(&self, count: usize) -> Vec<f64> {
        if count <= 1 {
            return vec![0.0];
        }
        (0..count).map(|i| -self.height + 2.0 * self.height * i as f64 / (count - 1) as f64).collect()
    }
}

fn check_abscissa(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("abscissa {sigma} must be positive")))
    }
}

fn line_estimate(f: &TrigPolynomial, starts: Vec<Vec<f64>>, refine: usize, l1: f64, samples: usize) -> NormEstimate {
    let sampled = starts.par_iter().map(|th| f.value(th).norm()).reduce(|| 0.0, f64::max);
    let search = f.sup_search(&starts, refine);
    NormEstimate {
        value: search.value.max(sampled).min(l1),
        stderr: search.refinement_gain,
        samples,
        seed: 0,
        kind: NormKind::LineSup,
        // the plain maximum over the sampled heights, before refinement
        moment: sampled,
        moment_stderr: search.refinement_gain,
        upper_bound: Some(l1),
    }
}

/// `sup_τ |D(σ + iτ)|`, sampled and refined.
pub fn line_sup_estimate(d: &DirichletSeries, sigma: f64, sampling: &LineSampling) -> Result<NormEstimate> {
    check_abscissa(sigma)?;
    let f = TrigPolynomial::on_line(d, sigma);
    let starts =
        sampling.heights(sampling.samples).into_iter().map(|t| TorusSample::kronecker(t, f.dim()).phases).collect();
    Ok(line_estimate(&f, starts, sampling.refine, d.l1_norm_at(sigma), sampling.samples))
}

/// `sup |D(σ₁ + iτ₁, σ₂ + iτ₂)|` over a square grid of about `samples` heights.
pub fn line_sup_estimate_double(
    d: &DoubleDirichletSeries,
    sigma: (f64, f64),
    sampling: &LineSampling,
) -> Result<NormEstimate> {
    line_sup_double_seeded(d, sigma, sampling, &[])
}

fn line_sup_double_seeded(
    d: &DoubleDirichletSeries,
    sigma: (f64, f64),
    sampling: &LineSampling,
    extra: &[Vec<f64>],
) -> Result<NormEstimate> {
    check_abscissa(sigma.0)?;
    check_abscissa(sigma.1)?;
    let f = TrigPolynomial::on_lines(d, sigma.0, sigma.1);
    let (nz, nw) = DoublePrimePolynomial::lift(d).max_positions();
    let per_axis = (sampling.samples as f64).sqrt().ceil() as usize;
    let hs = sampling.heights(per_axis);
    let mut starts: Vec<Vec<f64>> = hs
        .iter()
        .flat_map(|&t1| {
            hs.iter().map(move |&t2| {
                let mut th = TorusSample::kronecker(t1, nz as usize).phases;
                th.extend(TorusSample::kronecker(t2, nw as usize).phases);
                th
            })
        })
        .collect();
    starts.extend(extra.iter().filter(|th| th.len() == f.dim()).cloned());
    let samples = starts.len();
    Ok(line_estimate(&f, starts, sampling.refine, d.l1_norm_at(sigma.0, sigma.1), samples))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    /// Lower bound at `σ` exceeds the ℓ¹ upper bound at `η`.
    Certified,
    /// Estimated gap exceeds both refinement errors.
    Estimated,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityReport {
    pub at_sigma: NormEstimate,
    pub at_eta: NormEstimate,
    /// `sup(σ) ≥ sup(η) − tolerance` on the estimates.
    pub non_strict: bool,
    pub tolerance: f64,
    pub strictness: Strictness,
}

impl MonotonicityReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.note(format!("sup at sigma {}", self.at_sigma));
        r.note(format!("sup at eta {}", self.at_eta));
        r.note(format!("strictness {:?}", self.strictness));
        r.push(Check::at_least("sup-monotone", self.at_sigma.value - self.at_eta.value, -self.tolerance));
        r
    }
}

pub const MONOTONICITY_TOLERANCE: f64 = 1e-6;

/// Compares line sups at `σ < η` (componentwise). The non-strict inequality
/// is checked on the estimates; strictness is reported as certified,
/// estimated or inconclusive since both sides are lower bounds.
pub fn sup_monotonicity_check(
    d: &DoubleDirichletSeries,
    sigma: (f64, f64),
    eta: (f64, f64),
    sampling: &LineSampling,
) -> Result<MonotonicityReport> {
    if !(sigma.0 < eta.0 && sigma.1 <= eta.1 || sigma.0 <= eta.0 && sigma.1 < eta.1) {
        return Err(Error::InvalidArgument("need sigma < eta componentwise".into()));
    }
    let at_eta = line_sup_estimate_double(d, eta, sampling)?;
    // the maximiser at η is a good start at σ as well
    let f_eta = TrigPolynomial::on_lines(d, eta.0, eta.1);
    let hint = f_eta.sup_search(&[vec![0.0; f_eta.dim()]], 1).argmax;
    let at_sigma = line_sup_double_seeded(d, sigma, sampling, &[hint])?;
    let tolerance = MONOTONICITY_TOLERANCE;
    let non_strict = at_sigma.value >= at_eta.value - tolerance;
    let eta_upper = at_eta.upper_bound.unwrap_or(f64::INFINITY);
    let strictness = if at_sigma.value > eta_upper {
        Strictness::Certified
    } else if at_sigma.value - at_eta.value > at_sigma.stderr + at_eta.stderr + tolerance {
        Strictness::Estimated
    } else {
        Strictness::Inconclusive
    };
    Ok(MonotonicityReport { at_sigma, at_eta, non_strict, tolerance, strictness })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreeLinesReport {
    pub eta: (f64, f64),
    pub center: NormEstimate,
    /// Sups at `(σ₁,σ₂)`, `(σ₁,γ)`, `(γ,σ₂)`, `(γ,γ)`.
    pub corners: [NormEstimate; 4],
    /// `Π corner^{weight}`.
    pub bound: f64,
    /// `bound − center`; the inequality asks for this to be ≥ 0.
    pub slack: f64,
}

pub const THREE_LINES_SLACK: f64 = -1e-6;

impl ThreeLinesReport {
    pub fn holds(&self) -> bool {
        self.slack >= THREE_LINES_SLACK
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.note(format!("eta = ({}, {})", self.eta.0, self.eta.1));
        r.note(format!("center {}", self.center));
        r.push(Check::at_least("three-lines", self.slack, THREE_LINES_SLACK));
        r
    }
}

/// Four-corner Hadamard inequality at `η_i = (1−θ_i)σ_i + θ_i γ`:
/// `sup(η₁,η₂) ≤ sup(σ₁,σ₂)^{(1−θ₁)(1−θ₂)} sup(σ₁,γ)^{(1−θ₁)θ₂}
/// sup(γ,σ₂)^{θ₁(1−θ₂)} sup(γ,γ)^{θ₁θ₂}`.
pub fn three_lines_check(
    d: &DoubleDirichletSeries,
    sigma: (f64, f64),
    gamma: f64,
    theta: (f64, f64),
    sampling: &LineSampling,
) -> Result<ThreeLinesReport> {
    for t in [theta.0, theta.1] {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::InvalidArgument(format!("theta {t} must lie in (0, 1)")));
        }
    }
    check_abscissa(sigma.0)?;
    check_abscissa(sigma.1)?;
    if !(gamma > sigma.0 && gamma > sigma.1 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!("gamma {gamma} must exceed both sigmas")));
    }
    let eta = ((1.0 - theta.0) * sigma.0 + theta.0 * gamma, (1.0 - theta.1) * sigma.1 + theta.1 * gamma);
    let center = line_sup_estimate_double(d, eta, sampling)?;
    let corners = [
        line_sup_estimate_double(d, sigma, sampling)?,
        line_sup_estimate_double(d, (sigma.0, gamma), sampling)?,
        line_sup_estimate_double(d, (gamma, sigma.1), sampling)?,
        line_sup_estimate_double(d, (gamma, gamma), sampling)?,
    ];
    let weights =
        [(1.0 - theta.0) * (1.0 - theta.1), (1.0 - theta.0) * theta.1, theta.0 * (1.0 - theta.1), theta.0 * theta.1];
    let bound = corners.iter().zip(weights).map(|(c, w)| c.value.powf(w)).product::<f64>();
    let slack = bound - center.value;
    Ok(ThreeLinesReport { eta, center, corners, bound, slack })
}

/// Trapezoid approximation of `(1/2T) ∫_{−T}^{T} F(c + iτ) λ^{c + iτ} dτ`
/// with `c = σ + 1`. For `F = Σ a_μ μ^{-s}` over real frequencies `μ`, this
/// tends to `a_λ` as `T → ∞`.
pub fn frequency_extract<F>(evaluator: F, lambda: f64, sigma: f64, t_max: f64, panels: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("frequency {lambda} must be positive")));
    }
    if !(t_max > 0.0 && t_max.is_finite()) || panels == 0 {
        return Err(Error::InvalidArgument("need T > 0 and at least one panel".into()));
    }
    let c = sigma + 1.0;
    let h = 2.0 * t_max / panels as f64;
    let ln_lambda = lambda.ln();
    let integrand = |i: usize| {
        let tau = -t_max + h * i as f64;
        let s = Complex64::new(c, tau);
        let w = if i == 0 || i == panels { 0.5 } else { 1.0 };
        evaluator(s) * (s * ln_lambda).exp() * w
    };
    const CHUNK: usize = 8192;
    let chunks: Vec<Complex64> = (0..=panels / CHUNK)
        .into_par_iter()
        .map(|k| (k * CHUNK..((k + 1) * CHUNK).min(panels + 1)).map(integrand).sum())
        .collect();
    let total: Complex64 = chunks.into_iter().sum();
    Ok(total * h / (2.0 * t_max))
}

/// [`frequency_extract`] at the integer frequency `j`.
pub fn coefficient_extract<F>(evaluator: F, j: u64, sigma: f64, t_max: f64, panels: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if j == 0 {
        return Err(Error::InvalidArgument("index j must be positive".into()));
    }
    frequency_extract(evaluator, j as f64, sigma, t_max, panels)
}

/// Error budget for extracting frequency `λ` from a series with the given
/// frequencies: `Σ_{μ≠λ} |a_μ| (λ/μ)^c / (T |ln(λ/μ)|)`, with `c = σ + 1`.
/// Also returns the smallest margin `|ln(λ/μ)|`.
pub fn extraction_error_bound(frequencies: &[(f64, f64)], lambda: f64, sigma: f64, t_max: f64) -> (f64, f64) {
    let c = sigma + 1.0;
    let mut bound = 0.0;
    let mut margin = f64::INFINITY;
    for &(mu, abs) in frequencies {
        let gap = (lambda / mu).ln();
        if gap.abs() < 1e-12 {
            continue;
        }
        margin = margin.min(gap.abs());
        bound += abs * (lambda / mu).powf(c) / (t_max * gap.abs());
    }
    (bound, margin)
}

/// Panels sufficient to resolve the oscillation of every frequency pair.
pub fn default_panels(t_max: f64, max_log_gap: f64) -> usize {
    ((2.0 * t_max * max_log_gap.max(1.0) * 4.0).ceil() as usize).max(1000)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemigroupConfig {
    pub sigma: f64,
    pub t_max: f64,
    pub tolerance: f64,
}

impl Default for SemigroupConfig {
    fn default() -> Self {
        Self { sigma: 0.0, t_max: 1e4, tolerance: 1e-2 }
    }
}

/// Given `φ₂ = Σ aₙ n^{-s}` and `φ₃ = Σ b_m m^{-s}` with
/// `2^{c₀s} φ₂ = 3^{c₀s} φ₃`, returns `φ = Σ_j a_{j·2^{c₀}} j^{-s}`.
///
/// Checks by mean-value extraction that `2^{c₀s} φ₂` has no mass at the
/// non-integer frequencies `n / 2^{c₀}`, and that its integer-frequency
/// coefficients agree with those of `3^{c₀s} φ₃`.
pub fn semigroup_identify(
    a: &DirichletSeries,
    b: &DirichletSeries,
    c0: u32,
    config: &SemigroupConfig,
) -> Result<DirichletSeries> {
    let (s2, s3) = (2u64.pow(c0), 3u64.pow(c0));
    let shifted = |d: &DirichletSeries, shift: u64| {
        let d = d.clone();
        let ln_shift = (shift as f64).ln();
        move |s: Complex64| (s * ln_shift).exp() * d.evaluate(s)
    };
    let ea = shifted(a, s2);
    let eb = shifted(b, s3);
    let max_gap = (a.truncation().max(b.truncation()) as f64).ln() * 2.0 + 1.0;
    let panels = default_panels(config.t_max, max_gap);
    let tol = config.tolerance;

    for n in 1..=a.truncation() {
        if n % s2 == 0 {
            continue;
        }
        let lambda = n as f64 / s2 as f64;
        let v = frequency_extract(&ea, lambda, config.sigma, config.t_max, panels)?;
        if v.norm() > tol {
            return Err(Error::Inconsistent(format!(
                "coefficient {v} at non-integer frequency {n}/{s2} does not vanish"
            )));
        }
    }
    let reach = (a.truncation() / s2).min(b.truncation() / s3);
    for j in 1..=reach {
        let va = coefficient_extract(&ea, j, config.sigma, config.t_max, panels)?;
        let vb = coefficient_extract(&eb, j, config.sigma, config.t_max, panels)?;
        if (va - vb).norm() > tol {
            return Err(Error::Inconsistent(format!("frequency {j}: {va} from phi_2 but {vb} from phi_3")));
        }
    }
    let terms: Vec<(u64, Complex64)> =
        a.terms().iter().filter(|(n, _)| n % s2 == 0).map(|&(n, c)| (n / s2, c)).collect();
    DirichletSeries::new(terms, (a.truncation() / s2).max(1))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientBoundReport {
    pub sup: NormEstimate,
    /// `(index, |a|, m^ε n^ε · sup)` for every stored term.
    pub rows: Vec<((u64, u64), f64, f64)>,
    pub tolerance: f64,
}

impl CoefficientBoundReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|&(_, a, b)| a <= b + self.tolerance)
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.note(format!("sup at (eps, eps) {} (lower bound)", self.sup));
        for &((m, n), a, b) in &self.rows {
            r.push(Check::at_most(format!("coefficient-bound[{m},{n}]"), a - b, self.tolerance));
        }
        r
    }
}

/// `|a_{m,n}| ≤ m^ε n^ε sup_{Re ≥ ε} |D|` for every stored term. The sup is a
/// lower bound, so the tolerance absorbs its refinement error.
pub fn coefficient_bound_check(
    d: &DoubleDirichletSeries,
    epsilon: f64,
    sampling: &LineSampling,
) -> Result<CoefficientBoundReport> {
    let sup = line_sup_estimate_double(d, (epsilon, epsilon), sampling)?;
    let tolerance = 1e-9 + sup.stderr;
    let rows = d
        .terms()
        .iter()
        .map(|&((m, n), a)| ((m, n), a.norm(), (m as f64 * n as f64).powf(epsilon) * sup.value))
        .collect();
    Ok(CoefficientBoundReport { sup, rows, tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::Axis;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single(terms: &[(u64, Complex64)], n: u64) -> DirichletSeries {
        DirichletSeries::new(terms.iter().copied(), n).unwrap()
    }

    fn fast() -> LineSampling {
        LineSampling { height: 50.0, samples: 401, refine: 8 }
    }

    #[test]
    fn line_sup_examples() {
        let z = single(&[(2, c(1.0, 0.0))], 2);
        let e = line_sup_estimate(&z, 1.0, &fast()).unwrap();
        assert!((e.value - 0.5).abs() < 1e-6);
        let k = DirichletSeries::constant(c(0.0, -3.0), 1);
        assert!((line_sup_estimate(&k, 0.3, &fast()).unwrap().value - 3.0).abs() < 1e-15);
        let one_plus = single(&[(1, c(1.0, 0.0)), (2, c(1.0, 0.0))], 2);
        let e = line_sup_estimate(&one_plus, 0.5, &fast()).unwrap();
        assert!((e.value - (1.0 + 2f64.powf(-0.5))).abs() < 1e-4);
        assert!(line_sup_estimate(&z, 0.0, &fast()).is_err());
    }

    #[test]
    fn double_line_sup_matches_torus_maximum() {
        // |1 + 2^{-s} 3^{-t}| peaks where both phases align
        let d = DoubleDirichletSeries::new([((1, 1), c(1.0, 0.0)), ((2, 3), c(1.0, 0.0))], (2, 3)).unwrap();
        let e = line_sup_estimate_double(&d, (0.5, 0.25), &fast()).unwrap();
        let exact = 1.0 + 2f64.powf(-0.5) * 3f64.powf(-0.25);
        assert!((e.value - exact).abs() < 1e-9);
    }

    #[test]
    fn monotonicity_examples() {
        let z = DoubleDirichletSeries::embed_single(&single(&[(2, c(1.0, 0.0))], 2), Axis::First);
        let r = sup_monotonicity_check(&z, (0.5, 0.5), (1.0, 1.0), &fast()).unwrap();
        assert!((r.at_sigma.value - 2f64.powf(-0.5)).abs() < 1e-4);
        assert!((r.at_eta.value - 0.5).abs() < 1e-4);
        assert!(r.non_strict);
        assert_eq!(r.strictness, Strictness::Certified);

        let k = DoubleDirichletSeries::constant(c(2.0, 0.0), (1, 1));
        let r = sup_monotonicity_check(&k, (0.5, 0.5), (1.0, 1.0), &fast()).unwrap();
        assert!(r.non_strict && (r.at_sigma.value - r.at_eta.value).abs() < 1e-15);
        assert_eq!(r.strictness, Strictness::Inconclusive);
        assert!(sup_monotonicity_check(&k, (1.0, 1.0), (0.5, 0.5), &fast()).is_err());
    }

    #[test]
    fn three_lines_examples() {
        let k = DoubleDirichletSeries::constant(c(1.5, 0.0), (1, 1));
        let r = three_lines_check(&k, (0.2, 0.2), 2.0, (0.5, 0.5), &fast()).unwrap();
        assert!(r.slack.abs() < 1e-12);
        let z = DoubleDirichletSeries::embed_single(&single(&[(2, c(1.0, 0.0))], 2), Axis::First);
        let r = three_lines_check(&z, (0.2, 0.4), 2.0, (0.3, 0.6), &fast()).unwrap();
        assert!(r.slack.abs() < 1e-6, "log-linear case {}", r.slack);
        assert!(r.holds());
        assert!(three_lines_check(&z, (0.2, 0.4), 0.3, (0.5, 0.5), &fast()).is_err());
    }

    #[test]
    fn extraction_examples() {
        let d = single(&[(1, c(1.0, 0.0)), (2, c(1.0, 0.0))], 2);
        let eval = |s: Complex64| d.evaluate(s);
        let panels = default_panels(1e4, 2f64.ln());
        let v = coefficient_extract(eval, 2, 0.5, 1e4, panels).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-2);
        let v = coefficient_extract(eval, 3, 0.5, 1e4, panels).unwrap();
        assert!(v.norm() < 1e-2);
        let v = coefficient_extract(eval, 1, 0.5, 1e4, panels).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-2);

        let freqs = [(1.0, 1.0), (2.0, 1.0)];
        let (bound, margin) = extraction_error_bound(&freqs, 2.0, 0.5, 1e4);
        assert!((margin - 2f64.ln()).abs() < 1e-15);
        let err = (coefficient_extract(eval, 2, 0.5, 1e4, panels).unwrap() - c(1.0, 0.0)).norm();
        assert!(err <= bound * 1.01, "{err} vs {bound}");
    }

    #[test]
    fn semigroup_examples() {
        let cfg = SemigroupConfig { t_max: 2e3, ..SemigroupConfig::default() };
        // φ = 5^{-s}: φ₂ = 10^{-s}, φ₃ = 15^{-s}
        let a = single(&[(10, c(1.0, 0.0))], 10);
        let b = single(&[(15, c(1.0, 0.0))], 15);
        let phi = semigroup_identify(&a, &b, 1, &cfg).unwrap();
        assert_eq!(phi.terms(), &[(5, c(1.0, 0.0))]);

        let k = DirichletSeries::constant(c(0.5, 0.5), 1);
        let phi = semigroup_identify(&k, &k, 0, &cfg).unwrap();
        assert_eq!(phi.terms(), &[(1, c(0.5, 0.5))]);

        let corrupted = single(&[(7, c(0.3, 0.0)), (10, c(1.0, 0.0))], 10);
        assert!(matches!(semigroup_identify(&corrupted, &b, 1, &cfg), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn coefficient_bound_examples() {
        let one = DoubleDirichletSeries::new([((2, 3), c(0.0, 2.0))], (2, 3)).unwrap();
        let r = coefficient_bound_check(&one, 0.5, &fast()).unwrap();
        assert!((r.sup.value - 2.0 * 6f64.powf(-0.5)).abs() < 1e-12);
        assert!(r.holds());
        let (_, a, b) = r.rows[0];
        assert!((a - b).abs() < 1e-12);

        let k = DoubleDirichletSeries::constant(c(-1.0, 0.0), (1, 1));
        let r = coefficient_bound_check(&k, 0.5, &fast()).unwrap();
        assert!(r.holds() && (r.rows[0].1 - r.rows[0].2).abs() < 1e-15);
    }
}
