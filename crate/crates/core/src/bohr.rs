//! Bohr lift: Dirichlet series as polynomials in prime variables.
//!
//! The index `n = Π p_j^{α_j}` is relabelled as the monomial `z^α`, turning
//! Dirichlet convolution into polynomial multiplication. On the torus the
//! lifted polynomial is sampled to estimate Hardy-space norms.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::double::DoubleDirichletSeries;
use crate::error::{Error, Result};
use crate::factor::{factorize, nth_prime, prime_position};
use crate::series::{check_finite, is_negligible, DirichletSeries};

/// Prime-exponent multi-index: `(position, exponent)` pairs with strictly
/// increasing positions, position 1 standing for the prime 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<(u32, u32)>);

impl MultiIndex {
    pub fn new(mut parts: Vec<(u32, u32)>) -> Result<Self> {
        parts.sort_unstable();
        if parts.iter().any(|&(pos, e)| pos == 0 || e == 0) {
            return Err(Error::InvalidArgument("multi-index positions and exponents start at 1".into()));
        }
        if parts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateIndex(format!("{parts:?}")));
        }
        Ok(Self(parts))
    }

    pub fn one() -> Self {
        Self(Vec::new())
    }

    /// The multi-index of `n`, read off its prime factorization.
    pub fn from_index(n: u64) -> Self {
        Self(factorize(n).into_iter().map(|(p, e)| (prime_position(p), e)).collect())
    }

    /// Inverse of [`from_index`](Self::from_index).
    pub fn to_index(&self) -> u64 {
        self.0.iter().map(|&(pos, e)| nth_prime(pos).pow(e)).product()
    }

    pub fn parts(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_position(&self) -> u32 {
        self.0.last().map_or(0, |&(pos, _)| pos)
    }

    /// Exponent sum, i.e. the index of the monomial product.
    pub fn combine(&self, other: &Self) -> Self {
        let mut map: BTreeMap<u32, u32> = self.0.iter().copied().collect();
        for &(pos, e) in &other.0 {
            *map.entry(pos).or_insert(0) += e;
        }
        Self(map.into_iter().collect())
    }

    /// `⟨α, θ⟩` for phases indexed by position − 1.
    fn pairing(&self, phases: &[f64]) -> f64 {
        self.0.iter().map(|&(pos, e)| e as f64 * phases[pos as usize - 1]).sum()
    }

    fn monomial_at(&self, z: &[Complex64]) -> Complex64 {
        self.0.iter().map(|&(pos, e)| z[pos as usize - 1].powu(e)).product()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|&(pos, e)| if e == 1 { format!("z{pos}") } else { format!("z{pos}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PrimePolynomial {
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl PrimePolynomial {
    pub fn new<I: IntoIterator<Item = (MultiIndex, Complex64)>>(terms: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (alpha, c) in terms {
            check_finite(c)?;
            if map.contains_key(&alpha) {
                return Err(Error::DuplicateIndex(alpha.to_string()));
            }
            if !is_negligible(c) {
                map.insert(alpha, c);
            }
        }
        Ok(Self { terms: map })
    }

    pub fn lift(d: &DirichletSeries) -> Self {
        Self { terms: d.terms().iter().map(|&(n, c)| (MultiIndex::from_index(n), c)).collect() }
    }

    /// Back to a Dirichlet series whose truncation is the largest index.
    pub fn unlift(&self) -> DirichletSeries {
        let bound = self.terms.keys().map(MultiIndex::to_index).max().unwrap_or(1);
        self.unlift_with_truncation(bound)
    }

    pub fn unlift_with_truncation(&self, truncation: u64) -> DirichletSeries {
        let mut terms: Vec<(u64, Complex64)> = self.terms.iter().map(|(a, &c)| (a.to_index(), c)).collect();
        terms.sort_by_key(|&(n, _)| n);
        let truncation = truncation.max(terms.last().map_or(1, |&(n, _)| n));
        DirichletSeries::from_sorted(terms, truncation)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex64 {
        self.terms.get(alpha).copied().unwrap_or_default()
    }

    /// Number of prime variables in play.
    pub fn max_position(&self) -> u32 {
        self.terms.keys().map(MultiIndex::max_position).max().unwrap_or(0)
    }

    /// Polynomial product through exponent addition.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<MultiIndex, Complex64> = BTreeMap::new();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                *out.entry(a.combine(b)).or_default() += x * y;
            }
        }
        out.retain(|_, c| !is_negligible(*c));
        Self { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.terms.clone();
        for (b, &y) in &other.terms {
            *out.entry(b.clone()).or_default() += y;
        }
        out.retain(|_, c| !is_negligible(*c));
        Self { terms: out }
    }

    /// `Σ c_α exp(2πi⟨α, θ⟩)`.
    pub fn eval_torus(&self, sample: &TorusSample) -> Result<Complex64> {
        let needed = self.max_position() as usize;
        if sample.phases.len() < needed {
            return Err(Error::InsufficientPhases { needed, have: sample.phases.len() });
        }
        Ok(self.terms.iter().map(|(a, &c)| c * Complex64::from_polar(1.0, TAU * a.pairing(&sample.phases))).sum())
    }

    /// Value at an arbitrary point `z` of the polydisc, `z[j]` for position `j + 1`.
    pub fn eval_at(&self, z: &[Complex64]) -> Result<Complex64> {
        let needed = self.max_position() as usize;
        if z.len() < needed {
            return Err(Error::InsufficientPhases { needed, have: z.len() });
        }
        Ok(self.terms.iter().map(|(a, &c)| c * a.monomial_at(z)).sum())
    }

    /// `f(ψ₁(z), ψ₂(z), …)`: composition with one polynomial per prime variable.
    pub fn compose_at(&self, psi: &[PrimePolynomial], z: &[Complex64]) -> Result<Complex64> {
        let needed = self.max_position() as usize;
        if psi.len() < needed {
            return Err(Error::InsufficientPhases { needed, have: psi.len() });
        }
        let inner: Vec<Complex64> = psi[..needed].iter().map(|p| p.eval_at(z)).collect::<Result<_>>()?;
        self.eval_at(&inner)
    }
}

/// Kronecker point `z_j = p_j^{-s}`: polynomial values there equal the
/// Dirichlet series values at `s`.
pub fn kronecker_point(s: Complex64, positions: u32) -> Vec<Complex64> {
    (1..=positions).map(|pos| crate::series::index_power(nth_prime(pos), s)).collect()
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DoublePrimePolynomial {
    terms: BTreeMap<(MultiIndex, MultiIndex), Complex64>,
}

impl DoublePrimePolynomial {
    pub fn lift(d: &DoubleDirichletSeries) -> Self {
        Self {
            terms: d
                .terms()
                .iter()
                .map(|&((m, n), c)| ((MultiIndex::from_index(m), MultiIndex::from_index(n)), c))
                .collect(),
        }
    }

    pub fn unlift(&self) -> DoubleDirichletSeries {
        let mut terms: Vec<((u64, u64), Complex64)> =
            self.terms.iter().map(|((a, b), &c)| ((a.to_index(), b.to_index()), c)).collect();
        terms.sort_by_key(|&(k, _)| k);
        let bm = terms.iter().map(|&((m, _), _)| m).max().unwrap_or(1);
        let bn = terms.iter().map(|&((_, n), _)| n).max().unwrap_or(1);
        DoubleDirichletSeries::from_sorted(terms, (bm, bn))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, alpha: &MultiIndex, beta: &MultiIndex) -> Complex64 {
        self.terms.get(&(alpha.clone(), beta.clone())).copied().unwrap_or_default()
    }

    pub fn max_positions(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(x, y), (a, b)| (x.max(a.max_position()), y.max(b.max_position())))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<(MultiIndex, MultiIndex), Complex64> = BTreeMap::new();
        for ((a1, b1), &x) in &self.terms {
            for ((a2, b2), &y) in &other.terms {
                *out.entry((a1.combine(a2), b1.combine(b2))).or_default() += x * y;
            }
        }
        out.retain(|_, c| !is_negligible(*c));
        Self { terms: out }
    }

    /// Value at `(z, w)`, one polydisc point per variable group.
    pub fn eval_at(&self, z: &[Complex64], w: &[Complex64]) -> Result<Complex64> {
        let (nz, nw) = self.max_positions();
        if z.len() < nz as usize || w.len() < nw as usize {
            return Err(Error::InsufficientPhases {
                needed: (nz + nw) as usize,
                have: z.len().min(nz as usize) + w.len().min(nw as usize),
            });
        }
        Ok(self.terms.iter().map(|((a, b), &c)| c * a.monomial_at(z) * b.monomial_at(w)).sum())
    }

    /// `f(ψ(z, w), χ(z, w))` with `ψ` feeding the first variable group and
    /// `χ` the second.
    pub fn compose_at(
        &self,
        psi: &[DoublePrimePolynomial],
        chi: &[DoublePrimePolynomial],
        z: &[Complex64],
        w: &[Complex64],
    ) -> Result<Complex64> {
        let (nz, nw) = self.max_positions();
        if psi.len() < nz as usize || chi.len() < nw as usize {
            return Err(Error::InsufficientPhases { needed: (nz + nw) as usize, have: psi.len() + chi.len() });
        }
        let inner_z: Vec<Complex64> = psi[..nz as usize].iter().map(|p| p.eval_at(z, w)).collect::<Result<_>>()?;
        let inner_w: Vec<Complex64> = chi[..nw as usize].iter().map(|p| p.eval_at(z, w)).collect::<Result<_>>()?;
        self.eval_at(&inner_z, &inner_w)
    }
}

/// A point of the finite-dimensional torus, `z_j = exp(2πi θ_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusSample {
    pub phases: Vec<f64>,
    pub seed: u64,
}

impl TorusSample {
    pub fn random(dim: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self { phases: (0..dim).map(|_| rng.random::<f64>()).collect(), seed }
    }

    /// The Kronecker-flow point `(p_j^{-it})_j`, i.e. phases `−t ln p_j / 2π mod 1`.
    pub fn kronecker(t: f64, dim: usize) -> Self {
        let phases = (1..=dim as u32).map(|pos| (-t * (nth_prime(pos) as f64).ln() / TAU).rem_euclid(1.0)).collect();
        Self { phases, seed: 0 }
    }
}

/// A trigonometric polynomial `Σ c_k exp(2πi⟨ν_k, θ⟩)` on a torus of
/// dimension `dim`, used for Monte Carlo sampling and sup-norm searches.
#[derive(Clone, Debug)]
pub struct TrigPolynomial {
    dim: usize,
    terms: Vec<(Complex64, Vec<(usize, f64)>)>,
}

impl TrigPolynomial {
    pub fn from_prime_polynomial(p: &PrimePolynomial) -> Self {
        let dim = p.max_position() as usize;
        let terms = p
            .terms()
            .map(|(a, &c)| (c, a.parts().iter().map(|&(pos, e)| (pos as usize - 1, e as f64)).collect()))
            .collect();
        Self { dim, terms }
    }

    /// Lift of `D(σ + i·)`: coefficients `aₙ n^{-σ}` on the prime torus.
    pub fn on_line(d: &DirichletSeries, sigma: f64) -> Self {
        Self::from_prime_polynomial(&PrimePolynomial::lift(&d.translate_unchecked(sigma)))
    }

    /// Lift of `D(σ₁ + i·, σ₂ + i·)`; the `t`-primes follow the `s`-primes.
    pub fn on_lines(d: &DoubleDirichletSeries, sigma1: f64, sigma2: f64) -> Self {
        let lifted = DoublePrimePolynomial::lift(d);
        let (nz, nw) = lifted.max_positions();
        let terms = lifted
            .terms()
            .map(|((a, b), &c)| {
                let m = a.to_index() as f64;
                let n = b.to_index() as f64;
                let weight = c * m.powf(-sigma1) * n.powf(-sigma2);
                let mut freq: Vec<(usize, f64)> =
                    a.parts().iter().map(|&(pos, e)| (pos as usize - 1, e as f64)).collect();
                freq.extend(b.parts().iter().map(|&(pos, e)| (nz as usize + pos as usize - 1, e as f64)));
                (weight, freq)
            })
            .collect();
        Self { dim: (nz + nw) as usize, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.norm()).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, f)| f.is_empty())
    }

    pub fn value(&self, theta: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, freq)| {
                let angle: f64 = freq.iter().map(|&(j, k)| k * theta[j]).sum();
                c * Complex64::from_polar(1.0, TAU * angle)
            })
            .sum()
    }

    /// `|f|` and the gradient of `|f|²` with respect to `θ`.
    fn value_and_gradient(&self, theta: &[f64]) -> (f64, Vec<f64>) {
        let mut f = Complex64::new(0.0, 0.0);
        let mut df = vec![Complex64::new(0.0, 0.0); self.dim];
        for (c, freq) in &self.terms {
            let angle: f64 = freq.iter().map(|&(j, k)| k * theta[j]).sum();
            let term = c * Complex64::from_polar(1.0, TAU * angle);
            f += term;
            for &(j, k) in freq {
                df[j] += term * Complex64::new(0.0, TAU * k);
            }
        }
        let grad = df.iter().map(|d| 2.0 * (f.conj() * d).re).collect();
        (f.norm(), grad)
    }

    /// Gradient ascent on `|f|²` from `start` with backtracking steps.
    /// Returns the local maximum of `|f|`, its location and the last gain.
    pub fn ascend(&self, start: &[f64], max_iter: usize) -> (f64, Vec<f64>, f64) {
        let mut theta = start.to_vec();
        let (mut value, mut grad) = self.value_and_gradient(&theta);
        let mut step = 0.1 / (1.0 + self.l1_norm().powi(2));
        let mut last_gain = f64::INFINITY;
        for _ in 0..max_iter {
            let gnorm2: f64 = grad.iter().map(|g| g * g).sum();
            if gnorm2 < 1e-30 {
                last_gain = 0.0;
                break;
            }
            let mut accepted = false;
            for _ in 0..60 {
                let trial: Vec<f64> = theta.iter().zip(&grad).map(|(t, g)| t + step * g).collect();
                let (v, g) = self.value_and_gradient(&trial);
                if v * v >= value * value + 0.25 * step * gnorm2 {
                    last_gain = v - value;
                    theta = trial;
                    value = v;
                    grad = g;
                    step *= 2.0;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted || last_gain < 1e-16 * value.max(1.0) {
                if !accepted {
                    last_gain = 0.0;
                }
                break;
            }
        }
        for t in theta.iter_mut() {
            *t = t.rem_euclid(1.0);
        }
        (value, theta, last_gain)
    }

    /// Multi-start search for `sup |f|` over the torus: evaluates `starts`
    /// and refines the best `refine` of them. The result is a lower bound.
    pub fn sup_search(&self, starts: &[Vec<f64>], refine: usize) -> SupSearch {
        if self.is_constant() || self.dim == 0 {
            let v = self.value(&vec![0.0; self.dim]).norm();
            return SupSearch { value: v, argmax: vec![0.0; self.dim], refinement_gain: 0.0 };
        }
        let mut scored: Vec<(f64, usize)> =
            starts.par_iter().enumerate().map(|(i, th)| (self.value(th).norm(), i)).collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let refined: Vec<(f64, Vec<f64>, f64)> =
            scored.par_iter().take(refine.max(1)).map(|&(_, i)| self.ascend(&starts[i], 10_000)).collect();
        let (value, argmax, gain) =
            refined.into_iter().fold((scored[0].0, starts[scored[0].1].clone(), 0.0), |best, cand| {
                if cand.0 > best.0 {
                    cand
                } else {
                    best
                }
            });
        SupSearch { value, argmax, refinement_gain: gain }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SupSearch {
    pub value: f64,
    pub argmax: Vec<f64>,
    /// Improvement made by the final accepted ascent step.
    pub refinement_gain: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormKind {
    /// Monte Carlo `H^p` norm.
    Hp(f64),
    /// Sampled supremum on the torus; a lower bound.
    HInfLowerBound,
    /// Sampled supremum along vertical line(s); a lower bound.
    LineSup,
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::Hp(p) => write!(f, "hp({p})"),
            NormKind::HInfLowerBound => write!(f, "hinf-lower-bound"),
            NormKind::LineSup => write!(f, "line-sup-lower-bound"),
        }
    }
}

/// A numerical estimate together with the sampling that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
    pub kind: NormKind,
    /// For `Hp(p)`: the estimated mean of `|f|^p`, i.e. `value^p`.
    pub moment: f64,
    pub moment_stderr: f64,
    /// Rigorous upper bound when one is available (coefficient ℓ¹ norm).
    pub upper_bound: Option<f64>,
}

impl fmt::Display for NormEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{value: {}, stderr: {}, samples: {}, seed: {}, kind: {}}}",
            self.value, self.stderr, self.samples, self.seed, self.kind
        )
    }
}

const SHARD: usize = 4096;

fn shard_rng(seed: u64, shard: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard as u64);
    rng
}

/// Uniform torus points, generated shard by shard so that the sequence does
/// not depend on how the work is scheduled.
pub fn torus_points(dim: usize, samples: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..samples.div_ceil(SHARD))
        .into_par_iter()
        .flat_map_iter(|shard| {
            let mut rng = shard_rng(seed, shard);
            let count = SHARD.min(samples - shard * SHARD);
            (0..count).map(move |_| (0..dim).map(|_| rng.random::<f64>()).collect::<Vec<f64>>())
        })
        .collect()
}

/// Monte Carlo mean and standard error of `|f|^p` over uniform torus points.
pub fn torus_moment(f: &TrigPolynomial, p: f64, samples: usize, seed: u64) -> (f64, f64) {
    let shards: Vec<(f64, f64)> = (0..samples.div_ceil(SHARD))
        .into_par_iter()
        .map(|shard| {
            let mut rng = shard_rng(seed, shard);
            let count = SHARD.min(samples - shard * SHARD);
            let mut theta = vec![0.0; f.dim];
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for _ in 0..count {
                for t in theta.iter_mut() {
                    *t = rng.random::<f64>();
                }
                let x = f.value(&theta).norm().powf(p);
                sum += x;
                sum_sq += x * x;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = shards.into_iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = sum / n;
    let var = if samples > 1 { ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
    (mean, (var / n).sqrt())
}

fn check_hp_args(p: f64, samples: usize) -> Result<()> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidArgument(format!("exponent p = {p} must be >= 1")));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    Ok(())
}

/// Monte Carlo estimate of `‖D‖_p` through the torus integral of the lift.
pub fn hp_norm_estimate(d: &DirichletSeries, p: f64, samples: usize, seed: u64) -> Result<NormEstimate> {
    check_hp_args(p, samples)?;
    let f = TrigPolynomial::on_line(d, 0.0);
    Ok(hp_from_trig(&f, p, samples, seed, d.l1_norm_at(0.0)))
}

/// Same as [`hp_norm_estimate`] for a double series on the product torus.
pub fn hp_norm_estimate_double(d: &DoubleDirichletSeries, p: f64, samples: usize, seed: u64) -> Result<NormEstimate> {
    check_hp_args(p, samples)?;
    let f = TrigPolynomial::on_lines(d, 0.0, 0.0);
    Ok(hp_from_trig(&f, p, samples, seed, d.l1_norm_at(0.0, 0.0)))
}

fn hp_from_trig(f: &TrigPolynomial, p: f64, samples: usize, seed: u64, l1: f64) -> NormEstimate {
    let (moment, moment_stderr) = if f.is_constant() {
        (f.value(&vec![0.0; f.dim]).norm().powf(p), 0.0)
    } else {
        torus_moment(f, p, samples, seed)
    };
    let value = moment.powf(1.0 / p);
    // delta method: d(m^{1/p}) = m^{1/p - 1} / p · dm
    let stderr = if moment > 0.0 { moment_stderr * value / (p * moment) } else { 0.0 };
    NormEstimate { value, stderr, samples, seed, kind: NormKind::Hp(p), moment, moment_stderr, upper_bound: Some(l1) }
}

/// Sampled lower bound for `‖D‖_∞` with local refinement of the best samples.
pub fn hinf_norm_estimate(d: &DirichletSeries, samples: usize, seed: u64) -> Result<NormEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let f = TrigPolynomial::on_line(d, 0.0);
    let mut starts = vec![vec![0.0; f.dim()]];
    starts.extend(torus_points(f.dim(), samples, seed));
    let search = f.sup_search(&starts, 16);
    let l1 = d.l1_norm_at(0.0);
    Ok(NormEstimate {
        value: search.value.min(l1),
        stderr: search.refinement_gain,
        samples,
        seed,
        kind: NormKind::HInfLowerBound,
        moment: search.value,
        moment_stderr: search.refinement_gain,
        upper_bound: Some(l1),
    })
}

impl DirichletSeries {
    pub(crate) fn translate_unchecked(&self, sigma: f64) -> DirichletSeries {
        self.translate(sigma.max(0.0)).expect("non-negative translation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multi_index_examples() {
        assert!(MultiIndex::from_index(1).is_one());
        assert_eq!(MultiIndex::from_index(12).parts(), &[(1, 2), (2, 1)]);
        assert_eq!(MultiIndex::from_index(12).to_string(), "z1^2*z2");
        for n in 1..=100_000u64 {
            assert_eq!(MultiIndex::from_index(n).to_index(), n);
        }
        assert!(MultiIndex::new(vec![(1, 1), (1, 2)]).is_err());
        assert!(MultiIndex::new(vec![(0, 1)]).is_err());
    }

    #[test]
    fn lift_examples() {
        let d = DirichletSeries::from_real([(6, 1.0)], 6).unwrap();
        let p = PrimePolynomial::lift(&d);
        let z1z2 = MultiIndex::new(vec![(1, 1), (2, 1)]).unwrap();
        assert_eq!(p.coeff(&z1z2), c(1.0, 0.0));
        assert_eq!(p.len(), 1);
        assert_eq!(p.unlift_with_truncation(6), d);
    }

    #[test]
    fn double_lift_examples() {
        let d = DoubleDirichletSeries::from_real([((2, 3), 1.0)], (3, 3)).unwrap();
        let p = DoublePrimePolynomial::lift(&d);
        let e1 = MultiIndex::new(vec![(1, 1)]).unwrap();
        let e2 = MultiIndex::new(vec![(2, 1)]).unwrap();
        assert_eq!(p.coeff(&e1, &e2), c(1.0, 0.0));
        assert_eq!(p.unlift(), d.with_truncations((2, 3)));
    }

    #[test]
    fn torus_evaluation() {
        let k = PrimePolynomial::new([(MultiIndex::one(), c(2.5, -1.0))]).unwrap();
        assert_eq!(k.eval_torus(&TorusSample::random(3, 9)).unwrap(), c(2.5, -1.0));
        let z1 = PrimePolynomial::new([(MultiIndex::new(vec![(1, 1)]).unwrap(), c(1.0, 0.0))]).unwrap();
        let v = z1.eval_torus(&TorusSample { phases: vec![0.25, 0.6], seed: 0 }).unwrap();
        assert!((v - c(0.0, 1.0)).norm() < 1e-15);
        let z3 = PrimePolynomial::new([(MultiIndex::new(vec![(3, 1)]).unwrap(), c(1.0, 0.0))]).unwrap();
        assert!(matches!(
            z3.eval_torus(&TorusSample { phases: vec![0.1, 0.2], seed: 0 }),
            Err(Error::InsufficientPhases { needed: 3, have: 2 })
        ));
    }

    #[test]
    fn kronecker_flow_matches_vertical_line() {
        let d = DirichletSeries::new(
            [(1, c(0.5, 0.1)), (2, c(-1.0, 0.3)), (6, c(0.25, 0.0)), (9, c(0.0, -0.7)), (10, c(0.1, 0.1))],
            10,
        )
        .unwrap();
        let p = PrimePolynomial::lift(&d);
        for t in [-3.7, 0.0, 1.0, 12.5, 100.0] {
            let sample = TorusSample::kronecker(t, p.max_position() as usize);
            let lhs = p.eval_torus(&sample).unwrap();
            let rhs = d.evaluate(c(0.0, t));
            assert!((lhs - rhs).norm() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn constant_norms_are_exact() {
        let d = DirichletSeries::constant(c(3.0, -4.0), 4);
        for p in [1.0, 2.0, 3.5] {
            let e = hp_norm_estimate(&d, p, 10, 1).unwrap();
            assert!((e.value - 5.0).abs() < 1e-12);
            assert_eq!(e.stderr, 0.0);
        }
        assert!((hinf_norm_estimate(&d, 10, 1).unwrap().value - 5.0).abs() < 1e-12);
    }

    #[test]
    fn two_term_h2_norm() {
        let (a, b) = (c(0.6, 0.2), c(-0.3, 0.9));
        let d = DirichletSeries::new([(1, a), (2, b)], 2).unwrap();
        let e = hp_norm_estimate(&d, 2.0, 50_000, 3).unwrap();
        let exact = (a.norm_sqr() + b.norm_sqr()).sqrt();
        assert!((e.value - exact).abs() <= 3.0 * e.stderr, "{e}");
    }

    #[test]
    fn h4_norm_against_quadrature() {
        // ‖1 + z‖_4^4 over the circle by the trapezoid rule (exact for trig polynomials)
        let k = 64;
        let quad: f64 = (0..k)
            .map(|j| (c(1.0, 0.0) + Complex64::from_polar(1.0, TAU * j as f64 / k as f64)).norm().powi(4))
            .sum::<f64>()
            / k as f64;
        assert!((quad - 6.0).abs() < 1e-12);
        let d = DirichletSeries::from_real([(1, 1.0), (2, 1.0)], 2).unwrap();
        let e = hp_norm_estimate(&d, 4.0, 100_000, 11).unwrap();
        assert!((e.moment - quad).abs() <= 3.0 * e.moment_stderr, "{e}");
        assert!((e.value - quad.powf(0.25)).abs() <= 3.0 * e.stderr);
    }

    #[test]
    fn hinf_of_one_plus_two() {
        let d = DirichletSeries::from_real([(1, 1.0), (2, 1.0)], 2).unwrap();
        let e = hinf_norm_estimate(&d, 256, 5).unwrap();
        assert!((e.value - 2.0).abs() < 1e-3);
        assert!(e.value <= d.l1_norm_at(0.0) + 1e-15);
        assert_eq!(e.kind, NormKind::HInfLowerBound);
    }

    #[test]
    fn estimates_are_deterministic() {
        let d = DirichletSeries::from_real([(1, 0.3), (3, 1.0), (10, -0.5)], 10).unwrap();
        let a = hp_norm_estimate(&d, 3.0, 9000, 42).unwrap();
        let b = hp_norm_estimate(&d, 3.0, 9000, 42).unwrap();
        assert_eq!(a, b);
        let pts = torus_points(3, 9000, 42);
        assert_eq!(pts.len(), 9000);
        assert_eq!(pts, torus_points(3, 9000, 42));
    }

    #[test]
    fn error_paths() {
        let d = DirichletSeries::from_real([(2, 1.0)], 2).unwrap();
        assert!(hp_norm_estimate(&d, 0.5, 10, 0).is_err());
        assert!(hp_norm_estimate(&d, 2.0, 0, 0).is_err());
        assert!(hinf_norm_estimate(&d, 0, 0).is_err());
    }
}
