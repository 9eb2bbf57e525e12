//! Symbols `φ(s) = c₀s + φ̃(s)` (and their two-variable analogue) and the
//! composition operators `C_φ D = D ∘ φ` they induce.
//!
//! Production path: the Dirichlet series of `k^{-φ}` is built as
//! `exp(−ln k · φ̃)` by formal exponentiation, then shifted by `k^{c₀}`.
//! [`char_power_via_factorizations`] recomputes the same coefficients by
//! summing over factorizations of each index and serves as an oracle.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bohr::{kronecker_point, DoublePrimePolynomial, PrimePolynomial};
use crate::double::{DoubleDirichletSeries, Index2};
use crate::error::{Error, Result};
use crate::factor::{nth_prime, pair_factorizations};
use crate::series::{index_power, tail_scan, DirichletSeries};

#[derive(Clone, Debug, PartialEq)]
pub struct Symbol {
    pub c0: u32,
    pub phi: DirichletSeries,
}

impl Symbol {
    pub fn new(c0: u32, phi: DirichletSeries) -> Self {
        Self { c0, phi }
    }

    /// `φ(s) = s`.
    pub fn identity() -> Self {
        Self { c0: 1, phi: DirichletSeries::zero(1) }
    }

    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        s * self.c0 as f64 + self.phi.evaluate(s)
    }
}

/// One coordinate `c·s + d·t + φ̃(s, t)` of a two-variable symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolComponent {
    pub c: u32,
    pub d: u32,
    pub phi: DoubleDirichletSeries,
}

impl SymbolComponent {
    pub fn new(c: u32, d: u32, phi: DoubleDirichletSeries) -> Self {
        Self { c, d, phi }
    }

    pub fn evaluate(&self, s: Complex64, t: Complex64) -> Complex64 {
        s * self.c as f64 + t * self.d as f64 + self.phi.evaluate(s, t)
    }

    fn has_slope(&self) -> bool {
        self.c > 0 || self.d > 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoubleSymbol {
    pub first: SymbolComponent,
    pub second: SymbolComponent,
}

impl DoubleSymbol {
    pub fn new(first: SymbolComponent, second: SymbolComponent) -> Self {
        Self { first, second }
    }

    /// `φ(s, t) = (s, t)`.
    pub fn identity() -> Self {
        let zero = DoubleDirichletSeries::zero((1, 1));
        Self::new(SymbolComponent::new(1, 0, zero.clone()), SymbolComponent::new(0, 1, zero))
    }

    /// `φ(s, t) = (t, s)`.
    pub fn swap() -> Self {
        let zero = DoubleDirichletSeries::zero((1, 1));
        Self::new(SymbolComponent::new(0, 1, zero.clone()), SymbolComponent::new(1, 0, zero))
    }

    pub fn components(&self) -> [&SymbolComponent; 2] {
        [&self.first, &self.second]
    }

    pub fn evaluate(&self, s: Complex64, t: Complex64) -> (Complex64, Complex64) {
        (self.first.evaluate(s, t), self.second.evaluate(s, t))
    }
}

/// Sampling grid for range checks: real parts `ε + offset` with offsets
/// log-spaced in `[min_offset, max_offset]`, heights uniform in
/// `[−height, height]`. In two variables the grid is the product grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeGrid {
    pub real_parts: usize,
    pub min_offset: f64,
    pub max_offset: f64,
    pub heights: usize,
    pub height: f64,
}

impl Default for ProbeGrid {
    fn default() -> Self {
        Self { real_parts: 12, min_offset: 1e-6, max_offset: 10.0, heights: 21, height: 50.0 }
    }
}

impl ProbeGrid {
    /// Grid reaching down to `min_offset = 1e-9`, for boundary behaviour.
    pub fn boundary() -> Self {
        Self { min_offset: 1e-9, ..Self::default() }
    }

    pub fn offsets(&self) -> Vec<f64> {
        let n = self.real_parts.max(1);
        if n == 1 {
            return vec![self.min_offset];
        }
        let (lo, hi) = (self.min_offset.ln(), self.max_offset.ln());
        (0..n).map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp()).collect()
    }

    pub fn height_values(&self) -> Vec<f64> {
        let n = self.heights.max(1);
        if n == 1 {
            return vec![0.0];
        }
        (0..n).map(|i| -self.height + 2.0 * self.height * i as f64 / (n - 1) as f64).collect()
    }

    pub fn points(&self, epsilon: f64) -> Vec<Complex64> {
        let hs = self.height_values();
        self.offsets().into_iter().flat_map(|o| hs.iter().map(move |&h| Complex64::new(epsilon + o, h))).collect()
    }

    pub fn pairs(&self, epsilon: f64) -> Vec<(Complex64, Complex64)> {
        let pts = self.points(epsilon);
        pts.iter().flat_map(|&s| pts.iter().map(move |&t| (s, t))).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// `Re φ̃ ≡ 0`: admissible, but sits on the edge of what sampling can judge.
    Boundary,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Boundary => "boundary",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub name: String,
    pub status: CheckStatus,
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolReport {
    pub conditions: Vec<Condition>,
}

impl SymbolReport {
    pub fn is_valid(&self) -> bool {
        self.conditions.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn is_boundary_case(&self) -> bool {
        self.conditions.iter().any(|c| c.status == CheckStatus::Boundary)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

fn is_imaginary_constant_single(phi: &DirichletSeries) -> bool {
    phi.is_constant() && phi.coeff(1).re == 0.0
}

fn is_imaginary_constant_double(phi: &DoubleDirichletSeries) -> bool {
    phi.is_constant() && phi.coeff((1, 1)).re == 0.0
}

fn range_condition(name: String, min_re: f64, strict: bool, imaginary_constant: bool) -> Condition {
    let status = if imaginary_constant && !strict {
        CheckStatus::Boundary
    } else if (strict && min_re > 0.0) || (!strict && min_re >= 0.0) {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Condition { name, status, value: min_re, tolerance: 0.0 }
}

/// Structural and sampled range checks for a one-variable symbol.
///
/// With `c₀ = 0` the symbol itself must map into the right half-plane, so
/// `Re φ̃ > 0` is required on every probe; with `c₀ ≥ 1` only `Re φ̃ ≥ 0` is.
/// Sampling can refute these conditions but never certify them.
pub fn validate_symbol(sym: &Symbol, probes: &[Complex64]) -> SymbolReport {
    let mut conditions = vec![Condition {
        name: "slope-non-negative-integer".into(),
        status: CheckStatus::Pass,
        value: sym.c0 as f64,
        tolerance: 0.0,
    }];
    let outside = probes.iter().filter(|s| s.re.is_nan() || s.re <= 0.0).count();
    conditions.push(Condition {
        name: "probes-in-half-plane".into(),
        status: if outside == 0 { CheckStatus::Pass } else { CheckStatus::Fail },
        value: outside as f64,
        tolerance: 0.0,
    });
    let min_re = probes.iter().filter(|s| s.re > 0.0).map(|&s| sym.phi.evaluate(s).re).fold(f64::INFINITY, f64::min);
    if min_re.is_finite() {
        let strict = sym.c0 == 0;
        let name = if strict { "re-phi-positive" } else { "re-phi-non-negative" };
        conditions.push(range_condition(name.into(), min_re, strict, is_imaginary_constant_single(&sym.phi)));
    }
    SymbolReport { conditions }
}

/// Two-variable analogue of [`validate_symbol`], applied per component.
pub fn validate_double_symbol(sym: &DoubleSymbol, probes: &[(Complex64, Complex64)]) -> SymbolReport {
    let mut conditions = Vec::new();
    for (j, comp) in sym.components().into_iter().enumerate() {
        conditions.push(Condition {
            name: format!("slopes-non-negative-integers[{}]", j + 1),
            status: CheckStatus::Pass,
            value: (comp.c + comp.d) as f64,
            tolerance: 0.0,
        });
    }
    let outside = probes.iter().filter(|(s, t)| !(s.re > 0.0 && t.re > 0.0)).count();
    conditions.push(Condition {
        name: "probes-in-half-plane".into(),
        status: if outside == 0 { CheckStatus::Pass } else { CheckStatus::Fail },
        value: outside as f64,
        tolerance: 0.0,
    });
    for (j, comp) in sym.components().into_iter().enumerate() {
        let min_re = probes
            .iter()
            .filter(|(s, t)| s.re > 0.0 && t.re > 0.0)
            .map(|&(s, t)| comp.phi.evaluate(s, t).re)
            .fold(f64::INFINITY, f64::min);
        if min_re.is_finite() {
            let strict = !comp.has_slope();
            let name = if strict { "re-phi-positive" } else { "re-phi-non-negative" };
            conditions.push(range_condition(
                format!("{name}[{}]", j + 1),
                min_re,
                strict,
                is_imaginary_constant_double(&comp.phi),
            ));
        }
    }
    SymbolReport { conditions }
}

/// Series of `k^{-φ(s)}` truncated at `truncation`.
pub fn char_power(k: u64, sym: &Symbol, truncation: u64) -> Result<DirichletSeries> {
    if k == 0 {
        return Err(Error::InvalidArgument("base k must be positive".into()));
    }
    let truncation = truncation.max(1);
    if k == 1 {
        return Ok(DirichletSeries::constant(Complex64::new(1.0, 0.0), truncation));
    }
    let shift = match k.checked_pow(sym.c0) {
        Some(x) if x <= truncation => x,
        _ => return Ok(DirichletSeries::zero(truncation)),
    };
    let inner = truncation / shift;
    let exponent = sym.phi.scale(Complex64::new(-(k as f64).ln(), 0.0));
    Ok(exponent.exp_series(inner).dilate(shift, truncation))
}

/// Series of `k^{-φ̃(s,t)}` for a double series `φ̃`, by formal exponentiation.
pub fn char_power_exp(k: u64, phi: &DoubleDirichletSeries, truncations: Index2) -> DoubleDirichletSeries {
    assert!(k >= 1, "base k must be positive");
    phi.scale(Complex64::new(-(k as f64).ln(), 0.0)).exp_series(truncations)
}

/// Series of `k^{-φ₁(s,t)} l^{-φ₂(s,t)}` including the linear parts.
pub fn char_power_double(k: u64, l: u64, sym: &DoubleSymbol, truncations: Index2) -> Result<DoubleDirichletSeries> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidArgument("bases k, l must be positive".into()));
    }
    let bounds = (truncations.0.max(1), truncations.1.max(1));
    let shift = match shifts(k, l, sym) {
        Some((sm, sn)) if sm <= bounds.0 && sn <= bounds.1 => (sm, sn),
        _ => return Ok(DoubleDirichletSeries::zero(bounds)),
    };
    let inner = (bounds.0 / shift.0, bounds.1 / shift.1);
    Ok(char_power_double_unshifted(k, l, sym, inner).dilate(shift, bounds))
}

fn shifts(k: u64, l: u64, sym: &DoubleSymbol) -> Option<Index2> {
    let sm = k.checked_pow(sym.first.c)?.checked_mul(l.checked_pow(sym.second.c)?)?;
    let sn = k.checked_pow(sym.first.d)?.checked_mul(l.checked_pow(sym.second.d)?)?;
    Some((sm, sn))
}

fn char_power_double_unshifted(k: u64, l: u64, sym: &DoubleSymbol, inner: Index2) -> DoubleDirichletSeries {
    let one = Complex64::new(1.0, 0.0);
    let a = if k == 1 { DoubleDirichletSeries::constant(one, inner) } else { char_power_exp(k, &sym.first.phi, inner) };
    let b =
        if l == 1 { DoubleDirichletSeries::constant(one, inner) } else { char_power_exp(l, &sym.second.phi, inner) };
    a.mul(&b, inner)
}

/// `k^{-φ̃}` coefficient by coefficient from the factorization sums:
/// `A_{k,1,1} = 1` and, for `(M, N) ≠ (1, 1)`,
/// `A_{k,M,N} = Σ Π_j (−ln k · b_{m_j,n_j})^{r_j} / r_j!` over all pair
/// factorizations `(M, N) = Π (m_j, n_j)^{r_j}`; the whole series carries
/// the factor `k^{−b_{1,1}}`.
///
/// Exponential in the number of factorizations; meant as a cross-check.
pub fn char_power_via_factorizations(
    k: u64,
    phi: &DoubleDirichletSeries,
    truncations: Index2,
) -> DoubleDirichletSeries {
    assert!(k >= 1, "base k must be positive");
    let bounds = (truncations.0.max(1), truncations.1.max(1));
    let ln_k = (k as f64).ln();
    let prefactor = (-ln_k * phi.coeff((1, 1))).exp();
    let mut terms = vec![((1, 1), prefactor)];
    for m in 1..=bounds.0 {
        for n in 1..=bounds.1 {
            if (m, n) == (1, 1) {
                continue;
            }
            let mut total = Complex64::new(0.0, 0.0);
            'factorizations: for f in pair_factorizations(m, n) {
                let mut product = Complex64::new(1.0, 0.0);
                for &(pair, r) in &f.parts {
                    let b = phi.coeff(pair);
                    if b == Complex64::new(0.0, 0.0) {
                        continue 'factorizations;
                    }
                    product *= (b * -ln_k).powu(r) / factorial(r);
                }
                total += product;
            }
            terms.push(((m, n), total * prefactor));
        }
    }
    terms.sort_by_key(|&(idx, _)| idx);
    DoubleDirichletSeries::from_sorted(terms, bounds)
}

fn factorial(r: u32) -> f64 {
    (1..=r).map(f64::from).product()
}

/// `C_φ D = Σ_k a_k k^{-φ}`, truncated at `truncation`.
pub fn apply(sym: &Symbol, d: &DirichletSeries, truncation: u64) -> Result<DirichletSeries> {
    let truncation = truncation.max(1);
    let parts: Vec<DirichletSeries> = d
        .terms()
        .par_iter()
        .map(|&(k, a)| char_power(k, sym, truncation).map(|p| p.scale(a)))
        .collect::<Result<_>>()?;
    Ok(parts.iter().fold(DirichletSeries::zero(truncation), |acc, p| acc.add(p)))
}

/// `C_φ D = Σ_{k,l} a_{k,l} k^{-φ₁} l^{-φ₂}`; colliding output indices add up.
pub fn apply_double(
    sym: &DoubleSymbol,
    d: &DoubleDirichletSeries,
    truncations: Index2,
) -> Result<DoubleDirichletSeries> {
    let bounds = (truncations.0.max(1), truncations.1.max(1));
    let parts: Vec<DoubleDirichletSeries> = d
        .terms()
        .par_iter()
        .map(|&((k, l), a)| char_power_double(k, l, sym, bounds).map(|p| p.scale(a)))
        .collect::<Result<_>>()?;
    Ok(parts.iter().fold(DoubleDirichletSeries::zero(bounds), |acc, p| acc.add(p)))
}

/// Upper bound for `|k^{-φ(s)} − char_power(k, φ, N)(s)|` uniformly on `Re s ≥ sigma`.
///
/// Dropped indices exceed `N`, and the coefficient ℓ¹ norm of the full
/// series at abscissa `σ'` is at most
/// `k^{−c₀σ' − Re b₁} exp(ln k · Σ_{n≥2} |b_n| n^{−σ'})`.
pub fn char_power_tail_bound(k: u64, sym: &Symbol, truncation: u64, sigma: f64) -> f64 {
    if k <= 1 {
        return 0.0;
    }
    let ln_k = (k as f64).ln();
    let b1 = sym.phi.coeff(1).re;
    let rest = sym.phi.without_constant();
    tail_scan(sigma, truncation, |sp| (-ln_k * (sym.c0 as f64 * sp + b1) + ln_k * rest.l1_norm_at(sp)).exp())
}

/// Bound on `|apply(φ, D, N)(s) − D(φ(s))|` for `Re s ≥ sigma`.
pub fn apply_tail_bound(sym: &Symbol, d: &DirichletSeries, truncation: u64, sigma: f64) -> f64 {
    d.terms().iter().map(|&(k, a)| a.norm() * char_power_tail_bound(k, sym, truncation, sigma)).sum()
}

/// Two-variable analogue of [`char_power_tail_bound`] on `Re s ≥ σ₁, Re t ≥ σ₂`.
pub fn char_power_double_tail_bound(k: u64, l: u64, sym: &DoubleSymbol, truncations: Index2, sigma: (f64, f64)) -> f64 {
    let comp_log_majorant = |base: u64, comp: &SymbolComponent, a: f64, b: f64| -> f64 {
        if base <= 1 {
            return 0.0;
        }
        let ln = (base as f64).ln();
        -ln * (comp.c as f64 * a + comp.d as f64 * b + comp.phi.coeff((1, 1)).re)
            + ln * comp.phi.without_constant().l1_norm_at(a, b)
    };
    let majorant =
        |a: f64, b: f64| (comp_log_majorant(k, &sym.first, a, b) + comp_log_majorant(l, &sym.second, a, b)).exp();
    if k <= 1 && l <= 1 {
        return 0.0;
    }
    let over_m = tail_scan(sigma.0, truncations.0, |sp| majorant(sp, sigma.1));
    let over_n = tail_scan(sigma.1, truncations.1, |tp| majorant(sigma.0, tp));
    over_m + over_n
}

pub fn apply_double_tail_bound(
    sym: &DoubleSymbol,
    d: &DoubleDirichletSeries,
    truncations: Index2,
    sigma: (f64, f64),
) -> f64 {
    d.terms().iter().map(|&((k, l), a)| a.norm() * char_power_double_tail_bound(k, l, sym, truncations, sigma)).sum()
}

/// `D(φ(s)) = Σ a_k k^{-φ(s)}` by direct complex powers.
pub fn compose_pointwise(sym: &Symbol, d: &DirichletSeries, s: Complex64) -> Complex64 {
    d.evaluate(sym.evaluate(s))
}

pub fn compose_pointwise_double(
    sym: &DoubleSymbol,
    d: &DoubleDirichletSeries,
    s: Complex64,
    t: Complex64,
) -> Complex64 {
    let (u, v) = sym.evaluate(s, t);
    d.evaluate(u, v)
}

const RECOVERY_TOLERANCE: f64 = 1e-9;

/// Rebuilds `φ = c₀s + φ̃` from the series of `2^{-φ}` and `3^{-φ}`.
///
/// `c₀` comes from the first nonzero index of each input (`2^{c₀}` and
/// `3^{c₀}` respectively), `φ̃` from the formal logarithm of the unshifted
/// series. The two recoveries must agree; since `ln 3 / ln 2` is irrational
/// this also pins down the branch of the constant term.
pub fn recover_symbol(d2: &DirichletSeries, d3: &DirichletSeries, truncation: u64) -> Result<Symbol> {
    let (Some(m2), Some(m3)) = (d2.min_index(), d3.min_index()) else {
        return Err(Error::Recovery("input series vanish".into()));
    };
    if !m2.is_power_of_two() {
        return Err(Error::Recovery(format!("first index {m2} of 2^-phi is not a power of 2: c0 not integral")));
    }
    let c0 = m2.trailing_zeros();
    if 3u64.checked_pow(c0) != Some(m3) {
        return Err(Error::Recovery(format!("first index {m3} of 3^-phi is not 3^{c0}")));
    }
    let unshift = |d: &DirichletSeries, base: u64| -> Result<DirichletSeries> {
        let shift = base.pow(c0);
        let contracted = d.contract(shift).map_err(|e| Error::Recovery(e.to_string()))?;
        let bound = contracted.truncation();
        Ok(contracted.log_series(bound)?.scale(Complex64::new(-1.0 / (base as f64).ln(), 0.0)))
    };
    let mut phi2 = unshift(d2, 2)?;
    let mut phi3 = unshift(d3, 3)?;
    reconcile_branches(&mut phi2, &mut phi3);

    let common = truncation.max(1).min(phi2.truncation()).min(phi3.truncation());
    let (phi2, phi3) = (phi2.truncate(common), phi3.truncate(common));
    let scale = phi2.terms().iter().map(|(_, c)| c.norm()).fold(1.0, f64::max);
    let gap = phi2.max_abs_diff(&phi3);
    if gap > RECOVERY_TOLERANCE * scale {
        return Err(Error::Inconsistent(format!(
            "recoveries from k=2 and k=3 differ by {gap:e}; input is not a pair of symbol powers"
        )));
    }
    Ok(Symbol::new(c0, phi2))
}

/// The logarithm fixes `Im` of the constant term only modulo `2π/ln k`;
/// pick the branches for which the two recoveries agree.
fn reconcile_branches(phi2: &mut DirichletSeries, phi3: &mut DirichletSeries) {
    let (b2, b3) = (phi2.coeff(1), phi3.coeff(1));
    let (p2, p3) = (TAU / 2f64.ln(), TAU / 3f64.ln());
    let mut best = (0i32, 0i32, (b2 - b3).norm());
    for j2 in -16..=16 {
        for j3 in -16..=16 {
            let gap = (b2 + Complex64::new(0.0, j2 as f64 * p2) - b3 - Complex64::new(0.0, j3 as f64 * p3)).norm();
            if gap < best.2 - 1e-12 {
                best = (j2, j3, gap);
            }
        }
    }
    if best.0 != 0 {
        *phi2 = phi2.add(&DirichletSeries::constant(Complex64::new(0.0, best.0 as f64 * p2), phi2.truncation()));
    }
    if best.1 != 0 {
        *phi3 = phi3.add(&DirichletSeries::constant(Complex64::new(0.0, best.1 as f64 * p3), phi3.truncation()));
    }
}

/// Sampled `inf Re φ_j` over `C_ε²`, per component.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeReport {
    pub epsilon: f64,
    pub delta: [f64; 2],
    pub argmin: [(Complex64, Complex64); 2],
}

impl RangeReport {
    pub fn delta(&self) -> f64 {
        self.delta[0].min(self.delta[1])
    }
}

fn component_infimum(comp: &SymbolComponent, pairs: &[(Complex64, Complex64)]) -> (f64, (Complex64, Complex64)) {
    pairs.par_iter().map(|&(s, t)| (comp.evaluate(s, t).re, (s, t))).reduce(
        || (f64::INFINITY, (Complex64::default(), Complex64::default())),
        |a, b| if b.0 < a.0 || (b.0 == a.0 && lex_less(b.1, a.1)) { b } else { a },
    )
}

fn lex_less(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> bool {
    let key = |p: (Complex64, Complex64)| [p.0.re, p.0.im, p.1.re, p.1.im];
    key(a).partial_cmp(&key(b)) == Some(std::cmp::Ordering::Less)
}

/// Sampled estimate of the `δ` with `φ_j(C_ε²) ⊂ C_δ`.
pub fn range_check(sym: &DoubleSymbol, epsilon: f64, grid: &ProbeGrid) -> Result<RangeReport> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!("epsilon = {epsilon} must be positive")));
    }
    let pairs = grid.pairs(epsilon);
    let (d1, p1) = component_infimum(&sym.first, &pairs);
    let (d2, p2) = component_infimum(&sym.second, &pairs);
    Ok(RangeReport { epsilon, delta: [d1, d2], argmin: [p1, p2] })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivityVerdict {
    /// No sampled point had negative real part.
    Consistent,
    /// A sampled point with `Re φ < 0` refutes positivity.
    Disproof,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub min_re: f64,
    pub argmin: (Complex64, Complex64),
    pub verdict: PositivityVerdict,
}

/// Looks for a point of `C₊²` where `Re φ < 0`.
pub fn positivity_check(phi: &DoubleDirichletSeries, grid: &ProbeGrid) -> PositivityReport {
    let comp = SymbolComponent::new(0, 0, phi.clone());
    let (min_re, argmin) = component_infimum(&comp, &grid.pairs(0.0));
    let verdict = if min_re < 0.0 { PositivityVerdict::Disproof } else { PositivityVerdict::Consistent };
    PositivityReport { min_re, argmin, verdict }
}

/// `inf Re φ_j` must stay this many times above the smallest sampled real
/// part for the infimum to count as bounded away from zero.
pub const COMPACTNESS_RATIO: f64 = 1e3;

#[derive(Clone, Debug, PartialEq)]
pub struct CompactnessReport {
    pub compact: bool,
    pub delta: f64,
    pub per_component: [f64; 2],
    /// Smallest real part sampled.
    pub approach: f64,
}

/// Sampled compactness verdict: `C_φ` is compact exactly when
/// `φ(C₊²) ⊂ C_δ²` for some `δ > 0`. The infimum is taken over a grid whose
/// real parts approach 0; if it tracks the approach the verdict is
/// non-compact.
pub fn compactness_check(sym: &DoubleSymbol, grid: &ProbeGrid) -> CompactnessReport {
    let pairs = grid.pairs(0.0);
    let (d1, _) = component_infimum(&sym.first, &pairs);
    let (d2, _) = component_infimum(&sym.second, &pairs);
    let delta = d1.min(d2);
    let approach = grid.offsets().into_iter().fold(f64::INFINITY, f64::min);
    CompactnessReport { compact: delta > COMPACTNESS_RATIO * approach, delta, per_component: [d1, d2], approach }
}

/// Prime-variable form of a one-variable symbol: `ψ_j = B(p_j^{-φ})`.
pub fn bohr_symbol(sym: &Symbol, positions: u32, truncation: u64) -> Result<Vec<PrimePolynomial>> {
    (1..=positions).map(|pos| Ok(PrimePolynomial::lift(&char_power(nth_prime(pos), sym, truncation)?))).collect()
}

/// Max over probes `s` of `|C_ψ f − B(C_φ(B⁻¹ f))|` at the point `(p_j^{-s})_j`.
pub fn bohr_commutation_check(sym: &Symbol, f: &PrimePolynomial, probes: &[Complex64], truncation: u64) -> Result<f64> {
    let psi = bohr_symbol(sym, f.max_position(), truncation)?;
    let composed = PrimePolynomial::lift(&apply(sym, &f.unlift(), truncation)?);
    let dim = psi
        .iter()
        .map(PrimePolynomial::max_position)
        .chain([composed.max_position(), f.max_position()])
        .max()
        .unwrap_or(0);
    let mut residual: f64 = 0.0;
    for &s in probes {
        let z = kronecker_point(s, dim);
        let lhs = f.compose_at(&psi, &z)?;
        let rhs = composed.eval_at(&z)?;
        residual = residual.max((lhs - rhs).norm());
    }
    Ok(residual)
}

/// Two-variable version of [`bohr_commutation_check`]; probes are `(s, t)`.
pub fn bohr_commutation_check_double(
    sym: &DoubleSymbol,
    f: &DoublePrimePolynomial,
    probes: &[(Complex64, Complex64)],
    truncations: Index2,
) -> Result<f64> {
    let (nz, nw) = f.max_positions();
    let psi: Vec<DoublePrimePolynomial> = (1..=nz)
        .map(|pos| Ok(DoublePrimePolynomial::lift(&char_power_double(nth_prime(pos), 1, sym, truncations)?)))
        .collect::<Result<_>>()?;
    let chi: Vec<DoublePrimePolynomial> = (1..=nw)
        .map(|pos| Ok(DoublePrimePolynomial::lift(&char_power_double(1, nth_prime(pos), sym, truncations)?)))
        .collect::<Result<_>>()?;
    let composed = DoublePrimePolynomial::lift(&apply_double(sym, &f.unlift(), truncations)?);
    let (dz, dw) = psi
        .iter()
        .chain(&chi)
        .map(DoublePrimePolynomial::max_positions)
        .chain([composed.max_positions(), (nz, nw)])
        .fold((0, 0), |(a, b), (x, y)| (a.max(x), b.max(y)));
    let mut residual: f64 = 0.0;
    for &(s, t) in probes {
        let z = kronecker_point(s, dz);
        let w = kronecker_point(t, dw);
        let lhs = f.compose_at(&psi, &chi, &z, &w)?;
        let rhs = composed.eval_at(&z, &w)?;
        residual = residual.max((lhs - rhs).norm());
    }
    Ok(residual)
}

/// `k^{-(c₀s + φ̃(s))}` by direct complex exponentiation.
pub fn char_power_pointwise(k: u64, sym: &Symbol, s: Complex64) -> Complex64 {
    index_power(k, sym.evaluate(s))
}
