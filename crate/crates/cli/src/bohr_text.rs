//! Line format for lifted polynomials.
//!
//! ```text
//! bohr v1 single
//! <alpha> <re> <im>
//!
//! bohr v1 double
//! <alpha> <beta> <re> <im>
//! ```
//!
//! A multi-index is `1` or a product such as `z1^2*z3`, with `z1` standing
//! for the prime 2. The second variable of a double lift uses `w`.

use std::fmt::Write as _;

use dirichlet_core::bohr::{DoublePrimePolynomial, MultiIndex, PrimePolynomial};
use dirichlet_core::factor::nth_prime;
use dirichlet_core::text::format_float;
use dirichlet_core::{Complex64, DirichletSeries, DoubleDirichletSeries, Error, Result};

/// Positions beyond this are rejected; the index would not fit anyway.
const MAX_POSITION: u32 = 1 << 20;

fn write_index(out: &mut String, alpha: &MultiIndex, var: char) {
    if alpha.is_one() {
        out.push('1');
        return;
    }
    for (i, &(pos, e)) in alpha.parts().iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        let _ = write!(out, "{var}{pos}");
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

fn write_coeff(out: &mut String, c: Complex64) {
    let _ = writeln!(out, " {} {}", format_float(c.re), format_float(c.im));
}

pub fn write_lift(p: &PrimePolynomial) -> String {
    let mut out = String::from("bohr v1 single\n");
    for (alpha, &c) in p.terms() {
        write_index(&mut out, alpha, 'z');
        write_coeff(&mut out, c);
    }
    out
}

pub fn write_double_lift(p: &DoublePrimePolynomial) -> String {
    let mut out = String::from("bohr v1 double\n");
    for ((alpha, beta), &c) in p.terms() {
        write_index(&mut out, alpha, 'z');
        out.push(' ');
        write_index(&mut out, beta, 'w');
        write_coeff(&mut out, c);
    }
    out
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_index(line: usize, field: &str, var: char) -> Result<MultiIndex> {
    if field == "1" {
        return Ok(MultiIndex::one());
    }
    let mut parts = Vec::new();
    for factor in field.split('*') {
        let body = factor.strip_prefix(var).ok_or_else(|| err(line, format!("expected '{var}<k>' in '{field}'")))?;
        let (pos, e) = body.split_once('^').unwrap_or((body, "1"));
        let pos: u32 = pos.parse().map_err(|_| err(line, format!("invalid position in '{factor}'")))?;
        let e: u32 = e.parse().map_err(|_| err(line, format!("invalid exponent in '{factor}'")))?;
        if pos > MAX_POSITION {
            return Err(err(line, format!("position {pos} too large")));
        }
        parts.push((pos, e));
    }
    MultiIndex::new(parts).map_err(|e| err(line, e.to_string()))
}

/// `Π p_j^{α_j}`, or an error when it overflows `u64`.
fn checked_index(line: usize, alpha: &MultiIndex) -> Result<u64> {
    alpha
        .parts()
        .iter()
        .try_fold(1u64, |acc, &(pos, e)| nth_prime(pos).checked_pow(e).and_then(|q| acc.checked_mul(q)))
        .ok_or_else(|| err(line, format!("index of {alpha} overflows")))
}

fn float(line: usize, field: &str) -> Result<f64> {
    match field.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(err(line, format!("invalid number '{field}'"))),
    }
}

fn body(text: &str, kind: &str) -> Result<Vec<(usize, Vec<String>)>> {
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let content = l.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then(|| (i + 1, content.split_whitespace().map(String::from).collect::<Vec<_>>()))
    });
    match lines.next() {
        Some((_, h)) if h == ["bohr", "v1", kind] => Ok(lines.collect()),
        Some((l, _)) => Err(err(l, format!("expected 'bohr v1 {kind}' header"))),
        None => Err(err(1, "empty input")),
    }
}

/// Whether `text` announces a double lift.
pub fn is_double(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().eq(["bohr", "v1", "double"]))
}

pub fn parse_lift(text: &str) -> Result<PrimePolynomial> {
    let mut terms = Vec::new();
    for (l, f) in body(text, "single")? {
        if f.len() != 3 {
            return Err(err(l, "expected '<alpha> <re> <im>'"));
        }
        let alpha = parse_index(l, &f[0], 'z')?;
        checked_index(l, &alpha)?;
        terms.push((alpha, Complex64::new(float(l, &f[1])?, float(l, &f[2])?)));
    }
    PrimePolynomial::new(terms)
}

/// Reads a single lift and maps it back, at `truncation` or its largest index.
pub fn unlift(text: &str, truncation: Option<u64>) -> Result<DirichletSeries> {
    let p = parse_lift(text)?;
    let largest = p.terms().map(|(a, _)| a.to_index()).max().unwrap_or(1);
    Ok(p.unlift_with_truncation(truncation.unwrap_or(largest).max(largest)))
}

/// Reads a double lift and maps it back; the truncations default to the
/// largest indices.
pub fn unlift_double(text: &str, truncations: Option<(u64, u64)>) -> Result<DoubleDirichletSeries> {
    let mut terms = Vec::new();
    for (l, f) in body(text, "double")? {
        if f.len() != 4 {
            return Err(err(l, "expected '<alpha> <beta> <re> <im>'"));
        }
        let m = checked_index(l, &parse_index(l, &f[0], 'z')?)?;
        let n = checked_index(l, &parse_index(l, &f[1], 'w')?)?;
        terms.push(((m, n), Complex64::new(float(l, &f[2])?, float(l, &f[3])?)));
    }
    let largest = terms.iter().fold((1, 1), |acc, &((m, n), _)| (acc.0.max(m), acc.1.max(n)));
    let bounds = truncations.map_or(largest, |(m, n)| (m.max(largest.0), n.max(largest.1)));
    DoubleDirichletSeries::new(terms, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_single_and_double() {
        let d = DirichletSeries::from_real([(1, 1.0), (12, -0.5), (7, 2.0)], 12).unwrap();
        let text = write_lift(&PrimePolynomial::lift(&d));
        assert!(text.contains("z1^2*z2 -0.5 0\n"), "{text}");
        assert_eq!(unlift(&text, Some(12)).unwrap(), d);
        let e = DoubleDirichletSeries::from_real([((1, 1), 1.0), ((4, 9), 3.0)], (4, 9)).unwrap();
        let text = write_double_lift(&DoublePrimePolynomial::lift(&e));
        assert!(text.contains("z1^2 w2^2 3 0\n"), "{text}");
        assert!(is_double(&text));
        assert_eq!(unlift_double(&text, None).unwrap(), e);
    }

    #[test]
    fn rejects_malformed_lines() {
        for text in [
            "bohr v1 single\nz0 1 0\n",
            "bohr v1 single\nx1 1 0\n",
            "bohr v1 single\nz1 1\n",
            "bohr v1 single\nz1^99 1 0\n",
        ] {
            assert!(matches!(unlift(text, None), Err(Error::Parse { line: 2, .. })), "{text:?}");
        }
    }
}
