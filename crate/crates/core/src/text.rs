//! Version-tagged line formats for series and symbols.
//!
//! ```text
//! dirichlet v1 single <N>
//! <n> <re> <im>
//!
//! dirichlet v1 double <M> <N>
//! <m> <n> <re> <im>
//!
//! symbol v1 single <c0>
//! <series block>
//!
//! symbol v1 double <c1> <d1> <c2> <d2>
//! <double series block>
//! <double series block>
//! ```
//!
//! Blank lines and `#` comments are ignored. Floats are printed in the
//! shortest form that parses back to the same `f64`.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::compose::{DoubleSymbol, Symbol, SymbolComponent};
use crate::double::DoubleDirichletSeries;
use crate::error::{Error, Result};
use crate::series::DirichletSeries;

/// Shortest round-trip decimal, switching to exponent form outside `[1e-5, 1e16)`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn write_series(d: &DirichletSeries) -> String {
    let mut out = format!("dirichlet v1 single {}\n", d.truncation());
    for &(n, c) in d.terms() {
        let _ = writeln!(out, "{n} {} {}", format_float(c.re), format_float(c.im));
    }
    out
}

pub fn write_double_series(d: &DoubleDirichletSeries) -> String {
    let (m0, n0) = d.truncations();
    let mut out = format!("dirichlet v1 double {m0} {n0}\n");
    for &((m, n), c) in d.terms() {
        let _ = writeln!(out, "{m} {n} {} {}", format_float(c.re), format_float(c.im));
    }
    out
}

pub fn write_symbol(sym: &Symbol) -> String {
    format!("symbol v1 single {}\n{}", sym.c0, write_series(&sym.phi))
}

pub fn write_double_symbol(sym: &DoubleSymbol) -> String {
    format!(
        "symbol v1 double {} {} {} {}\n{}{}",
        sym.first.c,
        sym.first.d,
        sym.second.c,
        sym.second.d,
        write_double_series(&sym.first.phi),
        write_double_series(&sym.second.phi)
    )
}

/// Any of the four documents.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Single(DirichletSeries),
    Double(DoubleDirichletSeries),
    Symbol(Symbol),
    DoubleSymbol(DoubleSymbol),
}

impl Document {
    pub fn to_text(&self) -> String {
        match self {
            Document::Single(d) => write_series(d),
            Document::Double(d) => write_double_series(d),
            Document::Symbol(s) => write_symbol(s),
            Document::DoubleSymbol(s) => write_double_symbol(s),
        }
    }
}

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let content = l.split('#').next().unwrap_or("").trim();
                (!content.is_empty()).then(|| (i + 1, content.split_whitespace().collect()))
            })
            .collect();
        Self { lines, pos: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.lines.get(self.pos)
    }

    fn next_header(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        let line = self.lines.get(self.pos).cloned().ok_or_else(|| Error::Parse {
            line: self.lines.last().map_or(1, |l| l.0),
            msg: format!("expected {what} header, found end of input"),
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn at_header(&self) -> bool {
        self.peek().is_none_or(|(_, f)| matches!(f.first(), Some(&"dirichlet") | Some(&"symbol")))
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some((line, _)) => Err(Error::Parse { line: *line, msg: "unexpected trailing content".into() }),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn int<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field.parse().map_err(|_| parse_err(line, format!("invalid {what} '{field}'")))
}

fn float(line: usize, field: &str) -> Result<f64> {
    let x: f64 = field.parse().map_err(|_| parse_err(line, format!("invalid number '{field}'")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(parse_err(line, format!("non-finite value '{field}'")))
    }
}

fn expect_tag(line: usize, fields: &[&str], tag: &str, kind: &str, arity: usize) -> Result<()> {
    if fields.len() != 3 + arity || fields[0] != tag || fields[1] != "v1" || fields[2] != kind {
        return Err(parse_err(line, format!("expected '{tag} v1 {kind}' header with {arity} parameter(s)")));
    }
    Ok(())
}

fn relocate(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        e @ Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    }
}

fn read_single(lines: &mut Lines) -> Result<DirichletSeries> {
    let (hl, h) = lines.next_header("series")?;
    expect_tag(hl, &h, "dirichlet", "single", 1)?;
    let bound: u64 = int(hl, h[3], "truncation")?;
    let mut terms = Vec::new();
    while !lines.at_header() {
        let (l, f) = lines.next_header("term")?;
        if f.len() != 3 {
            return Err(parse_err(l, "expected '<n> <re> <im>'"));
        }
        let n: u64 = int(l, f[0], "index")?;
        terms.push((n, Complex64::new(float(l, f[1])?, float(l, f[2])?)));
    }
    DirichletSeries::new(terms, bound).map_err(relocate(hl))
}

fn read_double(lines: &mut Lines) -> Result<DoubleDirichletSeries> {
    let (hl, h) = lines.next_header("double series")?;
    expect_tag(hl, &h, "dirichlet", "double", 2)?;
    let bounds: (u64, u64) = (int(hl, h[3], "truncation")?, int(hl, h[4], "truncation")?);
    let mut terms = Vec::new();
    while !lines.at_header() {
        let (l, f) = lines.next_header("term")?;
        if f.len() != 4 {
            return Err(parse_err(l, "expected '<m> <n> <re> <im>'"));
        }
        let idx = (int(l, f[0], "index")?, int(l, f[1], "index")?);
        terms.push((idx, Complex64::new(float(l, f[2])?, float(l, f[3])?)));
    }
    DoubleDirichletSeries::new(terms, bounds).map_err(relocate(hl))
}

pub fn parse_series(text: &str) -> Result<DirichletSeries> {
    let mut lines = Lines::new(text);
    let d = read_single(&mut lines)?;
    lines.finish()?;
    Ok(d)
}

pub fn parse_double_series(text: &str) -> Result<DoubleDirichletSeries> {
    let mut lines = Lines::new(text);
    let d = read_double(&mut lines)?;
    lines.finish()?;
    Ok(d)
}

pub fn parse_symbol(text: &str) -> Result<Symbol> {
    match parse_document(text)? {
        Document::Symbol(s) => Ok(s),
        _ => Err(parse_err(1, "expected a single-variable symbol")),
    }
}

pub fn parse_double_symbol(text: &str) -> Result<DoubleSymbol> {
    match parse_document(text)? {
        Document::DoubleSymbol(s) => Ok(s),
        _ => Err(parse_err(1, "expected a two-variable symbol")),
    }
}

/// Parses whichever document the header announces.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = Lines::new(text);
    let Some((hl, h)) = lines.peek().cloned() else {
        return Err(parse_err(1, "empty input"));
    };
    let doc = match (h.first().copied(), h.get(2).copied()) {
        (Some("dirichlet"), Some("single")) => Document::Single(read_single(&mut lines)?),
        (Some("dirichlet"), Some("double")) => Document::Double(read_double(&mut lines)?),
        (Some("symbol"), Some("single")) => {
            lines.pos += 1;
            expect_tag(hl, &h, "symbol", "single", 1)?;
            let c0 = int(hl, h[3], "slope")?;
            Document::Symbol(Symbol::new(c0, read_single(&mut lines)?))
        }
        (Some("symbol"), Some("double")) => {
            lines.pos += 1;
            expect_tag(hl, &h, "symbol", "double", 4)?;
            let s: Vec<u32> = h[3..].iter().map(|f| int(hl, f, "slope")).collect::<Result<_>>()?;
            let first = read_double(&mut lines)?;
            let second = read_double(&mut lines)?;
            Document::DoubleSymbol(DoubleSymbol::new(
                SymbolComponent::new(s[0], s[1], first),
                SymbolComponent::new(s[2], s[3], second),
            ))
        }
        _ => return Err(parse_err(hl, "unknown header")),
    };
    lines.finish()?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn series_roundtrip_and_comments() {
        let text = "# header comment\ndirichlet v1 single 8\n1 1 0\n\n2 0.5 -2.5e-7  # trailing\n";
        let d = parse_series(text).unwrap();
        assert_eq!(d.terms(), &[(1, c(1.0, 0.0)), (2, c(0.5, -2.5e-7))]);
        assert_eq!(write_series(&d), "dirichlet v1 single 8\n1 1 0\n2 0.5 -2.5e-7\n");
        assert_eq!(parse_series(&write_series(&d)).unwrap(), d);
    }

    #[test]
    fn float_formatting_roundtrips() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 5e-324, f64::MAX, -123456.789, 1e16, 9.999e15, 1e-5, 9.99e-6] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn double_and_symbols() {
        let d = DoubleDirichletSeries::new([((1, 1), c(2.0, 0.0)), ((2, 3), c(0.0, 1.0))], (4, 4)).unwrap();
        assert_eq!(parse_double_series(&write_double_series(&d)).unwrap(), d);
        let sym = Symbol::new(1, DirichletSeries::new([(3, c(1.0, 0.0))], 3).unwrap());
        assert_eq!(parse_symbol(&write_symbol(&sym)).unwrap(), sym);
        let dsym = DoubleSymbol::new(SymbolComponent::new(1, 1, d.clone()), SymbolComponent::new(1, 0, d));
        let text = write_double_symbol(&dsym);
        assert!(text.starts_with("symbol v1 double 1 1 1 0\n"));
        assert_eq!(parse_document(&text).unwrap(), Document::DoubleSymbol(dsym));
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("dirichlet v2 single 4\n", 1),
            ("dirichlet v1 single 4\n1 1\n", 2),
            ("dirichlet v1 single 4\n1 1 0\n# c\n2 x 0\n", 4),
            ("dirichlet v1 single 4\n1 inf 0\n", 2),
            ("dirichlet v1 single 4\n1 1 0\n1 2 0\n", 1),
            ("dirichlet v1 single 4\n9 1 0\n", 1),
            ("dirichlet v1 single 4\n1 1 0\ndirichlet v1 single 2\n", 3),
            ("symbol v1 double 1 0 0\n", 1),
        ];
        for (text, line) in cases {
            match parse_document(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
