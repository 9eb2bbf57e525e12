//! Series expressions such as `(1+2^-s)*(1+3^-t)`.
//!
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := complex | atom | '(' expr ')' | '-' factor
//! atom    := INT '^-s' | INT '^-t'
//! complex := FLOAT | FLOAT ('+'|'-') FLOAT 'i' | FLOAT 'i'
//! ```
//!
//! A complex literal is a single factor, so `3+2i*2^-s` reads as
//! `(3+2i)*2^-s`. A leading `-` directly before a number is its sign.

use std::fmt::Write as _;

use dirichlet_core::text::format_float;
use dirichlet_core::{Complex64, DirichletSeries, DoubleDirichletSeries, Index2};
use thiserror::Error;

/// Upper limit on an inferred truncation.
pub const MAX_INFERRED_TRUNCATION: u64 = 1 << 24;
/// Inputs longer than this are rejected before lexing.
pub const MAX_INPUT_BYTES: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("truncation overflow: {0}")]
    TruncationOverflow(String),
    #[error("input exceeds {MAX_INPUT_BYTES} bytes")]
    TooLarge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    S,
    T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Atom(u64, Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

/// An evaluated expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Single(DirichletSeries),
    Double(DoubleDirichletSeries),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num { value: f64, int: Option<u64> },
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    I,
    S,
    T,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ExprError {
    ExprError::Syntax { line, column, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = col;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'i' => Tok::I,
            's' => Tok::S,
            't' => Tok::T,
            '0'..='9' | '.' => {
                let begin = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && matches!(chars[i], 'e' | 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && matches!(chars[j], '+' | '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let lexeme: String = chars[begin..i].iter().collect();
                col += i - begin;
                let value: f64 =
                    lexeme.parse().map_err(|_| syntax(line, start, format!("invalid number '{lexeme}'")))?;
                if !value.is_finite() {
                    return Err(syntax(line, start, format!("number '{lexeme}' out of range")));
                }
                let int = if lexeme.bytes().all(|b| b.is_ascii_digit()) { lexeme.parse().ok() } else { None };
                out.push(Token { tok: Tok::Num { value, int }, line, column: start });
                continue;
            }
            other => return Err(syntax(line, start, format!("unexpected character '{other}'"))),
        };
        out.push(Token { tok, line, column: start });
        i += 1;
        col += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + offset).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, msg: impl Into<String>) -> ExprError {
        let (line, column) = self.here();
        syntax(line, column, msg)
    }

    fn describe(&self) -> String {
        match self.peek_at(0) {
            None => "end of input".into(),
            Some(t) => format!("{t:?}").to_lowercase(),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        if self.peek_at(0) == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", self.describe())))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek_at(0) {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        while self.peek_at(0) == Some(&Tok::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        match self.peek_at(0) {
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                match self.peek_at(0) {
                    Some(Tok::Num { .. }) if self.peek_at(1) != Some(&Tok::Caret) => self.number(-1.0),
                    _ => Ok(Expr::Neg(Box::new(self.factor()?))),
                }
            }
            Some(Tok::Num { .. }) => self.number(1.0),
            _ => Err(self.error(format!("expected a number, atom or '(', found {}", self.describe()))),
        }
    }

    /// Number at the cursor, possibly the start of an atom or a complex literal.
    fn number(&mut self, sign: f64) -> Result<Expr, ExprError> {
        let Some(Tok::Num { value, int }) = self.peek_at(0).cloned() else {
            unreachable!("caller checked for a number");
        };
        let here = self.here();
        self.pos += 1;
        match self.peek_at(0) {
            Some(Tok::Caret) => {
                let base = int
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| syntax(here.0, here.1, "atom base must be an integer >= 1"))?;
                self.pos += 1;
                self.expect(Tok::Minus, "'-' after '^'")?;
                let var = match self.peek_at(0) {
                    Some(Tok::S) => Var::S,
                    Some(Tok::T) => Var::T,
                    _ => return Err(self.error(format!("expected 's' or 't', found {}", self.describe()))),
                };
                self.pos += 1;
                Ok(Expr::Atom(base, var))
            }
            Some(Tok::I) => {
                self.pos += 1;
                Ok(Expr::Const(Complex64::new(0.0, sign * value)))
            }
            Some(Tok::Plus | Tok::Minus)
                if matches!(self.peek_at(1), Some(Tok::Num { .. })) && self.peek_at(2) == Some(&Tok::I) =>
            {
                let im_sign = if self.peek_at(0) == Some(&Tok::Minus) { -1.0 } else { 1.0 };
                let Some(Tok::Num { value: im, .. }) = self.peek_at(1).cloned() else { unreachable!() };
                self.pos += 3;
                Ok(Expr::Const(Complex64::new(sign * value, im_sign * im)))
            }
            _ => Ok(Expr::Const(Complex64::new(sign * value, 0.0))),
        }
    }
}

/// Parses an expression, reporting the first syntax error by line and column.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(ExprError::TooLarge);
    }
    let tokens = lex(text)?;
    let end = text.lines().enumerate().last().map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let mut p = Parser { tokens, pos: 0, end };
    let e = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(p.error(format!("unexpected {}", p.describe())));
    }
    Ok(e)
}

impl Expr {
    /// Whether any atom in `t` appears.
    pub fn is_double(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Atom(_, v) => *v == Var::T,
            Expr::Neg(a) => a.is_double(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.is_double() || b.is_double(),
        }
    }

    /// Largest index per variable the expanded expression can reach.
    pub fn degree_bounds(&self) -> Option<Index2> {
        match self {
            Expr::Const(_) => Some((1, 1)),
            Expr::Atom(n, Var::S) => Some((*n, 1)),
            Expr::Atom(n, Var::T) => Some((1, *n)),
            Expr::Neg(a) => a.degree_bounds(),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (x, y) = (a.degree_bounds()?, b.degree_bounds()?);
                Some((x.0.max(y.0), x.1.max(y.1)))
            }
            Expr::Mul(a, b) => {
                let (x, y) = (a.degree_bounds()?, b.degree_bounds()?);
                Some((x.0.checked_mul(y.0)?, x.1.checked_mul(y.1)?))
            }
        }
    }

    fn max_atom(&self) -> Index2 {
        match self {
            Expr::Const(_) => (1, 1),
            Expr::Atom(n, Var::S) => (*n, 1),
            Expr::Atom(n, Var::T) => (1, *n),
            Expr::Neg(a) => a.max_atom(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                let (x, y) = (a.max_atom(), b.max_atom());
                (x.0.max(y.0), x.1.max(y.1))
            }
        }
    }

    /// Truncation to use: the explicit one, else the exact degree bound.
    pub fn truncations(&self, explicit: Option<Index2>) -> Result<Index2, ExprError> {
        let largest = self.max_atom();
        if let Some(bounds) = explicit {
            if largest.0 > bounds.0 || largest.1 > bounds.1 {
                return Err(ExprError::TruncationOverflow(format!(
                    "atom index {:?} exceeds truncation {:?}",
                    largest, bounds
                )));
            }
            return Ok(bounds);
        }
        match self.degree_bounds() {
            Some((m, n)) if m <= MAX_INFERRED_TRUNCATION && n <= MAX_INFERRED_TRUNCATION => Ok((m, n)),
            _ => Err(ExprError::TruncationOverflow(format!(
                "expanded degree exceeds {MAX_INFERRED_TRUNCATION}; pass --trunc"
            ))),
        }
    }

    fn eval_single(&self, n: u64) -> DirichletSeries {
        match self {
            Expr::Const(c) => DirichletSeries::constant(*c, n),
            Expr::Atom(k, _) => DirichletSeries::monomial(*k, Complex64::new(1.0, 0.0), n),
            Expr::Neg(a) => a.eval_single(n).neg(),
            Expr::Add(a, b) => a.eval_single(n).add(&b.eval_single(n)),
            Expr::Sub(a, b) => a.eval_single(n).sub(&b.eval_single(n)),
            Expr::Mul(a, b) => a.eval_single(n).mul(&b.eval_single(n), n),
        }
    }

    fn eval_double(&self, bounds: Index2) -> DoubleDirichletSeries {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Expr::Const(c) => DoubleDirichletSeries::constant(*c, bounds),
            Expr::Atom(k, Var::S) => DoubleDirichletSeries::monomial((*k, 1), one, bounds),
            Expr::Atom(k, Var::T) => DoubleDirichletSeries::monomial((1, *k), one, bounds),
            Expr::Neg(a) => a.eval_double(bounds).scale(-one),
            Expr::Add(a, b) => a.eval_double(bounds).add(&b.eval_double(bounds)),
            Expr::Sub(a, b) => a.eval_double(bounds).sub(&b.eval_double(bounds)),
            Expr::Mul(a, b) => a.eval_double(bounds).mul(&b.eval_double(bounds), bounds),
        }
    }

    /// Expands to a series. Expressions without `t` give a single series,
    /// truncated at the first component of `explicit` when given.
    pub fn evaluate(&self, explicit: Option<Index2>) -> Result<Value, ExprError> {
        if self.is_double() {
            Ok(Value::Double(self.eval_double(self.truncations(explicit)?)))
        } else {
            let (n, _) = self.truncations(explicit.map(|(m, _)| (m, 1)))?;
            Ok(Value::Single(self.eval_single(n)))
        }
    }
}

/// Parses and evaluates in one step.
pub fn evaluate(text: &str, explicit: Option<Index2>) -> Result<Value, ExprError> {
    parse(text)?.evaluate(explicit)
}

fn write_complex(out: &mut String, c: Complex64) {
    let sign = if c.im < 0.0 { '-' } else { '+' };
    let _ = write!(out, "({}{sign}{}i)", format_float(c.re), format_float(c.im.abs()));
}

/// Canonical expression for a single series: `(a+bi)*n^-s` terms in index order.
pub fn print_series(d: &DirichletSeries) -> String {
    if d.is_zero() {
        return "(0+0i)".into();
    }
    let mut out = String::new();
    for (i, &(n, c)) in d.terms().iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        write_complex(&mut out, c);
        if n > 1 {
            let _ = write!(out, "*{n}^-s");
        }
    }
    out
}

/// Canonical expression for a double series: `(a+bi)*m^-s*n^-t` terms.
///
/// When no term involves `t`, the first one carries `*1^-t` so the text
/// still reads back as a double series.
pub fn print_double_series(d: &DoubleDirichletSeries) -> String {
    if d.is_zero() {
        return "(0+0i)*1^-t".into();
    }
    let mark_t = d.terms().iter().all(|&((_, n), _)| n == 1);
    let mut out = String::new();
    for (i, &((m, n), c)) in d.terms().iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        write_complex(&mut out, c);
        if m > 1 {
            let _ = write!(out, "*{m}^-s");
        }
        if n > 1 || (mark_t && i == 0) {
            let _ = write!(out, "*{n}^-t");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single(text: &str) -> DirichletSeries {
        match evaluate(text, None).unwrap() {
            Value::Single(d) => d,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sums_and_products() {
        assert_eq!(single("1 + 2^-s").terms(), &[(1, c(1.0, 0.0)), (2, c(1.0, 0.0))]);
        assert_eq!(single("2^-s * 2^-s").terms(), &[(4, c(1.0, 0.0))]);
        assert_eq!(single("1 - 2^-s - 3^-s").terms(), &[(1, c(1.0, 0.0)), (2, c(-1.0, 0.0)), (3, c(-1.0, 0.0))]);
        match evaluate("(1+2^-s)*(1+3^-t)", None).unwrap() {
            Value::Double(d) => {
                assert_eq!(d.len(), 4);
                assert_eq!(d.truncations(), (2, 3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complex_literals() {
        assert_eq!(single("1.5-2i").terms(), &[(1, c(1.5, -2.0))]);
        assert_eq!(single("-1+2i").terms(), &[(1, c(-1.0, 2.0))]);
        assert_eq!(single("3+2i*2^-s").terms(), &[(2, c(3.0, 2.0))]);
        assert_eq!(single("2i*3^-s").terms(), &[(3, c(0.0, 2.0))]);
        assert_eq!(single("-2^-s").terms(), &[(2, c(-1.0, 0.0))]);
        assert_eq!(single("1e-3*2^-s").terms(), &[(2, c(1e-3, 0.0))]);
        assert_eq!(single("1 - 2^-s").terms(), &[(1, c(1.0, 0.0)), (2, c(-1.0, 0.0))]);
    }

    #[test]
    fn syntax_errors_locate_the_token() {
        let cases = [
            ("1 +", 1, 4),
            ("1 + 2^s", 1, 7),
            ("(1 + 2^-s", 1, 10),
            ("1 +\n  x", 2, 3),
            ("1.5^-s", 1, 1),
            ("0^-s", 1, 1),
            ("1 2", 1, 3),
        ];
        for (text, line, column) in cases {
            match parse(text) {
                Err(ExprError::Syntax { line: l, column: col, .. }) => assert_eq!((l, col), (line, column), "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn truncation_rules() {
        assert_eq!(evaluate("2^-s*2^-s", Some((3, 3))).unwrap(), Value::Single(DirichletSeries::zero(3)));
        assert!(matches!(evaluate("5^-s", Some((4, 4))), Err(ExprError::TruncationOverflow(_))));
        let long = ["(1+97^-s)"; 5].join("*");
        assert!(matches!(evaluate(&long, None), Err(ExprError::TruncationOverflow(_))));
        assert!(evaluate(&long, Some((1000, 1000))).is_ok());
    }

    #[test]
    fn canonical_printing_roundtrips() {
        let d = DirichletSeries::new([(1, c(-1.0, 0.5)), (6, c(1e-20, -3.0))], 6).unwrap();
        let text = print_series(&d);
        assert_eq!(text, "(-1+0.5i) + (1e-20-3i)*6^-s");
        assert_eq!(single(&text), d);
        let e = DoubleDirichletSeries::new([((1, 1), c(1.0, 0.0)), ((2, 3), c(0.0, -1.0))], (2, 3)).unwrap();
        assert_eq!(evaluate(&print_double_series(&e), None).unwrap(), Value::Double(e));
    }
}
