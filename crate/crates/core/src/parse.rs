//! Text grammar for exponential polynomials and complex constants.
//!
//! ```text
//! exppoly := ['-'] term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*     -- divisor must be constant
//! factor  := primary ('^' ['-'] uint)*      -- negative powers: constants only
//! primary := number | 'i' | 'pi' | 'e' | var
//!          | ('exp'|'log'|'sqrt') '(' exppoly ')' | '(' exppoly ')'
//! var     := 'z' uint                       -- 1-based, 1 <= uint <= n
//! number  := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]
//! ```
//!
//! `^` binds tighter than `*`; unary minus binds looser than `^`.
//! Whitespace is insignificant; `i`, `pi` and `e` are reserved words. All
//! multi-valued functions use principal branches. `exp` arguments must
//! lower to polynomials (no nested `exp`); `log`/`sqrt` arguments and
//! divisors must lower to constants.
//!
//! Parsing produces an explicit syntax tree. The tree can be lowered to a
//! canonical [`ExpPoly`] or evaluated directly at a point; the two routes
//! are independent, which the test suite exploits.
//!
//! The printer emits canonical forms: terms in canonical order, fronts as
//! expanded monomial sums, every scalar with 17 significant digits, so
//! print-then-parse is the identity on canonical objects.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[allow(unused_imports)] // resolves f64 math in the no_std build
use num_traits::Float;

use crate::expoly::ExpPoly;
use crate::poly::Polynomial;
use crate::scalar::{self, AlgebraError, Complex64};

/// Byte range into the input text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }

    pub fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
        }
    }
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "parse error at bytes {}..{}: {}",
            self.span.start, self.span.end, self.message
        )
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Var(usize), // 1-based index as written
    ImagUnit,
    Pi,
    Euler,
    Exp,
    Log,
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0usize;
    while pos < bytes.len() {
        let b = bytes[pos];
        let start = pos;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                pos += 1;
            }
            b'+' => {
                out.push((Tok::Plus, SourceSpan::new(start, pos + 1)));
                pos += 1;
            }
            b'-' => {
                out.push((Tok::Minus, SourceSpan::new(start, pos + 1)));
                pos += 1;
            }
            b'*' => {
                out.push((Tok::Star, SourceSpan::new(start, pos + 1)));
                pos += 1;
            }
            b'/' => {
                out.push((Tok::Slash, SourceSpan::new(start, pos + 1)));
                pos += 1;
            }
            b'^' => {
                out.push((Tok::Caret, SourceSpan::new(start, pos + 1)));
                pos += 1;
            }
            b'(' => {
                out.push((Tok::LParen, SourceSpan::new(start, pos + 1)));
                pos += 1;
            }
            b')' => {
                out.push((Tok::RParen, SourceSpan::new(start, pos + 1)));
                pos += 1;
            }
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos < bytes.len() && bytes[pos] == b'.' {
                    if pos + 1 >= bytes.len() || !bytes[pos + 1].is_ascii_digit() {
                        return Err(ParseError::new(
                            SourceSpan::new(start, pos + 1),
                            "expected digits after decimal point",
                        ));
                    }
                    pos += 1;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                }
                // scientific suffix; plain `e` after a number is the Euler
                // constant, so only consume when digits follow
                if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
                    let mut probe = pos + 1;
                    if probe < bytes.len() && (bytes[probe] == b'+' || bytes[probe] == b'-') {
                        probe += 1;
                    }
                    if probe < bytes.len() && bytes[probe].is_ascii_digit() {
                        pos = probe;
                        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                            pos += 1;
                        }
                    }
                }
                let span = SourceSpan::new(start, pos);
                let value: f64 = text[start..pos]
                    .parse()
                    .map_err(|_| ParseError::new(span, "invalid numeric literal"))?;
                out.push((Tok::Num(value), span));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                let span = SourceSpan::new(start, pos);
                let word = &text[start..pos];
                let tok = match word {
                    "i" => Tok::ImagUnit,
                    "pi" => Tok::Pi,
                    "e" => Tok::Euler,
                    "exp" => Tok::Exp,
                    "log" => Tok::Log,
                    "sqrt" => Tok::Sqrt,
                    _ => {
                        if let Some(rest) = word.strip_prefix('z') {
                            if !rest.is_empty() && rest.bytes().all(|d| d.is_ascii_digit()) {
                                let k: usize = rest.parse().map_err(|_| {
                                    ParseError::new(span, "variable index too large")
                                })?;
                                out.push((Tok::Var(k), span));
                                continue;
                            }
                        }
                        return Err(ParseError::new(span, format!("unknown identifier `{word}`")));
                    }
                };
                out.push((tok, span));
            }
            _ => {
                return Err(ParseError::new(
                    SourceSpan::new(start, start + 1),
                    format!("unexpected character `{}`", &text[start..start + 1]),
                ));
            }
        }
    }
    out.push((Tok::End, SourceSpan::new(bytes.len(), bytes.len())));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Syntax tree

#[derive(Clone, Debug, PartialEq)]
pub enum AstKind {
    Number(f64),
    ImagUnit,
    Pi,
    Euler,
    Var(usize), // 1-based as written
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
    Exp(Box<Ast>),
    Log(Box<Ast>),
    Sqrt(Box<Ast>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ast {
    pub kind: AstKind,
    pub span: SourceSpan,
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, SourceSpan) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<SourceSpan, ParseError> {
        let (t, span) = self.bump();
        if t == tok {
            Ok(span)
        } else {
            Err(ParseError::new(span, format!("expected {what}")))
        }
    }

    fn parse_expr(&mut self) -> Result<Ast, ParseError> {
        let negated = if self.peek().0 == Tok::Minus {
            Some(self.bump().1)
        } else {
            None
        };
        let mut lhs = self.parse_term()?;
        if let Some(mspan) = negated {
            let span = mspan.join(lhs.span);
            lhs = Ast {
                kind: AstKind::Neg(Box::new(lhs)),
                span,
            };
        }
        loop {
            match self.peek().0 {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    let span = lhs.span.join(rhs.span);
                    lhs = Ast {
                        kind: AstKind::Add(Box::new(lhs), Box::new(rhs)),
                        span,
                    };
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.parse_term()?;
                    let span = lhs.span.join(rhs.span);
                    lhs = Ast {
                        kind: AstKind::Sub(Box::new(lhs), Box::new(rhs)),
                        span,
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.parse_power()?;
        loop {
            match self.peek().0 {
                Tok::Star => {
                    self.bump();
                    let rhs = self.parse_power()?;
                    let span = lhs.span.join(rhs.span);
                    lhs = Ast {
                        kind: AstKind::Mul(Box::new(lhs), Box::new(rhs)),
                        span,
                    };
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.parse_power()?;
                    let span = lhs.span.join(rhs.span);
                    lhs = Ast {
                        kind: AstKind::Div(Box::new(lhs), Box::new(rhs)),
                        span,
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_power(&mut self) -> Result<Ast, ParseError> {
        let mut base = self.parse_primary()?;
        while self.peek().0 == Tok::Caret {
            self.bump();
            let sign = if self.peek().0 == Tok::Minus {
                self.bump();
                -1i64
            } else {
                1
            };
            let (t, span) = self.bump();
            let e = match t {
                Tok::Num(v) if v.fract() == 0.0 && (0.0..=1e9).contains(&v) => v as i64,
                _ => return Err(ParseError::new(span, "expected integer exponent after `^`")),
            };
            let full = base.span.join(span);
            base = Ast {
                kind: AstKind::Pow(Box::new(base), sign * e),
                span: full,
            };
        }
        Ok(base)
    }

    fn parse_primary(&mut self) -> Result<Ast, ParseError> {
        let (t, span) = self.bump();
        let kind = match t {
            Tok::Num(v) => AstKind::Number(v),
            Tok::ImagUnit => AstKind::ImagUnit,
            Tok::Pi => AstKind::Pi,
            Tok::Euler => AstKind::Euler,
            Tok::Var(k) => AstKind::Var(k),
            Tok::Exp | Tok::Log | Tok::Sqrt => {
                self.expect(Tok::LParen, "`(` after function name")?;
                let arg = self.parse_expr()?;
                let rspan = self.expect(Tok::RParen, "closing `)`")?;
                let full = span.join(rspan);
                let boxed = Box::new(arg);
                return Ok(Ast {
                    kind: match t {
                        Tok::Exp => AstKind::Exp(boxed),
                        Tok::Log => AstKind::Log(boxed),
                        _ => AstKind::Sqrt(boxed),
                    },
                    span: full,
                });
            }
            Tok::LParen => {
                let inner = self.parse_expr()?;
                let rspan = self.expect(Tok::RParen, "closing `)`")?;
                return Ok(Ast {
                    kind: inner.kind,
                    span: span.join(rspan),
                });
            }
            _ => return Err(ParseError::new(span, "expected a value")),
        };
        Ok(Ast { kind, span })
    }
}

/// Parse text into a syntax tree without committing to a dimension.
pub fn parse_ast(text: &str) -> Result<Ast, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0 };
    let ast = p.parse_expr()?;
    let (t, span) = p.bump();
    if t != Tok::End {
        return Err(ParseError::new(span, "unexpected trailing input"));
    }
    Ok(ast)
}

// ---------------------------------------------------------------------------
// Direct evaluation of the syntax tree

/// Evaluate the tree at a point, without building an `ExpPoly`.
pub fn eval_ast(ast: &Ast, z: &[Complex64]) -> Result<Complex64, ParseError> {
    let value = match &ast.kind {
        AstKind::Number(v) => scalar::re(*v),
        AstKind::ImagUnit => scalar::I,
        AstKind::Pi => scalar::re(core::f64::consts::PI),
        AstKind::Euler => scalar::re(core::f64::consts::E),
        AstKind::Var(k) => {
            if *k == 0 || *k > z.len() {
                return Err(ParseError::new(
                    ast.span,
                    format!("variable z{k} out of range for dimension {}", z.len()),
                ));
            }
            z[*k - 1]
        }
        AstKind::Neg(a) => -eval_ast(a, z)?,
        AstKind::Add(a, b) => eval_ast(a, z)? + eval_ast(b, z)?,
        AstKind::Sub(a, b) => eval_ast(a, z)? - eval_ast(b, z)?,
        AstKind::Mul(a, b) => eval_ast(a, z)? * eval_ast(b, z)?,
        AstKind::Div(a, b) => {
            let den = eval_ast(b, z)?;
            if den.norm() == 0.0 {
                return Err(ParseError::new(b.span, "division by zero"));
            }
            eval_ast(a, z)? / den
        }
        AstKind::Pow(a, e) => {
            let base = eval_ast(a, z)?;
            if *e >= 0 {
                base.powu(*e as u32)
            } else {
                if base.norm() == 0.0 {
                    return Err(ParseError::new(a.span, "zero raised to a negative power"));
                }
                base.powi(*e as i32)
            }
        }
        AstKind::Exp(a) => scalar::cexp(eval_ast(a, z)?)
            .map_err(|err| ParseError::new(a.span, err.to_string()))?,
        AstKind::Log(a) => scalar::principal_log(eval_ast(a, z)?)
            .map_err(|err| ParseError::new(a.span, err.to_string()))?,
        AstKind::Sqrt(a) => scalar::principal_sqrt(eval_ast(a, z)?),
    };
    if !scalar::is_finite(value) {
        return Err(ParseError::new(ast.span, "non-finite value"));
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// Lowering to ExpPoly

fn lower_err(span: SourceSpan, err: AlgebraError) -> ParseError {
    ParseError::new(span, err.to_string())
}

fn as_constant(f: &ExpPoly, span: SourceSpan, what: &str) -> Result<Complex64, ParseError> {
    if f.is_identically_zero() {
        return Ok(scalar::ZERO);
    }
    if f.term_count() == 1 {
        let t = &f.terms()[0];
        if t.exponent.is_zero() && t.front.is_constant() {
            return Ok(t.front.constant_part());
        }
    }
    Err(ParseError::new(span, format!("{what} must be a constant")))
}

fn lower(ast: &Ast, dim: usize) -> Result<ExpPoly, ParseError> {
    let out = match &ast.kind {
        AstKind::Number(v) => ExpPoly::constant(dim, scalar::re(*v)),
        AstKind::ImagUnit => ExpPoly::constant(dim, scalar::I),
        AstKind::Pi => ExpPoly::constant(dim, scalar::re(core::f64::consts::PI)),
        AstKind::Euler => ExpPoly::constant(dim, scalar::re(core::f64::consts::E)),
        AstKind::Var(k) => {
            if *k == 0 || *k > dim {
                return Err(ParseError::new(
                    ast.span,
                    format!("variable z{k} out of range for dimension {dim}"),
                ));
            }
            ExpPoly::variable(dim, *k - 1)
        }
        AstKind::Neg(a) => Ok(lower(a, dim)?.neg()),
        AstKind::Add(a, b) => lower(a, dim)?.add(&lower(b, dim)?),
        AstKind::Sub(a, b) => lower(a, dim)?.sub(&lower(b, dim)?),
        AstKind::Mul(a, b) => lower(a, dim)?.mul(&lower(b, dim)?),
        AstKind::Div(a, b) => {
            let den = lower(b, dim)?;
            let w = as_constant(&den, b.span, "divisor")?;
            if w.norm() == 0.0 {
                return Err(ParseError::new(b.span, "division by zero"));
            }
            Ok(lower(a, dim)?.scale(scalar::ONE / w))
        }
        AstKind::Pow(a, e) => {
            let base = lower(a, dim)?;
            if *e >= 0 {
                base.pow(*e as u32)
            } else {
                let w = as_constant(&base, a.span, "base of a negative power")?;
                if w.norm() == 0.0 {
                    return Err(ParseError::new(a.span, "zero raised to a negative power"));
                }
                ExpPoly::constant(dim, w.powi(*e as i32))
            }
        }
        AstKind::Exp(a) => {
            let arg = lower(a, dim)?;
            // the argument must be a polynomial: every term with zero exponent
            let mut p = Polynomial::zero(dim);
            for t in arg.terms() {
                if !t.exponent.is_zero() {
                    return Err(ParseError::new(
                        a.span,
                        "exp argument must be a polynomial (no nested exp)",
                    ));
                }
                p = p.add(&t.front).map_err(|e| lower_err(a.span, e))?;
            }
            ExpPoly::exp_of(p)
        }
        AstKind::Log(a) => {
            let arg = lower(a, dim)?;
            let w = as_constant(&arg, a.span, "log argument")?;
            let l = scalar::principal_log(w).map_err(|e| lower_err(a.span, e))?;
            ExpPoly::constant(dim, l)
        }
        AstKind::Sqrt(a) => {
            let arg = lower(a, dim)?;
            let w = as_constant(&arg, a.span, "sqrt argument")?;
            ExpPoly::constant(dim, scalar::principal_sqrt(w))
        }
    };
    out.map_err(|e| lower_err(ast.span, e))
}

/// Parse a constant expression; variables are rejected.
pub fn parse_constant(text: &str) -> Result<Complex64, ParseError> {
    let ast = parse_ast(text)?;
    eval_ast(&ast, &[])
}

/// Parse an exponential polynomial over `z1..zn` into canonical form.
pub fn parse_exppoly(text: &str, dim: usize) -> Result<ExpPoly, ParseError> {
    let ast = parse_ast(text)?;
    lower(&ast, dim)
}

// ---------------------------------------------------------------------------
// Printing

/// Format a float with 17 significant digits (round-trip exact).
pub fn print_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Render a complex scalar as a grammar-valid factor.
pub fn print_complex(w: Complex64) -> String {
    if w.im == 0.0 {
        if w.re >= 0.0 {
            print_f64(w.re)
        } else {
            format!("({})", print_f64(w.re))
        }
    } else if w.re == 0.0 {
        format!("({}*i)", print_f64(w.im))
    } else if w.im < 0.0 {
        format!("({}-{}*i)", print_f64(w.re), print_f64(-w.im))
    } else {
        format!("({}+{}*i)", print_f64(w.re), print_f64(w.im))
    }
}

fn print_monomial(coeff: Complex64, idx: &crate::multi_index::MultiIndex) -> String {
    let mut s = print_complex(coeff);
    for (j, &e) in idx.entries().iter().enumerate() {
        if e == 0 {
            continue;
        }
        s.push('*');
        s.push('z');
        s.push_str(&(j + 1).to_string());
        if e > 1 {
            s.push('^');
            s.push_str(&e.to_string());
        }
    }
    s
}

/// Expanded monomial sum, leading monomial first.
pub fn print_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::with_capacity(p.term_count());
    let mut terms: Vec<_> = p.iter().collect();
    terms.reverse();
    for (idx, coeff) in terms {
        parts.push(print_monomial(*coeff, idx));
    }
    parts.join("+")
}

/// Canonical rendering; `parse_exppoly(print_exppoly(f), f.dim())` equals `f`.
pub fn print_exppoly(f: &ExpPoly) -> String {
    if f.is_identically_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::with_capacity(f.term_count());
    for t in f.terms() {
        let front = format!("({})", print_polynomial(&t.front));
        if t.exponent.is_zero() {
            parts.push(front);
        } else {
            parts.push(format!("{front}*exp({})", print_polynomial(&t.exponent)));
        }
    }
    parts.join("+")
}
