//! The element expression language.
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := atom ("'" | '^' INT)*
//! atom    := INT ['/' INT] | IDENT | '{' ANY '}' | '(' expr ')'
//! ```
//!
//! Identifiers name vertices or edges.  A trailing `'` applies the involution,
//! so `e'` is the ghost edge `e*`.  Identifiers outside
//! `[A-Za-z_][A-Za-z0-9_#]*` (for instance primed vertices of a quotient
//! graph) are written in braces: `{w'}`.  A bare scalar term stands for the
//! scalar times the identity `Σ v`.

use std::sync::Arc;

use super::{Element, Lpa};
use crate::error::{Error, Result};
use crate::field::Scalar;

/// Renders an identifier so the parser reads it back unchanged.
pub fn format_identifier(name: &str) -> String {
    let mut chars = name.chars();
    let plain = match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '#')
        }
        _ => false,
    };
    if plain {
        name.to_string()
    } else {
        format!("{{{name}}}")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Prime,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn syntax(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = position(src, offset);
    Error::Syntax { line, column, message: message.into() }
}

impl Lexer {
    fn run(src: &str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let start = i;
            match c {
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '+' => lx.push(Tok::Plus, start),
                '-' => lx.push(Tok::Minus, start),
                '*' => lx.push(Tok::Star, start),
                '\'' => lx.push(Tok::Prime, start),
                '^' => lx.push(Tok::Caret, start),
                '(' => lx.push(Tok::LParen, start),
                ')' => lx.push(Tok::RParen, start),
                '{' => {
                    let close = src[i + 1..].find('}').ok_or_else(|| syntax(src, start, "unterminated `{`"))?;
                    let name = &src[i + 1..i + 1 + close];
                    lx.push(Tok::Ident(name.to_string()), start);
                    i += close + 2;
                    continue;
                }
                c if c.is_ascii_digit() => {
                    let mut j = i;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j] == b'/' {
                        let k0 = j + 1;
                        let mut k = k0;
                        while k < bytes.len() && bytes[k].is_ascii_digit() {
                            k += 1;
                        }
                        if k == k0 {
                            return Err(syntax(src, j, "expected denominator after `/`"));
                        }
                        j = k;
                    }
                    lx.push(Tok::Num(src[i..j].to_string()), start);
                    i = j;
                    continue;
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut j = i;
                    while j < bytes.len() && {
                        let d = bytes[j] as char;
                        d.is_ascii_alphanumeric() || d == '_' || d == '#'
                    } {
                        j += 1;
                    }
                    lx.push(Tok::Ident(src[i..j].to_string()), start);
                    i = j;
                    continue;
                }
                _ => {
                    let other = src[i..].chars().next().unwrap_or('?');
                    return Err(syntax(src, start, format!("unexpected character `{other}`")));
                }
            }
            i += 1;
        }
        lx.push(Tok::End, src.len());
        Ok(lx.toks)
    }

    fn push(&mut self, t: Tok, at: usize) {
        self.toks.push((t, at));
    }
}

enum Val {
    Scalar(Scalar),
    Elem(Element),
}

struct Parser<'a> {
    alg: &'a Arc<Lpa>,
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn to_elem(&self, v: Val) -> Element {
        match v {
            Val::Elem(e) => e,
            Val::Scalar(s) => self.alg.one().scale(&s).expect("same field"),
        }
    }

    fn add(&self, a: Val, b: Val, negate: bool) -> Val {
        match (a, b) {
            (Val::Scalar(x), Val::Scalar(y)) => Val::Scalar(if negate { &x - &y } else { &x + &y }),
            (a, b) => {
                let (x, y) = (self.to_elem(a), self.to_elem(b));
                Val::Elem(if negate { &x - &y } else { &x + &y })
            }
        }
    }

    fn expr(&mut self) -> Result<Val> {
        let mut negate_first = false;
        match self.peek() {
            Tok::Plus => {
                self.bump();
            }
            Tok::Minus => {
                self.bump();
                negate_first = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate_first {
            match first {
                Val::Scalar(s) => Val::Scalar(-s),
                Val::Elem(e) => Val::Elem(-e),
            }
        } else {
            first
        };
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            acc = self.add(acc, rhs, negate);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            acc = match (acc, rhs) {
                (Val::Scalar(a), Val::Scalar(b)) => Val::Scalar(&a * &b),
                (Val::Scalar(a), Val::Elem(x)) | (Val::Elem(x), Val::Scalar(a)) => Val::Elem(x.scale(&a)?),
                (Val::Elem(x), Val::Elem(y)) => Val::Elem(x.try_mul(&y)?),
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val> {
        let mut v = self.atom()?;
        loop {
            match self.peek() {
                Tok::Prime => {
                    self.bump();
                    v = match v {
                        Val::Scalar(s) => Val::Scalar(s),
                        Val::Elem(x) => Val::Elem(x.bar()),
                    };
                }
                Tok::Caret => {
                    self.bump();
                    let at = self.offset();
                    let n = match self.bump() {
                        Tok::Num(n) if !n.contains('/') => {
                            n.parse::<u32>().map_err(|_| syntax(self.src, at, "exponent too large"))?
                        }
                        _ => return Err(syntax(self.src, at, "expected integer exponent")),
                    };
                    v = match v {
                        Val::Scalar(s) => {
                            let mut acc = s.field().one();
                            for _ in 0..n {
                                acc = &acc * &s;
                            }
                            Val::Scalar(acc)
                        }
                        Val::Elem(x) => Val::Elem(x.pow(n)?),
                    };
                }
                _ => return Ok(v),
            }
        }
    }

    fn atom(&mut self) -> Result<Val> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => {
                let s = self.alg.field().parse_literal(&n).map_err(|e| match e {
                    Error::DivisionByZero => syntax(self.src, at, "zero denominator"),
                    _ => syntax(self.src, at, format!("bad literal `{n}`")),
                })?;
                Ok(Val::Scalar(s))
            }
            Tok::Ident(name) => {
                let g = self.alg.graph();
                if let Ok(v) = g.vertex(&name) {
                    Ok(Val::Elem(self.alg.vertex_element(v)))
                } else if let Ok(e) = g.edge(&name) {
                    Ok(Val::Elem(self.alg.edge_element(e)))
                } else {
                    Err(syntax(self.src, at, format!("unknown identifier `{name}`")))
                }
            }
            Tok::LParen => {
                let v = self.expr()?;
                let close = self.offset();
                if self.bump() != Tok::RParen {
                    return Err(syntax(self.src, close, "expected `)`"));
                }
                Ok(v)
            }
            Tok::End => Err(syntax(self.src, at, "unexpected end of expression")),
            t => Err(syntax(self.src, at, format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses an expression over `alg` and returns its normal form.
pub fn parse_element(alg: &Arc<Lpa>, src: &str) -> Result<Element> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { alg, src, toks, pos: 0 };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(src, p.offset(), "trailing input"));
    }
    let x = p.to_elem(v);
    Ok(x.normalize())
}
