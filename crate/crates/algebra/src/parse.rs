//! Text format for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `3/4*x` is fine but
//! `x/y` is not. The Unicode minus sign is accepted as `-`. A definitions
//! file is a sequence of `name = expr ;` entries where later entries may
//! refer to earlier ones.

use std::collections::HashMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::{QPoly, Vars};
use crate::ring::Q;

#[derive(Clone, Debug, Error, PartialEq)]
#[error("parse error at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

pub fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(i, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
        } else if ch.is_ascii_digit() {
            let mut j = i;
            while let Some(&(k, c)) = it.peek() {
                if c.is_ascii_digit() {
                    j = k + c.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Num(s[i..j].parse().unwrap())));
        } else if ch.is_alphabetic() || ch == '_' {
            let mut j = i;
            while let Some(&(k, c)) = it.peek() {
                if c.is_alphanumeric() || c == '_' {
                    j = k + c.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Ident(s[i..j].to_string())));
        } else {
            let op = match ch {
                '\u{2212}' => '-',
                '+' | '-' | '*' | '/' | '^' | '(' | ')' | '=' | ';' | '@' | ',' => ch,
                _ => return err(i, format!("unexpected character {ch:?}")),
            };
            out.push((i, Tok::Op(op)));
            it.next();
        }
    }
    Ok(out)
}

/// Abstract syntax, kept so callers can inspect identifiers before choosing
/// a variable list.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn identifiers(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(n, _) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.identifiers(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.identifiers(out);
                b.identifiers(out);
            }
        }
    }

    /// Evaluates over `vars`; names in `env` are replaced by their values.
    pub fn eval(&self, vars: &Vars, env: &HashMap<String, QPoly>) -> Result<QPoly, ParseError> {
        Ok(match self {
            Expr::Num(n) => QPoly::q_const(vars, Q::from_integer(n.clone())),
            Expr::Var(n, pos) => {
                if let Some(v) = env.get(n) {
                    v.with_vars(vars)
                } else if let Some(i) = vars.index(n) {
                    QPoly::q_var(vars, i)
                } else {
                    return err(*pos, format!("unknown identifier `{n}`"));
                }
            }
            Expr::Neg(a) => -a.eval(vars, env)?,
            Expr::Add(a, b) => a.eval(vars, env)? + b.eval(vars, env)?,
            Expr::Sub(a, b) => a.eval(vars, env)? - b.eval(vars, env)?,
            Expr::Mul(a, b) => a.eval(vars, env)? * b.eval(vars, env)?,
            Expr::Div(a, b, pos) => {
                let d = b.eval(vars, env)?;
                if !d.is_constant() || d.is_zero() {
                    return err(*pos, "division only by nonzero constants");
                }
                a.eval(vars, env)?.scale(&d.constant_term().recip())
            }
            Expr::Pow(a, e) => a.eval(vars, env)?.pow(*e),
        })
    }
}

pub struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    pub fn new(toks: &'a [(usize, Tok)], end: usize) -> Self {
        Parser { toks, pos: 0, end }
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    pub fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.1);
        self.pos += 1;
        t
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.offset(), format!("expected `{c}`"))
        }
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let at = self.offset();
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.offset();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError { pos: at, msg: "exponent too large".into() })?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => err(at, "expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.bump().cloned() {
            Some(Tok::Num(n)) => Ok(Expr::Num(n)),
            Some(Tok::Ident(s)) => Ok(Expr::Var(s, at)),
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Op(c)) => err(at, format!("unexpected `{c}`")),
            None => err(at, "unexpected end of input"),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser::new(&toks, s.len());
    let e = p.expr()?;
    if !p.at_end() {
        return err(p.offset(), "trailing input");
    }
    Ok(e)
}

/// Parses a polynomial over the given variables.
pub fn parse_polynomial(s: &str, vars: &Vars) -> Result<QPoly, ParseError> {
    parse_expr(s)?.eval(vars, &HashMap::new())
}

/// Parses `name = expr ;` definitions in order; returns all of them.
pub fn parse_definitions(s: &str, vars: &Vars) -> Result<Vec<(String, QPoly)>, ParseError> {
    let toks = tokenize(s)?;
    let mut p = Parser::new(&toks, s.len());
    let mut env: HashMap<String, QPoly> = HashMap::new();
    let mut out = Vec::new();
    while !p.at_end() {
        let at = p.offset();
        let name = match p.bump() {
            Some(Tok::Ident(n)) => n.clone(),
            _ => return err(at, "expected a definition name"),
        };
        p.expect('=')?;
        let e = p.expr()?;
        p.expect(';')?;
        let v = e.eval(vars, &env)?;
        env.insert(name.clone(), v.clone());
        out.push((name, v));
    }
    Ok(out)
}
