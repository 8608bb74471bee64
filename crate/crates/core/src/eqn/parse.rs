//! Text grammar for Lie terms:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := scalar '*' term | '-' term | atom | '0'
//! atom   := gen | var | '[' expr (',' expr)+ ']' | '(' expr ')'
//! scalar := ['-'] digits ['/' digits]
//! ```
//!
//! Generators are `a`, `b`, `c`, `a1`, `a2`, ...; every other identifier is a
//! variable. `[x, y, z]` is the left-normed product `[[x, y], z]`.

use crate::error::{Error, Result};
use crate::hall::Generator;
use crate::lie::FreeLie;
use crate::scalar::Scalar;

use super::LieTerm;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|c| c.1).collect())));
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i].1 == '/' && chars[i + 1].1.is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
            }
            out.push((pos, Tok::Number(chars[start..i].iter().map(|c| c.1).collect())));
        } else if "[],+-*()".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(Error::parse(pos, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    lie: &'a FreeLie,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.offset(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<LieTerm> {
        let mut parts = vec![self.term()?];
        loop {
            if self.eat('+') {
                parts.push(self.term()?);
            } else if self.eat('-') {
                let t = self.term()?;
                parts.push(LieTerm::scale(Scalar::from_int(self.lie.field(), -1), t));
            } else {
                break;
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            LieTerm::Sum(parts)
        })
    }

    fn term(&mut self) -> Result<LieTerm> {
        let field = self.lie.field();
        if self.eat('-') {
            if let Some(Tok::Number(n)) = self.peek().cloned() {
                let at = self.offset();
                self.pos += 1;
                let c = -Scalar::parse(field, &n).map_err(|_| Error::parse(at, "bad scalar"))?;
                return self.after_scalar(c, at);
            }
            let t = self.term()?;
            return Ok(LieTerm::scale(Scalar::from_int(field, -1), t));
        }
        if let Some(Tok::Number(n)) = self.peek().cloned() {
            let at = self.offset();
            self.pos += 1;
            let c = Scalar::parse(field, &n).map_err(|_| Error::parse(at, "bad scalar"))?;
            return self.after_scalar(c, at);
        }
        self.atom()
    }

    fn after_scalar(&mut self, c: Scalar, at: usize) -> Result<LieTerm> {
        if self.eat('*') {
            let t = self.term()?;
            return Ok(LieTerm::scale(c, t));
        }
        if c.is_zero() {
            return Ok(LieTerm::Const(self.lie.zero()));
        }
        Err(Error::parse(at, "a nonzero scalar must multiply an element"))
    }

    fn atom(&mut self) -> Result<LieTerm> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match Generator::from_name(&name) {
                    Some(g) => self
                        .lie
                        .generator(g)
                        .map(LieTerm::Const)
                        .map_err(|e| Error::parse(at, e.to_string())),
                    None => Ok(LieTerm::Var(name)),
                }
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let mut acc = self.expr()?;
                self.expect(',')?;
                acc = LieTerm::bracket(acc, self.expr()?);
                while self.eat(',') {
                    acc = LieTerm::bracket(acc, self.expr()?);
                }
                self.expect(']')?;
                Ok(acc)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(t) => Err(Error::parse(at, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

/// Parses a term; generator constants are built in `lie`.
pub fn parse_term(lie: &FreeLie, text: &str) -> Result<LieTerm> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        lie,
        toks,
        pos: 0,
        end: text.len(),
    };
    let t = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.offset(), "trailing input"));
    }
    Ok(t)
}

/// Parses a variable-free term and evaluates it.
pub fn parse_element(lie: &FreeLie, text: &str) -> Result<crate::lie::LieElement> {
    let t = parse_term(lie, text)?;
    if let Some(v) = t.variables().first() {
        return Err(Error::UnboundVariable(v.clone()));
    }
    super::evaluate(lie, &t, &Default::default())
}
