//! Textual polynomial syntax for the CLI and descriptor files.
//!
//! Grammar (documented in the repo README):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*      -- '/' only by a nonzero constant
//! factor := atom ['^' nat]
//! atom   := rational | 't' | 'X' | 'Y' | '(' expr ')'
//! rational := nat ['/' nat]
//! ```
//!
//! Anything outside this grammar is rejected with a column position.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use super::{Int, MPoly, Poly, Rat};
use crate::error::Error;

const VARS: [&str; 3] = ["t", "X", "Y"];

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Int),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<Tok, Error> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b't' => Tok::Var(0),
            b'X' => Tok::Var(1),
            b'Y' => Tok::Var(2),
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: Int = text.parse().map_err(|_| self.err("bad integer"))?;
                return Ok(Tok::Num(n));
            }
            _ => return Err(self.err("unexpected character")),
        };
        self.pos += 1;
        Ok(tok)
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    look: Tok,
    look_pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, Error> {
        let mut lex = Lexer::new(src);
        lex.skip_ws();
        let look_pos = lex.pos;
        let look = lex.next()?;
        Ok(Parser {
            lex,
            look,
            look_pos,
        })
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.look_pos + 1,
            msg: msg.to_string(),
        }
    }

    fn advance(&mut self) -> Result<Tok, Error> {
        self.lex.skip_ws();
        self.look_pos = self.lex.pos;
        let next = self.lex.next()?;
        Ok(core::mem::replace(&mut self.look, next))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), Error> {
        if self.look == tok {
            self.advance()?;
            Ok(())
        } else {
            Err(self.err(what))
        }
    }

    fn expr(&mut self) -> Result<MPoly, Error> {
        let mut negate = false;
        if self.look == Tok::Minus {
            self.advance()?;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.look {
                Tok::Plus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.add(&t)?;
                }
                Tok::Minus => {
                    self.advance()?;
                    let t = self.term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.look {
                Tok::Star => {
                    self.advance()?;
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                Tok::Slash => {
                    self.advance()?;
                    let f = self.factor()?;
                    let c = match constant_of(&f) {
                        Some(c) if !c.is_zero() => c,
                        Some(_) => return Err(self.err("division by zero")),
                        None => {
                            return Err(self.err("'/' only divides by a constant"));
                        }
                    };
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly, Error> {
        let base = self.atom()?;
        if self.look == Tok::Caret {
            self.advance()?;
            match self.advance()? {
                Tok::Num(n) => {
                    let e: u32 = n
                        .to_string()
                        .parse()
                        .map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, Error> {
        match self.advance()? {
            Tok::Num(n) => Ok(MPoly::constant(&VARS, Rat::from_integer(n))),
            Tok::Var(i) => Ok(MPoly::var(&VARS, i)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "expected ')'")?;
                Ok(inner)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

fn constant_of(m: &MPoly) -> Option<Rat> {
    if m.is_zero() {
        return Some(Rat::zero());
    }
    let mut it = m.terms();
    let (e, c) = it.next()?;
    if it.next().is_some() || e.iter().any(|&x| x != 0) {
        return None;
    }
    Some(c.clone())
}

/// Parse a polynomial in the variables t, X, Y.
pub fn parse_mpoly(src: &str) -> Result<MPoly, Error> {
    let mut p = Parser::new(src)?;
    let out = p.expr()?;
    if p.look != Tok::End {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parse a univariate polynomial in t; rejects X and Y.
pub fn parse_poly(src: &str) -> Result<Poly, Error> {
    let m = parse_mpoly(src)?;
    let mut coeffs: Vec<Rat> = Vec::new();
    for (e, c) in m.terms() {
        if e[1] != 0 || e[2] != 0 {
            return Err(Error::Parse {
                pos: 1,
                msg: String::from("expected a polynomial in t only"),
            });
        }
        let d = e[0] as usize;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, Rat::zero());
        }
        coeffs[d] = c.clone();
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Parse a rational constant.
pub fn parse_rat(src: &str) -> Result<Rat, Error> {
    let m = parse_mpoly(src)?;
    constant_of(&m).ok_or(Error::Parse {
        pos: 1,
        msg: String::from("expected a rational constant"),
    })
}
