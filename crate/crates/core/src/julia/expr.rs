//! Polynomial expressions in `z` such as `z^2 - 1`, `0.25*z^3 + (1/2+i)z`.
//! Decimals are read exactly.

use crate::error::{Error, Result};
use crate::poly::{parse_rational, GaussianRational, Poly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Z,
    I,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' | '.' => {
                let mut num = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() || d == '.' {
                        num.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(num));
            }
            _ => {
                chars.next();
                out.push(match c {
                    'z' | 'Z' => Tok::Z,
                    'i' | 'I' => Tok::I,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => return Err(Error::Parse(format!("unexpected `{c}` in map expression"))),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = &acc + &self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = &acc * &self.factor()?;
            } else if self.eat(&Tok::Slash) {
                let d = self.factor()?;
                let c = (d.degree() == 0 && !d.is_zero())
                    .then(|| d.leading())
                    .and_then(|c| c.inv())
                    .ok_or_else(|| Error::Parse("division only by nonzero constants".into()))?;
                acc = acc.scale(&c);
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Z | Tok::I | Tok::LParen)) {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        if self.eat(&Tok::Minus) {
            return Ok(-&self.factor()?);
        }
        if self.eat(&Tok::Plus) {
            return self.factor();
        }
        let base = self.primary()?;
        if self.eat(&Tok::Caret) {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| Error::Parse(format!("bad exponent `{n}`")))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::Parse("exponent must be a non-negative integer".into())),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(n)) => Ok(Poly::constant(GaussianRational::real(parse_rational(&n)?))),
            Some(Tok::Z) => Ok(Poly::z()),
            Some(Tok::I) => Ok(Poly::constant(GaussianRational::i())),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected {t:?} in map expression"))),
            None => Err(Error::Parse("map expression ends early".into())),
        }
    }
}

pub fn parse_map(s: &str) -> Result<Poly> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in map expression `{s}`")));
    }
    Ok(e)
}
