//! Text format: `16*s1^2*s2^2*s4 - 32*s1*s2*s3*s4^2 + 3/2*x - 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::MultiPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at byte {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected {found} at byte {pos}, expected {expected}")]
    Unexpected { found: String, expected: &'static str, pos: usize },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("division by a non-constant or zero at byte {0}")]
    BadDivision(usize),
    #[error("exponent at byte {0} is not a small nonnegative integer")]
    BadExponent(usize),
}

pub(super) fn print(p: &MultiPoly) -> String {
    let terms = p.terms_graded_desc();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let factors: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, &x)| if x == 1 { p.vars[i].clone() } else { format!("{}^{}", p.vars[i], x) })
            .collect();
        let coeff = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
        if factors.is_empty() {
            out.push_str(&coeff);
        } else {
            if !a.is_one() {
                out.push_str(&coeff);
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(bytes[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError::UnexpectedChar { ch: c, pos: i });
        }
    }
    out.push((Tok::End, bytes.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: Vec<String>,
    /// Variables are collected on the fly when no list was given.
    fixed: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        self.at += 1;
        t
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected { found: format!("{:?}", self.peek()), expected, pos: self.pos() }
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                -&self.term()?
            }
            Tok::Sym('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Sym('/') => {
                    let pos = self.pos();
                    self.bump();
                    let d = self.factor()?;
                    let c = d.constant_term();
                    if !d.is_constant() || c.is_zero() {
                        return Err(ParseError::BadDivision(pos));
                    }
                    acc = acc.scale(&(BigRational::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == &Tok::Sym('^') {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Tok::Num(n) => {
                    let k: u32 = n.try_into().map_err(|_| ParseError::BadExponent(pos))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(ParseError::BadExponent(pos)),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(MultiPoly::constant(&self.vars, BigRational::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.bump();
                if !self.vars.contains(&name) {
                    if self.fixed {
                        return Err(ParseError::UnknownVariable(name));
                    }
                    self.vars.push(name.clone());
                }
                Ok(MultiPoly::var(&self.vars, &name))
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.bump() != Tok::Sym(')') {
                    self.at -= 1;
                    return Err(self.unexpected("')'"));
                }
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or '('")),
        }
    }
}

pub(super) fn parse(src: &str, vars: Option<&[String]>) -> Result<MultiPoly, ParseError> {
    let mut parser = Parser { toks: lex(src)?, at: 0, vars: vars.map(|v| v.to_vec()).unwrap_or_default(), fixed: vars.is_some() };
    let p = parser.expr()?;
    if parser.peek() != &Tok::End {
        return Err(parser.unexpected("end of input"));
    }
    Ok(p.in_vars(&parser.vars).expect("parsed variables are known"))
}
