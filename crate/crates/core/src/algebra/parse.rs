//! Text syntax for field elements and polynomials.
//!
//! A small expression language evaluated directly in the target field:
//! integers, named atoms (`u`, `X`, `Y` depending on context), `+ - * / ^`,
//! parentheses and implicit multiplication (`3X`, `2(u+1)`). Exponents are
//! non-negative integer literals.

use super::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character {c:?} in {src:?}"
            )));
        }
    }
    Ok(out)
}

struct Parser<'a, T> {
    tokens: Vec<Token>,
    pos: usize,
    atoms: &'a dyn Fn(&str) -> Option<T>,
    src: &'a str,
}

impl<T: Field> Parser<'_, T> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.src))
    }

    fn expr(&mut self) -> Result<T> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<T> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                let d = self.power()?;
                acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
            } else if matches!(
                self.peek(),
                Some(Token::Num(_) | Token::Ident(_) | Token::Op('('))
            ) {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<T> {
        let base = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u64 = n.parse().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<T> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                let ten = T::from_i64(10);
                Ok(n.bytes().fold(T::zero(), |acc, b| {
                    acc.mul(&ten).add(&T::from_i64((b - b'0') as i64))
                }))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                (self.atoms)(&name).ok_or_else(|| self.err(&format!("unknown symbol {name:?}")))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing ')'"));
                }
                Ok(v)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            _ => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Evaluate `src` in the field `T`, resolving identifiers through `atoms`.
pub fn parse_expr<T: Field>(src: &str, atoms: &dyn Fn(&str) -> Option<T>) -> Result<T> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        atoms,
        src,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parse a base-field element using the field's own named atoms.
pub fn parse_element<T: Field>(src: &str) -> Result<T> {
    parse_expr(src, &T::atom)
}

/// Split a comma-separated list, ignoring empty entries.
pub fn split_list(src: &str) -> Vec<&str> {
    src.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{f2u::F2u, rational::Rational};

    #[test]
    fn rationals() {
        let r: Rational = parse_element("-3/4 + 1/4").unwrap();
        assert_eq!(r, Rational::new(-1, 2));
        let r: Rational = parse_element("2^10/(3*4)").unwrap();
        assert_eq!(r, Rational::new(256, 3));
        let r: Rational = parse_element("123456789012345678901234567890").unwrap();
        assert_eq!(r.to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn errors() {
        assert!(parse_element::<Rational>("1/0").is_err());
        assert!(parse_element::<Rational>("u").is_err());
        assert!(parse_element::<Rational>("(1").is_err());
        assert!(parse_element::<Rational>("").is_err());
        assert!(parse_element::<Rational>("1 $").is_err());
    }

    #[test]
    fn implicit_multiplication() {
        let r: F2u = parse_element("u(u+1)").unwrap();
        assert_eq!(r.to_string(), "u^2+u");
    }
}
