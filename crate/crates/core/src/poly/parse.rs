//! Text syntax for polynomials: `+ - * / ^`, parentheses, integer and
//! rational literals, indexed variables such as `x3` or `y2`, and `sqrt5`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Coefficient, Polynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            d if d.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().map_err(|_| Error::Parse { pos: start, msg: "bad integer".into() })?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            other => return Err(Error::Parse { pos: start, msg: format!("unexpected character `{other}`") }),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    nvars: usize,
    resolve: &'a dyn Fn(&str) -> Option<usize>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.try_mul(&rhs)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let rhs = self.unary()?;
                    if rhs.degree() > 0 || rhs.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "division only by nonzero constants".into() });
                    }
                    let c = rhs.coefficient(&vec![0; self.nvars]).inverse()?;
                    acc = acc.scale(&c);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse { pos: self.here(), msg: "exponent too large".into() })?;
                    return base.try_pow(e);
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.nvars, Coefficient::rational(BigRational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "sqrt5" {
                    return Ok(Polynomial::constant(self.nvars, Coefficient::sqrt5()));
                }
                match (self.resolve)(&name) {
                    Some(i) if i < self.nvars => Ok(Polynomial::var(self.nvars, i)),
                    _ => {
                        self.pos -= 1;
                        self.err(format!("unknown variable `{name}`"))
                    }
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

/// Parses with a caller-supplied variable resolver into `nvars` variables.
pub fn parse_with(text: &str, nvars: usize, resolve: &dyn Fn(&str) -> Option<usize>) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), nvars, resolve };
    if p.toks.is_empty() {
        return p.err("empty polynomial");
    }
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

fn indexed_name(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    rest.parse::<usize>().ok().map(|i| i - 1)
}

/// Parses a polynomial in `{prefix}1..{prefix}n` with `n` fixed.
pub fn parse_in(text: &str, prefix: &str, nvars: usize) -> Result<Polynomial> {
    parse_with(text, nvars, &|name| indexed_name(name, prefix))
}

/// Parses a polynomial in `{prefix}1, {prefix}2, ...`, sizing the variable
/// space by the largest index that occurs (at least `min_vars`).
pub fn parse_indexed(text: &str, prefix: &str, min_vars: usize) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut n = min_vars;
    for (pos, t) in &toks {
        if let Tok::Ident(name) = t {
            if name == "sqrt5" {
                continue;
            }
            match indexed_name(name, prefix) {
                Some(i) => n = n.max(i + 1),
                None => return Err(Error::Parse { pos: *pos, msg: format!("unknown variable `{name}`") }),
            }
        }
    }
    parse_in(text, prefix, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips_canonical_text() {
        let p = parse_indexed("x1^2 + 2*x1*x2 + x2^2", "x", 0).unwrap();
        assert_eq!(p.nvars(), 2);
        assert_eq!(p.to_string(), "x1^2 + 2*x1*x2 + x2^2");
        let q = parse_in(&p.to_string(), "x", 2).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rationals_and_sqrt5() {
        let p = parse_indexed("1/6*(y1 - 3) + sqrt5*y2/2", "y", 0).unwrap();
        assert!((p.eval(&[3.0, 2.0]).unwrap() - 5f64.sqrt()).abs() < 1e-12);
        let q = parse_indexed("-(x1)^3 - -2", "x", 3).unwrap();
        assert_eq!(q.nvars(), 3);
        assert_eq!(q.eval(&[2.0, 0.0, 0.0]).unwrap(), -6.0);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_indexed("x1 + z2", "x", 0), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_indexed("x1 +", "x", 0), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_indexed("(x1", "x", 0), Err(Error::Parse { .. })));
        assert!(matches!(parse_indexed("x1/x2", "x", 0), Err(Error::Parse { .. })));
        assert!(matches!(parse_indexed("x0", "x", 0), Err(Error::Parse { .. })));
        assert!(matches!(parse_indexed("", "x", 0), Err(Error::Parse { .. })));
    }
}
