//! Parser for the polynomial text format.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor (('*' | '/')? factor)*     ('/' needs a constant divisor)
//! factor := '-' factor | atom ('^' integer)?
//! atom   := integer | integer '.' digits | identifier | '(' expr ')'
//! ```

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::multi::{MultiPoly, Vars};
use super::ParseError;

type Q = MultiPoly<BigRational>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(column: usize, message: impl Into<String>) -> ParseError {
    ParseError { column, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let lit: String = chars[start..i].iter().collect();
            let q = crate::scalar::rational_from_decimal(&lit).ok_or_else(|| err(col, format!("bad number '{lit}'")))?;
            out.push((col, Tok::Num(q)));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(col, format!("unexpected character '{c}'"))),
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    vars: Vars,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Q, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Q, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let col = self.col();
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(err(col, "division is only allowed by a nonzero constant"));
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Q, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let col = self.col();
            match self.bump() {
                Some(Tok::Num(q)) if q.is_integer() && q >= BigRational::zero() => {
                    let e: u32 = q
                        .to_integer()
                        .try_into()
                        .map_err(|_| err(col, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(err(col, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Q, ParseError> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(q)) => Ok(MultiPoly::constant(q, self.vars.clone())),
            Some(Tok::Ident(name)) => MultiPoly::var(&name, self.vars.clone())
                .ok_or_else(|| err(col, format!("unknown variable '{name}'"))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.col();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(err(close, "expected ')'")),
                }
            }
            Some(t) => Err(err(col, format!("unexpected token {t:?}"))),
            None => Err(err(col, "unexpected end of input")),
        }
    }
}

/// Parses `text`. With `vars = None` the variables are taken in order of
/// first appearance.
pub(crate) fn parse_poly(text: &str, vars: Option<Vars>) -> Result<Q, ParseError> {
    let toks = tokenize(text)?;
    let vars = vars.unwrap_or_else(|| {
        let mut seen: Vec<String> = Vec::new();
        for (_, t) in &toks {
            if let Tok::Ident(name) = t {
                if !seen.contains(name) {
                    seen.push(name.clone());
                }
            }
        }
        Arc::new(seen)
    });
    if toks.is_empty() {
        return Err(err(1, "empty polynomial"));
    }
    let mut p = Parser { toks, pos: 0, vars, end_col: text.chars().count() + 1 };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(out)
}

/// Rational constant from the text format, e.g. `-3/4`.
pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let p = parse_poly(text, Some(Arc::new(Vec::new())))?;
    if p.is_zero() {
        return Ok(BigRational::zero());
    }
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_implicit_products_and_fractions() {
        let a = MultiPoly::parse("2 x^2 y - (x - 1)(x + 1) + 3/4", &["x", "y"]).unwrap();
        let b = MultiPoly::parse("2*x^2*y - x^2 + 7/4", &["x", "y"]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn auto_variables_follow_appearance() {
        let p = MultiPoly::parse_auto("r*x + y").unwrap();
        assert_eq!(p.vars().as_slice(), ["r", "x", "y"]);
    }

    #[test]
    fn reports_columns() {
        let e = MultiPoly::parse("x + $", &["x"]).unwrap_err();
        assert_eq!(e.column, 5);
        let e = MultiPoly::parse("x + z", &["x"]).unwrap_err();
        assert!(e.message.contains("unknown variable"));
        assert!(MultiPoly::parse("x / x", &["x"]).is_err());
        assert!(MultiPoly::parse("(x + 1", &["x"]).is_err());
    }

    #[test]
    fn rational_constants() {
        assert_eq!(parse_rational("-3/4").unwrap(), BigRational::new((-3).into(), 4.into()));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
    }
}
