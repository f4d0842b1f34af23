//! Words in free groups and the word-input DSL.
//!
//! Syntax: a generator is a lowercase letter followed by digits or
//! underscores (`a`, `x1`, `x_10`); the same name starting with an uppercase
//! letter denotes its inverse. Products are written by juxtaposition or `*`,
//! powers as `^k`, `^-k` or `^{-k}`, parentheses group, `1` is the identity,
//! and `lhs = rhs` stands for `lhs * rhs^-1`.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct WordParseError {
    pub column: usize,
    pub message: String,
}

/// Freely reduced word: syllables `(generator, exponent)` with nonzero
/// exponents and distinct adjacent generators.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GroupWord {
    syllables: Vec<(String, i64)>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(name: &str) -> Self {
        GroupWord { syllables: vec![(name.to_string(), 1)] }
    }

    /// Builds from syllables, reducing freely.
    pub fn from_syllables(items: impl IntoIterator<Item = (String, i64)>) -> Self {
        let mut w = GroupWord::default();
        for (g, e) in items {
            w.push(&g, e);
        }
        w
    }

    /// Builds from letters `(generator, +1 | -1)`.
    pub fn from_letters<'a>(letters: impl IntoIterator<Item = (&'a str, i8)>) -> Self {
        Self::from_syllables(letters.into_iter().map(|(g, s)| (g.to_string(), s as i64)))
    }

    fn push(&mut self, g: &str, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push((g.to_string(), e));
    }

    pub fn syllables(&self) -> &[(String, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letters `(generator, +1 | -1)` in order.
    pub fn letters(&self) -> Vec<(&str, i8)> {
        let mut out = Vec::with_capacity(self.len());
        for (g, e) in &self.syllables {
            let s = if *e > 0 { 1 } else { -1 };
            for _ in 0..e.unsigned_abs() {
                out.push((g.as_str(), s));
            }
        }
        out
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for (g, e) in &other.syllables {
            w.push(g, *e);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { syllables: self.syllables.iter().rev().map(|(g, e)| (g.clone(), -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// Splits after the first `at` letters: `self = w1 * w2`.
    pub fn split_at(&self, at: usize) -> Option<(GroupWord, GroupWord)> {
        let letters = self.letters();
        if at > letters.len() {
            return None;
        }
        Some((GroupWord::from_letters(letters[..at].iter().copied()), GroupWord::from_letters(letters[at..].iter().copied())))
    }

    /// Cyclically reduced conjugate.
    pub fn cyclically_reduced(&self) -> GroupWord {
        let mut s = self.syllables.clone();
        loop {
            if s.len() < 2 {
                return GroupWord { syllables: s };
            }
            let n = s.len();
            if s[0].0 != s[n - 1].0 {
                return GroupWord { syllables: s };
            }
            let e = s[0].1 + s[n - 1].1;
            let g = s[0].0.clone();
            s.pop();
            s.remove(0);
            if e != 0 {
                s.insert(0, (g, e));
                return GroupWord { syllables: s };
            }
        }
    }

    pub fn exponent_sum(&self, g: &str) -> i64 {
        self.syllables.iter().filter(|(h, _)| h == g).map(|(_, e)| e).sum()
    }

    /// Generators in order of first appearance.
    pub fn generators(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for (g, _) in &self.syllables {
            if !out.contains(&g.as_str()) {
                out.push(g);
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<GroupWord, WordParseError> {
        let mut p = WordParser { chars: text.chars().collect(), pos: 0 };
        let lhs = p.product()?;
        p.skip_ws();
        let w = if p.eat('=') {
            let rhs = p.product()?;
            lhs.mul(&rhs.inverse())
        } else {
            lhs
        };
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.err("unexpected input"));
        }
        Ok(w)
    }
}

struct WordParser {
    chars: Vec<char>,
    pos: usize,
}

impl WordParser {
    fn err(&self, message: &str) -> WordParseError {
        WordParseError { column: self.pos + 1, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn product(&mut self) -> Result<GroupWord, WordParseError> {
        let mut w = GroupWord::identity();
        let mut any = false;
        loop {
            match self.peek() {
                Some('*') if any => {
                    self.pos += 1;
                    w = w.mul(&self.factor()?);
                }
                Some(c) if c.is_alphabetic() || c == '(' || c == '1' => {
                    w = w.mul(&self.factor()?);
                    any = true;
                }
                _ => break,
            }
        }
        if !any {
            return Err(self.err("expected a word"));
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<GroupWord, WordParseError> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.product()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                inner
            }
            Some('1') => {
                self.pos += 1;
                GroupWord::identity()
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '_') {
                    self.pos += 1;
                }
                let raw: String = self.chars[start..self.pos].iter().collect();
                let first = raw.chars().next().unwrap();
                let name: String = first.to_lowercase().chain(raw.chars().skip(1)).collect();
                let g = GroupWord::generator(&name);
                if first.is_uppercase() {
                    g.inverse()
                } else {
                    g
                }
            }
            _ => return Err(self.err("expected a generator, '(' or '1'")),
        };
        if self.eat('^') {
            let braced = self.eat('{');
            let e = self.integer()?;
            if braced && !self.eat('}') {
                return Err(self.err("expected '}'"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, WordParseError> {
        self.skip_ws();
        let neg = if self.peek() == Some('-') || self.peek() == Some('\u{2212}') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let v: i64 = digits.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|(g, e)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

impl Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GroupWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_braced_and_compact_relators() {
        let w = GroupWord::parse("b a^{-2} b a^{-1} b^2 a b^2 a^{-1}").unwrap();
        assert_eq!(w.to_string(), "b*a^-2*b*a^-1*b^2*a*b^2*a^-1");
        assert_eq!(w.len(), 11);
        let v = GroupWord::parse("ba^-2ba^-1b^2ab^2A").unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn equations_and_indexed_generators() {
        let w = GroupWord::parse("x1 x2 = x3").unwrap();
        assert_eq!(w.to_string(), "x1*x2*x3^-1");
        let w = GroupWord::parse("t^-1 x t = x^6").unwrap();
        assert_eq!(w.to_string(), "t^-1*x*t*x^-6");
        assert_eq!(GroupWord::parse("(x y z)^4").unwrap().len(), 12);
        assert!(GroupWord::parse("a + b").is_err());
        assert!(GroupWord::parse("").is_err());
    }

    #[test]
    fn free_reduction_and_split() {
        let w = GroupWord::parse("a b B A").unwrap();
        assert!(w.is_identity());
        let w = GroupWord::parse("a b^2 a^-1").unwrap();
        let (l, r) = w.split_at(2).unwrap();
        assert_eq!((l.to_string(), r.to_string()), ("a*b".to_string(), "b*a^-1".to_string()));
        assert_eq!(l.mul(&r), w);
        assert_eq!(w.cyclically_reduced().to_string(), "b^2");
        assert_eq!(w.exponent_sum("b"), 2);
    }
}
