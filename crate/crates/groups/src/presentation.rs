//! Finite presentations, the text format, and the fixture corpus.
//!
//! Format: blank lines and `#` comments are ignored; the first statement is
//! `group <name> <gen,gen,...>` and each further statement is `rel <word>`
//! in the word DSL of [`GroupWord::parse`].

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rigidity_core::exact::{abelian_invariants, IntMatrix};
use rigidity_core::{GroupWord, ZMatrix};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("invalid generator name {0}")]
    BadGenerator(String),
    #[error("relator uses undeclared generator {0}")]
    UnknownGenerator(String),
    #[error("unknown fixture {0}")]
    UnknownFixture(String),
}

/// Generators and relators. Relators are freely and cyclically reduced and
/// nontrivial; generator names are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub name: String,
    generators: Vec<String>,
    relators: Vec<GroupWord>,
}

fn valid_name(g: &str) -> bool {
    let mut cs = g.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase()) && cs.all(|c| c.is_ascii_digit() || c == '_')
}

impl Presentation {
    pub fn new(
        name: &str,
        generators: Vec<String>,
        relators: impl IntoIterator<Item = GroupWord>,
    ) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !valid_name(g) {
                return Err(PresentationError::BadGenerator(g.clone()));
            }
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let mut rels = Vec::new();
        for r in relators {
            for g in r.generators() {
                if !seen.contains(g) {
                    return Err(PresentationError::UnknownGenerator(g.to_string()));
                }
            }
            let r = r.cyclically_reduced();
            if !r.is_identity() {
                rels.push(r);
            }
        }
        Ok(Presentation { name: name.to_string(), generators, relators: rels })
    }

    /// Builds from relator strings in the word DSL.
    pub fn from_strs(name: &str, generators: &[&str], relators: &[&str]) -> Result<Self, PresentationError> {
        let mut words = Vec::new();
        for (i, r) in relators.iter().enumerate() {
            let w = GroupWord::parse(r).map_err(|e| PresentationError::Parse {
                line: i + 1,
                column: e.column,
                message: e.message,
            })?;
            words.push(w);
        }
        Presentation::new(name, generators.iter().map(|s| s.to_string()).collect(), words)
    }

    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut header: Option<(String, Vec<String>)> = None;
        let mut rels = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap();
            let trimmed = line.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let indent = line.len() - trimmed.len();
            let err = |column: usize, message: &str| PresentationError::Parse {
                line: ln + 1,
                column,
                message: message.to_string(),
            };
            let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            let rest_col = indent + kw.len() + 2;
            match kw {
                "group" => {
                    if header.is_some() {
                        return Err(err(indent + 1, "second group header"));
                    }
                    let mut parts = rest.split_whitespace();
                    let name = parts.next().ok_or_else(|| err(rest_col, "expected a group name"))?;
                    let gens: Vec<String> = parts
                        .collect::<Vec<_>>()
                        .join("")
                        .split(',')
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect();
                    header = Some((name.to_string(), gens));
                }
                "rel" => {
                    let Some((_, gens)) = &header else {
                        return Err(err(indent + 1, "relator before group header"));
                    };
                    let w = GroupWord::parse(rest).map_err(|e| err(rest_col + e.column - 1, &e.message))?;
                    if let Some(g) = w.generators().into_iter().find(|g| !gens.iter().any(|h| h == g)) {
                        return Err(err(rest_col, &format!("undeclared generator {g}")));
                    }
                    rels.push(w);
                }
                _ => return Err(err(indent + 1, &format!("unknown statement {kw:?}"))),
            }
        }
        let (name, gens) = header.ok_or(PresentationError::Parse {
            line: 1,
            column: 1,
            message: "missing group header".into(),
        })?;
        Presentation::new(&name, gens, rels)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, g: &str) -> Option<usize> {
        self.generators.iter().position(|h| h == g)
    }

    /// Same generators with extra relators.
    pub fn with_relators(&self, name: &str, extra: impl IntoIterator<Item = GroupWord>) -> Self {
        Presentation::new(name, self.generators.clone(), self.relators.iter().cloned().chain(extra))
            .expect("extra relators must use existing generators")
    }

    /// Letters as column indices: generator `i` is column `2i`, its inverse `2i + 1`.
    pub fn word_columns(&self, w: &GroupWord) -> Vec<usize> {
        w.letters()
            .into_iter()
            .map(|(g, s)| {
                let i = self.generator_index(g).expect("word over the presentation's generators");
                2 * i + usize::from(s < 0)
            })
            .collect()
    }

    pub fn relator_columns(&self) -> Vec<Vec<usize>> {
        self.relators.iter().map(|r| self.word_columns(r)).collect()
    }

    pub fn exponent_vector(&self, w: &GroupWord) -> Vec<BigInt> {
        self.generators.iter().map(|g| BigInt::from(w.exponent_sum(g))).collect()
    }

    /// Rows are relators, columns generators.
    pub fn relation_matrix(&self) -> ZMatrix {
        let rows = self.relators.iter().map(|r| self.exponent_vector(r)).collect();
        IntMatrix::from_rows(rows, self.rank()).expect("rows have one entry per generator")
    }

    pub fn abelianization(&self) -> Vec<BigInt> {
        abelian_invariants(&self.relation_matrix())
    }

    /// Serializes in the text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("group {} {}\n", self.name, self.generators.join(","));
        for r in &self.relators {
            s.push_str(&format!("rel {}\n", dsl(r)));
        }
        s
    }
}

/// Space-separated DSL rendering (`a^-2 b`), which [`GroupWord::parse`] reads back.
pub fn dsl(w: &GroupWord) -> String {
    if w.is_identity() {
        return "1".into();
    }
    w.syllables()
        .iter()
        .map(|(g, e)| if *e == 1 { g.clone() } else { format!("{g}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(dsl).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

const FIGURE8: &str = include_str!("../../../fixtures/figure8.pres");
const GAMMA4: &str = include_str!("../../../fixtures/gamma4.pres");
const GAMMA_EMPTY: &str = include_str!("../../../fixtures/gamma-empty.pres");
const B1: &str = include_str!("../../../fixtures/b1.pres");
const B2: &str = include_str!("../../../fixtures/b2.pres");
const FREE2: &str = include_str!("../../../fixtures/free2.pres");
const SURFACE2: &str = include_str!("../../../fixtures/surface2.pres");

/// Static fixture files by name.
pub const FIXTURE_FILES: [(&str, &str); 7] = [
    ("figure8", FIGURE8),
    ("gamma4", GAMMA4),
    ("gamma-empty", GAMMA_EMPTY),
    ("b1", B1),
    ("b2", B2),
    ("free2", FREE2),
    ("surface2", SURFACE2),
];

pub fn figure_eight() -> Presentation {
    Presentation::parse(FIGURE8).expect("fixture parses")
}

/// Figure-eight group with `a^n` added.
pub fn delta(n: u32) -> Presentation {
    let a = GroupWord::generator("a").pow(n as i64);
    figure_eight().with_relators(&format!("delta{n}"), [a])
}

/// Cyclically presented Fibonacci group F(2, m): `x_i x_{i+1} x_{i+2}^-1`, indices mod m.
pub fn fibonacci(m: usize) -> Presentation {
    assert!(m >= 1);
    let gens: Vec<String> = (1..=m).map(|i| format!("x{i}")).collect();
    let rels = (0..m).map(|i| {
        GroupWord::from_letters([(gens[i].as_str(), 1), (gens[(i + 1) % m].as_str(), 1), (gens[(i + 2) % m].as_str(), -1)])
    });
    Presentation::new(&format!("fib{m}"), gens.clone(), rels).expect("well-formed")
}

pub fn free(rank: usize) -> Presentation {
    let gens: Vec<String> = if rank <= 4 {
        ["a", "b", "c", "d"][..rank].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    };
    Presentation::new(&format!("free{rank}"), gens, []).expect("well-formed")
}

/// Resolves a fixture name: the static files plus `delta<n>` and `fib<m>`.
pub fn fixture(name: &str) -> Result<Presentation, PresentationError> {
    if let Some((_, text)) = FIXTURE_FILES.iter().find(|(n, _)| *n == name) {
        return Ok(Presentation::parse(text).expect("fixture parses"));
    }
    let param = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<u32>().ok()).filter(|&n| n >= 1);
    if let Some(n) = param("delta") {
        return Ok(delta(n));
    }
    if let Some(m) = param("fib") {
        return Ok(fibonacci(m as usize));
    }
    if let Some(r) = param("free") {
        return Ok(free(r as usize));
    }
    Err(PresentationError::UnknownFixture(name.to_string()))
}

pub fn fixture_names() -> Vec<String> {
    let mut v: Vec<String> = FIXTURE_FILES.iter().map(|(n, _)| n.to_string()).collect();
    v.extend(["delta<n>", "fib<m>", "free<r>"].map(String::from));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn text_round_trip() {
        for (name, _) in FIXTURE_FILES {
            let p = fixture(name).unwrap();
            assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = Presentation::parse("group g a,b\nrel a b c\n").unwrap_err();
        assert!(matches!(e, PresentationError::Parse { line: 2, .. }), "{e}");
        let e = Presentation::parse("group g a\nrel a ^ x\n").unwrap_err();
        assert!(matches!(e, PresentationError::Parse { line: 2, .. }));
        assert!(Presentation::parse("rel a\n").is_err());
        assert_eq!(Presentation::parse("group g a,a\n").unwrap_err(), PresentationError::DuplicateGenerator("a".into()));
    }

    #[test]
    fn abelianizations() {
        assert_eq!(fixture("gamma4").unwrap().abelianization(), ints(&[3, 15]));
        assert_eq!(fibonacci(8).abelianization(), ints(&[3, 15]));
        assert_eq!(delta(4).abelianization(), ints(&[4]));
        assert_eq!(figure_eight().abelianization(), ints(&[0]));
        assert_eq!(free(2).abelianization(), ints(&[0, 0]));
        assert_eq!(fixture("surface2").unwrap().abelianization(), ints(&[0, 0, 0, 0]));
    }

    #[test]
    fn relators_are_cyclically_reduced() {
        let p = Presentation::from_strs("g", &["a", "b"], &["b a b^-1", "a A"]).unwrap();
        assert_eq!(p.relators().len(), 1);
        assert_eq!(dsl(&p.relators()[0]), "a");
    }
}
