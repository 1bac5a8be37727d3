use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Self { gen, inv: false }
    }

    pub fn neg(gen: usize) -> Self {
        Self { gen, inv: true }
    }

    pub fn inverse(self) -> Self {
        Self { gen: self.gen, inv: !self.inv }
    }

    /// Column of this letter in a coset table: `2 * gen + inv`.
    pub fn column(self) -> usize {
        2 * self.gen + usize::from(self.inv)
    }
}

pub type Word = Vec<Letter>;

/// Cancels adjacent inverse pairs.
pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// Finitely presented group `⟨generators | relators⟩`; relators are freely
/// reduced and nonempty.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(relators.len());
        for (k, r) in relators.into_iter().enumerate() {
            if let Some(l) = r.iter().find(|l| l.gen >= generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{}", l.gen)));
            }
            let w = free_reduce(&r);
            if w.is_empty() {
                return Err(Error::EmptyRelator(k));
            }
            reduced.push(w);
        }
        Ok(Self { generators, relators: reduced })
    }

    /// Parses relators written as space-separated letters with `^-1` for
    /// inverses, e.g. `"a b a^-1 b^-1"`.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let generators: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let words = relators.iter().map(|r| parse_word(&generators, r)).collect::<Result<Vec<_>>>()?;
        Self::new(generators, words)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators.iter().position(|g| g == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn word(&self, s: &str) -> Result<Word> {
        parse_word(&self.generators, s)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        format_word(&self.generators, w)
    }
}

pub fn parse_word(generators: &[String], s: &str) -> Result<Word> {
    s.split_whitespace()
        .map(|tok| {
            let (name, inv) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let gen = generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            Ok(Letter { gen, inv })
        })
        .collect()
}

pub fn format_word(generators: &[String], w: &[Letter]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter()
        .map(|l| if l.inv { format!("{}^-1", generators[l.gen]) } else { generators[l.gen].clone() })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Debug for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    gens: Vec<String>,
    relators: Vec<String>,
}

impl Serialize for GroupPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PresentationJson {
            gens: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.format_word(r)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupPresentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PresentationJson::deserialize(d)?;
        let words = raw
            .relators
            .iter()
            .map(|r| parse_word(&raw.gens, r))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        GroupPresentation::new(raw.gens, words).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_cancels() {
        let w = vec![Letter::pos(0), Letter::neg(0)];
        assert!(free_reduce(&w).is_empty());
        let w = vec![Letter::pos(1), Letter::pos(0), Letter::neg(0), Letter::pos(1)];
        assert_eq!(free_reduce(&w), vec![Letter::pos(1), Letter::pos(1)]);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let p = GroupPresentation::parse(&["a", "b"], &["a b a^-1 b^-1"]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"gens":["a","b"],"relators":["a b a^-1 b^-1"]}"#);
        let back: GroupPresentation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn empty_relator_rejected() {
        assert_eq!(GroupPresentation::parse(&["a"], &["a a^-1"]).unwrap_err(), Error::EmptyRelator(0));
        assert!(matches!(GroupPresentation::parse(&["a"], &["b"]), Err(Error::UnknownGenerator(_))));
    }
}
