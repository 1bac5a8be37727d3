//! Builtin spaces.

use serde::Serialize;

use crate::cobar::pi1_presentation;
use crate::error::{Error, Result};
use crate::groups::{regular_module, todd_coxeter, GroupPresentation};
use crate::simplicial::{build_presentation_complex, point, ReducedSimplicialSet, StandardModel};
use crate::twisted::PiModule;

/// How a corpus space is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Point,
    Standard { model: String },
    Presentation { gens: Vec<String>, relators: Vec<String> },
}

/// Golden data attached to a corpus entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    /// Pretty-printed integral homology in degrees 0, 1, 2.
    pub homology: [&'static str; 3],
    /// Order of π₁ when finite.
    pub pi1_order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub recipe: Recipe,
    pub expected: Expected,
}

fn presentation(gens: &[&str], relators: &[&str]) -> Recipe {
    Recipe::Presentation {
        gens: gens.iter().map(|s| s.to_string()).collect(),
        relators: relators.iter().map(|s| s.to_string()).collect(),
    }
}

pub const BINARY_ICOSAHEDRAL_RELATORS: [&str; 2] = ["s t s t s^-1 s^-1 s^-1", "s t s t t^-1 t^-1 t^-1 t^-1 t^-1"];

/// `x^y x^-2` written out, for the cyclic pattern a → b → c → d → a.
pub const HIGMAN_RELATORS: [&str; 4] = [
    "b^-1 a b a^-1 a^-1",
    "c^-1 b c b^-1 b^-1",
    "d^-1 c d c^-1 c^-1",
    "a^-1 d a d^-1 d^-1",
];

pub fn entries() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "point",
            summary: "one vertex",
            recipe: Recipe::Point,
            expected: Expected { homology: ["ℤ", "0", "0"], pi1_order: Some(1) },
        },
        CorpusEntry {
            name: "delta1",
            summary: "circle as Δ¹/∂Δ¹",
            recipe: Recipe::Standard { model: "delta_quotient(1)".into() },
            expected: Expected { homology: ["ℤ", "ℤ", "0"], pi1_order: None },
        },
        CorpusEntry {
            name: "s2",
            summary: "2-sphere as Δ²/∂Δ²",
            recipe: Recipe::Standard { model: "delta_quotient(2)".into() },
            expected: Expected { homology: ["ℤ", "0", "ℤ"], pi1_order: Some(1) },
        },
        CorpusEntry {
            name: "rp2",
            summary: "presentation complex of ⟨a | a²⟩",
            recipe: presentation(&["a"], &["a a"]),
            expected: Expected { homology: ["ℤ", "ℤ/2", "0"], pi1_order: Some(2) },
        },
        CorpusEntry {
            name: "p3",
            summary: "presentation complex of ⟨a | a³⟩",
            recipe: presentation(&["a"], &["a a a"]),
            expected: Expected { homology: ["ℤ", "ℤ/3", "0"], pi1_order: Some(3) },
        },
        CorpusEntry {
            name: "torus",
            summary: "presentation complex of ⟨a, b | [a, b]⟩",
            recipe: presentation(&["a", "b"], &["a b a^-1 b^-1"]),
            expected: Expected { homology: ["ℤ", "ℤ²", "ℤ"], pi1_order: None },
        },
        CorpusEntry {
            name: "binary-icosahedral",
            summary: "presentation complex of ⟨s, t | (st)²s⁻³, (st)²t⁻⁵⟩, acyclic with π₁ of order 120",
            recipe: presentation(&["s", "t"], &BINARY_ICOSAHEDRAL_RELATORS),
            expected: Expected { homology: ["ℤ", "0", "0"], pi1_order: Some(120) },
        },
        CorpusEntry {
            name: "higman",
            summary: "presentation complex of Higman's group, infinite with no finite quotients; every check is inconclusive",
            recipe: presentation(&["a", "b", "c", "d"], &HIGMAN_RELATORS),
            expected: Expected { homology: ["ℤ", "0", "0"], pi1_order: None },
        },
    ]
}

pub fn names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

pub fn entry(name: &str) -> Result<CorpusEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown corpus space '{name}' (known: {})", names().join(", "))))
}

impl CorpusEntry {
    pub fn build(&self) -> Result<ReducedSimplicialSet> {
        match &self.recipe {
            Recipe::Point => Ok(point()),
            Recipe::Standard { model } => match model.as_str() {
                "delta_quotient(1)" => StandardModel::DeltaQuotient(1).build(),
                "delta_quotient(2)" => StandardModel::DeltaQuotient(2).build(),
                other => Err(Error::InvalidParameter(format!("unknown model {other}"))),
            },
            Recipe::Presentation { gens, relators } => {
                let g: Vec<&str> = gens.iter().map(String::as_str).collect();
                let r: Vec<&str> = relators.iter().map(String::as_str).collect();
                build_presentation_complex(&GroupPresentation::parse(&g, &r)?)
            }
        }
    }
}

/// Builds a corpus space by name.
pub fn space(name: &str) -> Result<ReducedSimplicialSet> {
    entry(name)?.build()
}

/// Largest edge count for which sign characters are searched exhaustively.
pub const CHARACTER_SEARCH_EDGES: usize = 8;

/// Modules used for checks over `x`: trivial of ranks 1 and 2, every
/// nontrivial sign character when the edge count is small, and the regular
/// module when Todd–Coxeter finishes within `budget`.
pub fn modules(x: &ReducedSimplicialSet, budget: usize) -> Result<Vec<(String, PiModule)>> {
    let g = pi1_presentation(x)?;
    let gens = g.generators().to_vec();
    let mut out = vec![
        ("trivial".to_string(), PiModule::trivial(gens.clone(), 1)),
        ("trivial2".to_string(), PiModule::trivial(gens.clone(), 2)),
    ];
    if gens.len() <= CHARACTER_SEARCH_EDGES {
        for mask in 1u32..(1 << gens.len()) {
            let signs: Vec<i64> = (0..gens.len()).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let m = PiModule::character(gens.clone(), &signs)?;
            if m.check_relators(&g).is_ok() {
                out.push((format!("sign{mask:b}"), m));
            }
        }
    }
    if let Some(t) = todd_coxeter(&g, budget)?.table() {
        out.push(("regular".to_string(), regular_module(t)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::chain_complex;

    #[test]
    fn every_entry_builds_with_expected_homology() {
        for e in entries() {
            let x = e.build().unwrap();
            assert!(x.validate().is_empty(), "{}", e.name);
            let h = chain_complex(&x).unwrap().homology_up_to(2);
            let got: Vec<String> = h.iter().map(|g| g.pretty()).collect();
            assert_eq!(got, e.expected.homology, "{}", e.name);
        }
    }

    #[test]
    fn sizes() {
        // (st)²t⁻⁵ freely reduces to s t s t⁻⁴
        assert_eq!(space("binary-icosahedral").unwrap().counts(), vec![1, 12, 12]);
        assert_eq!(space("higman").unwrap().counts(), vec![1, 20, 20]);
        assert!(space("klein").is_err());
    }

    #[test]
    fn module_lists() {
        let names = |s: &str| -> Vec<String> {
            modules(&space(s).unwrap(), 1000).unwrap().into_iter().map(|(n, _)| n).collect()
        };
        assert_eq!(names("rp2"), ["trivial", "trivial2", "sign1", "regular"]);
        assert_eq!(names("p3"), ["trivial", "trivial2", "regular"]);
        assert_eq!(names("torus").len(), 2 + 3);
        assert_eq!(names("higman"), ["trivial", "trivial2"]);
    }
}

