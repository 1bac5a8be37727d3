//! Finitely presented groups: abelianization, coset enumeration, regular
//! modules and word evaluation.

mod presentation;
mod ring;
mod todd_coxeter;

use num_bigint::BigInt;

pub use presentation::{format_word, free_reduce, invert, parse_word, GroupPresentation, Letter, Word};
pub use ring::{FiniteGroup, GroupRing, GroupRingElement, Tensor2};
pub use todd_coxeter::{todd_coxeter, CosetTable, Enumeration};

use crate::error::{Error, Result};
use crate::linalg::{elementary_divisors, FGAbelianGroup, IntMatrix};
use crate::twisted::PiModule;

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &GroupPresentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.relators().len(), p.generators().len());
    for (i, r) in p.relators().iter().enumerate() {
        for l in r {
            m.add_to(i, l.gen, &BigInt::from(if l.inv { -1 } else { 1 }));
        }
    }
    m
}

pub fn abelianization(p: &GroupPresentation) -> FGAbelianGroup {
    let d = elementary_divisors(&relation_matrix(p));
    FGAbelianGroup::from_cyclic_orders(p.generators().len() - d.rank, d.torsion())
}

/// Result of [`word_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    Word(Word),
    Coset(usize),
}

/// Free reduction, or evaluation to a coset index when a table is given.
/// Coset `0` is the identity of the enumerated quotient.
pub fn word_reduce(p: &GroupPresentation, word: &str, table: Option<&CosetTable>) -> Result<Reduced> {
    let w = p.word(word)?;
    Ok(match table {
        None => Reduced::Word(free_reduce(&w)),
        Some(t) => Reduced::Coset(t.trace(0, &w)),
    })
}

/// Regular representation `Z[G]` from a complete table over the trivial
/// subgroup. Generator `g` acts on the left by `e_c ↦ e_{c·g⁻¹}`, i.e. the
/// matrix has a `1` at `(c, c·g)`.
pub fn regular_module(table: &CosetTable) -> Result<PiModule> {
    let n = table.len();
    let mut action = Vec::with_capacity(table.generators.len());
    for perm in &table.action {
        if perm.len() != n {
            return Err(Error::IncompleteCosetTable("ragged permutation".into()));
        }
        let m = IntMatrix::from_triples(n, n, perm.iter().enumerate().map(|(c, &d)| (c, d, 1)))?;
        action.push(m);
    }
    PiModule::from_matrices(table.generators.clone(), n, action)
}
