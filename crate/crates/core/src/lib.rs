//! Exact chain-level algebraic topology on finite reduced simplicial sets:
//! normalized chains, cobar and bar constructions, twisted tensor products,
//! π₁ from degree-zero cobar homology, and certificates that a map is not a
//! weak homotopy equivalence.

pub mod bar;
pub mod coalgebra;
pub mod cobar;
pub mod corpus;
pub mod detect;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod simplicial;
pub mod twisted;

pub use coalgebra::DgCoalgebra;
pub use cobar::Cobar;
pub use detect::{DetectConfig, Verdict, Witness};
pub use error::{Error, Result};
pub use groups::{CosetTable, GroupPresentation};
pub use linalg::{ChainComplex, ChainMap, FGAbelianGroup, IntMatrix};
pub use simplicial::{ReducedSimplicialSet, SimplicialMap, SimplicialSetData};
pub use twisted::PiModule;

/// Sign conventions in machine-readable form.
pub const CONVENTIONS: &str = include_str!("../conventions.json");
