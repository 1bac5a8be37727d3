//! Exact integer linear algebra: sparse matrices, Smith normal form and the
//! homology of finite chain complexes.

mod abelian;
mod complex;
mod matrix;
mod snf;

pub use abelian::FGAbelianGroup;
pub use complex::{
    cone, homology, homology_with, induced_map_on_homology, ChainComplex, ChainMap, Coefficients,
    HomologyMap, HomologyPresentation,
};
pub use matrix::{DenseMatrix, IntMatrix};
pub use snf::{elementary_divisors, smith_normal_form, Divisors, Snf};
