use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Rejections raised by the library. Every variant carries enough context to
/// reproduce the failing input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid simplicial set: {0}")]
    InvalidSimplicialSet(String),
    #[error("simplicial set is not reduced: it has {0} vertices")]
    NotReduced(usize),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("unknown simplex identifier `{0}`")]
    UnknownSimplex(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty relator at position {0}")]
    EmptyRelator(usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("boundary composite is nonzero in degree {0}")]
    NotAComplex(usize),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("not a chain map in degree {0}")]
    NotAChainMap(usize),
    #[error("coalgebra is not connected: degree 0 has rank {0}")]
    NotConnected(usize),
    #[error("coset table is incomplete: {0}")]
    IncompleteCosetTable(String),
    #[error("module action is invalid: {0}")]
    InvalidModule(String),
    #[error("algebra is not augmented: {0}")]
    NotAugmented(String),
    #[error("group is not finite or not enumerated: {0}")]
    InfiniteGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable snake-case tag for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSimplicialSet(_) => "invalid_simplicial_set",
            Error::NotReduced(_) => "not_reduced",
            Error::InvalidMap(_) => "invalid_map",
            Error::UnknownSimplex(_) => "unknown_simplex",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::EmptyRelator(_) => "empty_relator",
            Error::UnknownGenerator(_) => "unknown_generator",
            Error::NotAComplex(_) => "not_a_complex",
            Error::Shape(_) => "shape",
            Error::NotAChainMap(_) => "not_a_chain_map",
            Error::NotConnected(_) => "not_connected",
            Error::IncompleteCosetTable(_) => "incomplete_coset_table",
            Error::InvalidModule(_) => "invalid_module",
            Error::NotAugmented(_) => "not_augmented",
            Error::InfiniteGroup(_) => "infinite_group",
            Error::Parse(_) => "parse",
        }
    }
}
