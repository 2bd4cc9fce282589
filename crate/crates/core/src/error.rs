//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element index {index} out of range for poset of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("interval is empty: element {lower} is not below element {upper}")]
    EmptyInterval { lower: usize, upper: usize },

    #[error("product of an empty list of posets")]
    EmptyProduct,

    #[error("not a bounded lattice: {0}")]
    NotALattice(String),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("partitions live on different spectra ({0} vs {1} points)")]
    SpectrumMismatch(usize, usize),

    #[error("malformed algebra spec: {0}")]
    MalformedSpec(String),

    #[error("point guard exceeded: {requested} > {guard}")]
    GuardExceeded { requested: usize, guard: usize },

    #[error("no transversal complement: {0}")]
    NoTransversalComplement(String),

    #[error("witness poset needs at least two copies when some block size exceeds one")]
    NotEnoughCopies,

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not supported on the block-diagonal ambient")]
    NotInAmbient,

    #[error("spans live in different ambients")]
    AmbientMismatch,

    #[error("span is not commutative")]
    NotCommutative,

    #[error("not a *-homomorphism of the declared shape: {0}")]
    MalformedHom(String),

    #[error(
        "non-generic unitaries: dim(M_{first} ∩ M_{second}) = {found}, expected {expected}"
    )]
    NonGenericUnitaries {
        first: usize,
        second: usize,
        found: usize,
        expected: usize,
    },

    #[error("malformed poset JSON: {0}")]
    MalformedJson(String),
}

pub type Result<T> = std::result::Result<T, Error>;
