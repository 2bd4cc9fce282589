//! Finite poset models of commutative-subalgebra posets of block-diagonal
//! matrix algebras, and the reconstruction of the block-size signature
//! `(n_1, ..., n_k)` from the abstract order alone.
//!
//! The crate has three layers:
//!
//! * order theory — [`poset::FinitePoset`] with meets, joins, intervals,
//!   products, rank functions, and isomorphism testing, plus
//!   [`lattice::BoundedLattice`] with complements and direct-product
//!   factorization;
//! * combinatorics — set [`partition::Partition`]s as subalgebras of a
//!   diagonal algebra (finer partition = larger subalgebra), the partition
//!   lattices they form, and finite [`witness`] truncations of the full
//!   subalgebra poset of a noncommutative algebra;
//! * ground truth — an exact-rational matrix [`oracle`] that realizes the
//!   same posets from explicit spans, commutants, and unitaries.
//!
//! [`reconstruct::reconstruct`] ties them together: from a witness poset it
//! recovers the signature via the center (the meet of the maximal elements),
//! the rank function, and the indecomposable factors of the interval above
//! the center.

// Poset elements and matrix coordinates are plain indices throughout; index
// loops are the native idiom here.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod io;
pub mod iso;
pub mod lattice;
pub mod oracle;
pub mod partition;
pub mod poset;
pub mod reconstruct;
pub mod util;
pub mod witness;

pub use error::{Error, Result};
pub use io::{poset_from_json, poset_to_dot, poset_to_json, PosetJson};
pub use lattice::{BoundedLattice, Factorization};
pub use partition::{
    assemble_blocks, central_partition, enumerate_partitions, interval_above_center, is_central,
    join_partitions, meet_partitions, partition_lattice, partition_lattice_with_guard,
    restrict_blocks, subalgebra_leq, transversal_complements, AlgebraSpec, Partition,
    DEFAULT_POINT_GUARD,
};
pub use poset::{FinitePoset, RankFunction};
pub use reconstruct::{reconstruct, specs_up_to, FailureStage, ReconstructionReport};
pub use witness::{witness_poset, witness_poset_with_guard, WitnessElement, WitnessPoset};
