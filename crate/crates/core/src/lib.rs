//! Exact dimension computations for cyclotomic quiver Hecke (KLR) algebras.
//!
//! Given a symmetrizable generalized Cartan matrix, a dominant weight and
//! index tuples, the library computes graded and ungraded dimensions of the
//! idempotent truncations `e(nu) R^Lambda(beta) e(nu')`, decides when an
//! idempotent vanishes, checks level-reduction identities and enumerates
//! monomial basis index sets. Every closed formula is also computed by an
//! independent recursion so the two can be compared.

pub mod basis;
pub mod cartan;
pub mod cli;
pub mod dims;
pub mod error;
pub mod idempotents;
pub mod levelred;
pub mod perms;
pub mod qpoly;
pub mod verify;

pub use basis::{
    basis_121_counts, basis_index_set, basis_tilde_tilde, graded_dim_tilde, n_weight, n_weight_transform_check,
    n_weights, BasisIndexSet, TildeData,
};
pub use cartan::{builtin_cartan, validate_cartan, CartanData, CartanType, HalfInt, IndexTuple, RootElement, Weight};
pub use dims::{nilhecke_dim, nilhecke_graded_dim, psi_degree, DimContext, DimQuery};
pub use error::{Error, Result};
pub use idempotents::{
    nonzero_by_shuffle, nonzero_direct, nonzero_divided, nonzero_tilde, Method, NonzeroVerdict, Witness,
};
pub use levelred::{
    reduce_algebra_dim, reduce_block_dim, reduce_pair_dim, reduce_pair_dim_multi, LevelReducer, LevelSplit,
};
pub use perms::{BlockStructure, Permutation, ShuffleSplit};
pub use qpoly::{quantum_binomial, quantum_factorial, quantum_int, LaurentPoly};
pub use verify::{random_cartan, verify_suites, Battery, Suite, VerifyReport};
