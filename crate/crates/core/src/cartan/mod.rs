//! Cartan matrices, weights and Weyl words, double reduced words and their seeds,
//! the seed `Σ_C`, and the twist matrices N, M, M′.

mod sigma;
mod twist;
mod types;
mod weyl;
mod word;

use thiserror::Error;

use crate::seeds::SeedError;

pub use sigma::{build_sigma_c, check_coxeter_amalgamation, coxeter_amalgamation, AmalgamationCheck, SigmaC};
pub use twist::{
    check_twist_matrices, m_prime, satisfies_change_of_coefficients, twist_matrix_m, twist_matrix_n, LabeledMatrix,
    TwistMatrixCheck,
};
pub use types::{catalog, catalog_str, CartanData, Family, FiniteType, TypeTag};
pub use weyl::{
    check_coxeter_identity, coxeter_identity_failures, enumerate_elements, reflect, WeightKind, WeightVector, WeylWord,
};
pub use word::{block_form, build_b_mod, build_word_seed, check_block_form, DoubleReducedWord};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CartanError {
    #[error("unknown type tag `{0}`")]
    UnknownType(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid Cartan data: {0}")]
    Invalid(String),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: i64, rank: usize },
    #[error("invalid double reduced word: {0}")]
    InvalidWord(String),
    #[error("the Cartan matrix is singular; this construction needs finite type")]
    Singular,
    #[error("non-integral matrix: {0}")]
    NonIntegral(String),
    #[error(transparent)]
    Seed(#[from] SeedError),
}
