//! Exact cluster-algebra machinery: seeds and mutation, amalgamation, word seeds
//! of double Bruhat cells, Q-systems, factorization dynamics and the twist map on
//! `SL_n`, all over the rationals.

pub mod algebra;
pub mod cartan;
pub mod matrix;
pub mod groups;
pub mod qsystem;
pub mod sampling;
pub mod seeds;
pub mod suite;
