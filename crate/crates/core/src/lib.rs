//! Phase-space U(1)⊗SU(3) algebra, extended Dirac matrices and coloured
//! Hamiltonians, with a small Pauli tensor-string expression language.
//!
//! - [`phase_space`]: the 6×6 generator algebra on `(p, x)`, its exponentials
//!   and the canonical pairings.
//! - [`clifford`]: the 8×8 matrices `A_k`, `B_k`, `B`, charge conjugation and `γ5`.
//! - [`hamiltonian`]: coloured, antiparticle and composite Hamiltonians, their
//!   rotations, conjugation and spectra.
//! - [`pauli_expr`]: parse, canonicalize and multiply Pauli tensor expressions.
//! - [`verify`]: seeded verification suites producing JSON reports.

#![allow(clippy::needless_range_loop)]

pub mod clifford;
pub mod error;
pub mod export;
pub mod hamiltonian;
pub mod pauli_expr;
pub mod phase_space;
pub mod verify;

pub use error::{Error, Result};
