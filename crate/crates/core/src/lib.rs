//! Exact verification of Hecke operators acting on period functions for the
//! Hecke congruence subgroups Γ₀(n).
//!
//! The crate is organised bottom-up:
//!
//! * [`gl2`]: 2×2 integer matrices, subgroup membership, Hermite factors and
//!   canonical coset keys.
//! * [`cosets`]: index tables of Γ₀(n)\SL(2,Z), the bijection hₙ,
//!   representative systems and the permutation representations ρ, ρ̃.
//! * [`stern`]: the matrix sets Sₙ, Xₙ, Yₙ, Xₙ*, the K-map, Farey paths and
//!   the orbit-sum solutions ψ.
//! * [`formal`]: formal sums of matrices, the slash action on closed-form
//!   seeds, and three-term equation checks.
//! * [`hecke`]: the operators T̃ₙ,ₘ and Ĥₙ,ₘ and their relations.
//! * [`checks`] and [`suite`]: every structural property as a named check,
//!   and a parallel runner producing a JSON report.

pub mod arith;
pub mod checks;
pub mod cosets;
pub mod error;
pub mod formal;
pub mod gl2;
pub mod hecke;
pub mod json;
pub mod p1;
pub mod stern;
pub mod suite;

pub use error::{Error, Result};
pub use formal::{Beta, CheckMode, FormalSum, PeriodVector, Representation, Seed};
pub use gl2::{CosetKey, GroupSpec, Mat2};
