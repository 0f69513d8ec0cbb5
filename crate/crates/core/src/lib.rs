//! Exact verification of how the conjugacy classes of a finite group `G`
//! distribute over the cosets of a normal subgroup `H` with cyclic quotient.
//!
//! The crate has two halves that check each other:
//!
//! * a brute-force group side ([`group`], [`classes`]) that enumerates a
//!   permutation group, its classes and centralizers, and tabulates how many
//!   classes of each centralizing subgroup `K_c = H·C_G(g)` sit in each coset;
//! * an exact linear-algebra side ([`matrix`]) that builds the divisor-indexed
//!   coefficient matrices `L(n)`, `R(n)` relating those counts and verifies
//!   their determinant, spectrum and tensor factorization over `BigRational`.
//!
//! [`suite`] ties them together into [`report::VerificationReport`]s and
//! [`cli`] exposes the `coset-classes` command-line tool.

pub mod arith;
pub mod classes;
pub mod cli;
pub mod group;
pub mod matrix;
pub mod report;
pub mod suite;
