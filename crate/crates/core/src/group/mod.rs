//! Permutation groups and the `(G, H)` cyclic-quotient structure.

mod coset;
mod finite;
mod perm;
mod spec;

use thiserror::Error;

pub use coset::{build_coset_structure, power_map, representative_coset, unique_intermediate_subgroup, CosetStructure};
pub use finite::{enumerate_elements, FiniteGroup, DEFAULT_ORDER_CAP};
pub use perm::Permutation;
pub use spec::{parse_group_spec, parse_group_spec_with_cap, GroupSpec, SpecError, MAX_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("image array is not a bijection")]
    NotBijection,
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {point} appears more than once")]
    RepeatedPoint { point: usize },
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group too large: more than {cap} elements")]
    TooLarge { cap: usize },
    #[error("H is not a subgroup of G")]
    NotSubgroup,
    #[error("H is not normal in G: conjugating {element} by {generator} leaves H")]
    NotNormal { generator: String, element: String },
    #[error("G/H is not cyclic (no coset has order {index} in the quotient)")]
    NonCyclicQuotient { index: u64 },
    #[error("{d} does not divide n = {n}")]
    NotDivisor { d: u64, n: u64 },
    #[error("exponent {a} is not coprime to |G| = {order}")]
    NotCoprime { a: i64, order: u64 },
    #[error("{0} is not an element of the group")]
    NotMember(String),
    #[error("region is not a union of conjugacy classes")]
    NotClassClosed,
    #[error("class of {representative} is not contained in K_{j}")]
    ClassNotContained { representative: String, j: u64 },
    #[error("members of the class of {representative} have different centralizing subgroups")]
    CentralizingIndexNotWellDefined { representative: String },
}

impl GroupError {
    /// Violations of the standing hypothesis "H normal in G with G/H cyclic".
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(
            self,
            GroupError::NotSubgroup | GroupError::NotNormal { .. } | GroupError::NonCyclicQuotient { .. }
        )
    }
}
