use std::fmt;

use thiserror::Error;

/// Which quandle axiom a table failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Shape,
    Range,
    LeftQuasigroup,
    Idempotency,
    LeftDistributivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Shape => "shape",
            Axiom::Range => "range",
            Axiom::LeftQuasigroup => "left quasigroup",
            Axiom::Idempotency => "idempotency",
            Axiom::LeftDistributivity => "left distributivity",
        };
        f.write_str(s)
    }
}

/// Affine mesh conditions (plus shape problems found before they can be checked).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum MeshCondition {
    Shape,
    M1,
    M2,
    M3,
    M4,
}

impl fmt::Display for MeshCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MeshCondition::Shape => "shape",
            MeshCondition::M1 => "M1",
            MeshCondition::M2 => "M2",
            MeshCondition::M3 => "M3",
            MeshCondition::M4 => "M4",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element {elem:?} does not belong to group {group:?}")]
    ElementMismatch { elem: Vec<u64>, group: Vec<u64> },
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("axiom violation ({kind}) at {witness:?}")]
    AxiomViolation { kind: Axiom, witness: Vec<usize> },
    #[error("mesh violation ({condition}) at {indices:?}")]
    MeshViolation {
        condition: MeshCondition,
        indices: Vec<usize>,
    },
    #[error("quandle is not medial (witness {0:?})")]
    NonMedial(Vec<usize>),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("submodule family violates phi_(k,j)(M_k) <= M_j at ({0}, {1})")]
    FamilyViolation(usize, usize),
    #[error("congruence is not below the summand partition")]
    NotBelowPi,
    #[error("siq specification violated: {0}")]
    SpecViolation(String),
    #[error("cyclic criterion shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("internal consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
