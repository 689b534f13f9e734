use thiserror::Error;

/// First group-axiom violation found by a full table scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDefect {
    /// `mul(0,i) != i` or `mul(i,0) != i`.
    Identity { elem: usize },
    /// `(i*j)*k != i*(j*k)`.
    Associativity { x: usize, y: usize, z: usize },
    /// `inv(i)` is not a two-sided inverse of `i`.
    Inverse { elem: usize },
}

impl std::fmt::Display for GroupDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupDefect::Identity { elem } => write!(f, "identity fails at element {elem}"),
            GroupDefect::Associativity { x, y, z } => {
                write!(f, "associativity fails at ({x},{y},{z})")
            }
            GroupDefect::Inverse { elem } => write!(f, "no inverse for element {elem}"),
        }
    }
}

/// First multiplicative-Lie-axiom violation, with the witness triple.
///
/// `axiom` is the axiom number 1..=5; for axiom 1 the witness is `(x,x,x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MlaDefect {
    pub axiom: u8,
    pub witness: (usize, usize, usize),
}

impl std::fmt::Display for MlaDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (x, y, z) = self.witness;
        write!(f, "axiom ({}) fails at ({x},{y},{z})", self.axiom)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Table entry out of range, wrong row length, and similar shape problems.
    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("group axioms fail: {0}")]
    Group(GroupDefect),

    #[error("multiplicative Lie axioms fail: {0}")]
    Mla(MlaDefect),

    /// Caller violated a documented precondition (non-ideal quotient, etc).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A configured cap (coset budget, enumeration size) was exceeded.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A condition the library guarantees internally failed; indicates a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
