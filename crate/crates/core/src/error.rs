use thiserror::Error;

/// Errors reported by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root-of-unity order must be at least 2, got {0}")]
    InvalidZetaOrder(u32),
    #[error("rank mismatch: expected n = {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded { what: &'static str, value: usize, bound: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} is not in the positive root cone")]
    NotPositiveRootCombination(String),
    #[error("{0} is not dominant")]
    NotDominant(String),
    #[error("quantum integer [{0}] vanishes at the chosen root of unity")]
    VanishingQuantumInteger(u32),
    #[error("inhomogeneous input")]
    Inhomogeneous,
    #[error("ℓ = {ell} is smaller than n = {n}; results are only validated for ℓ ≥ n")]
    EllBelowRank { ell: u32, n: usize },
    #[error("weight {weight} is out of the validated range: |<λ+ρ, α^∨>| = {pairing} exceeds ℓ = {ell}")]
    OutOfValidatedRange { weight: String, pairing: i64, ell: u32 },
    #[error("action of {generator} does not descend to {space}")]
    ActionDoesNotDescend { generator: String, space: String },
    #[error("element is not invariant under the twisted action of {0}")]
    NotInvariant(String),
    #[error("weight box of radius {0} is too small to decompose the element")]
    BoxTooSmall(i64),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
