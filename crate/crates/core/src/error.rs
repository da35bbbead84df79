use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    ZeroNormal,
    InvalidSpec(String),
    NotAFlat,
    UnknownFamily(String),
    StrictConstraintInClosure,
    NotDeformedBraid,
    /// The condensation of a face digraph was not a transitive tournament.
    CondensationNotTournament,
    InvalidPartition(String),
    PartLevel { block: usize, level: usize },
    OutOfRange(String),
    ConstantTerm,
    TruncationMismatch { left: usize, right: usize },
    MissingTable(usize),
    BasisMismatch,
    InconsistentFace(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroNormal => f.write_str("hyperplane normal is zero"),
            Error::InvalidSpec(msg) => write!(f, "invalid arrangement spec: {msg}"),
            Error::NotAFlat => f.write_str("subspace is not a flat of the arrangement"),
            Error::UnknownFamily(name) => write!(f, "unknown family `{name}`"),
            Error::StrictConstraintInClosure => {
                f.write_str("recession cone requested for a description with strict inequalities")
            }
            Error::NotDeformedBraid => f.write_str("operation requires a deformed braid arrangement"),
            Error::CondensationNotTournament => {
                f.write_str("condensation of the face digraph is not a transitive tournament")
            }
            Error::InvalidPartition(msg) => write!(f, "invalid ordered partition: {msg}"),
            Error::PartLevel { block, level } => {
                write!(f, "part {block} has level {level}, expected 1")
            }
            Error::OutOfRange(msg) => write!(f, "argument out of range: {msg}"),
            Error::ConstantTerm => f.write_str("binomial power needs a series with constant term 1"),
            Error::TruncationMismatch { left, right } => {
                write!(f, "truncation orders differ: {left} vs {right}")
            }
            Error::MissingTable(n) => write!(f, "missing face count table for n = {n}"),
            Error::BasisMismatch => f.write_str("expansion basis does not match the arrangement kind"),
            Error::InconsistentFace(msg) => write!(f, "inconsistent face: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
