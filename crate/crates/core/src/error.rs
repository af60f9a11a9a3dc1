use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A cyclic factor of order zero, or a group whose order overflows.
    InvalidGroup(String),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    ResidueOutOfRange {
        factor: usize,
        residue: u64,
        order: u64,
    },
    EnumerationCap {
        order: u64,
        cap: u64,
    },
    TrivialGroup,
    GroupSizeMismatch {
        group: u64,
        points: usize,
    },

    EmptyBlockList,
    TooFewSources(usize),
    PartCount {
        block: usize,
        expected: usize,
        found: usize,
    },
    EmptyPart {
        block: usize,
        part: usize,
    },
    PointOutOfRange {
        point: usize,
        v: usize,
    },
    OverlappingParts {
        block: usize,
        point: usize,
    },
    InvalidDistribution(String),
    SourceCountMismatch {
        expected: usize,
        found: usize,
    },
    InvalidPermutation(String),
    InvalidAction(String),

    NotPartition {
        point: usize,
    },
    BlockSize {
        block: usize,
        expected: usize,
        found: usize,
    },
    NotCSplitting,

    ReplicationNotDivisible {
        point: usize,
        replication: usize,
        m: usize,
    },
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    OrbitCollision {
        block: usize,
        other: usize,
    },

    NotPrime(u64),
    BlockSizeTooLarge {
        k: usize,
        n: u64,
    },
    InvalidStsOrder(usize),
    NoIngredient {
        k: usize,
        w: usize,
    },
    FillerMismatch {
        group: usize,
        reason: String,
    },
    Precondition(String),
    BudgetExceeded {
        explored: u64,
    },

    UnknownCatalogEntry(String),
    NotTranscribed(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            InvalidGroup(msg) => write!(f, "invalid group: {msg}"),
            DimensionMismatch { expected, found } => {
                write!(
                    f,
                    "element has {found} coordinates, group has {expected} factors"
                )
            }
            ResidueOutOfRange {
                factor,
                residue,
                order,
            } => {
                write!(
                    f,
                    "coordinate {factor} is {residue}, not reduced mod {order}"
                )
            }
            EnumerationCap { order, cap } => {
                write!(
                    f,
                    "group of order {order} exceeds the enumeration cap {cap}"
                )
            }
            TrivialGroup => write!(f, "group has no nonzero element"),
            GroupSizeMismatch { group, points } => {
                write!(f, "group order {group} differs from point count {points}")
            }
            EmptyBlockList => write!(f, "system has no blocks"),
            TooFewSources(m) => write!(f, "need at least two sources, got {m}"),
            PartCount {
                block,
                expected,
                found,
            } => {
                write!(f, "block {block} has {found} parts, expected {expected}")
            }
            EmptyPart { block, part } => write!(f, "block {block} part {part} is empty"),
            PointOutOfRange { point, v } => write!(f, "point {point} out of range 0..{v}"),
            OverlappingParts { block, point } => {
                write!(f, "point {point} appears twice in block {block}")
            }
            InvalidDistribution(msg) => write!(f, "invalid source distribution: {msg}"),
            SourceCountMismatch { expected, found } => {
                write!(f, "distribution has {found} sources, system has {expected}")
            }
            InvalidPermutation(msg) => write!(f, "invalid permutation: {msg}"),
            InvalidAction(msg) => write!(f, "invalid group action: {msg}"),
            NotPartition { point } => {
                write!(
                    f,
                    "design groups do not partition the points (point {point})"
                )
            }
            BlockSize {
                block,
                expected,
                found,
            } => {
                write!(f, "block {block} has size {found}, expected {expected}")
            }
            NotCSplitting => write!(f, "system is not c-splitting"),
            ReplicationNotDivisible {
                point,
                replication,
                m,
            } => {
                write!(
                    f,
                    "point {point} has replication {replication}, not divisible by {m}"
                )
            }
            NotRegular {
                vertex,
                degree,
                expected,
            } => {
                write!(
                    f,
                    "vertex {vertex} has degree {degree}, expected {expected}"
                )
            }
            OrbitCollision { block, other } => {
                write!(f, "developed block {block} repeats block {other}")
            }
            NotPrime(p) => write!(f, "{p} is not prime"),
            BlockSizeTooLarge { k, n } => {
                write!(f, "no TD({k},{n}) from this construction: k exceeds n+1")
            }
            InvalidStsOrder(u) => write!(f, "no Steiner triple system of order {u}"),
            NoIngredient { k, w } => write!(f, "no TD({k},{w}) ingredient available"),
            FillerMismatch { group, reason } => {
                write!(f, "filler for design group {group}: {reason}")
            }
            Precondition(msg) => write!(f, "precondition failed: {msg}"),
            BudgetExceeded { explored } => {
                write!(f, "search budget exceeded after {explored} nodes")
            }
            UnknownCatalogEntry(name) => write!(f, "unknown catalog entry {name:?}"),
            NotTranscribed(name) => write!(
                f,
                "catalog slot {name:?} has no transcribed data; ingest it from a file"
            ),
        }
    }
}

impl core::error::Error for Error {}
