//! Error types shared across the crate.

use thiserror::Error;

/// Violations of diagram-level invariants (Gauss sequences and PD codes).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    /// A crossing label does not carry exactly one Under and one Over passage.
    #[error("crossing {0} does not have exactly one under and one over passage")]
    RoleMismatch(u32),
    /// A crossing label is zero (labels are 1-based).
    #[error("crossing labels must be >= 1")]
    ZeroLabel,
    /// An edge label of a PD code does not appear exactly twice.
    #[error("PD edge label {label} appears {count} times, expected exactly 2")]
    MalformedPd { label: u32, count: usize },
    /// PD traversal closed before covering every crossing passage.
    #[error("PD traversal yields {components} components, expected a single knot component")]
    MultipleComponents { components: usize },
    /// The operation requires at least one crossing.
    #[error("diagram has no crossings")]
    EmptyDiagram,
}

/// Violations of braid-word invariants and braid-level preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    /// A letter index lies outside 1..=n-1.
    #[error("braid letter index {index} out of range for {strands} strand(s)")]
    IndexOutOfRange { index: i32, strands: usize },
    /// Strand count must be at least 1.
    #[error("braid must have at least one strand")]
    NoStrands,
    /// The closure of the braid is a link, not a knot.
    #[error("braid closure has {components} components, not a knot")]
    NotAKnot { components: usize },
    /// Parameter outside the documented domain.
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// Text-format parsing failures. Syntax errors are distinguished from
/// semantic (invariant) violations, which are wrapped from the domain enums.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Engine-level input errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("cut set must contain at least one gap")]
    EmptyCutSet,
    #[error("gap {0} listed more than once")]
    DuplicateGap(usize),
    #[error("gap {gap} out of range for a diagram with {events} events")]
    GapOutOfRange { gap: usize, events: usize },
    /// The crossingless diagram admits only the conventional single cut {{0}}.
    #[error("a crossingless diagram admits only the conventional cut set with gap 0")]
    DegenerateCutSet,
    /// The operation requires at least one crossing.
    #[error("diagram has no crossings")]
    EmptyDiagram,
}

/// Choreography-level errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChoreoError {
    /// The requested cuts are infeasible; carries the blame cycle as event indices.
    #[error("cut set is infeasible; blame cycle over events {0:?}")]
    InfeasibleCuts(Vec<usize>),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    /// SVG layout is only defined for braid-closure inputs.
    #[error("SVG layout requires a braid-closure input")]
    UnsupportedLayout,
    /// A produced schedule failed self-verification.
    #[error("schedule failed verification: {0}")]
    Verification(String),
}

/// Census ingestion and reporting errors.
#[derive(Debug, Error)]
pub enum CensusError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("format error at record {record}: {message}")]
    Format { record: u64, message: String },
}
