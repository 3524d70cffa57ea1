use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("invalid Pauli character {found:?} at position {position}")]
    InvalidCharacter { position: usize, found: char },
    #[error("operator lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code has no checks")]
    NoChecks,
    #[error("check {index} acts on {found} qubits, expected {expected}")]
    LengthMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("check {index} is the identity")]
    IdentityCheck { index: usize },
    #[error("checks {a} and {b} anticommute")]
    NonCommuting { a: usize, b: usize },
    #[error("{labels} labels supplied for {checks} checks")]
    LabelCount { labels: usize, checks: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WireError {
    #[error("weight reduction needs a check of weight at least 2, got {weight}")]
    WeightTooSmall { weight: usize },
    #[error("edge length must be positive")]
    ZeroLength,
    #[error("gauge generator {gauge} has no coupling to qubit {qubit}")]
    NoSuchEdge { gauge: usize, qubit: usize },
    #[error("gauge generator {gauge} is a single-site check and cannot be stretched")]
    SingleSiteEdge { gauge: usize },
    #[error("input check index {0} out of range")]
    NoSuchCheck(usize),
    #[error("stabilizer recovery for check {check} produced {found} instead of the input check")]
    RecoveryMismatch { check: usize, found: String },
    #[error("no center element extends check {check} onto the ancillary registers")]
    NoImage { check: usize },
    #[error("checks {0:?} do not multiply to the identity in the input code")]
    NotARelation(alloc::vec::Vec<usize>),
    #[error("inconsistent wire code: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("grid dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("invalid routing request: {0}")]
    BadRequest(String),
    #[error("routing failed after {retries} retries (height {height}); blocked pair {source_vertex:?} -> {sink:?}")]
    RoutingFailed {
        source_vertex: alloc::vec::Vec<i32>,
        sink: alloc::vec::Vec<i32>,
        retries: usize,
        height: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {vertices} vertices; exact expansion supports at most {max}")]
    TooLarge { vertices: usize, max: usize },
    #[error("vertex {vertex} out of range for a graph on {vertices} vertices")]
    NoSuchVertex { vertex: usize, vertices: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph needs at least one vertex and one edge")]
    Empty,
    #[error("code needs {needed} distinct vertices but the graph has {available}")]
    TooFewVertices { needed: usize, available: usize },
    #[error("no path between vertices {from} and {to}")]
    Disconnected { from: usize, to: usize },
    #[error("embedding plan does not match the wire code: {0}")]
    PlanMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("error operator acts on qubit {0}, outside the data register")]
    OutsideData(usize),
    #[error("error operator has {found} qubits, expected {expected}")]
    ErrorLength { expected: usize, found: usize },
    #[error("schedule does not measure every gauge generator of check {0}")]
    Uncovered(usize),
    #[error("measurement record is missing outcomes for check {0}")]
    IncompleteRecord(usize),
    #[error(transparent)]
    Wire(#[from] WireError),
}

/// Any failure raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Wire(#[from] WireError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Sim(#[from] SimError),
}
