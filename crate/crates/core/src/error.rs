use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("symbol `{0}` has no assigned value")]
    UnassignedSymbol(String),

    #[error("letter `{0}` is outside the allowed alphabet")]
    BadLetter(String),

    #[error("invalid alphabet: {0}")]
    BadAlphabet(String),

    #[error("empty automaton")]
    EmptyAutomaton,

    #[error("undecodable vertex key `{0}`")]
    UndecodableKey(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate slot: vertex `{vertex}` already has an edge labelled `{letter}`")]
    DuplicateSlot { vertex: String, letter: String },

    #[error("Serre condition violated at vertex `{vertex}` letter `{letter}`")]
    SerreViolation { vertex: String, letter: String },

    #[error("edge ({from}, {letter}, {to}) disagrees with right multiplication")]
    CayleyMismatch { from: String, letter: String, to: String },

    #[error("enumeration budget exceeded: {needed} forests requested, budget {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("no evacuation target: the automaton has no boundary vertex")]
    NoEvacuationTarget,

    #[error("capacity must be at least 1")]
    BadCapacity,

    #[error("subset enumeration guard: {0} candidate vertices exceed the limit of {1}")]
    TooLarge(usize, usize),

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("index precondition violated at vertex `{vertex}` (index {index})")]
    IndexPrecondition { vertex: String, index: i64 },

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
