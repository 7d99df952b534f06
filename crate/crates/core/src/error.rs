use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("port conflict at vertex {vertex} port {port}: {detail}")]
    PortConflict {
        vertex: usize,
        port: usize,
        detail: &'static str,
    },
    #[error("vertex {vertex}: tensor arity {arity} but {degree} incident edge ends")]
    ArityMismatch {
        vertex: usize,
        arity: usize,
        degree: usize,
    },
    #[error("edge endpoint references unknown vertex {vertex} or port {port}")]
    DanglingEndpoint { vertex: usize, port: usize },
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(usize),
    #[error("duplicate external label {0:?}")]
    DuplicateLabel(String),
    #[error("malformed tensor: {0}")]
    BadTensor(String),
    #[error("{what} is too large for brute-force enumeration ({size} > cap {cap})")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("ports {a} and {b} of vertex {vertex} are not joined by a self-loop")]
    NotALoop { vertex: usize, a: usize, b: usize },
    #[error("index {index} out of range ({detail})")]
    IndexOutOfRange { index: usize, detail: String },
    #[error("weight vector must not be empty")]
    EmptyWeights,
    #[error("bad arity {0}")]
    BadArity(usize),
    #[error("network has {0} external edges; a closed network is required")]
    HasExternalEdges(usize),
    #[error("vertex {vertex} has degree {degree} and a non-symmetric tensor")]
    NonSymmetricHighDegree { vertex: usize, degree: usize },
    #[error("network is not planar")]
    NotPlanarInput,
    #[error("intermediate tensor of rank {rank} exceeds the cap ({cap})")]
    RankOverflow { rank: usize, cap: usize },
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("contraction plan does not match the network: {0}")]
    BadPlan(String),
    #[error("assignment does not cover the external edges: {0}")]
    BadAssignment(String),
    #[error("DIMACS syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("DIMACS header declares {declared} clauses but {found} were read")]
    HeaderMismatch { declared: usize, found: usize },
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
