use thiserror::Error;

use crate::arquiver::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan table: {0}")]
    InvalidCartan(String),
    #[error("arrow {src} -> {dst} is not admissibly ordered (arrows must go from a smaller to a larger index)")]
    NonAdmissibleArrow { src: usize, dst: usize },
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("generators {i} and {j} have no braid relation (m = inf)")]
    InfiniteOrder { i: usize, j: usize },
    #[error("indices must be distinct, got {0} twice")]
    SameIndex(usize),
    #[error("{0} is injective: no almost split sequence starts there")]
    InjectiveVertex(Vertex),
    #[error("{0} is the zero module")]
    ZeroModule(Vertex),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("multiset underflow removing {0}")]
    MultisetUnderflow(Vertex),
    #[error("{0} is not a summand of the middle term")]
    NotInMiddle(Vertex),
    #[error("excluded set not realizable by a word: {reason} at {at}")]
    NotRealizable { at: Vertex, reason: &'static str },
    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: &'static str, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not a type-A quiver: {0}")]
    NotTypeA(String),
    #[error("monomorphism search over GF(2) and GF(3) disagrees")]
    FieldDisagreement,
    #[error("line {line}, token `{token}`: {message}")]
    Parse {
        line: usize,
        token: String,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            token: token.into(),
            message: message.into(),
        }
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}
