use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop arc at vertex {0}")]
    LoopArc(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("digraph must be of the directed class")]
    NotDirected,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("empty generator list")]
    NoGenerators,
    #[error("element is not in the group")]
    NotSubgroupElement,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("partition is not invariant under the group")]
    PartitionNotInvariant,
    #[error("invalid partition: {0}")]
    PartitionInvalid(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("tuple set is not invariant under the group")]
    SetNotInvariant,
    #[error("group does not act by automorphisms of the digraph")]
    NotAutomorphismGroup,

    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("identity element in connection set")]
    IdentityInConnectionSet,
    #[error("connection set meets its inverse set; Cayley digraph is not antisymmetric")]
    NotAntisymmetric,
    #[error("right translation group is not contained in the given group")]
    TranslationNotInG,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
