use thiserror::Error;

/// Errors raised while building, querying, intervening or updating a causal space.
///
/// Node, outcome and variable references are reported by their user-facing names.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("no root node declared")]
    MissingRoot,
    #[error("more than one root declared: `{0}` and `{1}`")]
    MultipleRoots(String, String),
    #[error("root `{0}` cannot be the target of an edge")]
    RootHasParent(String),
    #[error("node `{0}` has more than one parent")]
    MultipleParents(String),
    #[error("node `{0}` is not reachable from the root")]
    OrphanNode(String),
    #[error("node `{0}` has no children and carries no outcome")]
    LeafWithoutOutcome(String),
    #[error("leaf `{0}` carries outcomes but also has children")]
    LeafWithChildren(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown outcome `{0}`")]
    UnknownOutcome(String),
    #[error("outgoing probabilities of `{node}` sum to {sum}, expected 1")]
    EdgeSumNotOne { node: String, sum: String },
    #[error("probability {prob} on edge `{parent}` -> `{child}` is outside [0, 1]")]
    ProbOutOfRange {
        parent: String,
        child: String,
        prob: String,
    },
    #[error("realisation axiom {axiom} violated: {witness}")]
    AxiomViolation { axiom: String, witness: String },

    #[error("space has {leaves} leaves, enumeration is limited to {limit}")]
    TooManyLeaves { leaves: usize, limit: usize },
    #[error("event {0} is not a union of realisations")]
    NotRepresentable(String),
    #[error("cannot condition on an event of probability zero")]
    ConditionOnNullEvent,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("`{0}` is not a bifurcation of the event")]
    NotABifurcation(String),
    #[error("the empty event cannot be brought about by an intervention")]
    TrivialEvent,
    #[error("discriminants of bifurcation `{0}` carry zero probability; the intervention is not unique")]
    NullDiscriminants(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{variable}` has no value `{value}`")]
    ValueOutsideCodomain { variable: String, value: String },
    #[error("variable `{variable}` is not a cut: the path to leaf `{leaf}` carries no assignment")]
    NotACut { variable: String, leaf: String },
    #[error("variable `{variable}` is assigned twice on one path: `{first}` and `{second}`")]
    DuplicateAssignmentOnPath {
        variable: String,
        first: String,
        second: String,
    },
    #[error("cannot observe {variable}={value}: the event has probability zero")]
    ObserveNullEvent { variable: String, value: String },
    #[error("evidence has probability zero after `{step}`")]
    NullEvidence { step: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
