use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("cannot parse group spec `{0}`")]
    GroupSpec(String),

    #[error("element {0} is out of range for a group of size {1}")]
    ElementOutOfRange(usize, usize),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),

    #[error("cyclotomic ring mismatch: Z[zeta_{0}] vs Z[zeta_{1}]")]
    RingMismatch(u32, u32),

    #[error("cannot parse cyclotomic integer `{0}`")]
    CycloParse(String),

    #[error("assignment has {got} values but the group has {expected} elements")]
    AssignmentLength { expected: usize, got: usize },

    #[error("missing value for variable x_{0}")]
    MissingVariable(usize),

    #[error("value is not a rational integer: {0}")]
    NotInteger(String),

    #[error("integrality failure: {0}")]
    Integrality(String),

    #[error("evaluators disagree: {0}")]
    Inconsistent(String),

    #[error("inexact division in fraction-free elimination at step {0}")]
    InexactDivision(usize),

    #[error("block structure violated: {0}")]
    BlockStructure(String),

    #[error("symbolic expansion too large: {0}")]
    ExpansionTooLarge(String),

    #[error("invalid witness case {0}")]
    InvalidCase(u8),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no representation found within the search bound for p = {0}")]
    NoRepresentation(u64),

    #[error("|n| = {0} exceeds the factorization bound {1}")]
    BeyondBound(u128, u128),

    #[error("search box has {0} points, above the cap of {1}")]
    BoxTooLarge(u128, u128),

    #[error("i/o: {0}")]
    Io(String),

    #[error("malformed record: {0}")]
    Record(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
