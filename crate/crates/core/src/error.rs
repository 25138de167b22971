use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} exceeds bound: {actual} > {limit}")]
    BoundExceeded {
        what: &'static str,
        limit: u128,
        actual: u128,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not a nonabelian simple group: {0}")]
    NotSimple(String),
    #[error("cochain fails the 2-cocycle identity")]
    NotCocycle,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("group has {0} minimal normal subgroups, expected exactly one")]
    NonUniqueMinimalNormal(usize),
    #[error("the unique minimal normal subgroup is a {0}-group")]
    MinimalNormalIsPGroup(u32),
    #[error("module is not faithful: kernel has order {0}")]
    Unfaithful(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn bound(what: &'static str, limit: impl Into<u128>, actual: impl Into<u128>) -> Self {
        Error::BoundExceeded {
            what,
            limit: limit.into(),
            actual: actual.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
