use std::fmt;

/// Group axiom that a user-supplied multiplication table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// An entry lies outside `0..n`.
    Closure,
    /// A row of the table is not a permutation.
    LatinRow,
    /// A column of the table is not a permutation.
    LatinColumn,
    /// No two-sided identity element.
    Identity,
    /// Some element has no two-sided inverse.
    Inverse,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::Closure => "closure",
            Axiom::LatinRow => "row permutation",
            Axiom::LatinColumn => "column permutation",
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::Associativity => "associativity",
        };
        f.write_str(name)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("group of order {requested} exceeds the size cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("not a group: {axiom} fails at witness {witness:?}")]
    NotAGroup {
        axiom: Axiom,
        witness: (usize, usize, usize),
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("subgroup enumeration exceeded the budget of {limit} subgroups")]
    BudgetExceeded { limit: usize },

    #[error("character table did not converge after {attempts} attempts")]
    Convergence { attempts: usize },

    #[error("character sum {value} over a subgroup of order {order} is not an integer multiple of the order")]
    NonInteger { value: f64, order: usize },

    #[error("prior is not constant on conjugacy classes of subgroups")]
    NonInvariantPrior,

    #[error("invalid prior: {0}")]
    InvalidPrior(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("success probability {value} lies outside [0, 1]")]
    OutOfRange { value: f64 },

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
