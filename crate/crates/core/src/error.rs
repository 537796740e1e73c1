use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown type constructor `{0}`")]
    UnknownConstructor(String),
    #[error("type constructor `{0}` declared twice")]
    DuplicateConstructor(String),
    #[error("order has a cycle: `{0}` <= `{1}` <= `{0}`")]
    OrderCycle(String, String),
    #[error(
        "arity is incompatible with the order: {lower} <= {middle} <= {upper} \
         but min(#{lower}, #{upper}) > #{middle}"
    )]
    Incompatible {
        lower: String,
        middle: String,
        upper: String,
    },
    #[error("alphabet has no nullary type constructor")]
    NoNullary,
    #[error("type constructor `{name}` expects {expected} argument(s), found {found}")]
    ConstructorArity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("no signature for function symbol `{0}`")]
    UnknownSymbol(String),
    #[error("function symbol `{name}` expects {expected} argument(s), found {found}")]
    SymbolArity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("variable `{0}` is not bound in the type assignment")]
    UnboundVariable(String),
    #[error("type constructor `{name}` has arity {arity}; the solver needs arity <= 1")]
    UnsupportedArity { name: String, arity: usize },
    #[error("oracle budget of {0} candidates exceeded")]
    BudgetExceeded(usize),
    #[error("composed witness does not solve the input system")]
    InternalWitnessFailure,
    #[error("{message}")]
    Parse { message: String },
    #[error("{line}:{col}: {inner}")]
    At {
        line: usize,
        col: usize,
        inner: Box<Error>,
    },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownConstructor(_) => "UNKNOWN_CONSTRUCTOR",
            Error::DuplicateConstructor(_) => "DUPLICATE_CONSTRUCTOR",
            Error::OrderCycle(..) => "ORDER_CYCLE",
            Error::Incompatible { .. } => "INCOMPATIBLE",
            Error::NoNullary => "NO_NULLARY",
            Error::ConstructorArity { .. } | Error::SymbolArity { .. } => "ARITY_MISMATCH",
            Error::UnknownSymbol(_) => "UNKNOWN_SYMBOL",
            Error::UnboundVariable(_) => "UNBOUND_VARIABLE",
            Error::UnsupportedArity { .. } => "UNSUPPORTED_ARITY",
            Error::BudgetExceeded(_) => "BUDGET_EXCEEDED",
            Error::InternalWitnessFailure => "INTERNAL_WITNESS_FAILURE",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::At { inner, .. } => inner.code(),
        }
    }

    /// The error without any attached source location.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { inner, .. } => inner.root(),
            other => other,
        }
    }

    pub(crate) fn at(self, line: usize, col: usize) -> Error {
        match self {
            located @ Error::At { .. } => located,
            inner => Error::At {
                line,
                col,
                inner: Box::new(inner),
            },
        }
    }
}
