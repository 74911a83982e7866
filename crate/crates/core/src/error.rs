use crate::types::FiniteType;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TypeError {
    #[error("ill-typed term at {location}: expected {expected}, found {found}")]
    IllTyped {
        location: String,
        expected: String,
        found: String,
    },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("variable `{name}` used at type {found} but declared at {declared}")]
    VariableTypeConflict {
        name: String,
        declared: FiniteType,
        found: FiniteType,
    },
    #[error("type mismatch: variable `{var}` has type {expected}, replacement has type {found}")]
    TypeMismatch {
        var: String,
        expected: FiniteType,
        found: FiniteType,
    },
}

impl TypeError {
    pub(crate) fn ill_typed(location: impl Into<String>, expected: impl ToString, found: impl ToString) -> Self {
        TypeError::IllTyped {
            location: location.into(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("term is not closed: free variable `{0}`")]
    NotClosed(String),
    #[error("expected a term of ground type, found {0}")]
    NotGroundType(FiniteType),
    #[error("expected a data type, found {0}")]
    NotDataType(FiniteType),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("normal form is not canonical: {0}")]
    Stuck(String),
}
