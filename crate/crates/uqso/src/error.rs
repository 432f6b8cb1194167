use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bracket precondition failed on the {side} factor: {reason}")]
    Homogeneity { side: &'static str, reason: String },
    #[error("degree of the zero element is undefined")]
    ZeroElement,
    #[error("multidegree {multidegree:?} exceeds the degree budget {budget}")]
    DegreeBudgetExceeded { multidegree: Vec<u32>, budget: usize },
    #[error("expected a pure {expected} element with trivial group part")]
    MixedSign { expected: &'static str },
    #[error("index out of range: {0}")]
    Index(String),
    #[error("render style {0} needs k <= n < m")]
    StyleNotApplicable(String),
    #[error("the {0} scheme is not regular for its interval")]
    NotRegular(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
