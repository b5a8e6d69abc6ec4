use thiserror::Error;

use crate::procedures::PlayerId;
use crate::rational::Rational;

/// Errors from cake geometry and valuation primitives.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CakeError {
    #[error("malformed valuation: {0}")]
    MalformedValuation(String),
    #[error("valuation assigns zero value to the whole cake")]
    ZeroValuation,
    #[error("interval [{lo}, {hi}] is not inside the unit interval with lo <= hi")]
    BadInterval { lo: Rational, hi: Rational },
    #[error("target value {target} exceeds region value {available}")]
    InsufficientValue {
        target: Rational,
        available: Rational,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not a rational number: {0:?}")]
    BadNumber(String),
}

/// Errors from scenario validation, procedure execution and audits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("player {0} is not part of the scenario")]
    UnknownPlayer(PlayerId),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("outside oracle scope: {0}")]
    OutOfScope(String),
    #[error(transparent)]
    Cake(#[from] CakeError),
}
