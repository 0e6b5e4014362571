use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("hazard rate undefined at x = {x}: survival probability is zero")]
    UndefinedHazard { x: f64 },
    #[error("reversed hazard rate undefined at x = {x}: distribution function is zero")]
    UndefinedReversedHazard { x: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("arity error: {0}")]
    Arity(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("the two portfolios do not share the same baseline distribution")]
    BaselineMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_non_negative(what: &'static str, x: f64) -> Result<()> {
    if x >= 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: x,
            domain: "[0, inf)",
        })
    }
}

pub(crate) fn check_probability_open(what: &'static str, u: f64) -> Result<()> {
    if (0.0..1.0).contains(&u) {
        Ok(())
    } else {
        Err(Error::Domain {
            what,
            value: u,
            domain: "[0, 1)",
        })
    }
}
