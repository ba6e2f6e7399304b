use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (estimate {estimate:?}, abs error {abs_error:?})"
    )]
    Quadrature {
        subdivisions: usize,
        estimate: Vec<f64>,
        abs_error: Vec<f64>,
    },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error(
        "ladder truncation overflow: top level {level} holds population {population:e} \
         (limit 1e-6); increase the number of levels"
    )]
    TruncationOverflow { level: usize, population: f64 },

    #[error("population of level {level} went negative ({population:e})")]
    NegativePopulation { level: usize, population: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
