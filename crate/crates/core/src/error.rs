use thiserror::Error;

use crate::vec3::Vec3;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The integrand produced a non-finite sample.
    #[error("non-finite integrand value at ({:.6e}, {:.6e}, {:.6e})", .point.x, .point.y, .point.z)]
    Evaluation { point: Vec3 },

    /// The integration region does not cover what the integrand needs.
    #[error("coverage error: {0}")]
    Coverage(String),

    #[error("degenerate denominator: |M_p| = {value:e} is below the floor {floor:e}")]
    DegenerateDenominator { value: f64, floor: f64 },

    #[error("error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    NonConvergence { estimate: f64, tolerance: f64 },

    #[error("config error{}: {message}", location(.key, .line))]
    Config {
        key: Option<String>,
        line: Option<usize>,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

fn location(key: &Option<String>, line: &Option<usize>) -> String {
    match (key, line) {
        (Some(k), Some(l)) => format!(" at key `{k}` (line {l})"),
        (Some(k), None) => format!(" at key `{k}`"),
        (None, Some(l)) => format!(" (line {l})"),
        (None, None) => String::new(),
    }
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Domain(_) | Error::Io(_) => 2,
            Error::Evaluation { .. } | Error::NonConvergence { .. } | Error::DegenerateDenominator { .. } => 3,
            Error::Coverage(_) => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
