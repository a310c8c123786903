use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid search space: {0}")]
    InvalidSpace(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The objective produced NaN or an infinity.
    #[error("{}", describe_evaluation(.point, *.value, *.iteration, *.unit))]
    Evaluation { point: Vec<f64>, value: f64, iteration: Option<usize>, unit: Option<usize> },

    #[error("unknown objective `{name}` (available: {})", .available.join(", "))]
    UnknownObjective { name: String, available: Vec<String> },

    #[error("grid oracle supports arity 1 or 2, objective has arity {0}")]
    UnsupportedArity(usize),

    #[error("efficiency is undefined for a zero optimum; use a gap-based goal instead")]
    ZeroOptimum,

    #[error("no results to aggregate")]
    EmptyResults,

    #[error("objective `{0}` has no known optimum")]
    MissingOptimum(String),
}

impl Error {
    /// Attaches the iteration index to an evaluation error.
    pub fn at_iteration(self, it: usize) -> Self {
        match self {
            Error::Evaluation { point, value, unit, .. } => {
                Error::Evaluation { point, value, iteration: Some(it), unit }
            }
            other => other,
        }
    }

    /// Attaches the sonar unit index to an evaluation error.
    pub fn in_unit(self, k: usize) -> Self {
        match self {
            Error::Evaluation { point, value, iteration, .. } => {
                Error::Evaluation { point, value, iteration, unit: Some(k) }
            }
            other => other,
        }
    }
}

fn describe_evaluation(point: &[f64], value: f64, iteration: Option<usize>, unit: Option<usize>) -> String {
    let mut s = format!("objective returned non-finite value {value} at {point:?}");
    if let Some(it) = iteration {
        s.push_str(&format!(" (iteration {it})"));
    }
    if let Some(k) = unit {
        s.push_str(&format!(" (unit {k})"));
    }
    s
}
