use std::path::PathBuf;

use thiserror::Error;

use crate::geometry::Point2;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("point set must not be empty")]
    EmptyPointSet,

    #[error("point {0} is not a member of the point set")]
    NotInSet(Box<Point2>),

    /// The central controller issued a setpoint outside the advertised set.
    #[error("step {step}: request {request} lies outside the advertised set")]
    RequestInfeasible { step: u64, request: Box<Point2> },

    /// Implemented setpoint not in the resource's feasible set.
    #[error("setpoint {0} is not implementable in the current state")]
    SetpointInfeasible(Box<Point2>),

    /// An iterate shrank without rounding; indicates a geometry bug.
    #[error("iteration {iteration}: operator output does not contain its input")]
    NonMonotone { iteration: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
