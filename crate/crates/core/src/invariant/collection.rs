use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::FeasibleSet;

/// How the local controller predicts its next feasible set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PredictionMode {
    /// Advertise the hull of the set that will actually apply.
    #[default]
    Perfect,
    /// Advertise the hull of the current set.
    Persistent,
}

/// All feasible sets a local controller can face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collection {
    sets: Vec<FeasibleSet>,
    #[serde(default)]
    mode: PredictionMode,
}

impl Collection {
    pub fn new(sets: Vec<FeasibleSet>, mode: PredictionMode) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Domain("a collection needs at least one set".into()));
        }
        if sets.iter().any(FeasibleSet::is_empty) {
            return Err(Error::Domain("collection members must be non-empty".into()));
        }
        Ok(Self { sets, mode })
    }

    pub fn perfect(sets: Vec<FeasibleSet>) -> Result<Self> {
        Self::new(sets, PredictionMode::Perfect)
    }

    pub fn persistent(sets: Vec<FeasibleSet>) -> Result<Self> {
        Self::new(sets, PredictionMode::Persistent)
    }

    pub fn sets(&self) -> &[FeasibleSet] {
        &self.sets
    }

    pub fn mode(&self) -> PredictionMode {
        self.mode
    }

    pub fn with_mode(mut self, mode: PredictionMode) -> Self {
        self.mode = mode;
        self
    }
}
