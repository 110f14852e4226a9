//! JSON input files for invariant-set computations.
//!
//! ```json
//! {
//!   "mode": "perfect",
//!   "sets": [
//!     {"points": [["-1", "-1"], ["1", "-1"], ["1", "1"]]},
//!     {"polygon": [["0", "0"], ["2", "1"], ["2", "-1"]]},
//!     {"values": ["-15", "0"]}
//!   ],
//!   "q0": [["0", "0"]],
//!   "epsilon": "1/100000000",
//!   "max_iterations": 10000,
//!   "rounding": true
//! }
//! ```
//!
//! `values` sets live on the first axis. A file made only of `values` sets is
//! also solvable by the exact non-convex 1D iteration.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rational::serde_str;
use crate::geometry::{ConvexPolygon, FeasibleSet, Point2, PointSet, Rational, ScalarSet};
use crate::invariant::{Collection, IterationConfig, OneDimCollection, PredictionMode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetSpec {
    Points(PointSet),
    Polygon(ConvexPolygon),
    Values(ScalarSet),
}

impl SetSpec {
    pub fn to_feasible(&self) -> FeasibleSet {
        match self {
            SetSpec::Points(p) => FeasibleSet::Points(p.clone()),
            SetSpec::Polygon(p) => FeasibleSet::Polygon(p.clone()),
            SetSpec::Values(v) => FeasibleSet::Points(
                PointSet::on_axis(v.values().iter().cloned()).expect("non-empty"),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionFile {
    #[serde(default)]
    pub mode: PredictionMode,
    pub sets: Vec<SetSpec>,
    /// Seed region, as a point list whose hull is used. Defaults to `{0}`.
    #[serde(default)]
    pub q0: Option<Vec<Point2>>,
    #[serde(with = "serde_str::option", default)]
    pub epsilon: Option<Rational>,
    #[serde(default)]
    pub max_iterations: Option<usize>,
    #[serde(default)]
    pub rounding: Option<bool>,
}

impl CollectionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: CollectionFile = serde_json::from_str(text)?;
        if f.sets.is_empty() {
            return Err(Error::Config("collection file lists no sets".into()));
        }
        if matches!(&f.q0, Some(q) if q.is_empty()) {
            return Err(Error::Config("q0 must list at least one point".into()));
        }
        Ok(f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn collection(&self) -> Result<Collection> {
        Collection::new(
            self.sets.iter().map(SetSpec::to_feasible).collect(),
            self.mode,
        )
    }

    pub fn seed(&self) -> ConvexPolygon {
        match &self.q0 {
            Some(pts) => ConvexPolygon::hull(pts.iter()),
            None => ConvexPolygon::point(Point2::origin()),
        }
    }

    /// File settings layered over the defaults.
    pub fn config(&self) -> IterationConfig {
        let mut cfg = IterationConfig::default();
        if let Some(e) = &self.epsilon {
            cfg.epsilon = e.clone();
        }
        if let Some(m) = self.max_iterations {
            cfg.max_iterations = m;
        }
        if let Some(r) = self.rounding {
            cfg.rounding_enabled = r;
        }
        cfg
    }

    /// The 1D view, when every set is a `values` set and prediction is perfect.
    pub fn scalar(&self) -> Option<OneDimCollection> {
        if self.mode != PredictionMode::Perfect {
            return None;
        }
        let sets = self
            .sets
            .iter()
            .map(|s| match s {
                SetSpec::Values(v) => Some(v.clone()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        OneDimCollection::new(sets).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat};

    #[test]
    fn parses_mixed_sets() {
        let f = CollectionFile::from_json(
            r#"{"sets": [
                {"points": [["-1","-1"],["1","1"]]},
                {"polygon": [["0","0"],["2","1"],["2","-1"]]},
                {"values": ["0", "-15"]}
            ], "epsilon": "1/1000", "rounding": false}"#,
        )
        .unwrap();
        assert_eq!(f.mode, PredictionMode::Perfect);
        let c = f.collection().unwrap();
        assert_eq!(c.sets().len(), 3);
        assert!(c.sets()[2].contains(&Point2::on_axis(int(-15))));
        let cfg = f.config();
        assert_eq!(cfg.epsilon, rat(1, 1000));
        assert!(!cfg.rounding_enabled);
        assert_eq!(f.seed(), ConvexPolygon::point(Point2::origin()));
        assert!(f.scalar().is_none());
    }

    #[test]
    fn scalar_only_files_have_a_1d_view() {
        let f =
            CollectionFile::from_json(r#"{"sets": [{"values": ["0","3"]}, {"values": ["1"]}]}"#)
                .unwrap();
        let s = f.scalar().unwrap();
        assert_eq!(s.max_step(), int(3));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(CollectionFile::from_json(r#"{"sets": []}"#).is_err());
        assert!(CollectionFile::from_json(r#"{"sets": [{"points": []}]}"#).is_err());
        assert!(CollectionFile::from_json(r#"{"sets": [{"values": ["1"]}], "q0": []}"#).is_err());
        assert!(CollectionFile::from_json(r#"{"sets": [{"values": ["x"]}]}"#).is_err());
    }
}
