use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::collection::Collection;
use super::operators::apply_collection;
use super::rounding::{conditional_round, outer_round, IterationConfig};
use crate::error::{Error, Result};
use crate::geometry::rational::serde_str;
use crate::geometry::{ConvexPolygon, Point2, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

/// A coordinate moved by conditional rounding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundingEvent {
    pub iteration: usize,
    pub vertex: usize,
    pub axis: Axis,
    #[serde(with = "serde_str")]
    pub before: Rational,
    #[serde(with = "serde_str")]
    pub after: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationResult {
    pub invariant_set: ConvexPolygon,
    /// Number of applications that changed the iterate; on convergence the
    /// set is the `iterations`-th iterate and one more application confirmed it.
    pub iterations: usize,
    pub converged: bool,
    pub rounding_events: Vec<RoundingEvent>,
    /// SHA-256 of the canonical vertex list of each iterate, seed first.
    pub history_hashes: Vec<String>,
    /// Vertex count of each iterate, seed first.
    pub vertex_counts: Vec<usize>,
}

impl IterationResult {
    /// Iteration indices at which rounding moved at least one coordinate.
    pub fn rounding_iterations(&self) -> Vec<usize> {
        let mut its: Vec<usize> = self.rounding_events.iter().map(|e| e.iteration).collect();
        its.dedup();
        its
    }
}

fn digest(p: &ConvexPolygon) -> String {
    hex::encode(Sha256::digest(p.canonical_text().as_bytes()))
}

/// Iterates the collection operator from `ch Q0`.
///
/// Each step applies the operator, checks that the output contains the input
/// (the operators are extensive, so anything else is a bug), stops if the
/// output equals the input, and otherwise applies conditional rounding to
/// every vertex coordinate before continuing. Convergence therefore always
/// certifies an exact fixed point. `Q0` itself is never rounded.
pub fn iterate_to_invariance(
    coll: &Collection,
    q0: &ConvexPolygon,
    cfg: &IterationConfig,
) -> Result<IterationResult> {
    cfg.validate()?;
    if q0.is_empty() {
        return Err(Error::Domain("the seed region must be non-empty".into()));
    }
    let mut current = ConvexPolygon::hull(q0.vertices());
    let mut result = IterationResult {
        invariant_set: current.clone(),
        iterations: 0,
        converged: false,
        rounding_events: Vec::new(),
        history_hashes: vec![digest(&current)],
        vertex_counts: vec![current.len()],
    };
    for application in 1..=cfg.max_iterations {
        let next = apply_collection(coll, &current);
        if !next.contains_polygon(&current) {
            return Err(Error::NonMonotone {
                iteration: application,
            });
        }
        if next == current {
            result.converged = true;
            break;
        }
        let next = match (&cfg.outer_grid, cfg.rounding_enabled) {
            (Some(pitch), _) => outer_round(&next, pitch),
            (None, true) => round_vertices(next, application, cfg, &mut result.rounding_events),
            (None, false) => next,
        };
        result.iterations = application;
        result.history_hashes.push(digest(&next));
        result.vertex_counts.push(next.len());
        current = next;
    }
    result.invariant_set = current;
    Ok(result)
}

fn round_vertices(
    poly: ConvexPolygon,
    iteration: usize,
    cfg: &IterationConfig,
    events: &mut Vec<RoundingEvent>,
) -> ConvexPolygon {
    let mut pts: Vec<Point2> = Vec::with_capacity(poly.len());
    for (vertex, v) in poly.into_vertices().into_iter().enumerate() {
        let x = conditional_round(&v.x, cfg);
        let y = conditional_round(&v.y, cfg);
        for (axis, before, after) in [(Axis::X, &v.x, &x), (Axis::Y, &v.y, &y)] {
            if before != after {
                events.push(RoundingEvent {
                    iteration,
                    vertex,
                    axis,
                    before: before.clone(),
                    after: after.clone(),
                });
            }
        }
        pts.push(Point2::new(x, y));
    }
    // Rounding can break convexity or create collinear vertices.
    ConvexPolygon::hull_owned(&mut pts)
}
