//! Exact non-convex iteration on the real line.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{int, Interval, IntervalUnion, Rational, ScalarSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneDimCollection {
    sets: Vec<ScalarSet>,
}

impl OneDimCollection {
    pub fn new(sets: Vec<ScalarSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Domain("a collection needs at least one set".into()));
        }
        Ok(Self { sets })
    }

    pub fn sets(&self) -> &[ScalarSet] {
        &self.sets
    }

    /// Largest consecutive gap over all member sets.
    pub fn max_step(&self) -> Rational {
        max_step_size(&self.sets)
    }

    /// `[-Δ/2, Δ/2]`, the closed-form minimal invariant set.
    pub fn analytic_invariant(&self) -> IntervalUnion {
        let half = self.max_step() / int(2);
        IntervalUnion::from_intervals(vec![Interval {
            lo: -half.clone(),
            hi: half,
        }])
    }
}

/// Largest gap between consecutive points over a collection of finite sets.
pub fn max_step_size(sets: &[ScalarSet]) -> Rational {
    sets.iter()
        .map(ScalarSet::max_step)
        .max()
        .unwrap_or_default()
}

/// `⋃_c ((ch S + Q) ∩ V(c)) - c`, without convexification.
pub fn apply_g_1d(s: &ScalarSet, q: &IntervalUnion) -> IntervalUnion {
    let vals = s.values();
    let lo = &vals[0];
    let hi = &vals[vals.len() - 1];
    let grown = IntervalUnion::from_intervals(
        q.intervals()
            .iter()
            .map(|iv| Interval {
                lo: &iv.lo + lo,
                hi: &iv.hi + hi,
            })
            .collect(),
    );
    let two = int(2);
    let mut pieces = Vec::new();
    for (i, c) in vals.iter().enumerate() {
        let left = (i > 0).then(|| (&vals[i - 1] + c) / &two);
        let right = vals.get(i + 1).map(|n| (c + n) / &two);
        let neg = -c;
        for iv in grown.intervals() {
            if let Some(piece) = iv.clamp(left.as_ref(), right.as_ref()) {
                pieces.push(piece.shift(&neg));
            }
        }
    }
    IntervalUnion::from_intervals(pieces)
}

pub fn apply_g_1d_collection(coll: &OneDimCollection, q: &IntervalUnion) -> IntervalUnion {
    coll.sets.iter().fold(IntervalUnion::empty(), |acc, s| {
        acc.union(&apply_g_1d(s, q))
    })
}

/// Iterates the collection operator from `q0` until the iterate repeats.
/// Returns the fixed point and the number of changing applications.
pub fn iterate_1d(
    coll: &OneDimCollection,
    q0: &IntervalUnion,
    max_iterations: usize,
) -> Result<(IntervalUnion, usize)> {
    if q0.is_empty() {
        return Err(Error::Domain("the seed region must be non-empty".into()));
    }
    let mut current = q0.clone();
    for it in 0..max_iterations {
        let next = apply_g_1d_collection(coll, &current);
        if !current.is_subset(&next) {
            return Err(Error::NonMonotone { iteration: it + 1 });
        }
        if next == current {
            return Ok((current, it));
        }
        current = next;
    }
    Err(Error::Domain(format!(
        "no fixed point within {max_iterations} iterations"
    )))
}
