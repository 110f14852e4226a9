use serde::{Deserialize, Serialize};

use super::policy::RequestPolicy;
use super::{implement, ControllerState, Implementation};
use crate::error::Result;
use crate::geometry::{int, ConvexPolygon, FeasibleSet, Point2, Rational};
use crate::invariant::PredictionMode;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub n: u64,
    pub set: FeasibleSet,
    pub advert: ConvexPolygon,
    pub x: Point2,
    pub y: Point2,
    /// Error before the step, `e_n`.
    pub e: Point2,
    /// Error after the step, `e_{n+1}`.
    pub e_next: Point2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControllerTrace {
    pub mode: PredictionMode,
    pub implementation: Implementation,
    pub e0: Point2,
    pub records: Vec<StepRecord>,
}

impl ControllerTrace {
    pub fn new(mode: PredictionMode, implementation: Implementation, e0: Point2) -> Self {
        Self {
            mode,
            implementation,
            e0,
            records: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// `e_0, e_1, ..., e_N`.
    pub fn errors(&self) -> impl Iterator<Item = &Point2> {
        std::iter::once(&self.e0).chain(self.records.iter().map(|r| &r.e_next))
    }

    pub fn final_error(&self) -> &Point2 {
        self.records.last().map_or(&self.e0, |r| &r.e_next)
    }

    pub fn max_error_sq(&self) -> Rational {
        self.errors().map(Point2::norm_sq).max().unwrap_or_default()
    }

    pub fn sum_requests(&self) -> Point2 {
        self.records
            .iter()
            .fold(Point2::origin(), |acc, r| &acc + &r.x)
    }

    pub fn sum_implemented(&self) -> Point2 {
        self.records
            .iter()
            .fold(Point2::origin(), |acc, r| &acc + &r.y)
    }

    /// Every record satisfies `e_{n+1} = e_n + x_n - y_n`, chains onto the
    /// previous one, requests lie in the advertisement and setpoints in the
    /// feasible set. Returns the first offending step.
    pub fn check(&self) -> std::result::Result<(), u64> {
        let mut prev = &self.e0;
        for r in &self.records {
            let ok = &r.e == prev
                && r.e_next == &(&r.e + &r.x) - &r.y
                && r.advert.contains(&r.x)
                && r.set.contains(&r.y);
            if !ok {
                return Err(r.n);
            }
            prev = &r.e_next;
        }
        Ok(())
    }

    /// `Σ (x_n - y_n) = e_N - e_0`, exactly.
    pub fn telescopes(&self) -> bool {
        &self.sum_requests() - &self.sum_implemented() == self.final_error() - &self.e0
    }

    /// Mean of `x_n - y_n` over the first `k` steps.
    pub fn mean_gap(&self, k: usize) -> Point2 {
        if k == 0 {
            return Point2::origin();
        }
        let s = self.records[..k]
            .iter()
            .fold(Point2::origin(), |acc, r| &(&acc + &r.x) - &r.y);
        s.scale(&(int(1) / int(k as i64)))
    }
}

/// Runs one controller against an exogenous sequence of feasible sets.
///
/// Persistent prediction advertises `ch S_{n-1}` at step `n` (and `ch S_0`
/// at step 0).
pub fn run_trace(
    mode: PredictionMode,
    implementation: Implementation,
    sets: &mut dyn FnMut(u64) -> FeasibleSet,
    policy: &mut dyn RequestPolicy,
    horizon: u64,
    e0: Point2,
) -> Result<ControllerTrace> {
    let mut trace = ControllerTrace::new(mode, implementation, e0.clone());
    let mut state = ControllerState::new(e0);
    let mut prev_hull: Option<ConvexPolygon> = None;
    for n in 0..horizon {
        let s = sets(n);
        let hull = s.hull();
        let advert = match mode {
            PredictionMode::Perfect => hull.clone(),
            PredictionMode::Persistent => prev_hull.take().unwrap_or_else(|| hull.clone()),
        };
        let x = policy.request(n, &advert, &state.e);
        let (y, next) = implement(&state, &advert, &x, &s, implementation)?;
        trace.records.push(StepRecord {
            n,
            set: s,
            advert,
            x,
            y,
            e: state.e.clone(),
            e_next: next.e.clone(),
        });
        state = next;
        prev_hull = Some(hull);
    }
    Ok(trace)
}
