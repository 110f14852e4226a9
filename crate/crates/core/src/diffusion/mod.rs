//! Local-controller dynamics.
//!
//! At step `n` the controller has advertised `A_n`, receives `x_n ∈ A_n`,
//! learns its actual feasible set `S_n` and implements
//! `y_n = proj_{S_n}(e_n + x_n)`; the error carried forward is
//! `e_{n+1} = e_n + x_n - y_n`. Under perfect prediction `A_n = ch S_n`;
//! under persistent prediction `A_{n+1} = ch S_n`.

mod policy;
mod trace;

pub use policy::{Adversarial, ConstantTarget, RequestPolicy, UniformRandom};
pub use trace::{run_trace, ControllerTrace, StepRecord};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ConvexPolygon, FeasibleSet, Point2};

/// How the implemented setpoint is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Implementation {
    /// Closest feasible point to request plus carried error.
    #[default]
    ErrorDiffusion,
    /// Closest feasible point to the bare request; the error is never fed back.
    Nearest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControllerState {
    /// Accumulated error `e_n`.
    pub e: Point2,
    /// Modified request `e_n + x_n` once `x_n` is known.
    pub z: Option<Point2>,
    pub n: u64,
}

impl ControllerState {
    pub fn new(e0: Point2) -> Self {
        Self {
            e: e0,
            z: None,
            n: 0,
        }
    }
}

impl Default for ControllerState {
    fn default() -> Self {
        Self::new(Point2::origin())
    }
}

/// Implements request `x` against feasible set `s`, after checking `x`
/// against the advertisement. Returns `y` and the state for step `n + 1`.
pub fn implement(
    state: &ControllerState,
    advert: &ConvexPolygon,
    x: &Point2,
    s: &FeasibleSet,
    imp: Implementation,
) -> Result<(Point2, ControllerState)> {
    if !advert.contains(x) {
        return Err(Error::RequestInfeasible {
            step: state.n,
            request: Box::new(x.clone()),
        });
    }
    let z = &state.e + x;
    let y = match imp {
        Implementation::ErrorDiffusion => s.project(&z),
        Implementation::Nearest => s.project(x),
    };
    let e = &z - &y;
    let next = ControllerState {
        e,
        z: None,
        n: state.n + 1,
    };
    Ok((y, next))
}

/// One step with perfect prediction: `x` must lie in `ch S`.
pub fn step_perfect(
    state: &ControllerState,
    x: &Point2,
    s: &FeasibleSet,
) -> Result<(Point2, ControllerState)> {
    implement(state, &s.hull(), x, s, Implementation::ErrorDiffusion)
}

/// One step in modified-request form: `state.z` holds `z_n = e_n + x_n`,
/// `s` is the realized `S_n` and `x_next ∈ ch S_n` is the request answering
/// the advertisement `ch S_n`. Returns `y_n`; the new state carries
/// `z_{n+1} = z_n + x_next - y_n` and `e_{n+1} = z_{n+1} - x_next`.
pub fn step_persistent(
    state: &ControllerState,
    x_next: &Point2,
    s: &FeasibleSet,
) -> Result<(Point2, ControllerState)> {
    let z = state.z.clone().ok_or_else(|| {
        Error::Domain("persistent step needs the current modified request".into())
    })?;
    if !s.hull().contains(x_next) {
        return Err(Error::RequestInfeasible {
            step: state.n + 1,
            request: Box::new(x_next.clone()),
        });
    }
    let y = s.project(&z);
    let z_next = &(&z + x_next) - &y;
    let e = &z_next - x_next;
    Ok((
        y,
        ControllerState {
            e,
            z: Some(z_next),
            n: state.n + 1,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat, PointSet, Rational};

    fn heater(p: i64) -> FeasibleSet {
        PointSet::on_axis([int(-p), int(0)]).unwrap().into()
    }

    fn on_axis(v: Rational) -> Point2 {
        Point2::on_axis(v)
    }

    #[test]
    fn implementable_request_leaves_no_error() {
        let s = heater(2);
        let (y, next) = step_perfect(&ControllerState::default(), &Point2::int(-2, 0), &s).unwrap();
        assert_eq!(y, Point2::int(-2, 0));
        assert!(next.e.is_origin());
    }

    #[test]
    fn half_power_duty_cycles() {
        let s = heater(2);
        let x = Point2::int(-1, 0);
        let mut st = ControllerState::default();
        let mut ys = Vec::new();
        for _ in 0..6 {
            let (y, next) = step_perfect(&st, &x, &s).unwrap();
            assert!(next.e == Point2::origin() || next.e == Point2::int(1, 0));
            ys.push(y.x.clone());
            st = next;
        }
        // Ties go to the lexicographically smaller point, -P.
        assert_eq!(ys, [-2, 0, -2, 0, -2, 0].map(int));
    }

    #[test]
    fn request_outside_hull_is_rejected() {
        let s = heater(2);
        let err = step_perfect(&ControllerState::default(), &Point2::int(1, 0), &s).unwrap_err();
        assert!(matches!(err, Error::RequestInfeasible { step: 0, .. }));
    }

    #[test]
    fn persistent_step_shrinking_set() {
        // z inside the old triangle, new set is the single point at the origin.
        let origin: FeasibleSet = ConvexPolygon::point(Point2::origin()).into();
        let st = ControllerState {
            e: Point2::origin(),
            z: Some(Point2::new(rat(1, 2), rat(1, 4))),
            n: 0,
        };
        let (y, next) = step_persistent(&st, &Point2::origin(), &origin).unwrap();
        assert!(y.is_origin());
        assert_eq!(next.z, Some(Point2::new(rat(1, 2), rat(1, 4))));
        assert_eq!(next.e, Point2::new(rat(1, 2), rat(1, 4)));
    }

    #[test]
    fn persistent_matches_direct_form() {
        let s = heater(3);
        let xs = [rat(-1, 2), rat(-5, 2), int(-1), int(0), rat(-3, 2)];
        let mut st = ControllerState {
            z: Some(on_axis(xs[0].clone())),
            ..ControllerState::default()
        };
        let mut direct = ControllerState::default();
        for w in xs.windows(2) {
            let (y, next) = step_persistent(&st, &on_axis(w[1].clone()), &s).unwrap();
            let (y2, d2) = step_perfect(&direct, &on_axis(w[0].clone()), &s).unwrap();
            assert_eq!(y, y2);
            assert_eq!(next.e, d2.e);
            st = next;
            direct = d2;
        }
    }

    #[test]
    fn nearest_never_feeds_back() {
        let s = heater(2);
        let x = Point2::int(-1, 0);
        let mut st = ControllerState::default();
        for k in 1..=5 {
            let (y, next) = implement(&st, &s.hull(), &x, &s, Implementation::Nearest).unwrap();
            assert_eq!(y, Point2::int(-2, 0));
            assert_eq!(next.e, Point2::int(k, 0));
            st = next;
        }
    }
}
