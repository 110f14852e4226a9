//! A projected-gradient stand-in for the grid-side controller.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rational::{round_to, serde_str};
use crate::geometry::{int, ConvexPolygon, Point2, Rational};

/// Per-resource objective of the central controller.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Cost {
    /// `curvature/2 · ‖x - center‖²`.
    Quadratic {
        center: Point2,
        #[serde(with = "serde_str", default = "one")]
        curvature: Rational,
    },
    /// `-weight · P`.
    MaximizeP {
        #[serde(with = "serde_str", default = "one")]
        weight: Rational,
    },
    /// No gradient: always request the advertised point closest to `point`.
    Target { point: Point2 },
    /// Random points of the advertisement.
    Random {
        #[serde(default = "default_random_resolution")]
        resolution: u32,
    },
    /// The advertised vertex that pushes the carried error furthest.
    Adversarial,
}

fn one() -> Rational {
    int(1)
}

fn default_random_resolution() -> u32 {
    64
}

impl Cost {
    pub fn validate(&self) -> Result<()> {
        match self {
            Cost::Quadratic { curvature, .. } if *curvature < int(0) => {
                Err(Error::Config("curvature must be non-negative".into()))
            }
            Cost::Random { resolution: 0 } => Err(Error::Config(
                "random request resolution must be positive".into(),
            )),
            _ => Ok(()),
        }
    }

    /// `None` for the costs that do not drive a gradient step.
    pub fn gradient(&self, x: &Point2) -> Option<Point2> {
        match self {
            Cost::Quadratic { center, curvature } => Some((x - center).scale(curvature)),
            Cost::MaximizeP { weight } => Some(Point2::new(-weight.clone(), int(0))),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralPolicy {
    pub cost: Cost,
    #[serde(with = "serde_str")]
    pub step_size: Rational,
    #[serde(with = "serde_str::option", default)]
    pub resolution: Option<Rational>,
}

/// `proj_A(x_prev - step · ∇cost(x_prev))`, with the unprojected point
/// optionally rounded to the policy's grid first. `Target` costs project
/// their target; the random and adversarial costs have no deterministic
/// step and return the projection of `x_prev`.
pub fn central_step(policy: &CentralPolicy, advert: &ConvexPolygon, x_prev: &Point2) -> Point2 {
    assert!(!advert.is_empty(), "central step on an empty advertisement");
    let raw = match (&policy.cost, policy.cost.gradient(x_prev)) {
        (_, Some(g)) => {
            let p = x_prev - &g.scale(&policy.step_size);
            match &policy.resolution {
                Some(r) => Point2::new(round_to(&p.x, r), round_to(&p.y, r)),
                None => p,
            }
        }
        (Cost::Target { point }, None) => point.clone(),
        (_, None) => x_prev.clone(),
    };
    advert.project(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    fn heater_segment() -> ConvexPolygon {
        ConvexPolygon::hull([Point2::int(-15, 0), Point2::int(0, 0)].iter())
    }

    fn quadratic(step: Rational) -> CentralPolicy {
        CentralPolicy {
            cost: Cost::Quadratic {
                center: Point2::new(rat(-15, 2), int(0)),
                curvature: int(1),
            },
            step_size: step,
            resolution: None,
        }
    }

    #[test]
    fn zero_gradient_is_a_fixed_point() {
        let p = quadratic(rat(1, 2));
        let x = Point2::new(rat(-15, 2), int(0));
        assert_eq!(central_step(&p, &heater_segment(), &x), x);
    }

    #[test]
    fn quadratic_iterates_reach_the_center() {
        let p = quadratic(rat(1, 2));
        let mut x = Point2::origin();
        for _ in 0..60 {
            x = central_step(&p, &heater_segment(), &x);
            assert!(heater_segment().contains(&x));
        }
        let gap = &x.x + rat(15, 2);
        assert!(crate::geometry::rational::abs(&gap) < rat(1, 1_000_000));
        // Unit step with unit curvature jumps straight to the minimum.
        let p = quadratic(int(1));
        assert_eq!(
            central_step(&p, &heater_segment(), &Point2::origin()),
            Point2::new(rat(-15, 2), int(0))
        );
    }

    #[test]
    fn maximize_p_moves_right_and_is_clipped() {
        let tri =
            ConvexPolygon::hull([Point2::int(0, 0), Point2::int(2, 1), Point2::int(2, -1)].iter());
        let p = CentralPolicy {
            cost: Cost::MaximizeP { weight: int(1) },
            step_size: int(1),
            resolution: None,
        };
        let x1 = central_step(&p, &tri, &Point2::origin());
        assert_eq!(x1, Point2::int(1, 0));
        let x2 = central_step(&p, &tri, &x1);
        assert_eq!(x2, Point2::int(2, 0));
        assert_eq!(central_step(&p, &tri, &x2), Point2::int(2, 0));
    }

    #[test]
    fn target_is_projected() {
        let p = CentralPolicy {
            cost: Cost::Target {
                point: Point2::int(-20, 3),
            },
            step_size: int(1),
            resolution: None,
        };
        assert_eq!(
            central_step(&p, &heater_segment(), &Point2::origin()),
            Point2::int(-15, 0)
        );
    }

    #[test]
    fn rounding_happens_before_projection() {
        let mut p = quadratic(rat(1, 7));
        p.resolution = Some(rat(1, 10));
        // -15/14 lands on -11/10.
        let x = central_step(&p, &heater_segment(), &Point2::origin());
        assert_eq!(x, Point2::new(rat(-11, 10), int(0)));
    }
}
