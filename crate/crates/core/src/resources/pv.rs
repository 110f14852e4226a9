use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rational::serde_str;
use crate::geometry::{int, ConvexPolygon, Point2, Rational};

/// PV converter limits. The rated apparent power satisfies
/// `s_rated^2 = p_max^2 (1 + tan^2 φ)`; it is kept squared because it is
/// irrational in general.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvParams {
    #[serde(with = "serde_str")]
    pub p_max: Rational,
    #[serde(with = "serde_str")]
    pub tan_phi: Rational,
}

impl PvParams {
    pub fn new(p_max: Rational, tan_phi: Rational) -> Result<Self> {
        let p = Self { p_max, tan_phi };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_max < int(0) || self.tan_phi < int(0) {
            return Err(Error::Config(
                "p_max and tan_phi must be non-negative".into(),
            ));
        }
        Ok(())
    }

    pub fn rated_power_sq(&self) -> Rational {
        &self.p_max * &self.p_max * (int(1) + &self.tan_phi * &self.tan_phi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvState {
    /// Real power currently available from the panels.
    #[serde(with = "serde_str")]
    pub p_avail: Rational,
}

/// `{(P, Q) : 0 <= P <= x, |Q| <= P tan φ}`.
pub fn pv_triangle(params: &PvParams, x: &Rational) -> Result<ConvexPolygon> {
    if *x < int(0) || *x > params.p_max {
        return Err(Error::Domain(format!(
            "real-power cap {x} outside [0, {}]",
            params.p_max
        )));
    }
    let q = x * &params.tan_phi;
    let pts = [
        Point2::origin(),
        Point2::new(x.clone(), q.clone()),
        Point2::new(x.clone(), -q),
    ];
    Ok(ConvexPolygon::hull(pts.iter()))
}

pub fn pv_feasible_set(params: &PvParams, state: &PvState) -> ConvexPolygon {
    let cap = state.p_avail.clone().clamp(int(0), params.p_max.clone());
    pv_triangle(params, &cap).expect("cap clamped into range")
}

/// Squared diameter of the full triangle: the larger of a leg and the base.
pub fn pv_error_bound(params: &PvParams) -> Rational {
    let p2 = &params.p_max * &params.p_max;
    let t2 = &params.tan_phi * &params.tan_phi;
    let leg = &p2 * (int(1) + &t2);
    let base = int(4) * p2 * t2;
    leg.max(base)
}

/// `𝒯(k p_max / m)` for `k = 0..=m`.
pub fn pv_family(params: &PvParams, m: u32) -> Vec<ConvexPolygon> {
    let m = m.max(1);
    (0..=m)
        .map(|k| {
            let x = &params.p_max * int(k as i64) / int(m as i64);
            pv_triangle(params, &x).expect("in range")
        })
        .collect()
}
