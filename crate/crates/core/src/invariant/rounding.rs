use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rational::{floor_to, fract, serde_str, Rational};
use crate::geometry::{rat, ConvexPolygon, Point2};

/// Knobs of the fixed-point iteration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationConfig {
    /// Snap tolerance.
    #[serde(with = "serde_str")]
    pub epsilon: Rational,
    /// Candidate fractional parts, each in `[0, 1)`.
    #[serde(with = "serde_str::vec")]
    pub snap_fractions: Vec<Rational>,
    /// Cap on operator applications.
    pub max_iterations: usize,
    pub rounding_enabled: bool,
    /// Also allow snapping up to the next integer, so values just below an
    /// integer can settle. Off by default.
    #[serde(default)]
    pub wrap: bool,
    /// When set, non-converged iterates are instead grown to the hull of the
    /// grid cells (of this pitch) containing their vertices. The sequence then
    /// increases on a finite lattice, so it stops whenever it stays bounded;
    /// the result is invariant but need not be minimal.
    #[serde(with = "serde_str::option", default)]
    pub outer_grid: Option<Rational>,
}

impl Default for IterationConfig {
    fn default() -> Self {
        Self {
            epsilon: rat(1, 100_000_000),
            snap_fractions: default_snap_fractions(),
            max_iterations: 10_000,
            rounding_enabled: true,
            wrap: false,
            outer_grid: None,
        }
    }
}

impl IterationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epsilon < Rational::default() {
            return Err(Error::Config("epsilon must be non-negative".into()));
        }
        let zero = Rational::default();
        let one = rat(1, 1);
        if let Some(bad) = self
            .snap_fractions
            .iter()
            .find(|x| **x < zero || **x >= one)
        {
            return Err(Error::Config(format!(
                "snap fraction {bad} is not in [0, 1)"
            )));
        }
        if matches!(&self.outer_grid, Some(h) if *h <= zero) {
            return Err(Error::Config("outer grid pitch must be positive".into()));
        }
        Ok(())
    }

    pub fn without_rounding(mut self) -> Self {
        self.rounding_enabled = false;
        self
    }

    pub fn with_outer_grid(mut self, pitch: Rational) -> Self {
        self.outer_grid = Some(pitch);
        self
    }
}

/// Hull of the closed `pitch`-grid cells containing each vertex; contains
/// `poly` and has grid vertices.
pub fn outer_round(poly: &ConvexPolygon, pitch: &Rational) -> ConvexPolygon {
    let mut pts = Vec::with_capacity(4 * poly.len());
    for v in poly.vertices() {
        let (x0, y0) = (floor_to(&v.x, pitch), floor_to(&v.y, pitch));
        let x1 = if x0 == v.x { x0.clone() } else { &x0 + pitch };
        let y1 = if y0 == v.y { y0.clone() } else { &y0 + pitch };
        for x in [&x0, &x1] {
            for y in [&y0, &y1] {
                pts.push(Point2::new(x.clone(), y.clone()));
            }
        }
    }
    ConvexPolygon::hull_owned(&mut pts)
}

/// Every proper fraction `k/d` with `d <= 6`, in ascending order.
pub fn default_snap_fractions() -> Vec<Rational> {
    let mut out: Vec<Rational> = (1..=6i64)
        .flat_map(|d| (0..d).map(move |k| rat(k, d)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Snaps `q` to `floor(q) + t`, `t` the candidate fraction nearest to the
/// fractional part of `q` (ties to the smaller), when within `epsilon`.
pub fn conditional_round(q: &Rational, cfg: &IterationConfig) -> Rational {
    let f = fract(q);
    let mut best: Option<(Rational, &Rational)> = None;
    for t in &cfg.snap_fractions {
        let d = (t - &f).abs();
        match &best {
            Some((bd, bt)) if d > *bd || (d == *bd && t >= *bt) => {}
            _ => best = Some((d, t)),
        }
    }
    let one = rat(1, 1);
    if cfg.wrap {
        let d = &one - &f;
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, &one));
        }
    }
    match best {
        Some((d, t)) if d <= cfg.epsilon => q.floor() + t,
        _ => q.clone(),
    }
}
