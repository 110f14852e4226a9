//! Feasible sets of a local controller: finite point sets or convex regions.
//!
//! The set operators all reduce to one primitive, the *residual image*
//! `ch { z - proj_S(z) : z ∈ X }` of a convex polygon `X`, where each point is
//! paired with every closed Voronoi cell it belongs to. For a finite `S` the
//! cells are bisector intersections; for a convex polygon `S` they are the
//! translated normal cones (interior points, facet rays, vertex cones), on each
//! of which `z ↦ z - proj_S(z)` is affine, so images of vertices suffice.

use serde::{Deserialize, Serialize};

use super::halfplane::HalfPlane;
use super::point::Point2;
use super::pointset::PointSet;
use super::polygon::ConvexPolygon;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeasibleSet {
    /// Finitely many implementable setpoints.
    Points(PointSet),
    /// A convex continuum of implementable setpoints.
    Polygon(ConvexPolygon),
}

impl FeasibleSet {
    pub fn hull(&self) -> ConvexPolygon {
        match self {
            FeasibleSet::Points(s) => s.hull(),
            FeasibleSet::Polygon(p) => p.clone(),
        }
    }

    pub fn contains(&self, p: &Point2) -> bool {
        match self {
            FeasibleSet::Points(s) => s.contains(p),
            FeasibleSet::Polygon(poly) => poly.contains(p),
        }
    }

    /// Closest feasible point (deterministic tie-breaking for finite sets).
    pub fn project(&self, z: &Point2) -> Point2 {
        match self {
            FeasibleSet::Points(s) => s.project(z).clone(),
            FeasibleSet::Polygon(p) => p.project(z),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            FeasibleSet::Points(_) => false,
            FeasibleSet::Polygon(p) => p.is_empty(),
        }
    }

    /// `ch ⋃_c ((X ∩ V(c)) - c)` over the closed Voronoi cells of the set.
    pub fn residual_image(&self, region: &ConvexPolygon) -> ConvexPolygon {
        if region.is_empty() {
            return ConvexPolygon::empty();
        }
        match self {
            FeasibleSet::Points(s) => finite_residual_image(s, region),
            FeasibleSet::Polygon(p) => convex_residual_image(p, region),
        }
    }

    pub fn canonical_text(&self) -> String {
        match self {
            FeasibleSet::Points(s) => s.canonical_text(),
            FeasibleSet::Polygon(p) => format!("ch{}", p.canonical_text()),
        }
    }
}

impl From<PointSet> for FeasibleSet {
    fn from(s: PointSet) -> Self {
        FeasibleSet::Points(s)
    }
}

impl From<ConvexPolygon> for FeasibleSet {
    fn from(p: ConvexPolygon) -> Self {
        FeasibleSet::Polygon(p)
    }
}

fn finite_residual_image(s: &PointSet, region: &ConvexPolygon) -> ConvexPolygon {
    let mut pts = Vec::new();
    for c in s.points() {
        let piece = s.clip_to_cell(region, c).expect("c is a member");
        let neg_c = -c;
        pts.extend(piece.vertices().iter().map(|v| v + &neg_c));
    }
    ConvexPolygon::hull_owned(&mut pts)
}

fn convex_residual_image(s: &ConvexPolygon, region: &ConvexPolygon) -> ConvexPolygon {
    let vs = s.vertices();
    let n = vs.len();
    match n {
        0 => return ConvexPolygon::empty(),
        1 => return region.translate(&-&vs[0]),
        _ => {}
    }
    let mut pts: Vec<Point2> = Vec::new();
    // Points of S itself have zero residual.
    if n >= 3 && !region.intersect(s).is_empty() {
        pts.push(Point2::origin());
    }
    for i in 0..n {
        let a = &vs[i];
        let b = &vs[(i + 1) % n];
        let prev = &vs[(i + n - 1) % n];
        let edge = b - a;
        let normal = edge.rot_cw();

        // Vertex cone at `a`: residual is z - a.
        let incoming = a - prev;
        let cone = [
            half_plane(&-&incoming, -incoming.dot(a)),
            half_plane(&edge, edge.dot(a)),
        ];
        let piece = region.clip_all(cone.iter());
        pts.extend(piece.vertices().iter().map(|v| v - a));

        // Facet strip over [a, b]: residual is the normal component.
        let strip = [
            half_plane(&-&normal, -normal.dot(a)),
            half_plane(&-&edge, -edge.dot(a)),
            half_plane(&edge, edge.dot(b)),
        ];
        let piece = region.clip_all(strip.iter());
        let len_sq = normal.norm_sq();
        let offset = normal.dot(a);
        pts.extend(
            piece
                .vertices()
                .iter()
                .map(|v| normal.scale(&((normal.dot(v) - &offset) / &len_sq))),
        );
    }
    ConvexPolygon::hull_owned(&mut pts)
}

fn half_plane(normal: &Point2, offset: super::rational::Rational) -> HalfPlane {
    HalfPlane::from_normal(normal, offset).expect("non-degenerate edge")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, rat};

    fn poly(coords: &[(i64, i64)]) -> ConvexPolygon {
        let pts: Vec<Point2> = coords.iter().map(|&(x, y)| Point2::int(x, y)).collect();
        ConvexPolygon::hull(pts.iter())
    }

    // Residual z - proj(z) for sampled z ∈ X must land in the image.
    fn check_sampled(s: &FeasibleSet, region: &ConvexPolygon) {
        let image = s.residual_image(region);
        let vs = region.vertices();
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                for k in 0..=4 {
                    let t = rat(k, 4);
                    let z = &vs[i] + &(&vs[j] - &vs[i]).scale(&t);
                    let r = &z - &s.project(&z);
                    assert!(image.contains(&r), "{z} -> {r} not in {image}");
                }
            }
        }
    }

    #[test]
    fn triangle_residuals_cover_samples() {
        let tri = FeasibleSet::Polygon(poly(&[(0, 0), (1, 1), (1, -1)]));
        let big = poly(&[(0, 0), (4, 4), (4, -4)]);
        check_sampled(&tri, &big);
        let off = poly(&[(-3, 2), (5, 7), (6, -4)]);
        check_sampled(&tri, &off);
    }

    #[test]
    fn segment_residuals_cover_samples() {
        let seg = FeasibleSet::Polygon(poly(&[(0, 0), (2, 1)]));
        check_sampled(&seg, &poly(&[(-3, -3), (4, -1), (1, 5)]));
    }

    #[test]
    fn region_inside_convex_set_maps_to_origin() {
        let sq = FeasibleSet::Polygon(poly(&[(0, 0), (4, 0), (4, 4), (0, 4)]));
        let inner = poly(&[(1, 1), (2, 1), (2, 2)]);
        assert_eq!(
            sq.residual_image(&inner),
            ConvexPolygon::point(Point2::origin())
        );
    }

    #[test]
    fn residual_for_points_to_the_right_of_a_square() {
        let sq = FeasibleSet::Polygon(poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]));
        let region = ConvexPolygon::hull(
            [
                Point2::new(int(2), rat(1, 2)),
                Point2::new(int(3), rat(1, 2)),
            ]
            .iter(),
        );
        assert_eq!(sq.residual_image(&region), poly(&[(1, 0), (2, 0)]));
    }

    #[test]
    fn finite_two_point_residuals() {
        // S = {-1, 1} on the axis, X = [-1, 1]: cells split at 0.
        let s = FeasibleSet::Points(PointSet::on_axis([int(-1), int(1)]).unwrap());
        let x = poly(&[(-1, 0), (1, 0)]);
        assert_eq!(s.residual_image(&x), poly(&[(-1, 0), (1, 0)]));
    }
}
