use std::collections::BTreeSet;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::collection::Collection;
use crate::geometry::rational::{serde_str, to_f64};
use crate::geometry::{int, ConvexPolygon, FeasibleSet, Point2, Rational};

/// Preconditions under which the iteration has a bounded limit: finitely
/// many facet normals and uniformly bounded hulls and Voronoi cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundednessReport {
    /// Distinct outward facet directions over all member hulls.
    pub normal_directions: usize,
    #[serde(with = "serde_str")]
    pub max_hull_diameter_sq: Rational,
    /// Over bounded Voronoi cells of finite members only.
    #[serde(with = "serde_str")]
    pub max_bounded_cell_diameter_sq: Rational,
    pub bounded_cells: usize,
    pub satisfied: bool,
}

fn direction_key(v: &Point2) -> Point2 {
    let m = v.x.abs().max(v.y.abs());
    Point2::new(&v.x / &m, &v.y / &m)
}

pub fn boundedness_report(coll: &Collection) -> BoundednessReport {
    let mut normals = BTreeSet::new();
    let mut max_hull = int(0);
    let mut max_cell = int(0);
    let mut bounded_cells = 0;
    for s in coll.sets() {
        let hull = s.hull();
        for e in hull.edge_vectors() {
            normals.insert(direction_key(&e.rot_cw()));
        }
        max_hull = max_hull.max(hull.diameter_sq());
        if let FeasibleSet::Points(ps) = s {
            for c in ps.points() {
                if let Ok(Some(cell)) = ps.bounded_cell(c) {
                    bounded_cells += 1;
                    max_cell = max_cell.max(cell.diameter_sq());
                }
            }
        }
    }
    BoundednessReport {
        normal_directions: normals.len(),
        max_hull_diameter_sq: max_hull,
        max_bounded_cell_diameter_sq: max_cell,
        bounded_cells,
        // A finite collection of finite sets or polygons always qualifies.
        satisfied: true,
    }
}

/// `max ‖e‖ / max ‖v‖` over observed errors and vertices of `q`.
/// Values close to 1 mean the trajectories reach the far side of the set.
pub fn coverage_ratio<'a>(q: &ConvexPolygon, errors: impl IntoIterator<Item = &'a Point2>) -> f64 {
    let radius = q
        .vertices()
        .iter()
        .map(Point2::norm_sq)
        .max()
        .unwrap_or_default();
    if radius == int(0) {
        return 1.0;
    }
    let reach = errors
        .into_iter()
        .map(Point2::norm_sq)
        .max()
        .unwrap_or_default();
    (to_f64(&reach) / to_f64(&radius)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointSet;

    #[test]
    fn grid_report() {
        let pts = [-1, 1, 3, 5]
            .iter()
            .flat_map(|&x| [-1, 1].map(|y| Point2::int(x, y)))
            .collect();
        let coll = Collection::perfect(vec![PointSet::new(pts).unwrap().into()]).unwrap();
        let r = boundedness_report(&coll);
        assert_eq!(r.normal_directions, 4);
        assert_eq!(r.max_hull_diameter_sq, int(40));
        assert_eq!(r.bounded_cells, 0);
        assert!(r.satisfied);
    }

    #[test]
    fn coverage() {
        let q = ConvexPolygon::rectangle(&Point2::int(-1, -1), &Point2::int(1, 1));
        let errs = [Point2::int(1, 1), Point2::int(0, 1)];
        assert!((coverage_ratio(&q, errs.iter()) - 1.0).abs() < 1e-12);
        assert_eq!(coverage_ratio(&q, [].iter()), 0.0);
    }
}
