use rayon::prelude::*;

use super::collection::{Collection, PredictionMode};
use crate::geometry::{ConvexPolygon, FeasibleSet, Point2};

/// `G_S(Q)`: one perfect-prediction step applied to a whole region.
pub fn apply_g_single(s: &FeasibleSet, q: &ConvexPolygon) -> ConvexPolygon {
    s.residual_image(&s.hull().minkowski_sum(q))
}

/// `P_S(D)`: one persistent-prediction step on modified requests.
pub fn apply_p_single(s: &FeasibleSet, d: &ConvexPolygon) -> ConvexPolygon {
    s.hull().minkowski_sum(&s.residual_image(d))
}

pub fn apply_single(mode: PredictionMode, s: &FeasibleSet, q: &ConvexPolygon) -> ConvexPolygon {
    match mode {
        PredictionMode::Perfect => apply_g_single(s, q),
        PredictionMode::Persistent => apply_p_single(s, q),
    }
}

/// Hull of the per-set results, in the collection's own mode.
pub fn apply_collection(coll: &Collection, q: &ConvexPolygon) -> ConvexPolygon {
    let pieces: Vec<ConvexPolygon> = coll
        .sets()
        .par_iter()
        .map(|s| apply_single(coll.mode(), s, q))
        .collect();
    let mut pts: Vec<Point2> = pieces
        .into_iter()
        .flat_map(ConvexPolygon::into_vertices)
        .collect();
    ConvexPolygon::hull_owned(&mut pts)
}

pub fn apply_g_collection(coll: &Collection, q: &ConvexPolygon) -> ConvexPolygon {
    debug_assert_eq!(coll.mode(), PredictionMode::Perfect);
    apply_collection(&coll.clone().with_mode(PredictionMode::Perfect), q)
}

pub fn apply_p_collection(coll: &Collection, d: &ConvexPolygon) -> ConvexPolygon {
    debug_assert_eq!(coll.mode(), PredictionMode::Persistent);
    apply_collection(&coll.clone().with_mode(PredictionMode::Persistent), d)
}

/// Whether `Q` is mapped into itself by every member's operator.
pub fn check_invariance(coll: &Collection, q: &ConvexPolygon) -> bool {
    if q.is_empty() {
        return false;
    }
    coll.sets()
        .par_iter()
        .all(|s| q.contains_polygon(&apply_single(coll.mode(), s, q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, PointSet};

    fn points(coords: &[(i64, i64)]) -> FeasibleSet {
        FeasibleSet::Points(
            PointSet::new(coords.iter().map(|&(x, y)| Point2::int(x, y)).collect()).unwrap(),
        )
    }

    fn poly(coords: &[(i64, i64)]) -> ConvexPolygon {
        let pts: Vec<Point2> = coords.iter().map(|&(x, y)| Point2::int(x, y)).collect();
        ConvexPolygon::hull(pts.iter())
    }

    fn origin() -> ConvexPolygon {
        ConvexPolygon::point(Point2::origin())
    }

    #[test]
    fn singleton_set_is_identity() {
        let s = points(&[(3, -2)]);
        let q = poly(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(apply_g_single(&s, &q), q);
    }

    #[test]
    fn two_points_on_axis() {
        let s = points(&[(-1, 0), (1, 0)]);
        assert_eq!(apply_g_single(&s, &origin()), poly(&[(-1, 0), (1, 0)]));
    }

    #[test]
    fn grid_fixed_point_after_one_step() {
        let s = points(&[
            (-1, -1),
            (-1, 1),
            (1, -1),
            (1, 1),
            (3, -1),
            (3, 1),
            (5, -1),
            (5, 1),
        ]);
        let g1 = apply_g_single(&s, &origin());
        let g2 = apply_g_single(&s, &g1);
        assert_eq!(g1, g2);
        assert_eq!(g1, poly(&[(-1, -1), (1, -1), (1, 1), (-1, 1)]));
    }

    #[test]
    fn collection_of_one_or_duplicates_equals_single() {
        let s = points(&[(0, 0), (2, 0), (0, 3)]);
        let q = poly(&[(0, 0), (1, 1)]);
        let single = apply_g_single(&s, &q);
        let one = Collection::perfect(vec![s.clone()]).unwrap();
        let two = Collection::perfect(vec![s.clone(), s.clone()]).unwrap();
        assert_eq!(apply_g_collection(&one, &q), single);
        assert_eq!(apply_g_collection(&two, &q), single);

        let d = poly(&[(0, 0), (1, 1), (1, 0)]);
        let p_single = apply_p_single(&s, &d);
        let one = one.with_mode(PredictionMode::Persistent);
        let two = two.with_mode(PredictionMode::Persistent);
        assert_eq!(apply_p_collection(&one, &d), p_single);
        assert_eq!(apply_p_collection(&two, &d), p_single);
    }

    #[test]
    fn persistent_singleton_fixes_its_point() {
        let s = points(&[(2, 5)]);
        let d = ConvexPolygon::point(Point2::int(2, 5));
        assert_eq!(apply_p_single(&s, &d), d);
    }

    #[test]
    fn persistent_operator_is_extensive_on_hull() {
        let s = points(&[(0, 0), (4, 0), (0, 4), (4, 4)]);
        let d = s_hull(&s);
        assert!(apply_p_single(&s, &d).contains_polygon(&d));
    }

    fn s_hull(s: &FeasibleSet) -> ConvexPolygon {
        s.hull()
    }

    #[test]
    fn origin_is_not_invariant_for_spread_sets() {
        let coll = Collection::perfect(vec![points(&[(0, 0), (1, 0), (0, 1)])]).unwrap();
        assert!(!check_invariance(&coll, &origin()));
        let q = apply_g_collection(&coll, &origin());
        assert!(q.contains(&Point2::new(int(1) / int(2), int(0))));
    }
}
