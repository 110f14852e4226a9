//! Point-set collections used by the named checks.

use crate::geometry::{FeasibleSet, Point2, PointSet};
use crate::invariant::Collection;

fn points(v: &[(i64, i64)]) -> PointSet {
    PointSet::new(v.iter().map(|&(x, y)| Point2::int(x, y)).collect()).expect("non-empty")
}

/// The eight boundary points of the `{-1, 0, 1}²` square.
pub fn ring() -> Vec<(i64, i64)> {
    vec![
        (-1, -1),
        (0, -1),
        (1, -1),
        (1, 0),
        (1, 1),
        (0, 1),
        (-1, 1),
        (-1, 0),
    ]
}

/// The ring, the ring without `(0, -1)`, and that without `(-1, -1)` too.
pub fn fig3_collection() -> Collection {
    let s1 = ring();
    let s2: Vec<_> = s1.iter().copied().filter(|&p| p != (0, -1)).collect();
    let s3: Vec<_> = s2.iter().copied().filter(|&p| p != (-1, -1)).collect();
    Collection::perfect([s1, s2, s3].iter().map(|s| points(s).into()).collect()).expect("non-empty")
}

/// `{-1, 1, 3, 5} x {-1, 1}` as a single set.
pub fn example1_collection() -> Collection {
    let pts: Vec<_> = [-1, 1, 3, 5]
        .iter()
        .flat_map(|&x| [(x, -1), (x, 1)])
        .collect();
    Collection::perfect(vec![points(&pts).into()]).expect("non-empty")
}

/// Corners `(±10, ±10)` plus `p`.
pub fn reg2_set(p: &Point2) -> PointSet {
    let mut pts = vec![
        Point2::int(-10, -10),
        Point2::int(10, -10),
        Point2::int(10, 10),
        Point2::int(-10, 10),
    ];
    pts.push(p.clone());
    PointSet::new(pts).expect("non-empty")
}

pub fn reg2_collection(p: &Point2) -> Collection {
    Collection::perfect(vec![FeasibleSet::Points(reg2_set(p))]).expect("non-empty")
}
