use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::halfplane::HalfPlane;
use super::point::Point2;
use super::polygon::ConvexPolygon;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// A finite, non-empty set of points, stored sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    points: Vec<Point2>,
}

impl PointSet {
    pub fn new(mut points: Vec<Point2>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        points.sort_unstable();
        points.dedup();
        Ok(Self { points })
    }

    /// 1D setpoints embedded on the horizontal axis.
    pub fn on_axis(values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        Self::new(values.into_iter().map(Point2::on_axis).collect())
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn hull(&self) -> ConvexPolygon {
        ConvexPolygon::hull(self.points.iter())
    }

    /// True when every point has a zero second coordinate.
    pub fn is_on_axis(&self) -> bool {
        self.points.iter().all(|p| p.y == int(0))
    }

    /// Closest member to `z`; ties go to the lexicographically smallest.
    pub fn project(&self, z: &Point2) -> &Point2 {
        let mut best = &self.points[0];
        let mut best_d = best.dist_sq(z);
        for p in &self.points[1..] {
            let d = p.dist_sq(z);
            if d < best_d {
                best = p;
                best_d = d;
            }
        }
        best
    }

    /// Bisector half-planes `2(c' - c) . x <= |c'|^2 - |c|^2` over all
    /// `c' != c`; their intersection is the closed Voronoi cell of `c`.
    pub fn voronoi_cell(&self, c: &Point2) -> Result<Vec<HalfPlane>> {
        if !self.contains(c) {
            return Err(Error::NotInSet(Box::new(c.clone())));
        }
        let two = int(2);
        let c_sq = c.norm_sq();
        Ok(self
            .points
            .iter()
            .filter(|p| *p != c)
            .map(|p| {
                let normal = (p - c).scale(&two);
                HalfPlane::from_normal(&normal, p.norm_sq() - &c_sq).expect("distinct points")
            })
            .collect())
    }

    /// `region ∩ V(c)` by sequential clipping.
    pub fn clip_to_cell(&self, region: &ConvexPolygon, c: &Point2) -> Result<ConvexPolygon> {
        let cell = self.voronoi_cell(c)?;
        if region.is_empty() {
            return Ok(ConvexPolygon::empty());
        }
        match active_bisectors(&cell, region) {
            Active::Missed => Ok(ConvexPolygon::empty()),
            Active::Subset(active) => Ok(region.clip_all(active)),
            Active::All => Ok(region.clip_all(cell.iter())),
        }
    }

    /// The Voronoi cell of `c` as a polygon, or `None` if it is unbounded.
    pub fn bounded_cell(&self, c: &Point2) -> Result<Option<ConvexPolygon>> {
        let cell = self.voronoi_cell(c)?;
        if cell.len() < 3 {
            return Ok(None);
        }
        // Grow a box around the set until the clipped cell no longer touches it.
        let span = self
            .points
            .iter()
            .map(|p| (&p.x - &c.x).abs().max((&p.y - &c.y).abs()))
            .max()
            .unwrap_or_else(|| int(1))
            .max(int(1));
        let mut radius = span * int(4);
        for _ in 0..64 {
            let lo = Point2::new(&c.x - &radius, &c.y - &radius);
            let hi = Point2::new(&c.x + &radius, &c.y + &radius);
            let clipped = ConvexPolygon::rectangle(&lo, &hi).clip_all(cell.iter());
            let touches = clipped
                .vertices()
                .iter()
                .any(|v| v.x == lo.x || v.x == hi.x || v.y == lo.y || v.y == hi.y);
            if !touches {
                return Ok(Some(clipped));
            }
            radius *= int(16);
        }
        Ok(None)
    }

    /// Splits into points on the boundary of the hull ("corner" points,
    /// including points interior to hull edges) and the remaining inner points.
    pub fn classify(&self) -> (Vec<Point2>, Vec<Point2>) {
        let hull = self.hull();
        self.points
            .iter()
            .cloned()
            .partition(|p| hull.on_boundary(p))
    }

    pub fn translate(&self, v: &Point2) -> PointSet {
        PointSet {
            points: self.points.iter().map(|p| p + v).collect(),
        }
    }

    pub fn canonical_text(&self) -> String {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|v| format!("{},{}", v.x, v.y))
            .collect();
        format!("{{{}}}", parts.join(";"))
    }
}

enum Active<'a> {
    Missed,
    Subset(Vec<&'a HalfPlane>),
    All,
}

// Bisectors that bound `V(c) ∩ B` for an integer box `B` around `region`.
// Inside `B` the others are implied, so clipping `region` by these alone is
// exact. Falls back to all bisectors when `V(c) ∩ B` is degenerate.
fn active_bisectors<'a>(cell: &'a [HalfPlane], region: &ConvexPolygon) -> Active<'a> {
    if cell.len() <= 2 {
        return Active::All;
    }
    let vs = region.vertices();
    let bound = |f: fn(&Rational, &Rational) -> bool, get: fn(&Point2) -> &Rational| {
        let mut best = get(&vs[0]);
        for v in &vs[1..] {
            if f(get(v), best) {
                best = get(v);
            }
        }
        best.clone()
    };
    let one = int(1);
    let lo = Point2::new(
        bound(|a, b| a < b, |p| &p.x).floor() - &one,
        bound(|a, b| a < b, |p| &p.y).floor() - &one,
    );
    let hi = Point2::new(
        bound(|a, b| a > b, |p| &p.x).ceil() + &one,
        bound(|a, b| a > b, |p| &p.y).ceil() + &one,
    );
    let boxed = ConvexPolygon::rectangle(&lo, &hi).clip_all(cell.iter());
    if boxed.is_empty() {
        return Active::Missed;
    }
    if boxed.len() < 3 {
        return Active::All;
    }
    let bv = boxed.vertices();
    let n = bv.len();
    Active::Subset(
        cell.iter()
            .filter(|h| {
                (0..n).any(|i| {
                    h.side(&bv[i]) == std::cmp::Ordering::Equal
                        && h.side(&bv[(i + 1) % n]) == std::cmp::Ordering::Equal
                })
            })
            .collect(),
    )
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pts = Vec::<Point2>::deserialize(d)?;
        PointSet::new(pts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::rat;

    fn set(coords: &[(i64, i64)]) -> PointSet {
        PointSet::new(coords.iter().map(|&(x, y)| Point2::int(x, y)).collect()).unwrap()
    }

    fn grid8() -> PointSet {
        set(&[
            (-1, -1),
            (-1, 1),
            (1, -1),
            (1, 1),
            (3, -1),
            (3, 1),
            (5, -1),
            (5, 1),
        ])
    }

    #[test]
    fn empty_set_rejected() {
        assert!(matches!(PointSet::new(vec![]), Err(Error::EmptyPointSet)));
    }

    #[test]
    fn singleton_cell_is_whole_plane() {
        let s = set(&[(3, 4)]);
        assert!(s.voronoi_cell(&Point2::int(3, 4)).unwrap().is_empty());
    }

    #[test]
    fn two_point_bisector() {
        let s = set(&[(0, 0), (2, 0)]);
        let cell = s.voronoi_cell(&Point2::int(0, 0)).unwrap();
        assert_eq!(cell.len(), 1);
        // 4x <= 4, i.e. x <= 1
        assert_eq!(cell[0].c() / cell[0].a(), int(1));
        assert_eq!(cell[0].b(), &int(0));
        assert!(cell[0].contains(&Point2::int(1, 100)));
        assert!(!cell[0].contains(&Point2::new(rat(101, 100), int(0))));
    }

    #[test]
    fn non_member_is_a_domain_error() {
        let s = set(&[(0, 0), (2, 0)]);
        assert!(matches!(
            s.voronoi_cell(&Point2::int(1, 0)),
            Err(Error::NotInSet(_))
        ));
    }

    #[test]
    fn grid_cell_matches_nearest_point_classification() {
        // Oracle: classify a dense lattice by brute-force nearest neighbour and
        // compare with half-plane membership.
        let s = grid8();
        let c = Point2::int(1, 1);
        let cell = s.voronoi_cell(&c).unwrap();
        for i in -12..=36 {
            for j in -12..=36 {
                let p = Point2::new(rat(i, 4), rat(j, 4));
                let d = p.dist_sq(&c);
                let nearest = s.points().iter().all(|q| d <= p.dist_sq(q));
                let in_cell = cell.iter().all(|h| h.contains(&p));
                assert_eq!(nearest, in_cell, "{p}");
                // and the closed form [0, 2] x [0, inf)
                let closed = p.x >= int(0) && p.x <= int(2) && p.y >= int(0);
                assert_eq!(closed, in_cell, "{p}");
            }
        }
    }

    #[test]
    fn projection_cases() {
        let s = set(&[(0, 0), (2, 0)]);
        assert_eq!(s.project(&Point2::int(2, 0)), &Point2::int(2, 0));
        assert_eq!(s.project(&Point2::int(1, 0)), &Point2::int(0, 0));
        let z = Point2::new(rat(21, 5), rat(-3, 10));
        assert_eq!(grid8().project(&z), &Point2::int(5, -1));
    }

    #[test]
    fn classification() {
        let square = set(&[(-1, -1), (1, -1), (1, 1), (-1, 1)]);
        let (corner, inner) = square.classify();
        assert_eq!(corner.len(), 4);
        assert!(inner.is_empty());

        let (corner, inner) = grid8().classify();
        assert_eq!(corner.len(), 8);
        assert!(inner.is_empty());

        let reg2 = set(&[(-10, -10), (10, -10), (10, 10), (-10, 10), (0, 5)]);
        let (corner, inner) = reg2.classify();
        assert_eq!(corner.len(), 4);
        assert_eq!(inner, vec![Point2::int(0, 5)]);
    }

    #[test]
    fn bounded_cells() {
        let reg2 = set(&[(-10, -10), (10, -10), (10, 10), (-10, 10), (0, 0)]);
        let cell = reg2.bounded_cell(&Point2::int(0, 0)).unwrap().unwrap();
        // A diamond |x| + |y| <= 10.
        let diamond = ConvexPolygon::hull(
            [(-10, 0), (0, -10), (10, 0), (0, 10)]
                .iter()
                .map(|&(x, y)| Point2::int(x, y))
                .collect::<Vec<_>>()
                .iter(),
        );
        assert_eq!(cell, diamond);
        assert!(reg2.bounded_cell(&Point2::int(10, 10)).unwrap().is_none());
    }
}
