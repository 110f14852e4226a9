//! Exact convex polygons in canonical vertex form.
//!
//! A [`ConvexPolygon`] lists its vertices counter-clockwise, without repeated
//! or collinear vertices, starting from the lexicographically smallest one.
//! With that normalization two polygons are equal as sets exactly when their
//! vertex lists are equal, which is what the fixed-point stopping rule relies
//! on. Degenerate forms are ordinary values: no vertices (empty), one vertex
//! (a point) and two vertices (a segment, smaller endpoint first).

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::halfplane::HalfPlane;
use super::point::{orient, Point2};
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn point(p: Point2) -> Self {
        Self { vertices: vec![p] }
    }

    /// Convex hull of arbitrary points (Andrew's monotone chain with exact
    /// orientation tests). Collinear boundary points are dropped.
    pub fn hull<'a, I>(points: I) -> Self
    where
        I: IntoIterator<Item = &'a Point2>,
    {
        let mut pts: Vec<Point2> = points.into_iter().cloned().collect();
        Self::hull_owned(&mut pts)
    }

    pub fn hull_owned(pts: &mut Vec<Point2>) -> Self {
        pts.sort_unstable();
        pts.dedup();
        if pts.len() <= 2 {
            return Self {
                vertices: std::mem::take(pts),
            };
        }
        let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
        for p in pts.iter() {
            while lower.len() >= 2
                && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Ordering::Greater
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Ordering::Greater
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        // All points collinear: the chains collapse onto the two extremes.
        if lower.len() == 2 && lower[0] > lower[1] {
            lower.swap(0, 1);
        }
        Self { vertices: lower }
    }

    /// Axis-aligned box `[lo.x, hi.x] x [lo.y, hi.y]`.
    pub fn rectangle(lo: &Point2, hi: &Point2) -> Self {
        let corners = [
            lo.clone(),
            Point2::new(hi.x.clone(), lo.y.clone()),
            hi.clone(),
            Point2::new(lo.x.clone(), hi.y.clone()),
        ];
        Self::hull(corners.iter())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Exact closed-set membership.
    pub fn contains(&self, p: &Point2) -> bool {
        match self.vertices.as_slice() {
            [] => false,
            [v] => v == p,
            [a, b] => orient(a, b, p) == Ordering::Equal && a <= p && p <= b,
            vs => {
                let n = vs.len();
                (0..n).all(|i| orient(&vs[i], &vs[(i + 1) % n], p) != Ordering::Less)
            }
        }
    }

    /// `other ⊆ self`, decided by vertex membership.
    pub fn contains_polygon(&self, other: &ConvexPolygon) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Whether `p` lies on the relative boundary. Every point of a segment or
    /// point counts as boundary.
    pub fn on_boundary(&self, p: &Point2) -> bool {
        match self.vertices.len() {
            0 => false,
            1 | 2 => self.contains(p),
            n => {
                self.contains(p)
                    && (0..n).any(|i| {
                        orient(&self.vertices[i], &self.vertices[(i + 1) % n], p) == Ordering::Equal
                    })
            }
        }
    }

    pub fn translate(&self, v: &Point2) -> ConvexPolygon {
        ConvexPolygon {
            vertices: self.vertices.iter().map(|p| p + v).collect(),
        }
    }

    /// Scales about the origin. A negative factor reflects the polygon, so
    /// the result is re-canonicalized.
    pub fn scale(&self, k: &Rational) -> ConvexPolygon {
        if k.is_positive() {
            ConvexPolygon {
                vertices: self.vertices.iter().map(|p| p.scale(k)).collect(),
            }
        } else {
            let pts: Vec<Point2> = self.vertices.iter().map(|p| p.scale(k)).collect();
            ConvexPolygon::hull(pts.iter())
        }
    }

    pub fn reflect(&self) -> ConvexPolygon {
        self.scale(&-Rational::one())
    }

    /// Directed edge vectors in CCW order. A segment contributes both
    /// directions, a point none.
    pub fn edge_vectors(&self) -> Vec<Point2> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| &self.vertices[(i + 1) % n] - &self.vertices[i])
            .collect()
    }

    /// Facet half-planes of a full-dimensional polygon (empty otherwise).
    pub fn half_planes(&self) -> Vec<HalfPlane> {
        let n = self.vertices.len();
        if n < 3 {
            return Vec::new();
        }
        (0..n)
            .map(|i| {
                let a = &self.vertices[i];
                let normal = (&self.vertices[(i + 1) % n] - a).rot_cw();
                let offset = normal.dot(a);
                HalfPlane::from_normal(&normal, offset).expect("distinct vertices")
            })
            .collect()
    }

    /// Exact intersection with a closed half-plane.
    pub fn clip(&self, h: &HalfPlane) -> ConvexPolygon {
        let n = self.vertices.len();
        match n {
            0 => return ConvexPolygon::empty(),
            1 => {
                return if h.contains(&self.vertices[0]) {
                    self.clone()
                } else {
                    ConvexPolygon::empty()
                }
            }
            _ => {}
        }
        let side: Vec<Ordering> = self.vertices.iter().map(|v| h.side(v)).collect();
        if side.iter().all(|s| *s != Ordering::Greater) {
            return self.clone();
        }
        if side.iter().all(|s| *s == Ordering::Greater) {
            return ConvexPolygon::empty();
        }
        let mut out = Vec::with_capacity(n + 2);
        let mut off_line = 0;
        for i in 0..n {
            let j = (i + 1) % n;
            let (cur, nxt) = (&self.vertices[i], &self.vertices[j]);
            let (sc, sn) = (side[i], side[j]);
            if sc == Ordering::Less {
                off_line += 1;
            }
            if sc != Ordering::Greater {
                out.push(cur.clone());
            }
            if (sc == Ordering::Less && sn == Ordering::Greater)
                || (sc == Ordering::Greater && sn == Ordering::Less)
            {
                let (ec, en) = (h.eval(cur), h.eval(nxt));
                let t = &ec / (&ec - en);
                out.push(cur + &(nxt - cur).scale(&t));
            }
        }
        if n < 3 || off_line == 0 {
            return ConvexPolygon::hull_owned(&mut out);
        }
        // A line meets a strictly convex boundary in at most two points, so the
        // clipped cycle is already strictly convex and counter-clockwise.
        Self::from_ccw_cycle(out)
    }

    // `pts` is a strictly convex CCW cycle; rotate it into canonical form.
    fn from_ccw_cycle(mut pts: Vec<Point2>) -> ConvexPolygon {
        let start = pts
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        pts.rotate_left(start);
        ConvexPolygon { vertices: pts }
    }

    pub fn clip_all<'a>(&self, hs: impl IntoIterator<Item = &'a HalfPlane>) -> ConvexPolygon {
        let mut cur = self.clone();
        for h in hs {
            if cur.is_empty() {
                break;
            }
            cur = cur.clip(h);
        }
        cur
    }

    /// Exact intersection of two convex polygons.
    pub fn intersect(&self, other: &ConvexPolygon) -> ConvexPolygon {
        match other.vertices.len() {
            0 => ConvexPolygon::empty(),
            1 => {
                if self.contains(&other.vertices[0]) {
                    other.clone()
                } else {
                    ConvexPolygon::empty()
                }
            }
            2 => other.intersect_with_segment_owner(self),
            _ => self.clip_all(other.half_planes().iter()),
        }
    }

    // `self` is a segment; clip it against `region`.
    fn intersect_with_segment_owner(&self, region: &ConvexPolygon) -> ConvexPolygon {
        match region.vertices.len() {
            0 => ConvexPolygon::empty(),
            1 => {
                if self.contains(&region.vertices[0]) {
                    region.clone()
                } else {
                    ConvexPolygon::empty()
                }
            }
            2 => {
                // Two segments: overlap only when collinear, else a crossing point.
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                let (c, d) = (&region.vertices[0], &region.vertices[1]);
                if orient(a, b, c) == Ordering::Equal && orient(a, b, d) == Ordering::Equal {
                    let lo = a.max(c);
                    let hi = b.min(d);
                    return match lo.cmp(hi) {
                        Ordering::Less => ConvexPolygon::hull([lo, hi]),
                        Ordering::Equal => ConvexPolygon::point(lo.clone()),
                        Ordering::Greater => ConvexPolygon::empty(),
                    };
                }
                let r = b - a;
                let s = d - c;
                let denom = r.cross(&s);
                if denom.is_zero() {
                    return ConvexPolygon::empty();
                }
                let t = (c - a).cross(&s) / &denom;
                let u = (c - a).cross(&r) / &denom;
                let unit = Rational::zero()..=Rational::one();
                if unit.contains(&t) && unit.contains(&u) {
                    ConvexPolygon::point(a + &r.scale(&t))
                } else {
                    ConvexPolygon::empty()
                }
            }
            _ => self.clip_all(region.half_planes().iter()),
        }
    }

    /// Exact Minkowski sum by merging edge sequences in angular order.
    pub fn minkowski_sum(&self, other: &ConvexPolygon) -> ConvexPolygon {
        if self.is_empty() || other.is_empty() {
            return ConvexPolygon::empty();
        }
        let mut edges = self.edge_vectors();
        edges.extend(other.edge_vectors());
        edges.sort_by(angle_order);
        // Equal directions are adjacent after sorting; fuse them.
        let mut fused: Vec<Point2> = Vec::with_capacity(edges.len());
        for e in edges {
            match fused.last_mut() {
                Some(last) if angle_order(last, &e) == Ordering::Equal => *last = &*last + &e,
                _ => fused.push(e),
            }
        }
        let mut cur = &self.vertices[0] + &other.vertices[0];
        let mut pts = Vec::with_capacity(fused.len() + 1);
        pts.push(cur.clone());
        for e in &fused[..fused.len().saturating_sub(1)] {
            cur = &cur + e;
            pts.push(cur.clone());
        }
        if pts.len() < 3 {
            return ConvexPolygon::hull_owned(&mut pts);
        }
        ConvexPolygon { vertices: pts }
    }

    /// Squared diameter: the largest squared distance between two vertices.
    pub fn diameter_sq(&self) -> Rational {
        let mut best = Rational::zero();
        for (i, p) in self.vertices.iter().enumerate() {
            for q in &self.vertices[i + 1..] {
                let d = p.dist_sq(q);
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

    /// Euclidean projection of `z` onto the polygon. Every candidate (the
    /// point itself, facet feet, vertices) is rational, so the minimizer is
    /// found by exact comparison of squared distances.
    pub fn project(&self, z: &Point2) -> Point2 {
        assert!(!self.is_empty(), "projection onto an empty polygon");
        if self.contains(z) {
            return z.clone();
        }
        let n = self.vertices.len();
        if n == 1 {
            return self.vertices[0].clone();
        }
        let mut best: Option<(Rational, Point2)> = None;
        let edges = if n == 2 { 1 } else { n };
        for i in 0..edges {
            let cand = project_onto_segment(&self.vertices[i], &self.vertices[(i + 1) % n], z);
            let d = cand.dist_sq(z);
            match &best {
                Some((bd, bp)) if (&d, &cand) >= (bd, bp) => {}
                _ => best = Some((d, cand)),
            }
        }
        best.expect("at least one edge").1
    }

    /// Vertex farthest from `z` (ties: lexicographically smallest).
    pub fn farthest_vertex(&self, z: &Point2) -> Option<&Point2> {
        let mut best: Option<(Rational, &Point2)> = None;
        for v in &self.vertices {
            let d = v.dist_sq(z);
            match &best {
                Some((bd, _)) if d <= *bd => {}
                _ => best = Some((d, v)),
            }
        }
        best.map(|(_, v)| v)
    }

    /// Twice the signed area (non-negative for canonical polygons).
    pub fn double_area(&self) -> Rational {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].cross(&self.vertices[(i + 1) % n]))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Canonical text form used for hashing and logs.
    pub fn canonical_text(&self) -> String {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("{},{}", v.x, v.y))
            .collect();
        format!("[{}]", parts.join(";"))
    }
}

/// Closest point of segment `[a, b]` to `z`.
pub fn project_onto_segment(a: &Point2, b: &Point2, z: &Point2) -> Point2 {
    let d = b - a;
    let len_sq = d.norm_sq();
    if len_sq.is_zero() {
        return a.clone();
    }
    let t = (z - a).dot(&d) / len_sq;
    if !t.is_positive() {
        a.clone()
    } else if t >= Rational::one() {
        b.clone()
    } else {
        a + &d.scale(&t)
    }
}

// Polar-angle order of edge vectors, starting just after direction (0, -1):
// the order in which a canonical polygon's edges appear from its
// lexicographically smallest vertex.
fn angle_order(u: &Point2, v: &Point2) -> Ordering {
    fn half(p: &Point2) -> u8 {
        if p.x.is_positive() || (p.x.is_zero() && p.y.is_positive()) {
            0
        } else {
            1
        }
    }
    half(u).cmp(&half(v)).then_with(|| {
        let c = u.cross(v);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

impl fmt::Display for ConvexPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for ConvexPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

/// Any point list deserializes to its convex hull.
impl<'de> Deserialize<'de> for ConvexPolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut pts = Vec::<Point2>::deserialize(d)?;
        Ok(ConvexPolygon::hull_owned(&mut pts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{int, rat};

    fn pts(coords: &[(i64, i64)]) -> Vec<Point2> {
        coords.iter().map(|&(x, y)| Point2::int(x, y)).collect()
    }

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::hull(pts(&[(0, 0), (1, 0), (1, 1), (0, 1)]).iter())
    }

    #[test]
    fn hull_of_single_point() {
        let h = ConvexPolygon::hull(pts(&[(0, 0)]).iter());
        assert_eq!(h.vertices(), pts(&[(0, 0)]).as_slice());
    }

    #[test]
    fn hull_absorbs_interior_point() {
        let h = ConvexPolygon::hull(pts(&[(-1, -1), (1, -1), (1, 1), (-1, 1), (0, 0)]).iter());
        assert_eq!(
            h.vertices(),
            pts(&[(-1, -1), (1, -1), (1, 1), (-1, 1)]).as_slice()
        );
    }

    #[test]
    fn hull_of_grid_is_its_bounding_rectangle() {
        let grid: Vec<Point2> = [-1, 1, 3, 5]
            .iter()
            .flat_map(|&x| [-1, 1].map(|y| Point2::int(x, y)))
            .collect();
        let h = ConvexPolygon::hull(grid.iter());
        assert_eq!(
            h.vertices(),
            pts(&[(-1, -1), (5, -1), (5, 1), (-1, 1)]).as_slice()
        );
    }

    #[test]
    fn collinear_points_give_a_segment() {
        let h = ConvexPolygon::hull(pts(&[(2, 2), (0, 0), (1, 1), (3, 3)]).iter());
        assert_eq!(h.vertices(), pts(&[(0, 0), (3, 3)]).as_slice());
        let v = ConvexPolygon::hull(pts(&[(0, 5), (0, -1), (0, 2)]).iter());
        assert_eq!(v.vertices(), pts(&[(0, -1), (0, 5)]).as_slice());
    }

    #[test]
    fn minkowski_identity_and_orthogonal_segments() {
        let sq = unit_square();
        let origin = ConvexPolygon::point(Point2::origin());
        assert_eq!(sq.minkowski_sum(&origin), sq);
        let h = ConvexPolygon::hull(pts(&[(0, 0), (1, 0)]).iter());
        let v = ConvexPolygon::hull(pts(&[(0, 0), (0, 1)]).iter());
        assert_eq!(h.minkowski_sum(&v), sq);
    }

    #[test]
    fn minkowski_of_collinear_segments_stays_a_segment() {
        let a = ConvexPolygon::hull(pts(&[(0, 0), (1, 1)]).iter());
        let b = ConvexPolygon::hull(pts(&[(2, 2), (5, 5)]).iter());
        assert_eq!(
            a.minkowski_sum(&b).vertices(),
            pts(&[(2, 2), (6, 6)]).as_slice()
        );
    }

    #[test]
    fn clip_cases() {
        let sq = unit_square();
        let loose = HalfPlane::new(int(1), int(0), int(2)).unwrap();
        assert_eq!(sq.clip(&loose), sq);
        let infeasible = HalfPlane::new(int(1), int(0), int(-1)).unwrap();
        assert!(sq.clip(&infeasible).is_empty());
        let half = HalfPlane::new(int(1), int(0), rat(1, 2)).unwrap();
        let expected = ConvexPolygon::rectangle(&Point2::origin(), &Point2::new(rat(1, 2), int(1)));
        assert_eq!(sq.clip(&half), expected);
    }

    #[test]
    fn clip_touching_an_edge_gives_the_edge() {
        let sq = unit_square();
        let h = HalfPlane::new(int(1), int(0), int(0)).unwrap();
        assert_eq!(sq.clip(&h).vertices(), pts(&[(0, 0), (0, 1)]).as_slice());
        let corner = HalfPlane::new(int(1), int(1), int(0)).unwrap();
        assert_eq!(sq.clip(&corner).vertices(), pts(&[(0, 0)]).as_slice());
    }

    #[test]
    fn clip_segment() {
        let seg = ConvexPolygon::hull(pts(&[(0, 0), (4, 0)]).iter());
        let h = HalfPlane::new(int(1), int(0), int(1)).unwrap();
        assert_eq!(seg.clip(&h).vertices(), pts(&[(0, 0), (1, 0)]).as_slice());
    }

    #[test]
    fn projection_cases() {
        let sq = unit_square();
        let inside = Point2::new(rat(1, 3), rat(2, 3));
        assert_eq!(sq.project(&inside), inside);
        assert_eq!(
            sq.project(&Point2::new(int(2), rat(1, 2))),
            Point2::new(int(1), rat(1, 2))
        );
        assert_eq!(sq.project(&Point2::int(3, 3)), Point2::int(1, 1));
        // Triangle with tan(phi) = 1: (-1, 0) projects onto the apex.
        let tri = ConvexPolygon::hull(pts(&[(0, 0), (1, 1), (1, -1)]).iter());
        assert_eq!(tri.project(&Point2::int(-1, 0)), Point2::origin());
        // And (0, 2) onto the upper leg at (1, 1).
        assert_eq!(tri.project(&Point2::int(0, 2)), Point2::int(1, 1));
    }

    #[test]
    fn diameters() {
        assert_eq!(
            ConvexPolygon::point(Point2::int(3, 4)).diameter_sq(),
            int(0)
        );
        assert_eq!(unit_square().diameter_sq(), int(2));
        let tri = ConvexPolygon::hull(pts(&[(0, 0), (1, 1), (1, -1)]).iter());
        assert_eq!(tri.diameter_sq(), int(4));
    }

    #[test]
    fn membership_of_degenerate_forms() {
        let seg = ConvexPolygon::hull(pts(&[(0, 0), (2, 2)]).iter());
        assert!(seg.contains(&Point2::int(1, 1)));
        assert!(!seg.contains(&Point2::int(3, 3)));
        assert!(!seg.contains(&Point2::int(1, 0)));
        assert!(!ConvexPolygon::empty().contains(&Point2::origin()));
    }

    #[test]
    fn segment_intersections() {
        let a = ConvexPolygon::hull(pts(&[(0, 0), (2, 2)]).iter());
        let b = ConvexPolygon::hull(pts(&[(0, 2), (2, 0)]).iter());
        assert_eq!(a.intersect(&b).vertices(), pts(&[(1, 1)]).as_slice());
        let c = ConvexPolygon::hull(pts(&[(1, 1), (5, 5)]).iter());
        assert_eq!(
            a.intersect(&c).vertices(),
            pts(&[(1, 1), (2, 2)]).as_slice()
        );
        assert_eq!(
            unit_square().intersect(&a).vertices(),
            pts(&[(0, 0), (1, 1)]).as_slice()
        );
    }

    #[test]
    fn json_is_an_ordered_vertex_list() {
        let text = serde_json::to_string(&unit_square()).unwrap();
        assert_eq!(text, r#"[["0","0"],["1","0"],["1","1"],["0","1"]]"#);
        let back: ConvexPolygon =
            serde_json::from_str(r#"[["1","1"],["0","0"],["1","0"],["0","1"]]"#).unwrap();
        assert_eq!(back, unit_square());
    }
}
