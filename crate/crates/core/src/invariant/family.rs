use serde::{Deserialize, Serialize};

use super::operators::apply_p_single;
use crate::geometry::{ConvexPolygon, FeasibleSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneFamilyReport {
    pub holds: bool,
    /// The largest member, when the family is totally ordered by inclusion.
    pub candidate: Option<ConvexPolygon>,
    /// First violated condition, if any.
    pub failure: Option<String>,
}

/// Checks a finite family of convex sets for the nested-family shortcut:
/// members totally ordered by inclusion, and for every member `S` and
/// `x ∈ S`, `y ∈ S_max`, `x + y - proj_S(y) ∈ S_max`.
///
/// The last condition is `S + residual_S(S_max) ⊆ S_max`, tested exactly on
/// polygons rather than on a sample. When it holds `S_max` is the minimal
/// invariant set under persistent prediction.
pub fn verify_monotone_family(family: &[ConvexPolygon]) -> MonotoneFamilyReport {
    let fail = |msg: String| MonotoneFamilyReport {
        holds: false,
        candidate: None,
        failure: Some(msg),
    };
    if family.is_empty() {
        return fail("empty family".into());
    }
    if let Some(i) = family.iter().position(ConvexPolygon::is_empty) {
        return fail(format!("member {i} is empty"));
    }
    let mut order: Vec<usize> = (0..family.len()).collect();
    order.sort_by(|&a, &b| family[a].double_area().cmp(&family[b].double_area()));
    for w in order.windows(2) {
        let (small, large) = (&family[w[0]], &family[w[1]]);
        if !large.contains_polygon(small) && !small.contains_polygon(large) {
            return fail(format!("members {} and {} are not nested", w[0], w[1]));
        }
    }
    // Degenerate members share zero area; pick a member containing all others.
    let Some(max_idx) = (0..family.len())
        .rev()
        .find(|&i| family.iter().all(|s| family[i].contains_polygon(s)))
    else {
        return fail("no member contains all others".into());
    };
    let s_max = &family[max_idx];
    for (i, s) in family.iter().enumerate() {
        let image = apply_p_single(&FeasibleSet::Polygon(s.clone()), s_max);
        if !s_max.contains_polygon(&image) {
            return fail(format!(
                "member {i} pushes modified requests outside the largest set"
            ));
        }
    }
    MonotoneFamilyReport {
        holds: true,
        candidate: Some(s_max.clone()),
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat, Point2};

    fn tri(x: &crate::geometry::Rational) -> ConvexPolygon {
        let pts = [
            Point2::origin(),
            Point2::new(x.clone(), x.clone()),
            Point2::new(x.clone(), -x.clone()),
        ];
        ConvexPolygon::hull(pts.iter())
    }

    #[test]
    fn triangle_family_holds() {
        let fam: Vec<_> = (0..=4).map(|k| tri(&rat(k, 4))).collect();
        let r = verify_monotone_family(&fam);
        assert!(r.holds, "{:?}", r.failure);
        assert_eq!(r.candidate, Some(tri(&int(1))));
    }

    #[test]
    fn disjoint_squares_fail() {
        let a = ConvexPolygon::rectangle(&Point2::int(0, 0), &Point2::int(1, 1));
        let b = ConvexPolygon::rectangle(&Point2::int(3, 0), &Point2::int(4, 1));
        assert!(!verify_monotone_family(&[a, b]).holds);
    }

    #[test]
    fn single_member_is_its_own_candidate() {
        let a = ConvexPolygon::rectangle(&Point2::int(0, 0), &Point2::int(1, 1));
        let r = verify_monotone_family(std::slice::from_ref(&a));
        assert!(r.holds);
        assert_eq!(r.candidate, Some(a));
    }

    #[test]
    fn nested_but_not_invariant() {
        // Residual (0, 2) from the apex added to (2, 0) leaves the triangle.
        let pts = [Point2::int(0, 0), Point2::int(2, 0), Point2::int(0, 2)];
        let big = ConvexPolygon::hull(pts.iter());
        let base = ConvexPolygon::hull(pts[..2].iter());
        let r = verify_monotone_family(&[base, big]);
        assert!(!r.holds);
        assert!(r.failure.unwrap().contains("member 0"));
    }
}
