use errdiff_core::diffusion::{
    run_trace, Adversarial, Implementation, RequestPolicy, UniformRandom,
};
use errdiff_core::geometry::{int, rat, ConvexPolygon, FeasibleSet, Point2, PointSet, Rational};
use errdiff_core::invariant::{apply_g_single, PredictionMode};
use errdiff_core::resources::{
    heater_feasible_set, heater_step, pv_error_bound, pv_triangle, HeaterParams, PvParams,
};
use proptest::prelude::*;

fn q() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn pt() -> impl Strategy<Value = Point2> {
    (q(), q()).prop_map(|(x, y)| Point2::new(x, y))
}

fn pts(max: usize) -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec(pt(), 1..=max)
}

fn hull(v: &[Point2]) -> ConvexPolygon {
    ConvexPolygon::hull(v.iter())
}

fn sums(a: &[Point2], b: &[Point2]) -> Vec<Point2> {
    a.iter()
        .flat_map(|p| b.iter().map(move |r| p + r))
        .collect()
}

fn box_around(r: i64) -> ConvexPolygon {
    ConvexPolygon::rectangle(&Point2::int(-r, -r), &Point2::int(r, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_is_idempotent_and_monotone(a in pts(10), b in pts(6)) {
        let h = hull(&a);
        prop_assert_eq!(&hull(h.vertices()), &h);
        let both: Vec<Point2> = a.iter().chain(&b).cloned().collect();
        prop_assert!(hull(&both).contains_polygon(&h));
        for p in &a {
            prop_assert!(h.contains(p));
        }
    }

    #[test]
    fn minkowski_sum_commutes_with_hull(a in pts(7), b in pts(7)) {
        let m = hull(&a).minkowski_sum(&hull(&b));
        prop_assert_eq!(&m, &hull(&sums(&a, &b)));
        prop_assert_eq!(&m, &hull(&b).minkowski_sum(&hull(&a)));
    }

    #[test]
    fn minkowski_sum_distributes_over_hulled_unions(a in pts(5), b in pts(5), c in pts(5)) {
        let ab: Vec<Point2> = a.iter().chain(&b).cloned().collect();
        let lhs = hull(&ab).minkowski_sum(&hull(&c));
        let parts: Vec<Point2> = sums(&a, &c).into_iter().chain(sums(&b, &c)).collect();
        prop_assert_eq!(lhs, hull(&parts));
    }

    #[test]
    fn voronoi_cells_shrink_as_sites_are_added(s in pts(5), extra in pts(3), k in 0usize..5) {
        let small = PointSet::new(s.clone()).unwrap();
        let c = small.points()[k % small.len()].clone();
        let big = PointSet::new(s.into_iter().chain(extra).collect()).unwrap();
        let frame = box_around(60);
        let in_small = small.clip_to_cell(&frame, &c).unwrap();
        let in_big = big.clip_to_cell(&frame, &c).unwrap();
        prop_assert!(in_small.contains_polygon(&in_big));
        prop_assert!(in_big.contains(&c));
    }

    #[test]
    fn operator_commutes_with_translation_and_scaling(
        s in pts(5), qv in pts(4), t in pt(), k in 1i64..=3, d in 1i64..=2,
    ) {
        let set = PointSet::new(s).unwrap();
        let region = hull(&qv);
        let g = apply_g_single(&FeasibleSet::Points(set.clone()), &region);
        let shifted = FeasibleSet::Points(set.translate(&t));
        prop_assert_eq!(&apply_g_single(&shifted, &region), &g);
        let f = rat(k, d);
        let scaled = FeasibleSet::Points(
            PointSet::new(set.points().iter().map(|p| p.scale(&f)).collect()).unwrap(),
        );
        prop_assert_eq!(apply_g_single(&scaled, &region.scale(&f)), g.scale(&f));
    }

    #[test]
    fn greedy_projection_is_nearest_with_lexicographic_ties(s in pts(8), z in pt()) {
        let set = PointSet::new(s).unwrap();
        let y = set.project(&z);
        let d = y.dist_sq(&z);
        for p in set.points() {
            let dp = p.dist_sq(&z);
            prop_assert!(d <= dp);
            if dp == d {
                prop_assert!(y <= p);
            }
        }
    }

    #[test]
    fn errors_follow_the_recursion_exactly(
        sets in prop::collection::vec(pts(5), 1..=3), seed in any::<u64>(), horizon in 1u64..60,
    ) {
        let family: Vec<FeasibleSet> = sets
            .into_iter()
            .map(|s| PointSet::new(s).unwrap().into())
            .collect();
        let mut policy = UniformRandom::with_resolution(seed, 8);
        let n_sets = family.len();
        let trace = run_trace(
            PredictionMode::Perfect,
            Implementation::ErrorDiffusion,
            &mut |n| family[(n as usize * 7 + seed as usize) % n_sets].clone(),
            &mut policy,
            horizon,
            Point2::origin(),
        )
        .unwrap();
        let mut e = Point2::origin();
        for r in &trace.records {
            prop_assert!(r.set.contains(&r.y));
            prop_assert_eq!(&r.y, &r.set.project(&(&e + &r.x)));
            e = &(&e + &r.x) - &r.y;
            prop_assert_eq!(&r.e_next, &e);
        }
        prop_assert!(trace.telescopes());
        prop_assert!(trace.check().is_ok());
    }

    #[test]
    fn persistent_pv_errors_stay_within_the_triangle_diameter(
        p_max in 1i64..=4, tan in 0i64..=4, levels in prop::collection::vec(0i64..=4, 1..40), adversarial in any::<bool>(), seed in any::<u64>(),
    ) {
        let params = PvParams::new(int(p_max), rat(tan, 2)).unwrap();
        let bound = pv_error_bound(&params);
        let tri: Vec<FeasibleSet> = levels
            .iter()
            .map(|&l| FeasibleSet::Polygon(pv_triangle(&params, &rat(l * p_max, 4)).unwrap()))
            .collect();
        let mut random = UniformRandom::with_resolution(seed, 8);
        let mut policy = |n: u64, a: &ConvexPolygon, e: &Point2| {
            if adversarial { Adversarial.request(n, a, e) } else { random.sample(a) }
        };
        let trace = run_trace(
            PredictionMode::Persistent,
            Implementation::ErrorDiffusion,
            &mut |n| tri[n as usize % tri.len()].clone(),
            &mut policy,
            (tri.len() * 3) as u64,
            Point2::origin(),
        )
        .unwrap();
        prop_assert!(trace.max_error_sq() <= bound);
    }

    #[test]
    fn unlocked_heaters_stay_near_the_comfort_band(
        powers in prop::collection::vec(2i64..=6, 1..=3),
        a_inv in 40i64..=100,
        temps in prop::collection::vec(19i64..=23, 3),
        choices in prop::collection::vec(any::<u32>(), 200),
    ) {
        // b P >= 1/2 exceeds the largest possible leak a (t_max + b P - t_out).
        let params: HeaterParams = serde_json::from_value(serde_json::json!({
            "p_heat": powers.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "t_min": "19",
            "t_max": "23",
            "lock_steps": 0,
            "thermal": {"a": format!("1/{a_inv}"), "b": "1/4", "t_out": "10"},
        }))
        .unwrap();
        let temps: Vec<Rational> = temps[..powers.len()].iter().map(|&t| int(t)).collect();
        let mut state = params.initial_state(&temps).unwrap();
        let rise = rat(*powers.iter().max().unwrap(), 4);
        let res = rat(1, 1000);
        let upper = &params.t_max + &rise + &res;
        let lower = &params.t_min - rat(1, a_inv) * (&params.t_max + &rise - int(10)) - &res;
        for c in choices {
            let s = heater_feasible_set(&params, &state);
            let y = s.points()[c as usize % s.len()].x.clone();
            let before = state.clone();
            state = heater_step(&params, &state, &y).unwrap();
            for (r0, r1) in before.rooms.iter().zip(&state.rooms) {
                if r0.temp < params.t_min {
                    prop_assert!(r1.on);
                }
                if r0.temp > params.t_max {
                    prop_assert!(!r1.on);
                }
                prop_assert!(r1.temp >= lower && r1.temp <= upper, "temp {} outside [{lower}, {upper}]", r1.temp);
            }
        }
    }
}
