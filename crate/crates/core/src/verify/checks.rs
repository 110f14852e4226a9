use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::fixtures::{example1_collection, fig3_collection, reg2_set};
use super::random::{random_planar, random_scalar_sets, small_rational};
use super::{Golden, Scale};
use crate::diffusion::{run_trace, Adversarial, Implementation, RequestPolicy, UniformRandom};
use crate::error::{Error, Result};
use crate::geometry::{
    int, rat, ConvexPolygon, FeasibleSet, Interval, IntervalUnion, Point2, Rational, ScalarSet,
};
use crate::invariant::{
    apply_collection, apply_g_1d_collection, check_invariance, iterate_1d, iterate_to_invariance,
    Collection, IterationConfig, OneDimCollection, PredictionMode,
};
use crate::resources::HeaterParams;
use crate::resources::{
    heater_collection, heater_error_bound, pv_error_bound, pv_family, pv_triangle, PvParams,
};
use crate::sim::{run_scenario, Scenario};

/// `(expected, got, pass)`.
pub(super) type Outcome = (String, String, bool);

fn stream(seed: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0xA076_1D64_78BD_642F))
}

fn vertex_list(p: &ConvexPolygon) -> String {
    p.canonical_text()
}

fn origin_seed() -> ConvexPolygon {
    ConvexPolygon::point(Point2::origin())
}

pub(super) fn fig3(golden: &Golden) -> Result<Outcome> {
    let r = iterate_to_invariance(
        &fig3_collection(),
        &origin_seed(),
        &IterationConfig::default(),
    )?;
    let expected = ConvexPolygon::hull(golden.fig3.iter());
    Ok((
        format!("{} (golden fig3.json)", vertex_list(&expected)),
        format!(
            "{} after {} iterations{}",
            vertex_list(&r.invariant_set),
            r.iterations,
            if r.converged { "" } else { ", not converged" }
        ),
        r.converged && r.invariant_set == expected && expected.len() == golden.fig3.len(),
    ))
}

pub(super) fn example1(golden: &Golden) -> Result<Outcome> {
    let cfg = IterationConfig::default().without_rounding();
    let r = iterate_to_invariance(&example1_collection(), &origin_seed(), &cfg)?;
    let expected = ConvexPolygon::hull(golden.example1.iter());
    Ok((
        format!(
            "{} in 1 iteration (golden example1.json)",
            vertex_list(&expected)
        ),
        format!(
            "{} in {} iteration(s){}",
            vertex_list(&r.invariant_set),
            r.iterations,
            if r.converged { "" } else { ", not converged" }
        ),
        r.converged && r.iterations == 1 && r.invariant_set == expected,
    ))
}

/// Greedy error diffusion on the line with random requests in `ch S_n`;
/// returns `max |e_n|`.
fn simulate_1d(sets: &[ScalarSet], steps: u64, rng: &mut ChaCha8Rng) -> Rational {
    let res = 64i64;
    let mut e = int(0);
    let mut worst = int(0);
    for _ in 0..steps {
        let s = &sets[rng.gen_range(0..sets.len())];
        let vals = s.values();
        let (lo, hi) = (&vals[0], &vals[vals.len() - 1]);
        let x = lo + (hi - lo) * int(rng.gen_range(0..=res)) / int(res);
        let z = &e + &x;
        e = &z - s.project(&z);
        worst = worst.max(crate::geometry::rational::abs(&e));
    }
    worst
}

pub(super) fn thm_discrete(scale: &Scale, seed: u64) -> Result<Outcome> {
    let n = scale.discrete_collections;
    let results: Vec<Result<(bool, bool)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i);
            let coll = OneDimCollection::new(random_scalar_sets(&mut rng))?;
            let (fix, _) = iterate_1d(&coll, &IntervalUnion::point(int(0)), 100_000)?;
            let half = coll.max_step() / int(2);
            let worst = simulate_1d(coll.sets(), scale.sim_steps, &mut rng);
            Ok((fix == coll.analytic_invariant(), worst <= half))
        })
        .collect();
    let mut fixed = 0;
    let mut bounded = 0;
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok((f, b)) => {
                fixed += f as usize;
                bounded += b as usize;
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    Ok((
        format!(
            "{n}/{n} fixed points equal [-Δ/2, Δ/2]; {n}/{n} traces keep |e| <= Δ/2 (closed form)"
        ),
        format!(
            "{fixed}/{n} fixed points, {bounded}/{n} bounded traces of {} steps{}",
            scale.sim_steps,
            if errors.is_empty() {
                String::new()
            } else {
                format!("; errors: {}", errors.join(" | "))
            }
        ),
        fixed == n && bounded == n && errors.is_empty(),
    ))
}

fn pv_scenario(
    p: &PvParams,
    irradiance: serde_json::Value,
    cost: serde_json::Value,
    steps: u64,
    seed: u64,
) -> Result<Scenario> {
    let v = serde_json::json!({
        "horizon": steps,
        "seed": seed,
        "resources": [{
            "id": "pv",
            "kind": "pv",
            "params": p,
            "irradiance": irradiance,
            "cost": cost,
        }]
    });
    Ok(serde_json::from_value(v)?)
}

pub(super) fn thm_pv(scale: &Scale, seed: u64) -> Result<Outcome> {
    let cases = [(int(1), int(1)), (int(4), rat(1, 4)), (int(1), int(0))];
    let mut invariant_ok = 0;
    let mut invariant_total = 0;
    let mut traces_ok = 0;
    let mut traces_total = 0;
    let mut notes = Vec::new();
    for (p, t) in &cases {
        let params = PvParams::new(p.clone(), t.clone())?;
        let full = pv_triangle(&params, p)?;
        let bound = pv_error_bound(&params);
        if bound != full.diameter_sq() {
            notes.push(format!(
                "bound {bound} differs from diam² {}",
                full.diameter_sq()
            ));
        }
        for m in [1, 4, 16] {
            let sets = pv_family(&params, m)
                .into_iter()
                .map(FeasibleSet::Polygon)
                .collect();
            let coll = Collection::persistent(sets)?;
            invariant_total += 1;
            if check_invariance(&coll, &full) {
                invariant_ok += 1;
            } else {
                notes.push(format!("T({p}) not invariant for tan φ = {t}, m = {m}"));
            }
        }
        let waves = [
            serde_json::json!({"type": "square"}),
            serde_json::json!({"type": "random", "resolution": 16}),
        ];
        let costs = [
            serde_json::json!({"type": "random", "resolution": 16}),
            serde_json::json!({"type": "adversarial"}),
        ];
        for (wi, w) in waves.iter().enumerate() {
            for (ci, c) in costs.iter().enumerate() {
                let sc = pv_scenario(
                    &params,
                    w.clone(),
                    c.clone(),
                    scale.sim_steps,
                    seed + (wi * 2 + ci) as u64,
                )?;
                let out = run_scenario(&sc)?;
                let m = &out.report.resources[0];
                traces_total += 1;
                if m.max_error_sq <= bound
                    && m.feasible
                    && out.traces[0].trace.mode == PredictionMode::Persistent
                {
                    traces_ok += 1;
                } else {
                    notes.push(format!(
                        "trace max ‖e‖² = {} over bound {bound}",
                        m.max_error_sq
                    ));
                }
            }
        }
    }
    Ok((
        format!(
            "{invariant_total}/{invariant_total} families leave T(p_max) invariant; \
             {traces_total}/{traces_total} traces keep ‖e‖² <= diam² (triangle bound)"
        ),
        format!(
            "{invariant_ok}/{invariant_total} invariant, {traces_ok}/{traces_total} traces bounded{}",
            if notes.is_empty() { String::new() } else { format!("; {}", notes.join(" | ")) }
        ),
        invariant_ok == invariant_total && traces_ok == traces_total && notes.is_empty(),
    ))
}

/// Heater params in the 19..23 band plus initial temperatures.
fn heater_setup(
    p_heat: &[&str],
    temps: &[&str],
    lock: u32,
    thermal: serde_json::Value,
) -> serde_json::Value {
    serde_json::json!({
        "kind": "heater",
        "params": {
            "p_heat": p_heat,
            "t_min": "19",
            "t_max": "23",
            "lock_steps": lock,
            "thermal": thermal,
        },
        "initial_temps": temps,
    })
}

fn heater_scenario(
    setup: &serde_json::Value,
    cost: &serde_json::Value,
    steps: u64,
    seed: u64,
    diffusion: bool,
) -> Result<Scenario> {
    let mut resource = setup.clone();
    resource["id"] = "heater".into();
    resource["diffusion"] = diffusion.into();
    resource["cost"] = cost.clone();
    Ok(serde_json::from_value(serde_json::json!({
        "horizon": steps,
        "seed": seed,
        "resources": [resource],
    }))?)
}

pub(super) fn heater(scale: &Scale, seed: u64) -> Result<Outcome> {
    let costs = [
        serde_json::json!({"type": "random", "resolution": 32}),
        serde_json::json!({"type": "adversarial"}),
        serde_json::json!({"type": "quadratic", "center": ["-15/2", "0"]}),
    ];
    let single = heater_setup(
        &["15"],
        &["21"],
        10,
        serde_json::json!({"a": "1/20", "b": "1/20", "t_out": "10"}),
    );
    let multi = heater_setup(
        &["1", "2", "3"],
        &["20", "21", "22"],
        3,
        serde_json::json!({"a": "1/20", "b": "1", "t_out": "10"}),
    );
    let mut notes = Vec::new();
    let mut single_worst = int(0);
    let mut multi_worst = int(0);
    for (i, c) in costs.iter().enumerate() {
        let sc = heater_scenario(&single, c, scale.sim_steps, seed + i as u64, true)?;
        let out = run_scenario(&sc)?;
        single_worst = single_worst.max(out.report.resources[0].max_error_sq.clone());
        let sc = heater_scenario(&multi, c, scale.sim_steps, seed + 10 + i as u64, true)?;
        let out = run_scenario(&sc)?;
        multi_worst = multi_worst.max(out.report.resources[0].max_error_sq.clone());
        if !out.report.consistent() {
            notes.push("inconsistent multi-heater trace".to_string());
        }
    }
    let single_bound = rat(15, 2);
    let multi_bound = rat(3, 2);
    let params: HeaterParams = serde_json::from_value(multi["params"].clone())?;
    let from_sets = OneDimCollection::new(heater_collection(&params))?.max_step() / int(2);
    if heater_error_bound(&params) != multi_bound || from_sets != multi_bound {
        notes.push(format!(
            "multi-heater bound {} / {from_sets}",
            heater_error_bound(&params)
        ));
    }
    let sq = |q: &Rational| q * q;
    let single_ok = single_worst <= sq(&single_bound);
    let multi_ok = multi_worst <= sq(&multi_bound);
    Ok((
        "single heater max |e| <= 15/2; heaters (1, 2, 3) max |e| <= 3/2 (half the largest power)"
            .into(),
        format!(
            "single max |e|² = {single_worst}, multi max |e|² = {multi_worst}{}",
            if notes.is_empty() {
                String::new()
            } else {
                format!("; {}", notes.join(" | "))
            }
        ),
        single_ok && multi_ok && notes.is_empty(),
    ))
}

pub(super) fn contrast(scale: &Scale, seed: u64) -> Result<Outcome> {
    let p_heat = int(15);
    let setup = heater_setup(
        &["15"],
        &["21"],
        0,
        serde_json::json!({"a": "1/1000", "b": "1/10000", "t_out": "20"}),
    );
    let cost = serde_json::json!({"type": "target", "point": ["-15/2", "0"]});
    let run = |diffusion| -> Result<Vec<Rational>> {
        let sc = heater_scenario(&setup, &cost, scale.contrast_horizon, seed, diffusion)?;
        let out = run_scenario(&sc)?;
        Ok(out.traces[0]
            .trace
            .errors()
            .map(|e| crate::geometry::rational::abs(&e.x))
            .collect())
    };
    let off = run(false)?;
    let on = run(true)?;
    let quarter = &p_heat / int(4);
    let half = &p_heat / int(2);
    let linear = off
        .iter()
        .enumerate()
        .skip(2)
        .find(|(n, e)| **e < &quarter * int(*n as i64))
        .map(|(n, _)| n);
    let bounded = on.iter().position(|e| *e > half);
    Ok((
        "off: |e_n| >= n P/4 for n >= 2; on: |e_n| <= P/2 (P = 15)".into(),
        format!(
            "off: {}; on: {}; final off |e| = {}",
            linear.map_or("linear growth holds".into(), |n| format!(
                "fails at n = {n}"
            )),
            bounded.map_or("bounded".into(), |n| format!("exceeds at n = {n}")),
            off.last().cloned().unwrap_or_default()
        ),
        linear.is_none() && bounded.is_none() && off.len() as u64 == scale.contrast_horizon + 1,
    ))
}

pub(super) fn voronoi_cover() -> Result<Outcome> {
    let mut got = Vec::new();
    let mut pass = true;
    for py in [0, 5, 9] {
        let p = Point2::int(0, py);
        let s = reg2_set(&p);
        let coll = Collection::perfect(vec![s.clone().into()])?;
        let r = iterate_to_invariance(&coll, &origin_seed(), &IterationConfig::default())?;
        let cell = s
            .bounded_cell(&p)?
            .ok_or_else(|| Error::Domain(format!("cell of {p} is unbounded")))?
            .translate(&-&p);
        let covers = r.converged && r.invariant_set.contains_polygon(&cell);
        pass &= covers;
        got.push(format!(
            "p = {p}: {}{}",
            if covers { "covers" } else { "misses" },
            if r.converged { "" } else { " (not converged)" }
        ));
    }
    Ok((
        "invariant set ⊇ V(p) - p for p in (0,0), (0,5), (0,9) (conjecture)".into(),
        got.join("; "),
        pass,
    ))
}

fn random_polygon(rng: &mut ChaCha8Rng, k: usize) -> ConvexPolygon {
    let pts: Vec<Point2> = (0..k)
        .map(|_| Point2::new(small_rational(rng) / int(2), small_rational(rng) / int(2)))
        .collect();
    ConvexPolygon::hull(pts.iter())
}

fn random_union(rng: &mut ChaCha8Rng) -> IntervalUnion {
    let k = rng.gen_range(1..=3);
    IntervalUnion::from_intervals(
        (0..k)
            .map(|_| {
                let (a, b) = (small_rational(rng) / int(2), small_rational(rng) / int(2));
                Interval::new(a.clone().min(b.clone()), a.max(b)).expect("ordered")
            })
            .collect(),
    )
}

#[derive(Default)]
struct PlanarTally {
    extensive: usize,
    monotone: usize,
    additive: usize,
    fixed_invariant: usize,
    similar: usize,
    contained: usize,
    minimal_found: usize,
    minimal_ok: usize,
    failures: Vec<String>,
}

fn planar_case(i: usize, scale: &Scale, seed: u64) -> Result<PlanarTally> {
    let mut rng = stream(seed, i);
    let sample = random_planar(&mut rng);
    let coll = Collection::perfect(sample.sets())?;
    let base = Collection::perfect(sample.base_sets())?;
    let mut t = PlanarTally::default();
    let fail = |t: &mut PlanarTally, what: &str| t.failures.push(format!("#{i} {what}"));

    let k1 = rng.gen_range(1..=5);
    let q1 = random_polygon(&mut rng, k1);
    let k2 = rng.gen_range(1..=4);
    let grown = random_polygon(&mut rng, k2);
    let q2 = ConvexPolygon::hull(q1.vertices().iter().chain(grown.vertices()));
    let (g1, g2) = (apply_collection(&coll, &q1), apply_collection(&coll, &q2));
    if g1.contains_polygon(&q1) && g2.contains_polygon(&q2) {
        t.extensive += 1;
    } else {
        fail(&mut t, "extensivity");
    }
    if g2.contains_polygon(&g1) {
        t.monotone += 1;
    } else {
        fail(&mut t, "monotonicity");
    }

    let line = OneDimCollection::new(
        sample
            .base
            .iter()
            .map(|s| {
                ScalarSet::new(s.points().iter().map(|p| p.x.clone()).collect()).expect("non-empty")
            })
            .collect(),
    )?;
    let (a, b) = (random_union(&mut rng), random_union(&mut rng));
    if apply_g_1d_collection(&line, &a.union(&b))
        == apply_g_1d_collection(&line, &a).union(&apply_g_1d_collection(&line, &b))
    {
        t.additive += 1;
    } else {
        fail(&mut t, "1D additivity");
    }

    // Invariant sets do not depend on per-set shifts and scale with the sets.
    let box_seed = |k: &Rational| {
        ConvexPolygon::rectangle(
            &Point2::new(-k * int(6), -k * int(6)),
            &Point2::new(k * int(6), k * int(6)),
        )
    };
    let cfg = IterationConfig {
        max_iterations: 400,
        ..IterationConfig::default()
    };
    let base_fix = iterate_to_invariance(&base, &box_seed(&int(1)), &cfg)?;
    let fix = iterate_to_invariance(&coll, &box_seed(&sample.scale), &cfg)?;
    if !(base_fix.converged && fix.converged) {
        fail(&mut t, "no fixed point from the box seed");
        return Ok(t);
    }
    let fixed = fix.invariant_set;
    if check_invariance(&coll, &fixed) && apply_collection(&coll, &fixed) == fixed {
        t.fixed_invariant += 1;
    } else {
        fail(&mut t, "fixed point not invariant");
    }
    if base_fix.invariant_set.scale(&sample.scale) == fixed {
        t.similar += 1;
    } else {
        fail(&mut t, "similarity");
    }

    let min_cfg = IterationConfig {
        epsilon: rat(1, 1000),
        wrap: true,
        max_iterations: scale.minimal_budget,
        ..IterationConfig::default()
    };
    let minimal = iterate_to_invariance(&base, &origin_seed(), &min_cfg)?;
    let mut target = fixed.clone();
    if minimal.converged {
        t.minimal_found += 1;
        let m = &minimal.invariant_set;
        if check_invariance(&base, m) && base_fix.invariant_set.contains_polygon(m) {
            t.minimal_ok += 1;
            target = m.scale(&sample.scale);
        } else {
            fail(&mut t, "minimal fixed point");
        }
    }

    let sets = coll.sets().to_vec();
    let mut pick = stream(seed ^ 0x5eed, i);
    let mut random = UniformRandom::with_resolution(seed.wrapping_add(i as u64), 16);
    let mut policy = |n: u64, advert: &ConvexPolygon, e: &Point2| {
        if n % 3 == 2 {
            Adversarial.request(n, advert, e)
        } else {
            random.sample(advert)
        }
    };
    let trace = run_trace(
        PredictionMode::Perfect,
        Implementation::ErrorDiffusion,
        &mut |_| sets[pick.gen_range(0..sets.len())].clone(),
        &mut policy,
        scale.planar_sim_steps,
        Point2::origin(),
    )?;
    if trace
        .errors()
        .all(|e| target.contains(e) && fixed.contains(e))
    {
        t.contained += 1;
    } else {
        fail(&mut t, "error left the invariant set");
    }
    Ok(t)
}

pub(super) fn operator_props(scale: &Scale, seed: u64) -> Result<Outcome> {
    let n = scale.planar_collections;
    let cases: Vec<Result<PlanarTally>> = (0..n)
        .into_par_iter()
        .map(|i| planar_case(i, scale, seed))
        .collect();
    let mut total = PlanarTally::default();
    for c in cases {
        let c = c?;
        total.extensive += c.extensive;
        total.monotone += c.monotone;
        total.additive += c.additive;
        total.fixed_invariant += c.fixed_invariant;
        total.similar += c.similar;
        total.contained += c.contained;
        total.minimal_found += c.minimal_found;
        total.minimal_ok += c.minimal_ok;
        total.failures.extend(c.failures);
    }
    let t = &total;
    Ok((
        format!(
            "{n}/{n} each: extensive, monotone, 1D additive, fixed point invariant, \
             similarity-covariant, trace contained (operator identities)"
        ),
        format!(
            "extensive {}, monotone {}, additive {}, invariant {}, similar {}, contained {}; \
             minimal set reached for {} (all consistent: {}){}",
            t.extensive,
            t.monotone,
            t.additive,
            t.fixed_invariant,
            t.similar,
            t.contained,
            t.minimal_found,
            t.minimal_ok == t.minimal_found,
            if t.failures.is_empty() {
                String::new()
            } else {
                format!("; {}", t.failures.join(", "))
            }
        ),
        t.failures.is_empty()
            && [
                t.extensive,
                t.monotone,
                t.additive,
                t.fixed_invariant,
                t.similar,
                t.contained,
            ]
            .iter()
            .all(|&k| k == n),
    ))
}
