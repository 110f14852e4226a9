use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::central::{central_step, CentralPolicy, Cost};
use super::metrics::{resource_metrics, MetricsReport};
use super::scenario::{GradientBase, Irradiance, ResourceConfig, ResourceModel, Scenario};
use crate::diffusion::{
    implement, Adversarial, ControllerState, ControllerTrace, Implementation, RequestPolicy,
    StepRecord, UniformRandom,
};
use crate::error::{Error, Result};
use crate::geometry::{int, ConvexPolygon, FeasibleSet, Point2, Rational};
use crate::invariant::PredictionMode;
use crate::resources::{heater_feasible_set, heater_step, pv_feasible_set, PvParams, PvState};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceTrace {
    pub id: String,
    pub kind: String,
    pub trace: ControllerTrace,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimOutput {
    pub scenario: Scenario,
    pub traces: Vec<ResourceTrace>,
    pub report: MetricsReport,
}

/// Per-resource stream seed, so adding a resource does not perturb the others.
fn resource_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Runs every resource of the scenario for `horizon` steps.
///
/// Resources do not interact (there is no aggregate grid constraint), so
/// each one runs its own loop; results are ordered as in the scenario.
pub fn run_scenario(sc: &Scenario) -> Result<SimOutput> {
    sc.validate()?;
    let traces = sc
        .resources
        .par_iter()
        .enumerate()
        .map(|(i, r)| {
            let trace = run_resource(sc, r, resource_seed(sc.seed, i))
                .map_err(|e| Error::Domain(format!("resource {:?}: {e}", r.id)))?;
            Ok(ResourceTrace {
                id: r.id.clone(),
                kind: r.kind().to_string(),
                trace,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let resources = sc
        .resources
        .iter()
        .zip(&traces)
        .map(|(cfg, t)| resource_metrics(cfg, &t.trace))
        .collect();
    Ok(SimOutput {
        scenario: sc.clone(),
        traces,
        report: MetricsReport {
            seed: sc.seed,
            horizon: sc.horizon,
            resources,
        },
    })
}

/// Independent scenarios in parallel, results in input order.
pub fn run_scenarios(scenarios: &[Scenario]) -> Vec<Result<SimOutput>> {
    scenarios.par_iter().map(run_scenario).collect()
}

#[allow(clippy::large_enum_variant)]
enum Plant<'a> {
    Heater {
        params: &'a crate::resources::HeaterParams,
        state: crate::resources::HeaterState,
    },
    Pv {
        params: &'a PvParams,
        irradiance: &'a Irradiance,
        rng: ChaCha8Rng,
    },
}

impl Plant<'_> {
    fn feasible_set(&mut self, n: u64) -> FeasibleSet {
        match self {
            Plant::Heater { params, state } => heater_feasible_set(params, state).into(),
            Plant::Pv {
                params,
                irradiance,
                rng,
            } => {
                let p_avail = available_power(params, irradiance, rng, n);
                pv_feasible_set(params, &PvState { p_avail }).into()
            }
        }
    }

    fn advance(&mut self, y: &Point2) -> Result<()> {
        if let Plant::Heater { params, state } = self {
            *state = heater_step(params, state, &y.x)?;
        }
        Ok(())
    }
}

pub fn available_power(
    params: &PvParams,
    irr: &Irradiance,
    rng: &mut ChaCha8Rng,
    n: u64,
) -> Rational {
    let zero = int(0);
    let v = match irr {
        Irradiance::Square {
            period,
            high_steps,
            low,
            high,
        } => {
            let on = high_steps.unwrap_or(period.div_ceil(2));
            if n % period < on {
                high.clone().unwrap_or_else(|| params.p_max.clone())
            } else {
                low.clone().unwrap_or_else(|| zero.clone())
            }
        }
        Irradiance::Constant { value } => value.clone(),
        Irradiance::Random { resolution } => {
            let k = rng.gen_range(0..=*resolution);
            &params.p_max * int(k as i64) / int(*resolution as i64)
        }
        Irradiance::Series { values } => values[(n % values.len() as u64) as usize].clone(),
    };
    v.clamp(zero, params.p_max.clone())
}

fn run_resource(sc: &Scenario, cfg: &ResourceConfig, seed: u64) -> Result<ControllerTrace> {
    let mut plant = match &cfg.model {
        ResourceModel::Heater {
            params,
            initial_temps,
        } => Plant::Heater {
            params,
            state: params.initial_state(initial_temps)?,
        },
        ResourceModel::Pv { params, irradiance } => Plant::Pv {
            params,
            irradiance,
            rng: ChaCha8Rng::seed_from_u64(seed.rotate_left(17)),
        },
    };
    let policy = CentralPolicy {
        cost: cfg.cost.clone(),
        step_size: sc.central.step_size.clone(),
        resolution: sc.central.resolution.clone(),
    };
    let mut random = match cfg.cost {
        Cost::Random { resolution } => Some(UniformRandom::with_resolution(seed, resolution)),
        _ => None,
    };
    let imp = if cfg.diffusion {
        Implementation::ErrorDiffusion
    } else {
        Implementation::Nearest
    };
    let mode = cfg.prediction();
    let e0 = cfg.e0.clone().unwrap_or_else(Point2::origin);
    let mut trace = ControllerTrace::new(mode, imp, e0.clone());
    trace.records.reserve(sc.horizon as usize);
    let mut state = ControllerState::new(e0);
    let mut base = cfg.initial_request.clone().unwrap_or_else(Point2::origin);
    let mut prev_hull: Option<ConvexPolygon> = None;
    for n in 0..sc.horizon {
        let s = plant.feasible_set(n);
        let hull = s.hull();
        let advert = match mode {
            PredictionMode::Perfect => hull.clone(),
            PredictionMode::Persistent => prev_hull.take().unwrap_or_else(|| hull.clone()),
        };
        let x = match (&cfg.cost, random.as_mut()) {
            (_, Some(r)) => r.sample(&advert),
            (Cost::Adversarial, None) => Adversarial.request(n, &advert, &state.e),
            _ => central_step(&policy, &advert, &base),
        };
        let (y, next) = implement(&state, &advert, &x, &s, imp)?;
        if !s.contains(&y) {
            return Err(Error::SetpointInfeasible(Box::new(y)));
        }
        plant.advance(&y)?;
        base = match sc.central.gradient_base {
            GradientBase::Implemented => y.clone(),
            GradientBase::Requested => x.clone(),
        };
        trace.records.push(StepRecord {
            n,
            set: s,
            advert,
            x,
            y,
            e: state.e.clone(),
            e_next: next.e.clone(),
        });
        state = next;
        prev_hull = Some(hull);
    }
    Ok(trace)
}
