use serde::{Deserialize, Serialize};

use super::scenario::{ResourceConfig, ResourceModel};
use crate::diffusion::ControllerTrace;
use crate::geometry::rational::{serde_str, to_f64};
use crate::geometry::{int, Point2, Rational};
use crate::invariant::PredictionMode;
use crate::resources::{heater_error_bound, pv_error_bound};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub seed: u64,
    pub horizon: u64,
    pub resources: Vec<ResourceMetrics>,
}

impl MetricsReport {
    /// Exact bookkeeping checks that must hold whatever the configuration.
    pub fn consistent(&self) -> bool {
        self.resources
            .iter()
            .all(|m| m.feasible && m.telescopes && m.identity_holds)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResourceMetrics {
    pub id: String,
    pub kind: String,
    pub prediction: PredictionMode,
    pub diffusion: bool,
    pub steps: usize,
    #[serde(with = "serde_str")]
    pub max_error_sq: Rational,
    pub max_error: f64,
    pub final_error: Point2,
    pub mean_request: Point2,
    pub mean_implemented: Point2,
    /// Squared radius of the resource's invariant error set.
    #[serde(with = "serde_str")]
    pub error_bound_sq: Rational,
    pub within_bound: bool,
    /// `‖x̄_k - ȳ_k‖ <= bound / k` at `k = N` and `k = N/2`.
    pub average_rate_holds: bool,
    /// `ȳ_N - x̄_N = (e_0 - e_N) / N`, exactly.
    pub identity_holds: bool,
    /// `Σ (x_n - y_n) = e_N - e_0`, exactly.
    pub telescopes: bool,
    /// Every request inside its advertisement, every setpoint implementable,
    /// every error update consistent.
    pub feasible: bool,
    /// Least-squares slope of `‖e_n‖` against `n`.
    pub growth_slope: f64,
    /// Longest run of consecutive steps with unchanged `(x, y)`.
    pub stagnation_steps: usize,
}

pub fn error_bound_sq(cfg: &ResourceConfig) -> Rational {
    match &cfg.model {
        ResourceModel::Heater { params, .. } => {
            let b = heater_error_bound(params);
            &b * &b
        }
        ResourceModel::Pv { params, .. } => pv_error_bound(params),
    }
}

pub fn resource_metrics(cfg: &ResourceConfig, trace: &ControllerTrace) -> ResourceMetrics {
    let n = trace.len();
    let bound = error_bound_sq(cfg);
    let max_error_sq = trace.max_error_sq();
    let (mean_request, mean_implemented) = if n == 0 {
        (Point2::origin(), Point2::origin())
    } else {
        let k = int(1) / int(n as i64);
        (
            trace.sum_requests().scale(&k),
            trace.sum_implemented().scale(&k),
        )
    };
    let identity_holds = n == 0
        || &mean_implemented - &mean_request
            == (&trace.e0 - trace.final_error()).scale(&(int(1) / int(n as i64)));
    // k ‖x̄_k - ȳ_k‖ = ‖e_k - e_0‖.
    let drift_ok = |k: usize| {
        let e_k = if k == 0 {
            &trace.e0
        } else {
            &trace.records[k - 1].e_next
        };
        (e_k - &trace.e0).norm_sq() <= bound
    };
    ResourceMetrics {
        id: cfg.id.clone(),
        kind: cfg.kind().to_string(),
        prediction: trace.mode,
        diffusion: cfg.diffusion,
        steps: n,
        max_error: to_f64(&max_error_sq).sqrt(),
        within_bound: max_error_sq <= bound,
        max_error_sq,
        final_error: trace.final_error().clone(),
        mean_request,
        mean_implemented,
        average_rate_holds: drift_ok(n) && drift_ok(n / 2),
        error_bound_sq: bound,
        identity_holds,
        telescopes: trace.telescopes(),
        feasible: trace.check().is_ok(),
        growth_slope: growth_slope(trace),
        stagnation_steps: stagnation(trace),
    }
}

fn growth_slope(trace: &ControllerTrace) -> f64 {
    let ys: Vec<f64> = trace
        .errors()
        .map(|e| to_f64(&e.norm_sq()).sqrt())
        .collect();
    if ys.len() < 2 {
        return 0.0;
    }
    let m = ys.len() as f64;
    let mean_x = (m - 1.0) / 2.0;
    let mean_y = ys.iter().sum::<f64>() / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, y) in ys.iter().enumerate() {
        let dx = i as f64 - mean_x;
        sxy += dx * (y - mean_y);
        sxx += dx * dx;
    }
    sxy / sxx
}

fn stagnation(trace: &ControllerTrace) -> usize {
    let mut best = 0;
    let mut run = 0;
    for (i, r) in trace.records.iter().enumerate() {
        let same = i > 0 && {
            let p = &trace.records[i - 1];
            p.x == r.x && p.y == r.y
        };
        run = if same { run + 1 } else { 1 };
        best = best.max(run);
    }
    best
}
