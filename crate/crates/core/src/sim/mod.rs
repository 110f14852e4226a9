//! Closed-loop scenarios: a projected-gradient central controller talking to
//! heater and PV local controllers, with metrics and CSV export.

mod central;
mod export;
mod metrics;
mod run;
mod scenario;

pub use central::{central_step, CentralPolicy, Cost};
pub use export::{emit_plot_data, ManifestEntry};
pub use metrics::{error_bound_sq, resource_metrics, MetricsReport, ResourceMetrics};
pub use run::{available_power, run_scenario, run_scenarios, ResourceTrace, SimOutput};
pub use scenario::{
    CentralConfig, GradientBase, Irradiance, ResourceConfig, ResourceModel, Scenario,
};
