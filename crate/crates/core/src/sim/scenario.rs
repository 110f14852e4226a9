use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rational::serde_str;
use crate::geometry::{int, rat, Point2, Rational};
use crate::invariant::PredictionMode;
use crate::resources::{HeaterParams, PvParams};

use super::central::Cost;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub horizon: u64,
    /// Control period; only echoed into outputs.
    #[serde(default = "default_step_ms")]
    pub step_ms: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub central: CentralConfig,
    pub resources: Vec<ResourceConfig>,
}

fn default_step_ms() -> u64 {
    100
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let sc: Scenario = serde_json::from_str(text)?;
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::Config("horizon must be at least 1".into()));
        }
        if self.resources.is_empty() {
            return Err(Error::Config("scenario has no resources".into()));
        }
        self.central.validate()?;
        let mut ids = BTreeSet::new();
        for r in &self.resources {
            if r.id.is_empty()
                || !r
                    .id
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
            {
                return Err(Error::Config(format!(
                    "resource id {:?} must be non-empty and use only [A-Za-z0-9_-]",
                    r.id
                )));
            }
            if !ids.insert(r.id.as_str()) {
                return Err(Error::Config(format!("duplicate resource id {:?}", r.id)));
            }
            r.validate()
                .map_err(|e| Error::Config(format!("resource {:?}: {e}", r.id)))?;
        }
        Ok(())
    }

    /// Turns error diffusion off for the named resources.
    pub fn disable_diffusion(&mut self, ids: &[String]) -> Result<()> {
        for id in ids {
            let r = self
                .resources
                .iter_mut()
                .find(|r| &r.id == id)
                .ok_or_else(|| Error::Config(format!("no resource with id {id:?}")))?;
            r.diffusion = false;
        }
        Ok(())
    }
}

/// Which point the gradient step starts from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradientBase {
    /// The setpoint the resource reported as implemented last step.
    #[default]
    Implemented,
    /// The previous request.
    Requested,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralConfig {
    #[serde(with = "serde_str", default = "default_step_size")]
    pub step_size: Rational,
    #[serde(default)]
    pub gradient_base: GradientBase,
    /// Gradient-step outputs are rounded to this grid before projection,
    /// which keeps denominators bounded over long runs.
    #[serde(with = "serde_str::option", default = "default_resolution")]
    pub resolution: Option<Rational>,
}

fn default_step_size() -> Rational {
    rat(1, 2)
}

fn default_resolution() -> Option<Rational> {
    Some(rat(1, 1000))
}

impl Default for CentralConfig {
    fn default() -> Self {
        Self {
            step_size: default_step_size(),
            gradient_base: GradientBase::default(),
            resolution: default_resolution(),
        }
    }
}

impl CentralConfig {
    pub fn validate(&self) -> Result<()> {
        if self.step_size < int(0) {
            return Err(Error::Config("step size must be non-negative".into()));
        }
        if matches!(&self.resolution, Some(r) if *r <= int(0)) {
            return Err(Error::Config("request resolution must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceConfig {
    pub id: String,
    #[serde(flatten)]
    pub model: ResourceModel,
    #[serde(default = "yes")]
    pub diffusion: bool,
    pub cost: Cost,
    #[serde(default)]
    pub e0: Option<Point2>,
    /// Starting point of the first gradient step; the origin if absent.
    #[serde(default)]
    pub initial_request: Option<Point2>,
}

fn yes() -> bool {
    true
}

impl ResourceConfig {
    pub fn validate(&self) -> Result<()> {
        self.cost.validate()?;
        match &self.model {
            ResourceModel::Heater {
                params,
                initial_temps,
            } => {
                params.validate()?;
                params.initial_state(initial_temps)?;
                if let Some(e0) = &self.e0 {
                    if e0.y != int(0) {
                        return Err(Error::Config(
                            "heater errors live on the real-power axis".into(),
                        ));
                    }
                }
            }
            ResourceModel::Pv { params, irradiance } => {
                params.validate()?;
                irradiance.validate()?;
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &'static str {
        match self.model {
            ResourceModel::Heater { .. } => "heater",
            ResourceModel::Pv { .. } => "pv",
        }
    }

    /// Heaters know their next set exactly; PV converters only know the
    /// current irradiance.
    pub fn prediction(&self) -> PredictionMode {
        match self.model {
            ResourceModel::Heater { .. } => PredictionMode::Perfect,
            ResourceModel::Pv { .. } => PredictionMode::Persistent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResourceModel {
    Heater {
        params: HeaterParams,
        #[serde(with = "serde_str::vec")]
        initial_temps: Vec<Rational>,
    },
    Pv {
        params: PvParams,
        irradiance: Irradiance,
    },
}

/// Available PV real power over time. Values are clamped to `[0, p_max]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Irradiance {
    /// `high` for the first `high_steps` of every `period` steps, then `low`.
    /// Missing levels default to `p_max` and 0.
    Square {
        #[serde(default = "default_period")]
        period: u64,
        #[serde(default)]
        high_steps: Option<u64>,
        #[serde(with = "serde_str::option", default)]
        low: Option<Rational>,
        #[serde(with = "serde_str::option", default)]
        high: Option<Rational>,
    },
    Constant {
        #[serde(with = "serde_str")]
        value: Rational,
    },
    /// Independent draws on a grid of `resolution` steps over `[0, p_max]`.
    Random {
        #[serde(default = "default_random_resolution")]
        resolution: u32,
    },
    /// Repeats the given values cyclically.
    Series {
        #[serde(with = "serde_str::vec")]
        values: Vec<Rational>,
    },
}

fn default_period() -> u64 {
    3
}

fn default_random_resolution() -> u32 {
    16
}

impl Irradiance {
    pub fn validate(&self) -> Result<()> {
        match self {
            Irradiance::Square {
                period, high_steps, ..
            } => {
                if *period == 0 || high_steps.is_some_and(|h| h > *period) {
                    return Err(Error::Config(
                        "square wave needs period >= 1 and high_steps <= period".into(),
                    ));
                }
            }
            Irradiance::Random { resolution } if *resolution == 0 => {
                return Err(Error::Config(
                    "irradiance resolution must be positive".into(),
                ));
            }
            Irradiance::Series { values } if values.is_empty() => {
                return Err(Error::Config("irradiance series is empty".into()));
            }
            _ => {}
        }
        Ok(())
    }
}
