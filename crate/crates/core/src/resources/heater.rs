use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::rational::{round_to, serde_str};
use crate::geometry::{int, rat, Point2, PointSet, Rational, ScalarSet};

/// First-order room model `T' = T + a (t_out - T) + b P`, with `P >= 0` the
/// power delivered to the room.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thermal {
    #[serde(with = "serde_str")]
    pub a: Rational,
    #[serde(with = "serde_str")]
    pub b: Rational,
    #[serde(with = "serde_str")]
    pub t_out: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeaterParams {
    /// Power drawn by each room's heater when on (positive).
    #[serde(with = "serde_str::vec")]
    pub p_heat: Vec<Rational>,
    #[serde(with = "serde_str")]
    pub t_min: Rational,
    #[serde(with = "serde_str")]
    pub t_max: Rational,
    /// Steps a heater stays locked after switching.
    pub lock_steps: u32,
    pub thermal: Thermal,
    /// Temperatures are rounded to this grid after every update.
    #[serde(with = "serde_str", default = "default_temp_resolution")]
    pub temp_resolution: Rational,
}

fn default_temp_resolution() -> Rational {
    rat(1, 1000)
}

/// Rooms beyond this make subset enumeration impractical.
pub const MAX_ROOMS: usize = 16;

impl HeaterParams {
    pub fn validate(&self) -> Result<()> {
        let zero = int(0);
        if self.p_heat.is_empty() || self.p_heat.len() > MAX_ROOMS {
            return Err(Error::Config(format!(
                "heater needs between 1 and {MAX_ROOMS} rooms"
            )));
        }
        if self.p_heat.iter().any(|p| *p < zero) {
            return Err(Error::Config("heater power must be non-negative".into()));
        }
        if self.t_min >= self.t_max {
            return Err(Error::Config("t_min must be below t_max".into()));
        }
        if self.thermal.a < zero || self.thermal.a >= int(1) {
            return Err(Error::Config("leak rate must lie in [0, 1)".into()));
        }
        if self.temp_resolution <= zero {
            return Err(Error::Config(
                "temperature resolution must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn rooms(&self) -> usize {
        self.p_heat.len()
    }

    pub fn initial_state(&self, temps: &[Rational]) -> Result<HeaterState> {
        if temps.len() != self.rooms() {
            return Err(Error::Config(format!(
                "expected {} initial temperatures, got {}",
                self.rooms(),
                temps.len()
            )));
        }
        Ok(HeaterState {
            rooms: temps
                .iter()
                .map(|t| RoomState {
                    on: false,
                    lock_remaining: 0,
                    temp: t.clone(),
                })
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoomState {
    /// Heater status during the last step.
    pub on: bool,
    /// Steps until the heater may switch again; locked while positive.
    pub lock_remaining: u32,
    #[serde(with = "serde_str")]
    pub temp: Rational,
}

impl RoomState {
    pub fn locked(&self) -> bool {
        self.lock_remaining > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeaterState {
    pub rooms: Vec<RoomState>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Role {
    /// Status fixed: locked, too cold or too warm.
    Forced(bool),
    Free,
}

fn roles(params: &HeaterParams, state: &HeaterState) -> Vec<Role> {
    state
        .rooms
        .iter()
        .map(|r| {
            if r.locked() {
                Role::Forced(r.on)
            } else if r.temp < params.t_min {
                Role::Forced(true)
            } else if r.temp > params.t_max {
                Role::Forced(false)
            } else {
                Role::Free
            }
        })
        .collect()
}

fn set_from_roles(p_heat: &[Rational], roles: &[Role]) -> Vec<Rational> {
    let base: Rational = p_heat
        .iter()
        .zip(roles)
        .filter(|(_, r)| **r == Role::Forced(true))
        .map(|(p, _)| -p)
        .sum();
    let free: Vec<&Rational> = p_heat
        .iter()
        .zip(roles)
        .filter(|(_, r)| **r == Role::Free)
        .map(|(p, _)| p)
        .collect();
    let mut out: Vec<Rational> = (0u32..1 << free.len())
        .map(|mask| {
            let mut v = base.clone();
            for (k, p) in free.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    v -= *p;
                }
            }
            v
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Implementable real-power setpoints: the forced base load minus any
/// subset of the free heaters.
pub fn heater_feasible_set(params: &HeaterParams, state: &HeaterState) -> PointSet {
    let vals = set_from_roles(&params.p_heat, &roles(params, state));
    PointSet::on_axis(vals).expect("the empty subset is always present")
}

/// Implements `y` and advances one step. Among the subsets of free heaters
/// that realize `y`, the one switching on the coldest rooms wins, then the
/// lowest room index.
pub fn heater_step(
    params: &HeaterParams,
    state: &HeaterState,
    y: &Rational,
) -> Result<HeaterState> {
    let roles = roles(params, state);
    let base: Rational = params
        .p_heat
        .iter()
        .zip(&roles)
        .filter(|(_, r)| **r == Role::Forced(true))
        .map(|(p, _)| -p)
        .sum();
    let mut free: Vec<usize> = (0..roles.len())
        .filter(|&i| roles[i] == Role::Free)
        .collect();
    free.sort_by(|&i, &j| {
        state.rooms[i]
            .temp
            .cmp(&state.rooms[j].temp)
            .then(i.cmp(&j))
    });
    let need = &base - y;
    // Bit `k - 1 - b` of `code` selects the b-th coldest free room, so
    // scanning codes downwards prefers switching on colder rooms.
    let k = free.len();
    let includes = |code: u32, b: usize| code >> (k - 1 - b) & 1 == 1;
    let chosen = (0u32..1 << k)
        .rev()
        .find(|&code| {
            let s: Rational = (0..k)
                .filter(|&b| includes(code, b))
                .map(|b| params.p_heat[free[b]].clone())
                .sum();
            s == need
        })
        .ok_or_else(|| Error::SetpointInfeasible(Box::new(Point2::on_axis(y.clone()))))?;
    let mut on: Vec<bool> = roles
        .iter()
        .map(|r| matches!(r, Role::Forced(true)))
        .collect();
    for b in 0..k {
        if includes(chosen, b) {
            on[free[b]] = true;
        }
    }
    let th = &params.thermal;
    let rooms = state
        .rooms
        .iter()
        .zip(&on)
        .zip(&params.p_heat)
        .map(|((r, &now_on), p)| {
            let lock_remaining = if now_on != r.on {
                params.lock_steps
            } else {
                r.lock_remaining.saturating_sub(1)
            };
            let delivered = if now_on { p.clone() } else { int(0) };
            let t = &r.temp + &th.a * (&th.t_out - &r.temp) + &th.b * delivered;
            RoomState {
                on: now_on,
                lock_remaining,
                temp: round_to(&t, &params.temp_resolution),
            }
        })
        .collect();
    Ok(HeaterState { rooms })
}

/// Every set the feasible-set rule can produce, whatever the state.
pub fn heater_collection(params: &HeaterParams) -> Vec<ScalarSet> {
    let r = params.rooms();
    let choices = [Role::Forced(false), Role::Forced(true), Role::Free];
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        let roles: Vec<Role> = idx.iter().map(|&i| choices[i]).collect();
        out.push(set_from_roles(&params.p_heat, &roles));
        let mut pos = 0;
        while pos < r && idx[pos] == choices.len() - 1 {
            idx[pos] = 0;
            pos += 1;
        }
        if pos == r {
            break;
        }
        idx[pos] += 1;
    }
    out.sort();
    out.dedup();
    out.into_iter()
        .map(|v| ScalarSet::new(v).expect("non-empty"))
        .collect()
}

/// Half the largest heater power.
pub fn heater_error_bound(params: &HeaterParams) -> Rational {
    params.p_heat.iter().max().cloned().unwrap_or_default() / int(2)
}
