//! Local-controller models: on/off heaters with switching locks, and a PV
//! converter whose feasible set is a triangle in the `(P, Q)` plane.
//!
//! Consumption is negative real power.

pub mod heater;
pub mod pv;

pub use heater::{
    heater_collection, heater_error_bound, heater_feasible_set, heater_step, HeaterParams,
    HeaterState, RoomState, Thermal,
};
pub use pv::{pv_error_bound, pv_family, pv_feasible_set, pv_triangle, PvParams, PvState};

pub use crate::invariant::max_step_size;
