//! Invariant sets and simulation for error-diffusion setpoint tracking.
//!
//! A local controller receives requests `x_n` from a central controller that
//! only sees convex advertisements, implements `y_n` from its actual feasible
//! set `S_n` by picking the point closest to `e_n + x_n`, and carries the
//! accumulated error `e_{n+1} = e_n + x_n - y_n`. This crate computes, with
//! exact rational arithmetic, the minimal (convex) sets that keep that error
//! bounded, and simulates the closed loop on heater and PV resources.
//!
//! Layout:
//! - [`geometry`]: exact hulls, Minkowski sums, clipping, Voronoi cells.
//! - [`invariant`]: set operators, fixed-point iteration, invariance checks.
//! - [`diffusion`]: controller steps and traces.
//! - [`resources`]: heater and PV local-controller models.
//! - [`sim`]: closed-loop scenario runner and data export.
//! - [`verify`]: the named regression checks behind `errdiff verify`.

pub mod diffusion;
pub mod error;
pub mod geometry;
pub mod invariant;
pub mod io;
pub mod resources;
pub mod sim;
pub mod verify;

pub use error::{Error, Result};
