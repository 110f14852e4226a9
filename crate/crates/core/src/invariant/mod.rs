//! Set operators on accumulated-error regions and their fixed points.
//!
//! For a feasible set `S` and a convex region `Q`:
//!
//! - perfect prediction: `G_S(Q) = ch ⋃_c ((ch S + Q) ∩ V_S(c)) - c`
//! - persistent prediction: `P_S(D) = ch S + ch ⋃_c (D ∩ V_S(c)) - c`
//!
//! Collection-level operators take the convex hull of the per-set results.
//! Iterating from `{0}` gives a monotone sequence whose limit is the minimal
//! convex invariant set; [`iterate_to_invariance`] stops when an application
//! reproduces its input exactly.

mod collection;
mod diagnostics;
mod family;
mod iterate;
mod oned;
mod operators;
mod rounding;

pub use collection::{Collection, PredictionMode};
pub use diagnostics::{boundedness_report, coverage_ratio, BoundednessReport};
pub use family::{verify_monotone_family, MonotoneFamilyReport};
pub use iterate::{iterate_to_invariance, Axis, IterationResult, RoundingEvent};
pub use oned::{apply_g_1d, apply_g_1d_collection, iterate_1d, max_step_size, OneDimCollection};
pub use operators::{
    apply_collection, apply_g_collection, apply_g_single, apply_p_collection, apply_p_single,
    apply_single, check_invariance,
};
pub use rounding::{conditional_round, default_snap_fractions, outer_round, IterationConfig};
