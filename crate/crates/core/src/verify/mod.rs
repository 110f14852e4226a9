//! Named regression checks, one per acceptance criterion.
//!
//! Each check returns a [`CheckResult`]; a check that errors is reported as a
//! failure rather than aborting the run. Checks run in parallel and the
//! report is ordered by name.

mod checks;
pub mod fixtures;
pub mod random;

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;

pub const CHECK_NAMES: [&str; 8] = [
    "contrast",
    "example1",
    "fig3",
    "heater",
    "operator-props",
    "thm-discrete",
    "thm-pv",
    "voronoi-cover",
];

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
    pub seconds: f64,
}

/// Sample counts and horizons of the randomized checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scale {
    pub discrete_collections: usize,
    pub sim_steps: u64,
    pub planar_collections: usize,
    pub planar_sim_steps: u64,
    pub contrast_horizon: u64,
    /// Iteration budget for the minimal-set attempt in `operator-props`.
    pub minimal_budget: usize,
}

impl Scale {
    pub fn full() -> Self {
        Self {
            discrete_collections: 200,
            sim_steps: 10_000,
            planar_collections: 100,
            planar_sim_steps: 2_000,
            contrast_horizon: 1_000,
            minimal_budget: 50,
        }
    }

    /// Small enough for unit tests.
    pub fn smoke() -> Self {
        Self {
            discrete_collections: 10,
            sim_steps: 300,
            planar_collections: 5,
            planar_sim_steps: 200,
            contrast_horizon: 100,
            minimal_budget: 10,
        }
    }
}

#[derive(Deserialize)]
struct GoldenFile {
    vertices: Vec<Point2>,
}

/// Expected vertex lists for the two exact examples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Golden {
    pub fig3: Vec<Point2>,
    pub example1: Vec<Point2>,
}

const FIG3_JSON: &str = include_str!("../../golden/fig3.json");
const EXAMPLE1_JSON: &str = include_str!("../../golden/example1.json");

fn parse_golden(text: &str, what: &str) -> Result<Vec<Point2>> {
    let f: GoldenFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))?;
    Ok(f.vertices)
}

impl Golden {
    /// The copies compiled into the binary.
    pub fn embedded() -> Self {
        Self {
            fig3: parse_golden(FIG3_JSON, "fig3.json").expect("embedded golden file"),
            example1: parse_golden(EXAMPLE1_JSON, "example1.json").expect("embedded golden file"),
        }
    }

    /// Reads `fig3.json` and `example1.json` from `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| -> Result<Vec<Point2>> {
            let path = dir.join(name);
            let text = std::fs::read_to_string(&path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            parse_golden(&text, &path.display().to_string())
        };
        Ok(Self {
            fig3: read("fig3.json")?,
            example1: read("example1.json")?,
        })
    }
}

fn run_one(name: &str, scale: &Scale, seed: u64, golden: &Golden) -> CheckResult {
    let start = Instant::now();
    let outcome = match name {
        "contrast" => checks::contrast(scale, seed),
        "example1" => checks::example1(golden),
        "fig3" => checks::fig3(golden),
        "heater" => checks::heater(scale, seed),
        "operator-props" => checks::operator_props(scale, seed),
        "thm-discrete" => checks::thm_discrete(scale, seed),
        "thm-pv" => checks::thm_pv(scale, seed),
        "voronoi-cover" => checks::voronoi_cover(),
        other => Err(Error::Config(format!("unknown check {other}"))),
    };
    let (expected, got, pass) =
        outcome.unwrap_or_else(|e| ("no error".into(), format!("error: {e}"), false));
    CheckResult {
        name: name.to_string(),
        expected,
        got,
        pass,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Runs the named checks (all of them when `only` is empty).
pub fn run_checks(
    only: &[String],
    scale: &Scale,
    seed: u64,
    golden: &Golden,
) -> Result<Vec<CheckResult>> {
    if let Some(bad) = only.iter().find(|n| !CHECK_NAMES.contains(&n.as_str())) {
        return Err(Error::Config(format!(
            "unknown check {bad}; known checks: {}",
            CHECK_NAMES.join(", ")
        )));
    }
    let names: Vec<&str> = CHECK_NAMES
        .iter()
        .copied()
        .filter(|n| only.is_empty() || only.iter().any(|o| o == n))
        .collect();
    Ok(names
        .par_iter()
        .map(|n| run_one(n, scale, seed, golden))
        .collect())
}

/// One CSV row per check, with a header.
pub fn report_csv(results: &[CheckResult]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["check", "expected", "got", "pass", "seconds"])
        .and_then(|_| {
            results.iter().try_for_each(|r| {
                w.write_record([
                    r.name.as_str(),
                    r.expected.as_str(),
                    r.got.as_str(),
                    if r.pass { "pass" } else { "fail" },
                    &format!("{:.3}", r.seconds),
                ])
            })
        })
        .map_err(|e| Error::Parse(format!("report: {e}")))?;
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Parse(format!("report: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
