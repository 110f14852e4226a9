use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::run::{ResourceTrace, SimOutput};
use crate::error::{Error, Result};
use crate::geometry::rational::{format_rational, to_f64};
use crate::geometry::{int, Point2};

#[derive(Clone, Debug, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub resource: String,
    pub content: &'static str,
}

#[derive(Serialize)]
struct Manifest<'a> {
    scenario: &'a crate::sim::Scenario,
    report: &'a crate::sim::MetricsReport,
    files: &'a [ManifestEntry],
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

struct Csv {
    path: PathBuf,
    w: csv::Writer<fs::File>,
}

impl Csv {
    fn create(path: PathBuf, header: &[&str]) -> Result<Self> {
        let file = fs::File::create(&path).map_err(io_err(&path))?;
        let mut c = Csv {
            w: csv::Writer::from_writer(file),
            path,
        };
        c.row(header.iter().map(|s| s.to_string()))?;
        Ok(c)
    }

    fn row(&mut self, fields: impl IntoIterator<Item = String>) -> Result<()> {
        let fields: Vec<String> = fields.into_iter().collect();
        self.w.write_record(&fields).map_err(|source| Error::Csv {
            path: self.path.clone(),
            source,
        })
    }

    fn finish(mut self) -> Result<()> {
        self.w.flush().map_err(io_err(&self.path))
    }
}

fn exact(p: &Point2) -> [String; 2] {
    [format_rational(&p.x), format_rational(&p.y)]
}

fn float(p: &Point2) -> [String; 2] {
    let (x, y) = p.to_f64();
    [x.to_string(), y.to_string()]
}

fn norm(p: &Point2) -> String {
    to_f64(&p.norm_sq()).sqrt().to_string()
}

/// Writes per-resource CSV series and `manifest.json` into `out_dir`,
/// creating it if needed. Returns the written paths, manifest last.
pub fn emit_plot_data(out: &SimOutput, out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let mut entries = Vec::new();
    for rt in &out.traces {
        entries.extend(write_resource(rt, out_dir)?);
    }
    let manifest = Manifest {
        scenario: &out.scenario,
        report: &out.report,
        files: &entries,
    };
    let path = out_dir.join("manifest.json");
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    fs::write(&path, text).map_err(io_err(&path))?;
    let mut paths: Vec<PathBuf> = entries.iter().map(|e| out_dir.join(&e.file)).collect();
    paths.push(path);
    Ok(paths)
}

fn write_resource(rt: &ResourceTrace, dir: &Path) -> Result<Vec<ManifestEntry>> {
    let id = &rt.id;
    let trace = &rt.trace;
    let entry = |suffix: &str, content| ManifestEntry {
        file: format!("{id}_{suffix}.csv"),
        resource: id.clone(),
        content,
    };
    let entries = vec![
        entry("setpoints", "requested and implemented setpoints per step"),
        entry(
            "error",
            "accumulated error components and norm, e_0 through e_N",
        ),
        entry(
            "averages",
            "running means of requested and implemented setpoints",
        ),
        entry(
            "trace",
            "exact per-step record with feasible-set identifiers",
        ),
        entry(
            "sets",
            "feasible-set identifiers and their exact descriptions",
        ),
    ];
    let path = |i: usize| dir.join(&entries[i].file);

    let mut set_ids: HashMap<String, usize> = HashMap::new();
    let mut sets = Csv::create(path(4), &["set_id", "set"])?;
    let mut setpoints = Csv::create(path(0), &["n", "x_p", "x_q", "y_p", "y_q"])?;
    let mut exact_trace = Csv::create(
        path(3),
        &[
            "n",
            "set_id",
            "x_p",
            "x_q",
            "y_p",
            "y_q",
            "e_next_p",
            "e_next_q",
            "x_p_f",
            "x_q_f",
            "y_p_f",
            "y_q_f",
            "e_next_p_f",
            "e_next_q_f",
        ],
    )?;
    let mut averages = Csv::create(
        path(2),
        &[
            "n", "mean_x_p", "mean_x_q", "mean_y_p", "mean_y_q", "gap_norm",
        ],
    )?;
    let mut sum_x = Point2::origin();
    let mut sum_y = Point2::origin();
    for r in &trace.records {
        let text = r.set.canonical_text();
        let next_id = set_ids.len();
        let sid = *set_ids.entry(text.clone()).or_insert_with(|| next_id);
        if sid == next_id {
            sets.row([sid.to_string(), text])?;
        }
        let n = r.n.to_string();
        setpoints.row(
            [n.clone()]
                .into_iter()
                .chain(float(&r.x))
                .chain(float(&r.y)),
        )?;
        exact_trace.row(
            [n.clone(), sid.to_string()]
                .into_iter()
                .chain(exact(&r.x))
                .chain(exact(&r.y))
                .chain(exact(&r.e_next))
                .chain(float(&r.x))
                .chain(float(&r.y))
                .chain(float(&r.e_next)),
        )?;
        sum_x = &sum_x + &r.x;
        sum_y = &sum_y + &r.y;
        let k = int(1) / int(r.n as i64 + 1);
        let (mx, my) = (sum_x.scale(&k), sum_y.scale(&k));
        averages.row(
            [(r.n + 1).to_string()]
                .into_iter()
                .chain(float(&mx))
                .chain(float(&my))
                .chain([norm(&(&mx - &my))]),
        )?;
    }
    let mut error = Csv::create(path(1), &["n", "e_p", "e_q", "e_norm"])?;
    if !trace.is_empty() {
        for (n, e) in trace.errors().enumerate() {
            error.row([n.to_string()].into_iter().chain(float(e)).chain([norm(e)]))?;
        }
    }
    for c in [sets, setpoints, exact_trace, averages, error] {
        c.finish()?;
    }
    Ok(entries)
}
