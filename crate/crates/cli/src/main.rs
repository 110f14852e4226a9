use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use errdiff_core::geometry::rational::format_rational;
use errdiff_core::geometry::{int, parse_rational, IntervalUnion, Rational};
use errdiff_core::invariant::{iterate_1d, iterate_to_invariance, IterationResult};
use errdiff_core::io::CollectionFile;
use errdiff_core::sim::{emit_plot_data, run_scenario, Scenario, SimOutput};
use errdiff_core::verify::{report_csv, run_checks, Golden, Scale, CHECK_NAMES, DEFAULT_SEED};

/// Exact invariant error sets and closed-loop simulation for error diffusion.
#[derive(Parser, Debug)]
#[command(name = "errdiff", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the minimal convex invariant error set of a collection file.
    ComputeInvariant(ComputeArgs),
    /// Run a scenario and write its CSV series and manifest.
    Simulate(SimulateArgs),
    /// Re-run the named regression checks; exits 1 if any fails.
    Verify(VerifyArgs),
    /// Regenerate the data series for the bundled (or given) scenarios.
    PlotData(PlotArgs),
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// JSON collection file (sets, mode, optional q0 and iteration settings).
    file: PathBuf,
    /// Snap tolerance for conditional rounding, as a rational ("1/100000000").
    #[arg(long, value_parser = rational_arg)]
    epsilon: Option<Rational>,
    /// Maximum number of operator applications.
    #[arg(long)]
    max_iters: Option<usize>,
    /// Disable conditional rounding of iterate vertices.
    #[arg(long)]
    no_rounding: bool,
    /// Let rounding also snap up to the next integer.
    #[arg(long)]
    wrap: bool,
    /// Print the full iteration result as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Scenario JSON file.
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory for CSVs and manifest.json.
    #[arg(long)]
    out: PathBuf,
    /// Override the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Turn error diffusion off for these resource ids.
    #[arg(long, num_args = 1..)]
    no_diffusion: Vec<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Run only these checks (repeatable).
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECK_NAMES))]
    only: Vec<String>,
    /// Directory holding fig3.json and example1.json; defaults to the built-in copies.
    #[arg(long)]
    golden_dir: Option<PathBuf>,
    /// Seed of the randomized checks.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Reduced sample sizes, for a quick look.
    #[arg(long)]
    smoke: bool,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// Output directory; each scenario gets a subdirectory named after its file.
    #[arg(long)]
    out: PathBuf,
    /// Scenario files; the bundled heater, three-room and PV scenarios when omitted.
    scenarios: Vec<PathBuf>,
    /// Override every scenario's seed.
    #[arg(long)]
    seed: Option<u64>,
}

const PRESETS: [(&str, &str); 3] = [
    ("heater", include_str!("../../../scenarios/heater.json")),
    ("heaters3", include_str!("../../../scenarios/heaters3.json")),
    ("pv", include_str!("../../../scenarios/pv.json")),
];

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::ComputeInvariant(a) => compute(a),
        Command::Simulate(a) => simulate(a),
        Command::Verify(a) => verify(a),
        Command::PlotData(a) => plot_data(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn compute(a: ComputeArgs) -> Result<ExitCode> {
    let file = CollectionFile::load(&a.file)?;
    let mut cfg = file.config();
    if let Some(e) = a.epsilon {
        cfg.epsilon = e;
    }
    if let Some(m) = a.max_iters {
        cfg.max_iterations = m;
    }
    if a.no_rounding {
        cfg.rounding_enabled = false;
    }
    cfg.wrap |= a.wrap;
    cfg.validate()?;
    let coll = file.collection()?;
    let r = iterate_to_invariance(&coll, &file.seed(), &cfg)?;
    let mut out = std::io::stdout().lock();
    if a.json {
        serde_json::to_writer_pretty(&mut out, &r)?;
        writeln!(out)?;
    } else {
        write_iteration_text(&mut out, &r)?;
        if let Some(line) = file.scalar() {
            let (fix, _) = iterate_1d(
                &line,
                &IntervalUnion::point(Rational::default()),
                cfg.max_iterations,
            )?;
            writeln!(out, "# exact 1D invariant set: {}", interval_text(&fix))?;
            writeln!(
                out,
                "# half the maximum step: {}",
                format_rational(&(line.max_step() / int(2)))
            )?;
        }
    }
    Ok(if r.converged {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn interval_text(u: &IntervalUnion) -> String {
    u.intervals()
        .iter()
        .map(|i| format!("[{}, {}]", format_rational(&i.lo), format_rational(&i.hi)))
        .collect::<Vec<_>>()
        .join(" u ")
}

fn write_iteration_text(out: &mut impl Write, r: &IterationResult) -> Result<()> {
    writeln!(out, "# iteration,vertices,rounding_events")?;
    for (i, n) in r.vertex_counts.iter().enumerate() {
        let events = r
            .rounding_events
            .iter()
            .filter(|e| e.iteration == i)
            .count();
        writeln!(out, "{i},{n},{events}")?;
    }
    writeln!(
        out,
        "# {} after {} iterations",
        if r.converged {
            "converged"
        } else {
            "not converged"
        },
        r.iterations
    )?;
    writeln!(out, "# vertices (counter-clockwise)")?;
    for v in r.invariant_set.vertices() {
        writeln!(out, "{} {}", format_rational(&v.x), format_rational(&v.y))?;
    }
    Ok(())
}

fn load_scenario(
    text: &str,
    origin: &str,
    seed: Option<u64>,
    no_diffusion: &[String],
) -> Result<Scenario> {
    let mut sc = Scenario::from_json(text).with_context(|| format!("reading scenario {origin}"))?;
    if let Some(s) = seed {
        sc.seed = s;
    }
    sc.disable_diffusion(no_diffusion)?;
    sc.validate()
        .with_context(|| format!("invalid scenario {origin}"))?;
    Ok(sc)
}

fn summarize(out: &mut impl Write, run: &SimOutput) -> Result<()> {
    writeln!(
        out,
        "resource,kind,diffusion,steps,max_error,bound,within_bound,growth_slope,stagnation_steps"
    )?;
    for m in &run.report.resources {
        writeln!(
            out,
            "{},{},{},{},{:.6},{:.6},{},{:.6},{}",
            m.id,
            m.kind,
            m.diffusion,
            m.steps,
            m.max_error,
            errdiff_core::geometry::rational::to_f64(&m.error_bound_sq).sqrt(),
            m.within_bound,
            m.growth_slope,
            m.stagnation_steps
        )?;
    }
    Ok(())
}

fn simulate(a: SimulateArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&a.scenario)
        .with_context(|| format!("reading {}", a.scenario.display()))?;
    let sc = load_scenario(
        &text,
        &a.scenario.display().to_string(),
        a.seed,
        &a.no_diffusion,
    )?;
    let run = run_scenario(&sc)?;
    let files = emit_plot_data(&run, &a.out)?;
    let mut out = std::io::stdout().lock();
    summarize(&mut out, &run)?;
    writeln!(out, "# wrote {} files to {}", files.len(), a.out.display())?;
    Ok(ExitCode::SUCCESS)
}

fn verify(a: VerifyArgs) -> Result<ExitCode> {
    let golden = match &a.golden_dir {
        Some(d) => Golden::from_dir(d)?,
        None => Golden::embedded(),
    };
    let scale = if a.smoke {
        Scale::smoke()
    } else {
        Scale::full()
    };
    let results = run_checks(&a.only, &scale, a.seed, &golden)?;
    print!("{}", report_csv(&results)?);
    Ok(if results.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn plot_data(a: PlotArgs) -> Result<ExitCode> {
    let mut jobs: Vec<(String, String)> = Vec::new();
    if a.scenarios.is_empty() {
        jobs.extend(PRESETS.iter().map(|(n, t)| (n.to_string(), t.to_string())));
    }
    for p in &a.scenarios {
        let name = p
            .file_stem()
            .and_then(|s| s.to_str())
            .with_context(|| format!("no usable file name in {}", p.display()))?
            .to_string();
        if jobs.iter().any(|(n, _)| *n == name) {
            bail!("two scenarios would both write to {name}/");
        }
        let text =
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        jobs.push((name, text));
    }
    let scenarios = jobs
        .iter()
        .map(|(n, t)| load_scenario(t, n, a.seed, &[]))
        .collect::<Result<Vec<_>>>()?;
    let runs = errdiff_core::sim::run_scenarios(&scenarios);
    let mut out = std::io::stdout().lock();
    for ((name, _), run) in jobs.iter().zip(runs) {
        let run = run.with_context(|| format!("running {name}"))?;
        let dir: &Path = &a.out.join(name);
        emit_plot_data(&run, dir)?;
        writeln!(out, "# {name} -> {}", dir.display())?;
        summarize(&mut out, &run)?;
    }
    Ok(ExitCode::SUCCESS)
}
