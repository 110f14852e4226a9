use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn errdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_errdiff"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn repo(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/golden")
}

#[test]
fn ring_collection_reproduces_the_seven_vertices() {
    let o = errdiff(&["compute-invariant", &repo("scenarios/ring.json")]);
    assert!(o.status.success());
    let text = stdout(&o);
    let verts: Vec<&str> = text
        .lines()
        .skip_while(|l| !l.starts_with("# vertices"))
        .skip(1)
        .collect();
    assert_eq!(
        verts,
        ["-3 -7/2", "-1 -9/2", "1 -9/2", "1 1/2", "1/2 1", "-1/2 1", "-3 1/2"]
    );
    assert!(text.contains("# converged after 176 iterations"));
    // Seed row plus one per changing application plus the confirming one.
    assert_eq!(
        text.lines().filter(|l| !l.starts_with('#')).count() - 7,
        177
    );
}

#[test]
fn scalar_files_report_the_exact_interval() {
    let o = errdiff(&["compute-invariant", &repo("scenarios/heater_levels.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# exact 1D invariant set: [-3/2, 3/2]"));
}

#[test]
fn budget_exhaustion_exits_one_and_json_is_parseable() {
    let o = errdiff(&[
        "compute-invariant",
        &repo("scenarios/ring.json"),
        "--max-iters",
        "3",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["converged"], false);
    assert_eq!(v["iterations"], 3);
}

#[test]
fn bad_flags_fail_before_computing() {
    let o = errdiff(&[
        "compute-invariant",
        &repo("scenarios/ring.json"),
        "--epsilon",
        "1/0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let o = errdiff(&[
        "compute-invariant",
        &repo("scenarios/ring.json"),
        "--epsilon",
        "-1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let o = errdiff(&["compute-invariant", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_is_deterministic_and_honours_no_diffusion() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let run = |dir: &Path| {
        errdiff(&[
            "simulate",
            "--scenario",
            &repo("scenarios/heater.json"),
            "--out",
            dir.to_str().unwrap(),
            "--seed",
            "5",
            "--no-diffusion",
            "heater_ed",
        ])
    };
    let (oa, ob) = (run(a.path()), run(b.path()));
    assert!(
        oa.status.success(),
        "{}",
        String::from_utf8_lossy(&oa.stderr)
    );
    let summary = |o: &Output| {
        stdout(o)
            .lines()
            .filter(|l| !l.starts_with("# wrote"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(summary(&oa), summary(&ob));
    assert!(stdout(&oa).contains("heater_ed,heater,false,"));
    let mut names: Vec<_> = std::fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 11);
    for n in &names {
        assert_eq!(
            std::fs::read(a.path().join(n)).unwrap(),
            std::fs::read(b.path().join(n)).unwrap(),
            "{n}"
        );
    }
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(a.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["scenario"]["seed"], 5);
}

#[test]
fn unknown_resource_ids_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = errdiff(&[
        "simulate",
        "--scenario",
        &repo("scenarios/pv.json"),
        "--out",
        dir.path().to_str().unwrap(),
        "--no-diffusion",
        "nope",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}

#[test]
fn verify_single_check_reports_csv() {
    let o = errdiff(&["verify", "--only", "example1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("check,expected,got,pass"));
    assert!(lines[1].starts_with("example1,") && lines[1].contains(",pass,"));
}

#[test]
fn perturbed_golden_vertex_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["fig3.json", "example1.json"] {
        std::fs::copy(golden_dir().join(f), dir.path().join(f)).unwrap();
    }
    let path = dir.path().join("fig3.json");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(
        &path,
        text.replacen("[\"-3\", \"-7/2\"]", "[\"-2999/1000\", \"-7/2\"]", 1),
    )
    .unwrap();
    let o = errdiff(&[
        "verify",
        "--only",
        "fig3",
        "--golden-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(",fail,"));
}

#[test]
fn plot_data_writes_one_directory_per_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let o = errdiff(&[
        "plot-data",
        "--out",
        dir.path().to_str().unwrap(),
        &repo("scenarios/pv.json"),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sub = dir.path().join("pv");
    assert!(sub.join("manifest.json").exists());
    assert!(sub.join("pv_square_error.csv").exists());
    assert!(!dir.path().join("heater").exists());
}

#[test]
fn help_lists_every_subcommand() {
    let text = stdout(&errdiff(&["--help"]));
    for c in ["compute-invariant", "simulate", "verify", "plot-data"] {
        assert!(text.contains(c), "{c}");
    }
}
