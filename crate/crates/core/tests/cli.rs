use std::fs;
use std::process::{Command, Output};

use peaklab::landscape::parse_instance;

fn peaklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peaklab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn gen_writes_a_parseable_instance() {
    let out = peaklab(&["gen", "--peaks", "5", "--length", "30", "--seed", "4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let inst = parse_instance(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!((inst.peak_count(), inst.length(), inst.seed()), (5, 30, 4));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eq.txt");
    let out = peaklab(&[
        "gen", "--peaks", "3", "--length", "12", "--scheme", "equal", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let inst = parse_instance(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(inst.heights(), &[1.0, 1.0, 1.0]);
}

#[test]
fn run_writes_results_and_a_replayable_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(
        &cfg,
        "# small GA sweep\n\
         instance.peaks = 4\n\
         instance.length = 40\n\
         instance.scheme = linear\n\
         instance.seed = 3\n\
         algorithm.kind = ga\n\
         ga.population_size = 40\n\
         ga.max_evaluations = 4000\n\
         experiment.repetitions = 3\n\
         experiment.base_seed = 20\n\
         experiment.output_dir = first\n",
    )
    .unwrap();
    let out = peaklab(&["run", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let first = dir.path().join("first");
    for f in ["instance.txt", "manifest.txt", "report.csv", "runs.csv", "trace_000.csv", "trace_002.csv"] {
        assert!(first.join(f).is_file(), "missing {f}");
    }
    let runs = fs::read_to_string(first.join("runs.csv")).unwrap();
    assert_eq!(runs.lines().count(), 4);
    assert!(runs.lines().nth(1).unwrap().starts_with("20,"));

    // The manifest alone reproduces the experiment.
    let second = dir.path().join("second");
    let out = peaklab(&[
        "run",
        first.join("manifest.txt").to_str().unwrap(),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    for f in ["report.csv", "runs.csv", "trace_001.csv", "instance.txt"] {
        assert_eq!(
            fs::read(first.join(f)).unwrap(),
            fs::read(second.join(f)).unwrap(),
            "{f} differs"
        );
    }
}

#[test]
fn climber_config_runs() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.txt");
    let out = peaklab(&["gen", "--peaks", "10", "--length", "50", "--seed", "2", "--out", inst.to_str().unwrap()]);
    assert!(out.status.success());
    let cfg = dir.path().join("hc.cfg");
    fs::write(
        &cfg,
        "instance.file = inst.txt\nalgorithm.kind = climber\nexperiment.repetitions = 5\n",
    )
    .unwrap();
    let res = dir.path().join("res");
    let out = peaklab(&["run", cfg.to_str().unwrap(), "--out", res.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = fs::read_to_string(res.join("report.csv")).unwrap();
    assert!(report.starts_with("runs,successes,success_rate,aes,mean_restarts\n5,5,"));
}

#[test]
fn preset_fig1_writes_a_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = peaklab(&["preset", "fig1", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let trace = fs::read_to_string(dir.path().join("trace_fig1.csv")).unwrap();
    assert!(trace.starts_with("generation,basin_0,basin_1,best_fitness,evaluations\n0,"));
    let manifest = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    assert!(manifest.contains("instance.peaks = 2\n"));
    assert!(manifest.contains("runs.seeds = 1000\n"));
}

#[test]
fn verify_passes() {
    let out = peaklab(&["verify", "--instances", "10"]);
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(peaklab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(peaklab(&["gen", "--peaks", "x", "--length", "4"]).status.code(), Some(2));
    assert_eq!(peaklab(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_inputs_exit_with_one_and_explain() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "instance.peaks = 3\ninstance.lenght = 10\n").unwrap();
    let out = peaklab(&["run", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("bad.cfg:2:"), "{msg}");

    let out = peaklab(&["preset", "fig9"]);
    assert_ne!(out.status.code(), Some(0));
    assert!(!stderr(&out).is_empty());

    let out = peaklab(&["gen", "--peaks", "20", "--length", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).starts_with("error: "));

    let out = peaklab(&["run", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
