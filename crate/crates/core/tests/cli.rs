//! The `prefattach` binary end to end: files, exit codes, config files.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prefattach"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn files(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}

#[test]
fn fixed_seed_gives_identical_files() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for dir in [&a, &b] {
        let o = run(&[
            "simulate",
            "--model",
            "simon",
            "--alpha",
            "0.5",
            "--steps",
            "10",
            "--seed",
            "7",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(files(&a), files(&b));
    for name in files(&a).iter().filter(|n| *n != "metrics.json") {
        assert_eq!(read(&a, name), read(&b, name), "{name} differs");
    }
    let csv = String::from_utf8(read(&a, "histogram_t10.csv")).unwrap();
    assert!(csv.starts_with("k,count,fraction\n"));
    assert!(!csv.contains('\r'));
}

#[test]
fn coupled_iipa_and_rescaled_ba_write_the_same_histograms() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("iipa"), tmp.path().join("ba"));
    for (model, dir) in [("iipa", &a), ("ba-rescaled", &b)] {
        let o = run(&[
            "simulate",
            "--model",
            model,
            "--m",
            "1",
            "--vertices",
            "100000",
            "--seed",
            "11",
            "--couple",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let hists: Vec<String> = files(&a)
        .into_iter()
        .filter(|n| n.starts_with("histogram"))
        .collect();
    assert_eq!(hists.len(), 7);
    for name in &hists {
        assert_eq!(read(&a, name), read(&b, name), "{name} differs");
    }
}

#[test]
fn couple_is_refused_for_other_models() {
    let o = run(&[
        "simulate", "--model", "simon", "--alpha", "0.5", "--steps", "10", "--couple",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn theory_prints_the_ba_pmf() {
    let o = run(&[
        "theory",
        "--model",
        "ba-identified",
        "--m",
        "1",
        "--k-cap",
        "4",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let pmf: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let want = [2.0 / 3.0, 1.0 / 6.0, 1.0 / 15.0, 1.0 / 30.0];
    assert_eq!(pmf.len(), 4);
    for (p, w) in pmf.iter().zip(want) {
        assert!((p - w).abs() < 1e-12);
    }
}

#[test]
fn theory_columns_agree_for_simon_half_and_iipa_m1() {
    let a = run(&[
        "theory", "--model", "simon", "--alpha", "0.5", "--k-cap", "50",
    ]);
    let b = run(&["theory", "--model", "iipa", "--m", "1", "--k-cap", "50"]);
    assert_eq!((code(&a), code(&b)), (0, 0));
    let col = |o: &Output| -> Vec<f64> {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    for (x, y) in col(&a).iter().zip(col(&b)) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn theory_writes_expectations() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&[
        "theory",
        "--model",
        "simon",
        "--alpha",
        "0.5",
        "--steps",
        "1000",
        "--k-cap",
        "20",
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let expected = String::from_utf8(read(tmp.path(), "expected.csv")).unwrap();
    assert!(expected.starts_with("time,k,expected,per_unit\n"));
    assert!(expected.lines().any(|l| l.starts_with("1000,1,")));
}

#[test]
fn invalid_alpha_is_a_usage_error() {
    for cmd in ["simulate", "theory"] {
        let o = run(&[cmd, "--model", "simon", "--alpha", "1.5", "--steps", "10"]);
        assert_eq!(code(&o), 2, "{cmd}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("alpha"));
    }
}

#[test]
fn unknown_flag_and_missing_parameter_exit_2() {
    assert_eq!(code(&run(&["simulate", "--nonsense"])), 2);
    assert_eq!(
        code(&run(&["simulate", "--model", "simon", "--steps", "10"])),
        2
    );
    assert_eq!(
        code(&run(&[
            "simulate",
            "--model",
            "simon",
            "--alpha",
            "0.5",
            "--steps",
            "10",
            "--replicas",
            "0"
        ])),
        2
    );
}

#[test]
fn resource_cap_exits_3() {
    let o = run(&[
        "simulate",
        "--model",
        "yule",
        "--beta",
        "1",
        "--lambda",
        "5",
        "--time-horizon",
        "40",
        "--replicas",
        "1",
    ]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn kind_mismatch_needs_the_override() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("simon");
    let o = run(&[
        "simulate",
        "--model",
        "simon",
        "--alpha",
        "0.5",
        "--steps",
        "20000",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let summary = dir.join("summary.json");
    let o = run(&[
        "compare",
        "--run",
        summary.to_str().unwrap(),
        "--theory",
        "ba",
        "--m",
        "1",
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("kind mismatch"));
    let o = run(&[
        "compare",
        "--run",
        summary.to_str().unwrap(),
        "--theory",
        "ba",
        "--m",
        "1",
        "--override-kind",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn compare_threshold_sets_the_exit_code() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("run");
    let o = run(&[
        "simulate",
        "--model",
        "simon",
        "--alpha",
        "0.5",
        "--steps",
        "1000000",
        "--seed",
        "3",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let summary = dir.join("summary.json");
    let pass = run(&[
        "compare",
        "--run",
        summary.to_str().unwrap(),
        "--tv-threshold",
        "0.01",
    ]);
    assert_eq!(code(&pass), 0, "{}", String::from_utf8_lossy(&pass.stdout));
    let fail = run(&[
        "compare",
        "--run",
        summary.to_str().unwrap(),
        "--theory",
        "simon",
        "--alpha",
        "0.3",
        "--tv-threshold",
        "0.01",
    ]);
    assert_eq!(code(&fail), 1);
    let csv = dir.join("histogram.csv");
    let o = run(&[
        "compare",
        "--run",
        csv.to_str().unwrap(),
        "--kind",
        "in-degree",
        "--theory",
        "iipa",
        "--m",
        "1",
        "--tv-threshold",
        "0.01",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&[
        "compare",
        "--run",
        csv.to_str().unwrap(),
        "--theory",
        "iipa",
        "--m",
        "1",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn theory_against_itself_has_zero_distance() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&[
        "theory",
        "--model",
        "simon",
        "--alpha",
        "0.4",
        "--k-cap",
        "200",
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let pmf = tmp.path().join("theory.csv");
    let o = run(&[
        "compare",
        "--run",
        pmf.to_str().unwrap(),
        "--theory",
        "simon",
        "--alpha",
        "0.4",
        "--tv-threshold",
        "1e-12",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn config_file_with_flag_override() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.conf");
    std::fs::write(
        &cfg,
        "# Simon run\nmodel = simon\nalpha = 0.5\nsteps = 5000\nseed = 9\n",
    )
    .unwrap();
    let (a, b, c) = (
        tmp.path().join("a"),
        tmp.path().join("b"),
        tmp.path().join("c"),
    );
    let o = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        a.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&[
        "simulate",
        "--model",
        "simon",
        "--alpha",
        "0.5",
        "--steps",
        "5000",
        "--seed",
        "9",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(read(&a, "histogram.csv"), read(&b, "histogram.csv"));
    let o = run(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--seed",
        "10",
        "--out",
        c.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let summary: serde_json::Value = serde_json::from_slice(&read(&c, "summary.json")).unwrap();
    assert_eq!(summary["seed"], 10);
    std::fs::write(&cfg, "model = simon\nbogus = 1\n").unwrap();
    assert_eq!(
        code(&run(&["simulate", "--config", cfg.to_str().unwrap()])),
        2
    );
}

#[test]
fn waiting_times_and_concentration_write_their_files() {
    let tmp = tempfile::tempdir().unwrap();
    let w = tmp.path().join("w");
    let o = run(&[
        "waiting-times",
        "--alpha",
        "0.5",
        "--steps",
        "200000",
        "--t-star",
        "2000",
        "--out",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = String::from_utf8(read(&w, "waiting_times.csv")).unwrap();
    assert!(csv.starts_with("vertex,k,x,epoch,z\n"));
    assert!(csv.lines().count() > 100);
    let c = tmp.path().join("c");
    let o = run(&[
        "concentration",
        "--alpha",
        "0.5",
        "--t-list",
        "1000,4000",
        "--replicas",
        "50",
        "--out",
        c.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = String::from_utf8(read(&c, "concentration.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("t,mean,std,epsilon"));
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn summary_matches_the_published_schema() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&[
        "simulate",
        "--model",
        "iipa",
        "--m",
        "2",
        "--vertices",
        "1000",
        "--replicas",
        "3",
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let summary: serde_json::Value =
        serde_json::from_slice(&read(tmp.path(), "summary.json")).unwrap();
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../../../schema/run_summary.schema.json")).unwrap();
    for key in schema["required"].as_array().unwrap() {
        assert!(
            summary.get(key.as_str().unwrap()).is_some(),
            "missing {key}"
        );
    }
    let props = schema["properties"].as_object().unwrap();
    for key in summary.as_object().unwrap().keys() {
        assert!(props.contains_key(key), "{key} is not in the schema");
    }
    let times: Vec<u64> = summary["checkpoints"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["time"].as_u64().unwrap())
        .collect();
    assert_eq!(times, vec![1, 10, 100, 1000]);
}
