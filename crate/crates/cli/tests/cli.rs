use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use tspga::{BERLIN52_OPT_TOUR, BERLIN52_TSP};

fn tspga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tspga"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn unit_square(dir: &Path) -> PathBuf {
    write(
        dir,
        "square.tsp",
        "NAME: square\nTYPE: TSP\nDIMENSION: 4\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n\
         1 0 0\n2 1 1\n3 1 0\n4 0 1\nEOF\n",
    )
}

fn assert_single_line_error(out: &Output) {
    assert!(!out.status.success());
    let err = stderr(out);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: "), "{err}");
}

#[test]
fn exact_on_unit_square() {
    let dir = TempDir::new().unwrap();
    let sq = unit_square(dir.path());
    let out = tspga(&[
        "exact",
        "--instance",
        sq.to_str().unwrap(),
        "--metric",
        "real",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(
        stdout(&out).contains("optimal_length: 4.0\n"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn exact_full_enumeration_and_json() {
    let dir = TempDir::new().unwrap();
    let sq = unit_square(dir.path());
    let json = dir.path().join("exact.json");
    let out = tspga(&[
        "exact",
        "--instance",
        sq.to_str().unwrap(),
        "--full",
        "--out",
        json.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("permutations_examined: 24"));
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(json).unwrap()).unwrap();
    assert_eq!(doc["optimal_length"], 4.0);
}

#[test]
fn exact_refuses_large_instances() {
    let out = tspga(&["exact", "--instance", BERLIN52_TSP]);
    assert_single_line_error(&out);
    assert!(stderr(&out).contains("52"));
}

#[test]
fn solve_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = tspga(&[
            "solve",
            "--instance",
            BERLIN52_TSP,
            "--iterations",
            "150",
            "--population",
            "30",
            "--seed",
            "11",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        (
            stdout(&out).replace(path.to_str().unwrap(), ""),
            std::fs::read(path).unwrap(),
        )
    };
    let (out_a, file_a) = run("a.json");
    let (out_b, file_b) = run("b.json");
    assert_eq!(out_a, out_b);
    assert_eq!(file_a, file_b);

    let doc: serde_json::Value = serde_json::from_slice(&file_a).unwrap();
    assert_eq!(doc["trace"].as_array().unwrap().len(), 151);
    assert_eq!(doc["tour"].as_array().unwrap().len(), 52);
}

#[test]
fn solve_tour_round_trips_through_validate() {
    let dir = TempDir::new().unwrap();
    let out = tspga(&[
        "solve",
        "--instance",
        BERLIN52_TSP,
        "--iterations",
        "20",
        "--seed",
        "4",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let line = |key: &str| {
        text.lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .to_string()
    };
    let tour = write(dir.path(), "tour.txt", &line("tour: "));
    let out = tspga(&[
        "validate",
        "--instance",
        BERLIN52_TSP,
        "--tour",
        tour.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains(&format!("tour ok: length {}", line("best_length: "))));
}

#[test]
fn flags_override_config_which_overrides_defaults() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "ga.cfg",
        "# test config\ncrossover = pmx\niterations = 5\npopulation = 8\n",
    );
    let out = tspga(&[
        "solve",
        "--instance",
        BERLIN52_TSP,
        "--config",
        cfg.to_str().unwrap(),
        "--population",
        "6",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("crossover: pmx"), "{text}");
    assert!(text.contains("population: 6"), "{text}");
    assert!(text.contains("iterations: 5"), "{text}");
    assert!(text.contains("px: 0.9"), "{text}");
}

#[test]
fn solve_trace_csv() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("nested").join("trace.csv");
    let out = tspga(&[
        "solve",
        "--instance",
        BERLIN52_TSP,
        "--iterations",
        "10",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["generation", "best_length"]);
    let lengths: Vec<f64> = reader
        .records()
        .map(|r| r.unwrap()[1].parse().unwrap())
        .collect();
    assert_eq!(lengths.len(), 11);
    assert!(lengths.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn bench_writes_schema_conformant_csv() {
    let dir = TempDir::new().unwrap();
    let out_dir = dir.path().join("bench");
    let out = tspga(&[
        "bench",
        "--instance",
        BERLIN52_TSP,
        "--iterations",
        "20",
        "--populations",
        "3",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let mut summary = csv::Reader::from_path(out_dir.join("summary.csv")).unwrap();
    assert_eq!(
        summary.headers().unwrap(),
        vec!["operator", "best", "mean", "std"]
    );
    let ops: Vec<String> = summary
        .records()
        .map(|r| r.unwrap()[0].to_string())
        .collect();
    assert_eq!(ops, ["ox", "nwox", "pmx", "upmx", "cx"]);

    let mut traces = csv::Reader::from_path(out_dir.join("traces.csv")).unwrap();
    assert_eq!(
        traces.headers().unwrap(),
        vec!["operator", "population", "generation", "best_length"]
    );
    assert_eq!(traces.records().count(), 5 * 3 * 21);
}

#[test]
fn bench_json_and_sweep() {
    let dir = TempDir::new().unwrap();
    let out = tspga(&[
        "bench",
        "--instance",
        BERLIN52_TSP,
        "--operators",
        "ox",
        "--iterations",
        "3",
        "--populations",
        "2",
        "--sweep-px",
        "--format",
        "json",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = tspga::experiment::parse_report_json(
        &std::fs::read(dir.path().join("report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report.operators.len(), 11);
    assert_eq!(report.operators[0].operator, "ox[px=1;pm=0.1]");
}

#[test]
fn validate_reports_bad_tours() {
    let dir = TempDir::new().unwrap();
    let out = tspga(&[
        "validate",
        "--instance",
        BERLIN52_TSP,
        "--tour",
        BERLIN52_OPT_TOUR,
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("tour ok: length 7542"));

    let ids: Vec<String> = (1..=52)
        .map(|i| if i == 52 { "1".into() } else { i.to_string() })
        .collect();
    let bad = write(dir.path(), "bad.tour", &ids.join(" "));
    let out = tspga(&[
        "validate",
        "--instance",
        BERLIN52_TSP,
        "--tour",
        bad.to_str().unwrap(),
    ]);
    assert_single_line_error(&out);

    let short = write(dir.path(), "short.tour", "1 2 3 -1");
    assert_single_line_error(&tspga(&[
        "validate",
        "--instance",
        BERLIN52_TSP,
        "--tour",
        short.to_str().unwrap(),
    ]));
}

#[test]
fn error_paths_are_single_line() {
    let dir = TempDir::new().unwrap();
    let bad_instance = write(
        dir.path(),
        "bad.tsp",
        "NAME: x\nTYPE: TSP\nDIMENSION: 2\nNODE_COORD_SECTION\n1 0 0\n",
    );
    let bad_config = write(dir.path(), "bad.cfg", "colour = blue\n");
    let cases: Vec<Vec<&str>> = vec![
        vec![],
        vec!["frobnicate"],
        vec!["solve"],
        vec!["solve", "--instance", "/nonexistent/file.tsp"],
        vec!["solve", "--instance", bad_instance.to_str().unwrap()],
        vec!["solve", "--instance", BERLIN52_TSP, "--px", "1.5"],
        vec!["solve", "--instance", BERLIN52_TSP, "--pm", "abc"],
        vec!["solve", "--instance", BERLIN52_TSP, "--crossover", "erx"],
        vec!["solve", "--instance", BERLIN52_TSP, "--mutation", "psm"],
        vec!["solve", "--instance", BERLIN52_TSP, "--population", "1"],
        vec!["solve", "--instance", BERLIN52_TSP, "--init", "greedy"],
        vec!["solve", "--instance", BERLIN52_TSP, "--metric", "manhattan"],
        vec!["solve", "--instance", BERLIN52_TSP, "--format", "xml"],
        vec![
            "solve",
            "--instance",
            BERLIN52_TSP,
            "--config",
            bad_config.to_str().unwrap(),
        ],
        vec!["bench", "--instance", BERLIN52_TSP, "--operators", ""],
        vec!["bench", "--instance", BERLIN52_TSP, "--populations", "0"],
        vec!["exact", "--instance", BERLIN52_TSP, "--max-n", "x"],
    ];
    for args in cases {
        let out = tspga(&args);
        assert!(!out.status.success(), "{args:?}");
        let err = stderr(&out);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "), "{args:?}: {err}");
    }
}

#[test]
fn help_succeeds() {
    let out = tspga(&["--help"]);
    assert!(out.status.success());
    for sub in ["solve", "bench", "exact", "validate"] {
        assert!(stdout(&out).contains(sub));
    }
}
