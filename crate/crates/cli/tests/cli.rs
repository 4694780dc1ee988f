use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn newsort(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newsort"))
        .args(args)
        .env_remove("NEWSORT_THREADS")
        .output()
        .expect("run newsort")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn fixture(id: usize) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("../core/fixtures/table{id}.csv"))
}

#[test]
fn generate_examples() {
    let out = newsort(&["generate", "--dist", "discrete_uniform", "--params", "k=1", "--n", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "key\n1\n1\n1\n");

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    let out = newsort(&[
        "generate",
        "--dist",
        "poisson",
        "--params",
        "lambda=2",
        "--n",
        "0",
        "--out",
        p(&empty),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_to_string(&empty).unwrap(), "key\n");
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let args = [
            "generate",
            "--dist",
            "normal",
            "--params",
            "mean=5",
            "variance=100",
            "--n",
            "500",
            "--seed",
            "0x2a",
            "--mode",
            "real",
            "--out",
            p(path),
        ];
        assert_eq!(code(&newsort(&args)), 0);
    }
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    assert_eq!(String::from_utf8(text).unwrap().lines().count(), 501);
}

#[test]
fn generate_rejects_bad_params() {
    for params in ["lambda=-2", "lambda", "p=0.5", "lambda=abc"] {
        let out = newsort(&["generate", "--dist", "poisson", "--params", params, "--n", "3"]);
        assert_eq!(code(&out), 2, "{params}");
        assert!(!stderr(&out).is_empty());
    }
    assert_eq!(
        code(&newsort(&[
            "generate", "--dist", "cauchy", "--params", "x=1", "--n", "3"
        ])),
        2
    );
}

#[test]
fn sort_example_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("keys.csv");
    fs::write(&input, "key\n3\n1\n4\n1\n5\n").unwrap();
    let out = newsort(&["sort", "--in", p(&input)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(dir.path().join("keys.sorted.csv")).unwrap(),
        "key\n1\n1\n3\n4\n5\n"
    );
    let stats = fs::read_to_string(dir.path().join("keys.stats.csv")).unwrap();
    let mut lines = stats.lines();
    assert_eq!(lines.next(), Some("comparisons,writes,max_depth,elapsed_ns"));
    assert!(lines.next().unwrap().starts_with("6,18,2,"));
}

#[test]
fn sort_baseline_and_real_mode() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("r.csv");
    fs::write(&input, "2.5\n-1e3\n0.125\n").unwrap();
    let (out, stats) = (dir.path().join("o.csv"), dir.path().join("s.csv"));
    let args = [
        "sort",
        "--in",
        p(&input),
        "--mode",
        "real",
        "--algorithm",
        "quicksort_baseline",
        "--out",
        p(&out),
        "--stats-out",
        p(&stats),
    ];
    assert_eq!(code(&newsort(&args)), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), "-1000\n0.125\n2.5\n");
    assert!(fs::read_to_string(&stats)
        .unwrap()
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("3,"));
}

#[test]
fn sort_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("e.csv");
    fs::write(&input, "").unwrap();
    assert_eq!(code(&newsort(&["sort", "--in", p(&input)])), 0);
    assert_eq!(fs::read_to_string(dir.path().join("e.sorted.csv")).unwrap(), "");
    let stats = fs::read_to_string(dir.path().join("e.stats.csv")).unwrap();
    assert!(stats.lines().nth(1).unwrap().starts_with("0,0,0,"));
}

#[test]
fn sort_bad_key_cites_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    fs::write(&input, "key\n3\n1\nabc\n5\n").unwrap();
    let out = newsort(&["sort", "--in", p(&input)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
    // a real value is not an int key
    fs::write(&input, "1\n2.5\n").unwrap();
    let out = newsort(&["sort", "--in", p(&input)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn sweep_writes_table_one_shape() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("t1.cfg");
    fs::write(
        &config,
        "dist=discrete_uniform\nvary=k\ngrid=5:50:5\nn=2000\ntrials=2\nseed=3\n",
    )
    .unwrap();
    let out_dir = dir.path().join("run");
    let out = newsort(&["sweep", "--config", p(&config), "--out-dir", p(&out_dir)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let summary = fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 11);
    assert_eq!(
        fs::read_to_string(out_dir.join("trials.csv")).unwrap().lines().count(),
        21
    );
    assert!(fs::read_to_string(out_dir.join("run.txt"))
        .unwrap()
        .contains("logical_cpus"));
}

#[test]
fn sweep_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.cfg");
    fs::write(
        &config,
        "dist=geometric\nvary=p\ngrid=0.2,0.5,0.8\nn=1500\ntrials=3\nseed=9\n",
    )
    .unwrap();
    let strip = |path: &Path| -> String {
        fs::read_to_string(path)
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string() + "\n")
            .collect()
    };
    let mut tables = Vec::new();
    for threads in ["1", "3"] {
        let out_dir = dir.path().join(format!("t{threads}"));
        let status = Command::new(env!("CARGO_BIN_EXE_newsort"))
            .args(["sweep", "--config", p(&config), "--out-dir", p(&out_dir)])
            .env("NEWSORT_THREADS", threads)
            .output()
            .unwrap();
        assert!(status.status.success());
        tables.push(strip(&out_dir.join("trials.csv")));
    }
    assert_eq!(tables[0], tables[1]);
}

#[test]
fn sweep_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.cfg");
    fs::write(&config, "dist=poisson\nvary=lambda\ngrid=1:2:0.5\n").unwrap();
    let out = newsort(&["sweep", "--config", p(&config), "--out-dir", p(dir.path())]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains('n'));
    fs::write(&config, "dist=poisson\nvary=lambda\n\ngrid=1:2:zero\nn=5\n").unwrap();
    let out = newsort(&["sweep", "--config", p(&config), "--out-dir", p(dir.path())]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
}

#[test]
fn fit_fixture_four() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("fit.txt");
    let table = fixture(4);
    let args = [
        "fit",
        "--in",
        p(&table),
        "--ycol",
        "printed_mean",
        "--degree",
        "4",
        "--report",
        p(&report),
    ];
    let out = newsort(&args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = fs::read_to_string(&report).unwrap();
    let r2: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("r_squared: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((r2 - 0.9927).abs() <= 0.02, "{r2}");
    assert!(text.contains("degree: 4"));
}

#[test]
fn fit_auto_line_and_constant() {
    let dir = tempfile::tempdir().unwrap();
    let line = dir.path().join("line.csv");
    fs::write(&line, "param,mean_comparisons\n1,3\n2,5\n3,7\n4,9\n").unwrap();
    let report = dir.path().join("fit.csv");
    let out = newsort(&["fit", "--in", p(&line), "--auto", "--report", p(&report)]);
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(&report).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "1");
    assert_eq!(row[1], "1");

    let flat = dir.path().join("flat.csv");
    fs::write(&flat, "param,mean_comparisons\n1,4\n2,4\n3,4\n").unwrap();
    let out = newsort(&["fit", "--in", p(&flat), "--auto"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("verdict: flat"));
}

#[test]
fn fit_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv");
    fs::write(&data, "param,mean_comparisons\n1,4\n2,oops\n").unwrap();
    let out = newsort(&["fit", "--in", p(&data), "--degree", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"));
    assert_eq!(code(&newsort(&["fit", "--in", p(&data), "--ycol", "nope"])), 2);
    assert_eq!(code(&newsort(&["fit", "--in", p(&data), "--degree", "1", "--auto"])), 2);
}

#[test]
fn reproduce_fixture_only_is_fast_and_passes() {
    let start = std::time::Instant::now();
    let out = newsort(&["reproduce", "--table", "all", "--fixture-only"]);
    assert!(start.elapsed().as_secs_f64() < 1.0);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.ends_with(" PASS")).count(), 7);
    assert!(text.contains("Table 2 fixture fit: degree 2 R²=0.9783 (paper 0.9783"));
}

#[test]
fn reproduce_table_five_is_informational() {
    let dir = tempfile::tempdir().unwrap();
    let out = newsort(&["reproduce", "--table", "5", "--out-dir", p(dir.path())]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("Table 5 fixture fit:") && text.contains("PASS"));
    assert!(text
        .lines()
        .any(|l| l.starts_with("Table 5 live") && l.ends_with("INFORMATIONAL")));
    assert!(!text.contains("FAIL\n"));
    assert!(dir.path().join("table5/trials.csv").exists());
    assert!(fs::read_to_string(dir.path().join("report.txt"))
        .unwrap()
        .contains("INFORMATIONAL"));
}

#[test]
fn reproduce_rejects_unknown_table() {
    assert_eq!(code(&newsort(&["reproduce", "--table", "8"])), 2);
    assert_eq!(code(&newsort(&["reproduce", "--table", "x", "--fixture-only"])), 2);
}

#[test]
fn plot_circles_polyline_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("summary.csv");
    let mut text = String::from("param,mean_comparisons\n");
    for i in 1..=10 {
        text.push_str(&format!("{},{}\n", 5 * i, 1e6 / i as f64));
    }
    fs::write(&summary, text).unwrap();
    let report = dir.path().join("fit.txt");
    assert_eq!(
        code(&newsort(&[
            "fit",
            "--in",
            p(&summary),
            "--degree",
            "3",
            "--report",
            p(&report)
        ])),
        0
    );

    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let run = newsort(&["plot", "--in", p(&summary), "--fit", p(&report), "--out", p(out)]);
        assert_eq!(code(&run), 0, "{}", stderr(&run));
    }
    let svg = fs::read_to_string(&a).unwrap();
    assert_eq!(svg, fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 10);
    assert_eq!(svg.matches("<polyline").count(), 1);
    let points = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    assert_eq!(points.split(' ').count(), 200);
    assert!(svg.contains(">param</text>") && svg.contains(">mean_comparisons</text>"));

    let plain = dir.path().join("plain.svg");
    assert_eq!(code(&newsort(&["plot", "--in", p(&summary), "--out", p(&plain)])), 0);
    assert_eq!(fs::read_to_string(&plain).unwrap().matches("<polyline").count(), 0);
}

#[test]
fn plot_empty_data_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("s.csv");
    fs::write(&summary, "param,mean_comparisons\n").unwrap();
    let svg = dir.path().join("x.svg");
    let out = newsort(&["plot", "--in", p(&summary), "--out", p(&svg)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(code(&newsort(&["sort", "--bogus"])), 2);
    assert_eq!(code(&newsort(&[])), 2);
}
