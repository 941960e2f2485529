use std::process::{Command, Output};

fn groverts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groverts"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = groverts(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Self {
        assert!(!text.contains('\r'));
        let mut lines = text.lines();
        let header = lines
            .next()
            .unwrap()
            .split(',')
            .map(str::to_owned)
            .collect();
        let rows = lines
            .map(|l| l.split(',').map(str::to_owned).collect())
            .collect();
        Self { header, rows }
    }

    fn col(&self, name: &str) -> Vec<f64> {
        let i = self
            .header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("{name}"));
        self.rows.iter().map(|r| r[i].parse().unwrap()).collect()
    }

    fn text(&self, name: &str) -> Vec<String> {
        let i = self.header.iter().position(|h| h == name).unwrap();
        self.rows.iter().map(|r| r[i].clone()).collect()
    }
}

#[test]
fn constants_n30_and_n2() {
    let c = Csv::parse(&stdout_ok(&["constants", "--n", "30"]));
    assert!((c.col("k_factor")[0] - 0.69).abs() < 0.005);
    assert!((c.col("ts_pure_max")[0] - 21.564).abs() < 1e-3);
    assert!((c.col("eps_c")[0] - 2.11e-5).abs() < 0.01e-5);
    assert_eq!(c.col("k_grover")[0], 25736.0);
    let two = Csv::parse(&stdout_ok(&["constants", "--n", "2"]));
    assert_eq!(two.col("k_grover")[0], 2.0);
    assert_eq!(two.col("k_grover_cost")[0], 1.0);
}

#[test]
fn json_and_csv_agree() {
    let csv = Csv::parse(&stdout_ok(&["constants", "--n", "17"]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout_ok(&["constants", "--n", "17", "--format", "json"])).unwrap();
    for name in &csv.header {
        assert_eq!(
            json[0][name.as_str()].as_f64().unwrap(),
            csv.col(name)[0],
            "{name}"
        );
    }
}

#[test]
fn fig1_n30_shape() {
    let text = stdout_ok(&["fig1", "--n", "30"]);
    assert!(text.starts_with("k,k_over_kgr,ts_pure,thr_bipartite,thr_tripartite,thr_half\n"));
    let c = Csv::parse(&text);
    assert!(c.rows.len() <= 2000);
    let ts = c.col("ts_pure");
    let ratio = c.col("k_over_kgr");
    let root = 30f64.sqrt();
    assert!((ts[0] - root).abs() < 1e-3);
    assert!((ts[ts.len() - 1] - root).abs() < 1e-2);
    let (imax, peak) = ts
        .iter()
        .enumerate()
        .fold((0, 0.0), |b, (i, &v)| if v > b.1 { (i, v) } else { b });
    assert!((peak - 21.564).abs() < 1e-3);
    assert!((0.49..=0.51).contains(&ratio[imax]));
    let ks = c.col("k");
    assert!(ks.contains(&12868.0) && ks.contains(&25736.0) && ks[0] == 0.0);
}

#[test]
fn fig2_n30_shape() {
    let c = Csv::parse(&stdout_ok(&["fig2"]));
    let last = c.rows.len() - 1;
    for col in ["eps_constant", "eps_linear", "eps_exponential"] {
        assert!((c.col(col)[last] - 0.3).abs() < 1e-12, "{col}");
    }
    let max = |name: &str| c.col(name).into_iter().fold(0.0, f64::max);
    assert!((max("ts_constant") - 6.469).abs() < 1e-3);
    assert!(max("ts_linear") > max("ts_constant"));
    assert!(max("ts_exponential") > max("ts_constant"));
}

#[test]
fn cost_sweep_examples() {
    let c = Csv::parse(&stdout_ok(&["cost-sweep", "--n", "16", "--eps", "1"]));
    let s = c.col("speedup")[0];
    assert!((s / 185.5 - 1.0).abs() < 0.02, "{s}");
    assert_eq!(c.text("bound_satisfied")[0], "true");

    let eps_c = Csv::parse(&stdout_ok(&["constants", "--n", "16"])).col("eps_c")[0];
    let half = format!("{}", 0.5 * eps_c);
    let low = Csv::parse(&stdout_ok(&["cost-sweep", "--n", "16", "--eps", &half]));
    assert_eq!(low.col("k_opt")[0], 0.0);
    assert!((low.col("speedup")[0] - 0.5).abs() < 1e-3);
}

#[test]
fn default_sweep_straddles_critical_and_holds_well_above_it() {
    let c = Csv::parse(&stdout_ok(&["cost-sweep", "--n", "16"]));
    let eps_c = Csv::parse(&stdout_ok(&["constants", "--n", "16"])).col("eps_c")[0];
    let k_opt = c.col("k_opt");
    for ((e, ok), k) in c
        .col("eps")
        .iter()
        .zip(c.text("bound_satisfied"))
        .zip(k_opt)
    {
        if *e < 0.95 * eps_c {
            assert_eq!(k, 0.0);
        }
        if *e > 4.0 * eps_c {
            assert_eq!(ok, "true", "eps = {e}");
        }
    }
}

#[test]
fn cost_sweep_size_guard() {
    let out = groverts(&["cost-sweep", "--n", "41", "--eps", "1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force-large"));
    stdout_ok(&[
        "cost-sweep",
        "--n",
        "41",
        "--eps",
        "1",
        "--k-max",
        "50",
        "--force-large",
    ]);
}

#[test]
fn schedule_inline_and_file() {
    let spec = r#"{"kind":"exponential","eps_initial":1.0,"eps_final":0.3}"#;
    let inline = stdout_ok(&["cost-sweep", "--n", "14", "--schedule", spec]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    std::fs::write(&path, spec).unwrap();
    let from_file = stdout_ok(&[
        "cost-sweep",
        "--n",
        "14",
        "--schedule",
        path.to_str().unwrap(),
    ]);
    assert_eq!(inline, from_file);
    let bad = groverts(&[
        "cost-sweep",
        "--n",
        "14",
        "--schedule",
        r#"{"kind":"linear","eps_initial":0.2,"eps_final":0.5}"#,
    ]);
    assert!(!bad.status.success());
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("out.csv");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"command":"fig1","n":12,"output_path":{:?}}}"#,
            out.to_str().unwrap()
        ),
    )
    .unwrap();
    stdout_ok(&["--config", cfg.to_str().unwrap()]);
    let c = Csv::parse(&std::fs::read_to_string(&out).unwrap());
    assert!((c.col("thr_bipartite")[0] - 12f64.sqrt()).abs() < 1e-15);

    stdout_ok(&["--config", cfg.to_str().unwrap(), "fig1", "--n", "10"]);
    let c = Csv::parse(&std::fs::read_to_string(&out).unwrap());
    assert!((c.col("thr_bipartite")[0] - 10f64.sqrt()).abs() < 1e-15);

    std::fs::write(&cfg, r#"{"command":"fig1","qubits":12}"#).unwrap();
    assert!(!groverts(&["--config", cfg.to_str().unwrap()])
        .status
        .success());
}

#[test]
fn outputs_are_deterministic() {
    let a = stdout_ok(&["bound-check", "--count", "20", "--seed", "7"]);
    let b = stdout_ok(&["bound-check", "--count", "20", "--seed", "7"]);
    assert_eq!(a, b);
    assert_ne!(
        a,
        stdout_ok(&["bound-check", "--count", "20", "--seed", "8"])
    );
    assert!(Csv::parse(&a)
        .text("bound_satisfied")
        .iter()
        .all(|v| v == "true"));
    assert_eq!(
        stdout_ok(&["fig2", "--n", "20"]),
        stdout_ok(&["fig2", "--n", "20"])
    );
}

#[test]
fn verify_passes_and_is_reproducible() {
    let args = ["verify", "--n-max", "4", "--seed", "7"];
    let a = stdout_ok(&args);
    assert_eq!(a, stdout_ok(&args));
    let c = Csv::parse(&a);
    assert!(c.text("passed").iter().all(|v| v == "true"));
    assert!(c
        .text("check")
        .contains(&"kolmogorov_saturation".to_string()));
}

#[test]
fn verify_injected_fault_fails() {
    let out = groverts(&["verify", "--n-max", "3", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("speedup_formula"));
}

#[test]
fn svg_written() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig.svg");
    let csv = dir.path().join("fig.csv");
    stdout_ok(&[
        "fig1",
        "--n",
        "8",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    let body = std::fs::read_to_string(svg).unwrap();
    assert!(body.starts_with("<svg") && body.matches("<polyline").count() == 4);
}

#[test]
fn bad_inputs_exit_nonzero() {
    for args in [
        vec!["constants", "--n", "0"],
        vec!["constants", "--n", "64"],
        vec!["fig1", "--n", "1"],
        vec!["fig2", "--eps-f", "1.5"],
        vec!["cost-sweep"],
        vec![],
    ] {
        let out = groverts(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
