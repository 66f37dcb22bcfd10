use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_rmm-axisym");
const HEADER: &str = "r/R,u_r/U0,P_rr,P_thth,P_rth,P_thr,Z,sigma_rr,sigma_thth,sigma_micro_rr,sigma_micro_thth,m_zth,energy_density,delta";

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn columns(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

/// `(sweep_value, r/R, delta)` rows grouped by sweep value in output order.
fn sweep_blocks(csv: &str) -> Vec<(f64, Vec<(f64, f64)>)> {
    let mut out: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for row in columns(csv) {
        match out.last_mut() {
            Some((v, rows)) if *v == row[0] => rows.push((row[1], row[2])),
            _ => out.push((row[0], vec![(row[1], row[2])])),
        }
    }
    out
}

fn max_abs(rows: &[(f64, f64)]) -> f64 {
    rows.iter().fold(0.0, |m, r| m.max(r.1.abs()))
}

#[test]
fn solve_writes_header_and_rows() {
    let o = run(&["solve", "--preset", "set3", "--r-over-lc", "2", "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some(HEADER));
    assert!(!text.contains('\r'));
    let rows = columns(&text);
    assert_eq!(rows.len(), 200);
    // monotone and near-linear; lambda_m/lambda_M = 4.7 lies in the regime
    // where the micromorphic displacement exceeds the classical one
    for w in rows.windows(2) {
        assert!(w[1][1] > w[0][1]);
    }
    for r in &rows[1..rows.len() - 1] {
        assert!(r[13] > 0.0 && r[13] < 0.02, "{r:?}");
    }
    let mid = rows.iter().find(|r| (r[0] - 0.5).abs() < 3e-3).unwrap();
    assert!(mid[1] > 0.5 && mid[1] < 0.52, "{mid:?}");
}

#[test]
fn solve_is_byte_reproducible() {
    let a = run(&["solve", "--preset", "set2", "--r-over-lc", "5"]);
    let b = run(&["solve", "--preset", "set2", "--r-over-lc", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn zero_load_gives_zero_fields() {
    let o = run(&["solve", "--u0-over-r", "0", "--samples", "17"]);
    assert_eq!(o.status.code(), Some(0));
    for row in columns(&stdout(&o)) {
        assert!(row[1..].iter().all(|v| *v == 0.0), "{row:?}");
    }
}

#[test]
fn proportional_config_coincides_with_classical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("prop.json");
    std::fs::write(
        &cfg,
        r#"{"lambda_M": 17.61, "mu_M": 16.13, "lambda_m": 30.8175, "mu_m": 28.2275, "r_over_lc": 2}"#,
    )
    .unwrap();
    let out = dir.path().join("prop.csv");
    let o = run(&["solve", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let rows = columns(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows.len(), 101);
    assert!(rows.iter().all(|r| r[13].abs() < 1e-12));
}

#[test]
fn input_errors_exit_2() {
    let o = run(&["params", "--mu-micro", "5.9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degenerate: infinite mu_e"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, "{}").unwrap();
    let o = run(&["solve", "--preset", "set1", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    std::fs::write(&cfg, "not json").unwrap();
    assert_eq!(run(&["solve", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--r-over-lc", "-3"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "--samples", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--sweep", "beta1="]).status.code(), Some(2));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn params_reports_moduli_and_flags() {
    let o = run(&["params", "--preset", "set1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let value = |name: &str| -> f64 {
        let line = text.lines().find(|l| l.split('=').next().unwrap().trim() == name).unwrap();
        line.split('=').nth(1).unwrap().trim().parse().unwrap()
    };
    assert!((value("mu_e") - 37.633).abs() < 1e-3);
    assert!(value("B").abs() < 1e-5);
    for key in ["lambda_M", "kappa_M", "kappa_m", "kappa_e", "a*L_c^2", "A", "xi1", "xi2", "xi3"] {
        assert!(value(key).is_finite());
    }
    let o = run(&["params", "--preset", "set2"]);
    let text = stdout(&o);
    assert!(text.contains("-2.135"));
    assert!(text.contains("valid (kappa_e > 0)"));
}

#[test]
fn length_sweep_degenerates_at_both_ends() {
    let o = run(&["sweep", "--preset", "set3", "--sweep", "R_over_Lc=0.05,2,200"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("sweep_value,r/R,delta"));
    let blocks = sweep_blocks(&text);
    assert_eq!(blocks.iter().map(|b| b.0).collect::<Vec<_>>(), vec![0.05, 2.0, 200.0]);
    let mid = max_abs(&blocks[1].1);
    assert!(max_abs(&blocks[0].1) < mid);
    assert!(max_abs(&blocks[2].1) < mid);
}

#[test]
fn beta_sweeps() {
    let o = run(&["sweep", "--sweep", "beta1=1"]);
    let blocks = sweep_blocks(&stdout(&o));
    assert!(blocks[0].1.iter().all(|r| r.1 <= 0.0));

    let o = run(&["sweep", "--sweep", "beta2=1.5,20"]);
    let blocks = sweep_blocks(&stdout(&o));
    assert!(max_abs(&blocks[1].1) < max_abs(&blocks[0].1));

    let o = run(&["sweep", "--sweep", "beta2=1.5,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("beta2=1"));
    assert!(o.stdout.is_empty());
}

#[test]
fn verify_passes_and_detects_corruption() {
    let o = run(&["verify", "--preset", "set3", "--r-over-lc", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(!text.contains("[FAIL]"));
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["passed"], true);

    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("summary.json");
    let o = run(&["verify", "--corrupt", "--out", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] fd residuals"));
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(summary["passed"], false);
}

#[test]
fn verify_vanishing_length() {
    let o = run(&["verify", "--preset", "set2", "--r-over-lc", "inf"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[SKIP]"));
}
