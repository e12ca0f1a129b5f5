//! Config loading, `simulate` output and the binary's exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dynprod_core::special::pure_g_closed_form;
use dynprod_core::{CMatrix, Mode, C64};
use dynprod_sim::output::header;
use dynprod_sim::{load_config, parse_config, simulate, ConfigError};
use tempfile::TempDir;

const PURE_G: &str = r#"{
    "n": 2,
    "preset": "PureG",
    "alpha": [null, null, 0.3, null, null, 1.0, 0.2, null, null],
    "psi0": "zero",
    "G0": [[2.0, [0.3, 0.1]], [[0.3, -0.1], 1.0]],
    "G_dot0": [[0.2, [0.0, 0.4]], [[0.0, -0.4], -0.1]],
    "integrator": { "dt": 1e-3, "t_final": 1.0, "record_every": 100 }
}"#;

const RANDOM_FULL: &str = r#"{
    "n": 2,
    "mode": "FullSecondOrder",
    "alpha": [0.5, 0.5, 0.2, -0.3, -1.0, 1.0, 0.1, 0.1, 0.1],
    "kappa": 0.2,
    "H": "random",
    "psi0": "random",
    "psi_dot0": "random",
    "G0": "random",
    "G_dot0": "random",
    "integrator": { "dt": 1e-3, "t_final": 0.5 }
}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn dynprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynprod")).args(args).output().unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let head = r.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(|x| x.parse().unwrap()).collect()).collect();
    (head, rows)
}

#[test]
fn config_round_trips_through_a_file() {
    let dir = TempDir::new().unwrap();
    let c = load_config(&write(&dir, "a.json", RANDOM_FULL), Some(11)).unwrap();
    let again = load_config(&write(&dir, "b.json", &c.to_json().to_string()), None).unwrap();
    assert_eq!(again, c);
    assert_eq!(again.params, c.params);
}

#[test]
fn missing_g0_is_named() {
    let err = parse_config(&PURE_G.replace("\"G0\"", "\"G_zero\""), None).unwrap_err();
    // The stray key is not reached: the missing required field is reported first.
    assert!(matches!(&err, ConfigError::Schema { field, .. } if field == "G0"), "{err}");
}

#[test]
fn non_hermitian_g0_reports_the_defect() {
    let text = PURE_G.replace("[[0.3, -0.1], 1.0]", "[[0.301, -0.1], 1.0]");
    match parse_config(&text, None).unwrap_err() {
        ConfigError::NotHermitian { field, defect } => {
            assert_eq!(field, "G0");
            assert!((defect - 1e-3).abs() < 1e-12, "{defect}");
        }
        other => panic!("{other}"),
    }
}

#[test]
fn zero_duration_gives_one_row() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", &PURE_G.replace("\"t_final\": 1.0", "\"t_final\": 0.0"));
    let out = dir.path().join("t.csv");
    simulate(&cfg, &out, None).unwrap();
    let (head, rows) = read_csv(&out);
    assert_eq!(head, header(2));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], 0.0);
}

#[test]
fn pure_g_output_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let cfg_path = write(&dir, "c.json", PURE_G);
    let cfg = load_config(&cfg_path, None).unwrap();
    assert_eq!(cfg.mode, Mode::PureG);
    let out = dir.path().join("t.csv");
    simulate(&cfg_path, &out, None).unwrap();
    let (head, rows) = read_csv(&out);
    let last = rows.last().unwrap();
    assert!((last[0] - 1.0).abs() < 1e-12);
    let col = |name: &str| last[head.iter().position(|h| h == name).unwrap()];
    let mut g = CMatrix::zeros(2);
    for a in 0..2 {
        for b in a..2 {
            let z = C64::new(col(&format!("G_re_{}_{}", a + 1, b + 1)), col(&format!("G_im_{}_{}", a + 1, b + 1)));
            g[(a, b)] = z;
            g[(b, a)] = z.conj();
        }
    }
    let expected = pure_g_closed_form(&cfg.state.g, &cfg.state.g_dot, 1.0).unwrap().g;
    assert!((&g - &expected).max_abs() <= 1e-6);
}

#[test]
fn csv_is_deterministic_for_a_seed() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", RANDOM_FULL);
    let run = |seed: &str, name: &str| {
        let out = dir.path().join(name);
        let o = dynprod(&[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--output",
            out.to_str().unwrap(),
            "--seed",
            seed,
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(out).unwrap()
    };
    let a = run("3", "a.csv");
    assert_eq!(a, run("3", "b.csv"));
    assert_ne!(a, run("4", "c.csv"));
}

#[test]
fn singular_parameters_exit_with_code_2() {
    let dir = TempDir::new().unwrap();
    let text = PURE_G.replace("null, null, 1.0, 0.2", "null, null, 0.0, 0.0");
    let cfg = write(&dir, "c.json", &text);
    let out = dir.path().join("t.csv");
    let o = dynprod(&["simulate", "--config", cfg.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("SingularParams: alpha6"));
    assert!(!out.exists());
}

#[test]
fn config_errors_exit_with_code_2() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", &PURE_G.replace("\"G0\"", "\"G_zero\""));
    let o = dynprod(&["simulate", "--config", cfg.to_str().unwrap(), "--output", "unused.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("G0"));
}

#[test]
fn successful_run_prints_a_summary() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", PURE_G);
    let out = dir.path().join("t.csv");
    let o = dynprod(&["simulate", "--config", cfg.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("energy drift") && text.contains("PureG"), "{text}");
}

#[test]
fn verify_quick_exits_cleanly() {
    let o = dynprod(&["verify", "--level", "quick", "--seed", "2"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains("[PASS]")).count(), 9);
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]

    #[test]
    fn round_trip_for_any_seed(seed in proptest::prelude::any::<u64>(), t_final in 0.0f64..5.0) {
        let text = RANDOM_FULL.replace("\"t_final\": 0.5", &format!("\"t_final\": {t_final}"));
        let c = parse_config(&text, Some(seed)).unwrap();
        let again = parse_config(&c.to_json().to_string(), None).unwrap();
        proptest::prop_assert_eq!(again, c);
    }
}

#[test]
fn shipped_configs_load() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut count = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            load_config(&path, None).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            count += 1;
        }
    }
    assert!(count >= 4);
}

#[test]
fn second_order_example_starts_on_the_first_order_solution() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/second_order_modified.json");
    let c = load_config(&path, None).unwrap();
    let expected = c.params.h().mul_vec(&c.state.psi).scale(C64::new(0.0, -1.0 / c.params.hbar));
    assert!((&c.state.psi_dot - &expected).max_abs() < 1e-15);
}
