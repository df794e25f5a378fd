use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn evimg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evimg"))
        .args(args)
        .env_remove("EVIMG_SEED")
        .output()
        .expect("binary runs")
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let out = evimg(&all);
    let report = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (out.status.code().unwrap(), report)
}

fn check<'a>(report: &'a Value, prefix: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().starts_with(prefix))
        .unwrap_or_else(|| panic!("no check named {prefix}"))
}

fn outcomes(report: &Value) -> Vec<&str> {
    report["checks"].as_array().unwrap().iter().map(|c| c["outcome"].as_str().unwrap()).collect()
}

/// `f^k` of a table by direct iteration.
fn iterate(table: &[usize], k: usize) -> Vec<usize> {
    (0..table.len()).map(|x| (0..k).fold(x, |y, _| table[y])).collect()
}

#[test]
fn analyze_finset_reports_image_and_idempotent() {
    let path = data("finset.json");
    let (code, report) = machine(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let image = &report["eventual_images"][0];
    assert_eq!(image["iota"]["table"], serde_json::json!([1, 2]));
    // 4! = 24 is a multiple of the period past the preperiod.
    let expected = iterate(&[1, 2, 1, 2], 24);
    assert_eq!(image["idempotent"]["table"], serde_json::json!(expected));
    assert_eq!(expected, vec![2, 1, 2, 1]);
    assert!(outcomes(&report).iter().all(|&o| o == "pass"));
}

#[test]
fn identity_has_the_whole_set_as_eventual_image() {
    let path = data("finset_identity.json");
    let (code, report) = machine(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["eventual_images"][0]["iota"]["table"], serde_json::json!([0, 1, 2]));
    assert_eq!(report["eventual_images"][0]["stabilization_index"], 0);
}

#[test]
fn out_of_range_entry_is_a_located_error() {
    let path = data("finset_out_of_range.json");
    let out = evimg(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 5") && stderr.contains("out of range"), "{stderr}");
    assert!(out.stdout.is_empty());
}

#[test]
fn syntax_errors_report_line_and_column() {
    let dir = std::env::temp_dir().join(format!("evimg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\n  \"category\": \"finset\",\n  \"object\": {\"size\": 2}\n  \"map\": {}\n}").unwrap();
    let out = evimg(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4, column 3"));

    std::fs::write(&path, r#"{"category":"fdvect","object":{"dimension":1},"map":{"matrix":[[0.5]]}}"#).unwrap();
    let out = evimg(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p/q"));
}

#[test]
fn every_suite_passes_on_each_category() {
    for name in ["finset.json", "fdvect.json", "finmet.json", "finposet.json"] {
        let path = data(name);
        let (code, report) = machine(&["verify", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: {report:#}");
        assert_eq!(report["status"], "pass");
        assert!(!outcomes(&report).contains(&"fail"), "{name}");
    }
}

#[test]
fn analyze_passes_on_each_category() {
    for name in ["fdvect.json", "finmet.json", "finposet.json"] {
        let path = data(name);
        let (code, report) = machine(&["analyze", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: {report:#}");
    }
}

#[test]
fn fdvect_analysis_exposes_fitting_data() {
    let path = data("fdvect.json");
    let (_, report) = machine(&["analyze", path.to_str().unwrap()]);
    // f = [[1,1,0],[0,0,1/2],[0,0,0]]: χ = det(A − tI) = −t²(1 − t).
    assert_eq!(report["extras"]["characteristic_polynomial"], "-t^3 + t^2");
    assert_eq!(report["extras"]["fitting"]["eventual_image_basis"], serde_json::json!([["1", "0", "0"]]));
    assert_eq!(report["extras"]["fitting"]["eventual_kernel_basis"].as_array().unwrap().len(), 2);
    // f² = [[1,1,1/2],[0,0,0],[0,0,0]] is already idempotent.
    assert_eq!(
        report["eventual_images"][0]["idempotent"]["matrix"],
        serde_json::json!([["1", "1", "1/2"], ["0", "0", "0"], ["0", "0", "0"]])
    );
}

#[test]
fn zero_bound_skips_the_universal_oracle() {
    let path = data("finset.json");
    let (code, report) = machine(&["verify", path.to_str().unwrap(), "--suites", "universal", "--k", "0"]);
    assert_eq!(code, 0);
    assert_eq!(check(&report, "universal")["outcome"], "skipped");
}

#[test]
fn injected_wrong_idempotent_fails_with_counterexample() {
    let path = data("finset.json");
    let (code, report) = machine(&["verify", path.to_str().unwrap(), "--inject-wrong-idempotent"]);
    assert_eq!(code, 1);
    let c = check(&report, "splitting identities");
    assert_eq!(c["outcome"], "fail");
    assert!(c["detail"].as_str().unwrap().contains("violated"));
}

#[test]
fn compare_accepts_a_valid_shift_equivalence() {
    let path = data("shift.json");
    let (code, report) = machine(&["compare", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{report:#}");
    assert_eq!(check(&report, "shift equivalence")["outcome"], "pass");
    assert_eq!(check(&report, "eventual equivalence")["outcome"], "pass");
}

#[test]
fn identity_and_swap_have_no_witness() {
    let path = data("identity_vs_swap.json");
    let (code, report) = machine(&["compare", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(check(&report, "eventual equivalence")["outcome"], "fail");
    assert!(report["extras"].get("witness").is_none());
}

#[test]
fn williams_check_fails_for_different_spectra() {
    let path = data("williams.json");
    let (code, report) = machine(&["compare", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(check(&report, "Williams")["outcome"], "fail");
}

#[test]
fn reports_are_byte_identical() {
    for name in ["finset.json", "fdvect.json", "finmet.json", "finposet.json"] {
        let path = data(name);
        let a = evimg(&["verify", path.to_str().unwrap(), "--format", "machine"]);
        let b = evimg(&["verify", path.to_str().unwrap(), "--format", "machine"]);
        assert_eq!(a.stdout, b.stdout, "{name}");
        assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed_ms"));
    }
}

#[test]
fn seed_comes_from_flag_then_environment() {
    let path = data("finset.json");
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_evimg"));
        cmd.args(["verify", path.to_str().unwrap(), "--suites", "axioms", "--format", "machine"]);
        cmd.env_remove("EVIMG_SEED");
        if let Some(s) = env {
            cmd.env("EVIMG_SEED", s);
        }
        if let Some(s) = flag {
            cmd.args(["--seed", s]);
        }
        let report: Value = serde_json::from_slice(&cmd.output().unwrap().stdout).unwrap();
        check(&report, "axioms on random").clone()["name"].as_str().unwrap().to_owned()
    };
    assert!(run(Some("17"), None).contains("seed 17"));
    assert!(run(Some("17"), Some("5")).contains("seed 5"));
    assert!(run(None, None).contains("seed 20240601"));
}

#[test]
fn timing_is_opt_in() {
    let path = data("finset.json");
    let (_, report) = machine(&["analyze", path.to_str().unwrap(), "--timing"]);
    assert!(report["elapsed_ms"].is_u64());
}
