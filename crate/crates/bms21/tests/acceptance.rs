//! The acceptance gate: nine criteria, one verdict line each. Criteria 1–8
//! are the in-process property suites; criterion 9 drives the compiled
//! binary and checks artifact determinism and the `verify` exit status.

use bms21::verify::{run_all, VerifyConfig};
use std::path::Path;
use std::process::Command;

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_bms21"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn artifact_bytes(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let path = dir.join(name);
    let path_str = path.to_str().expect("utf-8 temp path");
    let mut full: Vec<&str> = args.to_vec();
    full.push("--out");
    full.push(path_str);
    let output = run_cli(&full);
    assert!(
        output.status.success(),
        "CLI failed for {args:?}: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    std::fs::read(&path).expect("artifact written")
}

#[test]
fn acceptance() {
    // Criteria 1–8: the property suites at the frozen default configuration.
    let reports = run_all(&VerifyConfig::default());
    let mut failures = Vec::new();
    for report in &reports {
        println!("{}", report.summary_line());
        for check in report.checks.iter().filter(|c| !c.pass) {
            println!("  failed: {} — {}", check.name, check.detail);
        }
        if !report.passed() {
            failures.push(report.criterion);
        }
    }

    // Criterion 9: byte-identical artifacts under identical flags and seed,
    // and a passing `verify` aggregation.
    let dir = tempfile::tempdir().expect("temp dir");
    let boost_g = r#"{"a":1.6487,"b":0,"c":0,"d":0.6065}"#;
    let beta = r#"{"n":3,"cos":[0.5,-0.25,0.0,1.0],"sin":[0.125,0.0,-0.75]}"#;

    let dual_args = ["dual-act", "--g", boost_g, "--beta", beta, "--seed", "7"];
    let first = artifact_bytes(dir.path(), "dual1.json", &dual_args);
    let second = artifact_bytes(dir.path(), "dual2.json", &dual_args);
    let dual_ok = first == second && !first.is_empty();

    let kappa_args = ["kappa-profile", "--g", boost_g, "--grid", "8"];
    let k1 = artifact_bytes(dir.path(), "kappa1.csv", &kappa_args);
    let k2 = artifact_bytes(dir.path(), "kappa2.csv", &kappa_args);
    let kappa_identical = k1 == k2;
    // Spot value from the profile: at θ = π the factor of a unit boost is e⁻¹.
    let text = String::from_utf8(k1).expect("CSV is UTF-8");
    let kappa_pi: f64 = text
        .lines()
        .nth(5) // header + rows j = 0..4; j = 4 is θ = π on an 8-point grid
        .and_then(|line| line.split(',').nth(1))
        .expect("profile has a θ = π row")
        .parse()
        .expect("κ value parses");
    let kappa_ok = kappa_identical && (kappa_pi - (-1.0f64).exp()).abs() < 1e-3;

    let orbit_args = [
        "orbit",
        "--kind",
        "cyclic",
        "--cyclic-n",
        "4",
        "--lambda",
        "1",
        "--count",
        "32",
        "--seed",
        "11",
    ];
    let o1 = artifact_bytes(dir.path(), "orbit1.json", &orbit_args);
    let o2 = artifact_bytes(dir.path(), "orbit2.json", &orbit_args);
    let orbit_ok = o1 == o2 && !o1.is_empty();

    let verify_out = run_cli(&["verify", "--n", "32", "--seed", "7"]);
    let verify_ok = verify_out.status.success();
    if !verify_ok {
        println!(
            "verify run failed:\n{}{}",
            String::from_utf8_lossy(&verify_out.stdout),
            String::from_utf8_lossy(&verify_out.stderr)
        );
    }

    let ninth = dual_ok && kappa_ok && orbit_ok && verify_ok;
    if ninth {
        println!("PASS criterion 9: CLI determinism and verify aggregation");
    } else {
        println!(
            "FAIL criterion 9: CLI determinism and verify aggregation — dual-act identical: \
             {dual_ok}, kappa profile: {kappa_ok}, orbit identical: {orbit_ok}, verify exit 0: \
             {verify_ok}"
        );
        failures.push(9);
    }

    assert!(
        failures.is_empty(),
        "acceptance criteria failed: {failures:?}"
    );
}
