use std::process::{Command, Output};

fn fbcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fbcheck"))
        .args(args)
        .output()
        .expect("fbcheck runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn catalog_list_includes_the_catenoid() {
    let o = fbcheck(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("critical_catenoid ")));
    assert!(text.contains("equatorial_disk_3_-1"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&fbcheck(&["catalog", "list", "--format", "json"]))).unwrap();
    assert!(json.as_array().unwrap().iter().any(|e| e["id"] == "critical_catenoid"));
}

#[test]
fn disk_topology_skips_the_euler_formula() {
    let o = fbcheck(&["verify", "--entry", "equatorial_disk_2_0", "--suite", "topology", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["entry", "suite", "resolution", "checks"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let checks = v["checks"].as_array().unwrap();
    for c in checks {
        for key in ["id", "paper_ref", "value", "tolerance", "status"] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
    }
    let euler = checks.iter().find(|c| c["id"] == "euler-umbilic-formula").unwrap();
    assert_eq!(euler["status"], "SKIP");
    assert!(euler["reason"].as_str().unwrap().contains("is not a disk"));
}

#[test]
fn truncated_catenoid_fails_orthogonality() {
    let o = fbcheck(&["verify", "--entry", "truncated_catenoid", "--suite", "boundary", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let fails: Vec<&str> = text.lines().filter(|l| l.contains(",FAIL,")).collect();
    assert_eq!(fails.len(), 1, "{text}");
    assert!(fails[0].contains("free-boundary-orthogonality"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fbcheck(&["verify", "--entry", "nope"]).status.code(), Some(2));
    assert_eq!(fbcheck(&["verify", "--suite", "geometry"]).status.code(), Some(2));
    assert_eq!(fbcheck(&["verify", "--resolution", "4"]).status.code(), Some(2));
    assert_eq!(fbcheck(&["frobnicate"]).status.code(), Some(2));
    let o = fbcheck(&["refine", "--entry", "critical_catenoid", "--check", "no-such-check", "--resolutions", "32"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("fbcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    let out = dir.join("report.json");
    std::fs::write(&cfg, "# ambient only\nsuite = ambient\nresolution = 32\nformat = text\n").unwrap();
    let o = fbcheck(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--entry",
        "equatorial_disk_2_-1",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["suite"], "ambient");
    assert_eq!(v["resolution"], 32);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let args = ["report", "--entry", "critical_catenoid,spherical_cap_2_1", "--suite", "pointwise,algebra", "--resolution", "48", "--format", "csv"];
    let a = fbcheck(&args);
    let b = fbcheck(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let first = text.lines().nth(1).unwrap();
    assert!(first.starts_with("critical_catenoid,"), "{first}");
}

#[test]
fn refine_prints_a_convergence_table() {
    let o = fbcheck(&["refine", "--entry", "critical_catenoid", "--check", "boundary-identity-ii", "--resolutions", "32,64", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["order"].is_null());
    assert!(rows[1]["order"].as_f64().unwrap() > 1.5);
}
