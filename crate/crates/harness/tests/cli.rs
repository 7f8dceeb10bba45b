use std::process::Command;

fn u21(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_u21")).args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), out.stdout)
}

#[test]
fn notation_run_succeeds() {
    let (code, stdout) = u21(&["--suite", "notation", "--K", "K1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_slice(&stdout).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["config"]["K"], "K1");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| !c["id"].as_str().unwrap().contains("K0")));
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(u21(&["--bogus"]).0, 2);
    assert_eq!(u21(&["--K", "K2"]).0, 2);
    assert_eq!(u21(&["--p", "2", "--suite", "notation"]).0, 2);
    assert_eq!(u21(&["--prec", "8", "--suite", "notation"]).0, 2);
}

#[test]
fn reports_are_deterministic() {
    let args = ["--suite", "degenerate", "--seed", "11"];
    let (a, b) = (u21(&args), u21(&args));
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
}

#[test]
fn suite_filter_selects_hecke_checks() {
    let (_, stdout) = u21(&["--suite", "hecke", "--K", "K0"]);
    let v: serde_json::Value = serde_json::from_slice(&stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["id"].as_str().unwrap().starts_with("hecke/K0/") && c["criterion"] == 4));
}

#[test]
fn full_run_exits_1_on_the_known_failures() {
    let dir = std::env::temp_dir().join(format!("u21-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let (code, stdout) = u21(&["--suite", "all", "--format", "text", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with("271 pass, 4 fail, 0 indeterminate\n"), "{}", text.lines().last().unwrap_or(""));
    std::fs::remove_dir_all(&dir).unwrap();
}
