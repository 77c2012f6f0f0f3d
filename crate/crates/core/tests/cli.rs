use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradalg")).args(args).output().unwrap();
    let mut s = String::from_utf8(out.stdout).unwrap();
    s.push_str(&String::from_utf8(out.stderr).unwrap());
    (out.status.code().unwrap(), s)
}

#[test]
fn gb_of_s_prints_nine_elements() {
    let (code, out) = run(&["--format", "json", "gb", "builtin:S", "--depth", "5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["elements"].as_array().unwrap().len(), 9);
    assert_eq!(v["verdict"], "pass");
    assert!(v["elapsed_ms"].is_null());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["hilbert", "nosuchfile"]).0, 2);
    assert_eq!(run(&["hilbert", "builtin:nonexistent"]).0, 2);
    assert_eq!(run(&["frobenius"]).0, 2);
    // the polynomial ring is not Frobenius in degree 4
    let dir = std::env::temp_dir().join(format!("gradalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("k4.alg");
    std::fs::write(&f, "vars x y\nrel x*y - y*x\n").unwrap();
    assert_eq!(run(&["frobenius", f.to_str().unwrap(), "--top", "2"]).0, 1);
    // regular sequence beyond the completion bound
    let (code, _) = run(&["regseq", "builtin:T", "--depth", "3"]);
    assert_eq!(code, 3);
    assert_eq!(run(&["regseq", "builtin:S", "--depth", "11"]).0, 0);
}

#[test]
fn fixtures_directory_overrides_builtins() {
    let dir = std::env::temp_dir().join(format!("gradalg-fix-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("S.alg"), "vars u v\nrel u*v - v*u\n").unwrap();
    let (code, out) = run(&["--format", "json", "--fixtures", dir.to_str().unwrap(), "hilbert", "builtin:S", "--depth", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["hilbert"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn reports_are_deterministic_and_formats_agree() {
    let args = ["--format", "json", "incidence", "builtin:R_YZ", "--seed", "7"];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let (_, text) = run(&["incidence", "builtin:R_YZ", "--seed", "7"]);
    assert!(text.contains("verdict: pass"));
}

#[test]
fn verify_paper_shallow_depth_skips_without_failing() {
    let (code, out) = run(&["--format", "json", "verify-paper", "S", "--depth", "2"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["failed"], 0);
    assert!(v["results"]["skipped"].as_u64().unwrap() > 0);
}

#[test]
fn poincare_of_the_d8_reflections() {
    let (code, out) = run(&["--format", "json", "poincare", "--group", "D8", "--words", "r,r*rho,r*rho^2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["poincare"], serde_json::json!([1, 3, 3, 1]));
}
