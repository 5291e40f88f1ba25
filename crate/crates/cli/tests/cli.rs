use std::process::Command;

fn vll(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_vll"))
        .args(args)
        .env_remove("VLL_BUDGET")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("vll-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn check_verdicts() {
    let (code, out, _) = vll(&["check", "--variety", "P", "--id", "ab = aab"]);
    assert_eq!(code, 0);
    assert!(out.contains("holds"), "{out}");

    let (code, out, _) = vll(&["check", "--variety", "RZ", "--id", "ab = ba"]);
    assert_eq!(code, 1);
    assert!(out.contains("fails"), "{out}");

    let (code, _, _) = vll(&["check", "--variety", "ZR", "--patterns", "aa", "--id", "abab = baba"]);
    assert_eq!(code, 0);
}

#[test]
fn check_file_reports_line_numbers() {
    let path = temp_file("ids.txt", "ab = ba\n\nab - ba\n");
    let (code, _, err) = vll(&["check", "--variety", "COM", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn check_json() {
    let (code, out, _) = vll(&["check", "--variety", "SL", "--id", "ab = ba", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["holds"], true);
}

#[test]
fn replay_commands() {
    let (code, out, _) = vll(&["replay", "--u", "aaabb", "--v", "bbaaa", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lambda"], serde_json::json!([3, 2, 1, 1]));
    assert_eq!(v["carrier_size"], 420);
    assert_eq!(v["gamma_prime_is_congruence"], true);

    let (code, _, err) = vll(&["replay", "--u", "aab", "--v", "aab"]);
    assert_eq!(code, 2);
    assert!(err.contains("trivial"), "{err}");

    let (code, _, err) = vll(&["replay", "--u", "aabb", "--v", "bbaa"]);
    assert_eq!(code, 2);
    assert!(err.contains("strictly decreasing"), "{err}");

    let (code, _, _) = vll(&["replay", "--u", "aabb", "--v", "bbaa", "--normalize"]);
    assert_eq!(code, 0);
}

#[test]
fn lattice_commands() {
    let path = temp_file("n5.lat", "n 5\n0 < 1\n1 < 2\n2 < 4\n0 < 3\n3 < 4\n");
    let (code, out, _) = vll(&["lattice", "--file", path.to_str().unwrap(), "--classify"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("3: non-modular")), "{out}");

    let (_, out, _) = vll(&["lattice", "--catalog", "M3", "--zero-distributive", "--congruences"]);
    assert!(out.contains("0-distributive: no"), "{out}");
    assert!(out.contains("congruences: 2"), "{out}");

    let bowtie = temp_file("bowtie.lat", "n 4\n0 < 2\n0 < 3\n1 < 2\n1 < 3\n");
    let (code, _, err) = vll(&["lattice", "--file", bowtie.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("least upper bound"), "{err}");
}

#[test]
fn gset_and_sapir() {
    let (code, out, _) = vll(&["gset", "--lambda", "2,1,1", "--enumerate"]);
    assert_eq!(code, 0);
    assert!(out.contains("12 words") && out.contains("congruences: "), "{out}");

    let (code, out, _) = vll(&["sapir", "--r", "2", "--basis", "aa"]);
    assert_eq!(code, 0);
    assert!(out.contains("x0 = x^6"), "{out}");
    assert!(out.contains("b^6c^6 = c^6b^6") || out.contains("bbbbbbcccccc = ccccccbbbbbb"), "{out}");
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn derive_and_refute() {
    let (code, out, _) = vll(&["derive", "--variety", "P", "--id", "ab = aaab", "--max-len", "8"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("proved"), "{out}");

    let (code, out, _) = vll(&["refute", "--model", "RZ2", "--id", "ab = ba"]);
    assert_eq!(code, 0);
    assert!(out.contains("fails in RZ2"), "{out}");

    let (code, _, _) = vll(&["refute", "--model", "SL2,Zr(2)", "--id", "ab = ba"]);
    assert_eq!(code, 1);
}

#[test]
fn verify_paper_quick_json() {
    let path = std::env::temp_dir().join(format!("vll-report-{}.json", std::process::id()));
    let (code, out, _) = vll(&["verify-paper", "--profile", "quick", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["suite"], "verify-paper/quick");
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 9);
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert!(c.get("witness").is_none());
        assert!(c["millis"].is_u64());
    }
}
