use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use symdeg_core::bounds::BoundReport;

const QUARTIC: &str = "w0^2*w3^2 - 6*w0*w1*w2*w3 + 4*w0*w2^3 + 4*w1^3*w3 - 3*w1^2*w2^2";

fn symdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symdeg"))
        .args(args)
        .output()
        .expect("run symdeg")
}

fn stdout(args: &[&str]) -> String {
    let out = symdeg(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn first_line(args: &[&str]) -> String {
    stdout(args).lines().next().unwrap_or("").to_string()
}

fn json(args: &[&str]) -> (String, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let raw = stdout(&full);
    let v: Value = serde_json::from_str(&raw).unwrap();
    (raw, v)
}

fn exit_code(args: &[&str]) -> (i32, String) {
    let out = symdeg(args);
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn golden_text_outputs() {
    assert_eq!(first_line(&["quad-betti", "6"]), "[1,1,2,1,1]");
    assert_eq!(first_line(&["quad-betti", "5"]), "[1,1,1,1]");
    assert_eq!(first_line(&["dual-dim", QUARTIC]), "1");
    assert_eq!(first_line(&["rank-at", QUARTIC, "0,1,0,0"]), "3");
    assert_eq!(first_line(&["rank-at", QUARTIC, "1,0,0,0"]), "1");
    assert_eq!(first_line(&["generic-rank", "--on-hypersurface", "x0^3+x1^3+x2^3+x3^3"]), "4");
    assert_eq!(first_line(&["bounds", "main", "7", "3"]), "4");
    assert_eq!(first_line(&["bounds", "corollary", "5", "2"]), "6");
    assert_eq!(first_line(&["bounds", "stratum-dim", "4", "4"]), "9");
    assert_eq!(first_line(&["lh-dim", "--betti", "1,0,1", "--projective", "2", "4"]), "2");
    assert!(stdout(&["bounds", "replay", "4", "3", "2"]).contains("X_2 must be nonempty"));
    assert!(stdout(&["bounds", "replay", "5", "3", "2"]).contains("consistent"));
    assert!(stdout(&["torsion", "--betti", "1", "--r", "3", "--d", "0"]).contains("Z/2"));
    assert!(stdout(&["nonsurj", "--r", "4", "--d", "1"]).contains("not onto"));
}

#[test]
fn hessian_matrix_entries() {
    let (_, v) = json(&["hessian", "--vars", "w0,w1,w2,w3", QUARTIC]);
    let m = &v["result"]["matrix"];
    assert_eq!(m[3][3], "2*w0^2");
    assert_eq!(m[0][0], "2*w3^2");
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m[i][j], m[j][i]);
        }
    }
    let text = stdout(&["hessian", "x0^3+x1^3"]);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.trim_matches(|c| c == '[' || c == ']' || c == ' ').split_whitespace().collect())
        .collect();
    assert_eq!(rows, vec![vec!["6*x0", "0"], vec!["0", "6*x1"]]);
}

#[test]
fn generic_rank_certificate() {
    let (_, v) = json(&["generic-rank", "--on-hypersurface", "x0^3+x1^3+x2^3+x3^3"]);
    let r = &v["result"];
    assert_eq!(r["rank"], 4);
    assert_eq!(r["certificate"]["rows"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(r["certificate"]["det"], "1296*x0*x1*x2*x3");
}

#[test]
fn exit_codes() {
    let (code, err) = exit_code(&["hessian", "x0^3+x1"]);
    assert_eq!(code, 2);
    assert!(err.contains("not homogeneous"), "{err}");
    assert_eq!(exit_code(&["hessian", "x0^3+"]).0, 2);
    assert_eq!(exit_code(&["rank-at", QUARTIC, "1,0,0"]).0, 2);
    assert_eq!(exit_code(&["check-rank-relation", QUARTIC, "1,0,0,0"]).0, 2);
    assert_eq!(exit_code(&["check-rank-relation", QUARTIC, "1,1,1,1"]).0, 2);
    assert_eq!(exit_code(&["torsion", "--r", "4", "--d", "0"]).0, 2);
    assert_eq!(exit_code(&["torsion", "--betti", "1,1", "--r", "3", "--d", "0"]).0, 2);
    assert_eq!(exit_code(&["dual-dim", "x0^2+x1^2+x2^2"]).0, 2);
    assert_eq!(exit_code(&["quad-betti", "1"]).0, 2);
    assert_eq!(exit_code(&["bounds", "corollary", "3", "3"]).0, 2);
    assert_eq!(exit_code(&["no-such-command"]).0, 2);
    assert_eq!(exit_code(&["rank-at", "@/nonexistent/poly.txt", "1,0"]).0, 2);
}

#[test]
fn json_envelope_and_round_trip() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["hessian", QUARTIC],
        vec!["rank-at", QUARTIC, "0,1,0,0"],
        vec!["generic-rank", QUARTIC],
        vec!["generic-rank", "--on-hypersurface", QUARTIC],
        vec!["dual-dim", QUARTIC],
        vec!["check-rank-relation", "x0^3+x1^3+x2^3+x3^3", "1,-1,0,0"],
        vec!["quad-betti", "7"],
        vec!["lh-dim", "--betti", "1,0,2,0,1", "--quadric", "6", "6"],
        vec!["nonsurj", "--betti", "1,0,1", "--r", "6", "--d", "1"],
        vec!["torsion", "--betti", "1,0,1", "--r", "5", "--d", "1"],
        vec!["bounds", "replay", "6", "3", "4"],
        vec!["bounds", "main", "6", "3"],
        vec!["bounds", "corollary", "6", "3"],
        vec!["bounds", "stratum-dim", "6", "3"],
    ];
    for args in cases {
        let (raw, v) = json(&args);
        assert_eq!(v["schema"], 1, "{args:?}");
        assert!(args.join(" ").starts_with(v["command"].as_str().unwrap()), "{args:?}");
        let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
        assert_eq!(raw, again, "{args:?} does not round-trip");
    }
}

#[test]
fn bound_reports_revalidate() {
    for (n, r, d) in [(4, 3, 2), (5, 3, 2), (6, 1, 6), (8, 4, 5), (9, 5, 5)] {
        let args = [n.to_string(), r.to_string(), d.to_string()];
        let (raw, v) = json(&["bounds", "replay", &args[0], &args[1], &args[2]]);
        let rep: BoundReport = serde_json::from_value(v["result"].clone()).unwrap();
        rep.revalidate().unwrap();
        assert_eq!(rep.consistent, d + r <= n);
        let mut envelope = v.clone();
        envelope["result"] = serde_json::to_value(&rep).unwrap();
        assert_eq!(serde_json::to_string_pretty(&envelope).unwrap() + "\n", raw);

        let mut tampered = rep.clone();
        tampered.steps[0].ok = !tampered.steps[0].ok;
        assert!(tampered.revalidate().is_err());
    }
}

#[test]
fn same_seed_same_bytes() {
    for args in [
        vec!["--seed", "7", "generic-rank", QUARTIC],
        vec!["--seed", "7", "--sample-budget", "5", "generic-rank", "--on-hypersurface", QUARTIC],
        vec!["--seed", "11", "dual-dim", "x0^3+x1^3+x2^3+x3^3"],
    ] {
        let (a, _) = json(&args);
        let (b, _) = json(&args);
        assert_eq!(a, b);
    }
    let (a, _) = json(&["--seed", "1", "dual-dim", QUARTIC]);
    let (b, _) = json(&["--seed", "2", "dual-dim", QUARTIC]);
    assert_eq!(a, b, "certified answers do not depend on the seed");
}

#[test]
fn files_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("quartic.txt");
    std::fs::write(&poly, format!("{QUARTIC}\n")).unwrap();
    let at = format!("@{}", poly.display());
    assert_eq!(first_line(&["dual-dim", &at]), "1");

    let pts = dir.path().join("points.txt");
    let mut f = std::fs::File::create(&pts).unwrap();
    writeln!(f, "# rank-one points").unwrap();
    writeln!(f, "1,0,0,0").unwrap();
    writeln!(f, "0,0,0,1").unwrap();
    writeln!(f).unwrap();
    writeln!(f, "0,1,0,0  # rank three").unwrap();
    writeln!(f, "0,0,1,0").unwrap();
    drop(f);
    let pts_arg = pts.display().to_string();
    let (_, v) = json(&["stratify", &at, "--points", &pts_arg]);
    let ranks = &v["result"]["ranks"];
    assert_eq!(ranks["1"], serde_json::json!([[1, 0, 0, 0], [0, 0, 0, 1]]));
    assert_eq!(ranks["3"].as_array().unwrap().len(), 2);
}
