use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use orthopack_cli::SetFile;
use orthopack_core::constructions::thin3d_default;

fn orthopack(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthopack"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn thin_set_is_certified_maximal() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    assert_eq!(code(&orthopack(d, &["construct", "thin3d", "--out", "thin.json"])), 0);
    let o = orthopack(d, &["verify", "--set", "thin.json", "--check", "maximal", "--report", "r.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&read(d, "r.json")).unwrap();
    assert_eq!(report["certificates"][0]["verdict"], "pass");
    assert_eq!(report["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn empty_set_is_not_maximal() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    assert_eq!(code(&orthopack(d, &["construct", "empty", "--dim", "2", "--out", "e.json"])), 0);
    let o = orthopack(d, &["verify", "--set", "e.json", "--check", "maximal"]);
    assert_eq!(code(&o), 1);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["certificates"][0]["witness"]["kind"], "point");
}

#[test]
fn finite_certificate_reports_lambda_size() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let o = orthopack(d, &["finite", "--p", "3", "--q", "5", "--r", "7", "--verify", "maximal", "--report", "f.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(read(d, "f.json").contains("\"lambda0\": 45"));
}

#[test]
fn usage_and_io_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    assert_eq!(code(&orthopack(d, &["verify"])), 64);
    assert_eq!(code(&orthopack(d, &["construct", "lift"])), 64);
    assert_eq!(code(&orthopack(d, &["finite", "--p", "3", "--q", "3"])), 64);
    assert_eq!(code(&orthopack(d, &["--witness", "alpha", "construct", "thin3d"])), 64);
    assert_eq!(code(&orthopack(d, &["verify", "--set", "missing.json"])), 74);
    std::fs::write(d.join("bad.json"), "{ not json").unwrap();
    assert_eq!(code(&orthopack(d, &["verify", "--set", "bad.json"])), 64);
    assert_eq!(code(&orthopack(d, &["--help"])), 0);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let args: [&[&str]; 3] = [
        &["construct", "thick3d", "--out", "t.json"],
        &["verify", "--set", "t.json", "--check", "maximal", "--report", "r.json"],
        &["finite", "--verify", "few-zeros", "--seed", "7", "--samples", "50", "--report", "f.json"],
    ];
    let mut first = Vec::new();
    for round in 0..2 {
        for a in &args {
            assert_eq!(code(&orthopack(d, a)), 0);
        }
        let snapshot: Vec<String> = ["t.json", "r.json", "f.json"].iter().map(|f| read(d, f)).collect();
        if round == 0 {
            first = snapshot;
        } else {
            assert_eq!(first, snapshot);
        }
    }
}

#[test]
fn constructed_set_roundtrips() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    assert_eq!(code(&orthopack(d, &["construct", "thin3d", "--out", "thin.json"])), 0);
    let file: SetFile = serde_json::from_str(&read(d, "thin.json")).unwrap();
    let expected = thin3d_default();
    assert_eq!(file.set, expected);
    assert_eq!(file.set.truncate(3, 3), expected.truncate(3, 3));

    // a bare family set is accepted too, and lift/product build on stored files
    std::fs::write(d.join("bare.json"), serde_json::to_string(&expected).unwrap()).unwrap();
    assert_eq!(code(&orthopack(d, &["construct", "lift", "--from", "bare.json", "--m", "1", "--out", "l.json"])), 0);
    assert_eq!(code(&orthopack(d, &["verify", "--set", "l.json"])), 0);
    let o = orthopack(d, &["construct", "product", "--left", "thin.json", "--right", "l.json", "--out", "p.json"]);
    assert_eq!(code(&o), 0);
    let p: SetFile = serde_json::from_str(&read(d, "p.json")).unwrap();
    assert_eq!(p.set.dim, 7);
}

#[test]
fn config_sets_output_folder_and_witnesses() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    std::fs::write(
        d.join("orthopack.toml"),
        "output_dir = \"out\"\nwindow = 4\n[symbols]\nalpha = \"sqrt2/2\"\nbeta = \"sqrt3/3\"\ngamma = \"sqrt7/7\"\n",
    )
    .unwrap();
    assert_eq!(code(&orthopack(d, &["construct", "thin3d", "--out", "thin.json"])), 0);
    let out: PathBuf = d.join("out/thin.json");
    let file: SetFile = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(serde_json::to_string(&file.witness).unwrap().contains("sqrt7/7"));
    let o = orthopack(d, &["--witness", "gamma=sqrt5/5", "verify", "--set", "out/thin.json", "--check", "packing"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn report_command_summarizes() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    orthopack(d, &["construct", "empty", "--out", "e.json"]);
    orthopack(d, &["verify", "--set", "e.json", "--report", "r.json"]);
    let o = orthopack(d, &["report", "r.json", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("report,check,verdict"));
    assert!(text.contains("r.json,maximal,FAIL"));
}
