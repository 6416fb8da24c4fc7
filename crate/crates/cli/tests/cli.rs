use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const THETA: &str = r#"{"vertices":[[0,2,4],[5,3,1]],"marked_faces":[0,1,2]}"#;

fn lamination(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamination")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn analyze_theta() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "theta.json", THETA);
    let o = lamination(&["analyze", &path]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("sigma = (1,1,1,1,1,1)"), "{out}");
    assert!(out.contains("points (4):"), "{out}");

    let o = lamination(&["analyze", &path, "--exclude-origin"]);
    assert!(stdout(&o).contains("points (3):"), "{}", stdout(&o));

    let o = lamination(&["analyze", &path, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.is_object());
}

#[test]
fn bad_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "dup.json", r#"{"vertices":[[0,2,4],[5,3,1]],"marked_faces":[0,1,1]}"#);
    let o = lamination(&["analyze", &dup]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("DuplicateMarkedFace"), "{}", stderr(&o));

    let o = lamination(&["analyze", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let svg = dir.path().join("x.svg");
    let o = lamination(&["render", "/nonexistent/graph.json", "-o", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!svg.exists());
}

#[test]
fn check_exit_codes() {
    let o = lamination(&["check", "4", "1", "1", "1", "4", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("realizable"));

    let o = lamination(&["check", "0", "0", "0", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("T1 violated at i=1"), "{}", stdout(&o));

    let o = lamination(&["check", "1", "1", "1", "0", "1", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn construct_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    for tau in [["4", "3", "4", "4", "5", "7"], ["2", "3", "0", "3", "2", "5"], ["2", "7", "6", "8", "6", "7"]] {
        let out = dir.path().join("g.json");
        let mut args = vec!["construct"];
        args.extend(tau);
        args.extend(["-o", out.to_str().unwrap()]);
        let o = lamination(&args);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!(stdout(&o).contains("(match)"), "{}", stdout(&o));

        let o = lamination(&["analyze", out.to_str().unwrap()]);
        let want = format!("sigma = ({})", tau.join(","));
        assert!(stdout(&o).contains(&want), "{}", stdout(&o));
    }
}

#[test]
fn construct_to_stdout_keeps_json_clean() {
    let o = lamination(&["construct", "1", "1", "1", "1", "1", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["vertices"].is_array());
    let report = stderr(&o);
    assert!(report.contains("pillowcase t=[0, 0, 0, 0, 0, 0]"), "{report}");
}

#[test]
fn construct_rejects_unrealizable() {
    let o = lamination(&["construct", "0", "0", "0", "1", "1", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not realizable"));
    assert!(!stdout(&o).contains("vertices"));
}

#[test]
fn construct_family_and_pillowcase_directly() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("f.json");
    let o = lamination(&[
        "construct", "--counts", "4", "1", "1", "--depths", "1", "1", "0", "--touch", "1", "--touch", "2", "--touch", "3",
        "-o", fam.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("sigma = (4,1,1,1,4,5)"), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&fam).unwrap()).unwrap();
    assert!(v["layout"].is_object(), "family files carry their drawing");

    let pc = dir.path().join("p.json");
    let o = lamination(&["construct", "--pillowcase", "1", "1", "1", "0", "1", "1", "-o", pc.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("match"));
}

#[test]
fn roundtrip_small() {
    let o = lamination(&["roundtrip", "--max-mu", "0"]);
    assert!(stdout(&o).contains("0 sextuples"), "{}", stdout(&o));

    let o = lamination(&["roundtrip", "--max-mu", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("0 fail"), "{}", stdout(&o));
}

#[test]
fn render_theta_and_pillowcase() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", THETA);
    let svg = dir.path().join("theta.svg");
    let o = lamination(&["render", &theta, "-o", svg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = fs::read_to_string(&svg).unwrap();
    assert_eq!(s.matches(r#"class="vertex""#).count(), 2);
    assert_eq!(s.matches(r#"class="edge""#).count(), 3);

    let pc = dir.path().join("p.json");
    lamination(&["construct", "--pillowcase", "1", "1", "1", "0", "1", "1", "-o", pc.to_str().unwrap()]);
    let o = lamination(&["render", pc.to_str().unwrap(), "-o", svg.to_str().unwrap(), "--no-loops"]);
    assert!(o.status.success());
    let s = fs::read_to_string(&svg).unwrap();
    assert_eq!(s.matches(r#"class="marked""#).count(), 3);
    assert_eq!(s.matches(r#"class="special""#).count(), 0);
}

#[test]
fn oracle_agrees_on_theta() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", THETA);
    let o = lamination(&["oracle", &theta]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("agree"));

    let o = lamination(&["--sequential", "oracle", &theta, "--exclude-origin"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("DISAGREE"));
}
