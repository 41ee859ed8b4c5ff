use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "data"].iter().collect()
}

fn csalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csalg"))
        .args(args)
        .current_dir(data_dir())
        .env("NO_COLOR", "1")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("csalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
    path
}

#[test]
fn check_passes_on_shipped_algebras() {
    for file in ["n2.csa", "n4.csa"] {
        let o = csalg(&["check", file]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("CS5 ok"));
    }
}

#[test]
fn check_failure_exits_one() {
    let n2 = std::fs::read_to_string(data_dir().join("n2.csa")).unwrap();
    let path = temp_file("jacobi.csa", &n2.replace("bracket J G+ = G+", "bracket J G+ = 2*G+"));
    let o = csalg(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("CS5 FAILED"));

    // a diagonal entry that is not skew-symmetric is rejected while loading
    let path = temp_file("skew.csa", &n2.replace("(D + 2*x) L", "(D + 3*x) L"));
    let o = csalg(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("CS4"));
}

#[test]
fn parse_error_exits_two_with_location() {
    let path = temp_file("q.csa", "algebra V\ngenerator L parity=even\nbracket L Q = L\n");
    let o = csalg(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("3:11") && err.contains("`Q`"), "{err}");

    let o = csalg(&["--json", "check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
}

#[test]
fn domain_errors_exit_three() {
    let o = csalg(&["classify-n4", "--matrix", "2,0;0,1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = csalg(&["alg", "n2.csa", "--auto", "omega", "--bracket", "G+[0] L[1]"]);
    assert_eq!(o.status.code(), Some(3));
    let o = csalg(&["centroid", "n2.csa", "--auto", "id", "--window", "1", "--interior", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn morphism_files() {
    let omega = temp_file("omega.csm", "morphism omega\nlevel 1\nimage J = -J\nimage G+ = G-\nimage G- = G+\n");
    let o = csalg(&["hom", "n2.csa", omega.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("homomorphism, invertible"));

    let broken = temp_file("broken.csm", "morphism b\nimage J = 2*J\n");
    let o = csalg(&["hom", "n2.csa", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));

    let o = csalg(&["--json", "loop", "n2.csa", "--auto", omega.to_str().unwrap(), "--window", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 2);
    assert_eq!(v["split"]["bijective"], true);
    assert_eq!(v["l0_spectrum"]["odd"]["fractional"], serde_json::json!(["0", "1/2"]));
}

#[test]
fn n4_twists_from_the_command_line() {
    let o = csalg(&["classify-n4", "--matrix", "zeta^6,0;0,-zeta^6"]);
    assert_eq!(stdout(&o), "{zeta_2^1, zeta_2^1}\n");
    let o = csalg(&["centroid", "n4.csa", "--auto", "n4x:-1,0;0,-1", "--window", "3", "--interior", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("3 solutions\n"));
    let o = csalg(&["pgl2-classes", "5"]);
    assert!(stdout(&o).starts_with("3 classes\n"));
}
