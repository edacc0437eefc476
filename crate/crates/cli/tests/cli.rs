use std::path::PathBuf;
use std::process::{Command, Output};

use dtower_core::{read_complex, write_complex};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn dtower(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtower")).args(args).env_remove("DTOWER_WINDOW").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn d_on_file_and_preset() {
    let o = dtower(&["d", fixture("rht.complex").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "d(S^3_{+1}(K)) = -2\nd(S^3_{-1}(K)) = 0\n");
    let o = dtower(&["d", "--preset", "unknot"]);
    assert_eq!(stdout(&o), "d(S^3_{+1}(K)) = 0\nd(S^3_{-1}(K)) = 0\n");
}

#[test]
fn window_override() {
    let rht = fixture("rht.complex");
    let o = Command::new(env!("CARGO_BIN_EXE_dtower"))
        .args(["d", rht.to_str().unwrap()])
        .env("DTOWER_WINDOW", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "d(S^3_{+1}(K)) = -2\nd(S^3_{-1}(K)) = 0\n");
    let o = Command::new(env!("CARGO_BIN_EXE_dtower"))
        .args(["d", rht.to_str().unwrap()])
        .env("DTOWER_WINDOW", "wide")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn batch_d() {
    let o = dtower(&["d", "--preset", "rht", "--preset", "fig8"]);
    assert_eq!(
        stdout(&o),
        "rht:\nd(S^3_{+1}(K)) = -2\nd(S^3_{-1}(K)) = 0\nfig8:\nd(S^3_{+1}(K)) = 0\nd(S^3_{-1}(K)) = 0\n"
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| dtower(args).status.code();
    assert_eq!(code(&["d", fixture("malformed.complex").to_str().unwrap()]), Some(2));
    assert_eq!(code(&["d", fixture("bad_d2.complex").to_str().unwrap()]), Some(3));
    assert_eq!(code(&["d", fixture("filt_increase.complex").to_str().unwrap()]), Some(3));
    assert_eq!(code(&["d", fixture("two_slice.complex").to_str().unwrap()]), Some(4));
    assert_eq!(code(&["d", fixture("missing.complex").to_str().unwrap()]), Some(1));
    assert_eq!(code(&["borromean", "--genus", "4", "--sign", "-1"]), Some(2));
    assert_eq!(code(&["borromean", "--genus", "1", "--sign", "0"]), Some(2));
    assert_eq!(code(&["d", "--preset", "nope"]), Some(2));
    assert_eq!(code(&["sum", "--preset", "rht", "-o", "/dev/null"]), Some(2));
}

#[test]
fn error_names_generator() {
    let o = dtower(&["validate", fixture("bad_d2.complex").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("defines a complex: no"));
    assert!(stderr(&o).contains("d^2 != 0 at generator top"));
    assert_eq!(dtower(&["validate", fixture("rht.complex").to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn info_listing() {
    let o = dtower(&["info", fixture("rht.complex").to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("coefficients: Z/2"));
    assert!(text.contains("[0]1,2,\n[1]\n[2]\n"));
    assert!(text.contains("F(0) = (1,1)\nF(1) = (0,1)\nF(2) = (1,0)\n"));
    assert!(text.contains("y-slice homology rank: 1"));
}

#[test]
fn mirror_is_an_involution() {
    let dir = tempfile::tempdir().unwrap();
    let (once, twice) = (dir.path().join("m1.complex"), dir.path().join("m2.complex"));
    let input = fixture("rht.complex");
    assert!(dtower(&["mirror", input.to_str().unwrap(), "-o", once.to_str().unwrap()]).status.success());
    assert!(dtower(&["mirror", once.to_str().unwrap(), "-o", twice.to_str().unwrap()]).status.success());
    let canonical = write_complex(&read_complex(&std::fs::read_to_string(&input).unwrap()).unwrap());
    assert_eq!(std::fs::read_to_string(&twice).unwrap(), canonical);
    let m = read_complex(&std::fs::read_to_string(&once).unwrap()).unwrap();
    assert_eq!(m.name(), "mirror(trefoil)");
    let o = dtower(&["d", once.to_str().unwrap()]);
    assert_eq!(stdout(&o), "d(S^3_{+1}(K)) = 0\nd(S^3_{-1}(K)) = 2\n");
}

#[test]
fn sum_with_unknot_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.complex");
    let o =
        dtower(&["sum", fixture("rht.complex").to_str().unwrap(), "--preset", "unknot", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let s = read_complex(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rht = read_complex(&std::fs::read_to_string(fixture("rht.complex")).unwrap()).unwrap();
    assert_eq!(s.canonical_form(), rht.canonical_form());
    assert_eq!(s.name(), "trefoil#unknot");
}

#[test]
fn borromean_report() {
    let o = dtower(&["borromean", "--genus", "1", "--sign", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("towers: {0:2, 1:2}, d_b = 1, PASS\n"));
    let o = dtower(&["borromean", "--genus", "1", "--sign", "+1"]);
    assert!(stdout(&o).starts_with("towers: {0:2, -1:2}, d_b = -1, PASS\n"));
}
