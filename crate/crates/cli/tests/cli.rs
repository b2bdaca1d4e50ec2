use std::fs;
use std::process::{Command, Output};

fn hcolor(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcolor")).args(args).current_dir(dir).output().expect("spawn hcolor")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_solve_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = hcolor(&["gen", "petersen"], dir.path());
    assert!(p.status.success());
    assert!(stdout(&p).contains("# vertex u1"));
    fs::write(dir.path().join("p.txt"), &p.stdout).unwrap();
    let s4 = hcolor(&["gen", "s4"], dir.path());
    fs::write(dir.path().join("s4.txt"), &s4.stdout).unwrap();

    let solved = hcolor(&["solve", "--host", "s4.txt", "--guest", "p.txt"], dir.path());
    assert_eq!(solved.status.code(), Some(0));
    fs::write(dir.path().join("c.cert"), &solved.stdout).unwrap();
    let checked = hcolor(&["check", "c.cert"], dir.path());
    assert_eq!(checked.status.code(), Some(0), "{}", stdout(&checked));
    assert_eq!(stdout(&checked).trim(), "VALID");

    // Send every guest edge to host edge 0: improper at every vertex.
    let text = stdout(&solved);
    let tampered: String = text
        .lines()
        .map(|l| match l.split_once(' ') {
            Some((g, _)) if g.parse::<usize>().is_ok() => format!("{g} 0\n"),
            _ => format!("{l}\n"),
        })
        .collect();
    fs::write(dir.path().join("bad.cert"), tampered).unwrap();
    let bad = hcolor(&["check", "bad.cert"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).starts_with("INVALID"));
}

#[test]
fn certificate_digest_mismatch_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let solved = hcolor(&["solve", "--host", "@s4", "--guest", "@p"], dir.path());
    fs::write(dir.path().join("c.cert"), &solved.stdout).unwrap();
    let o = hcolor(&["check", "c.cert", "--host", "@k:4"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let count = hcolor(&["solve", "--host", "@s4", "--guest", "@p", "--count"], dir.path());
    assert_eq!(count.status.code(), Some(0));
    assert_eq!(stdout(&count).trim(), "480");

    let unsat = hcolor(&["solve", "--host", "@star:3", "--guest", "@p"], dir.path());
    assert_eq!(unsat.status.code(), Some(1));
    assert_eq!(stdout(&unsat).trim(), "UNSAT");

    let unknown = hcolor(&["solve", "--host", "@p", "--guest", "@p", "--node-limit", "3", "--count"], dir.path());
    assert_eq!(unknown.status.code(), Some(2));
    assert_eq!(stdout(&unknown).trim(), "UNKNOWN");

    let missing = hcolor(&["solve", "--host", "nope.txt", "--guest", "@p"], dir.path());
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn graph6_input() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("p.g6"), "IheA@GUAo\n").unwrap();
    let o = hcolor(&["solve", "--host", "@p", "--guest", "p.g6", "--count"], dir.path());
    assert_eq!(stdout(&o).trim(), "120");
}

#[test]
fn images_of_k4() {
    let dir = tempfile::tempdir().unwrap();
    let o = hcolor(&["images", "--guest", "@k:4"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("# image ").count(), 3);
    assert!(text.contains("tK2 colours it"));
    let cut = hcolor(&["images", "--guest", "@p", "--node-limit", "2"], dir.path());
    assert_eq!(cut.status.code(), Some(2));
}

#[test]
fn recipe_emits_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let o = hcolor(&["recipe", "p-matching-cuts"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.is_empty());
    for line in text.lines() {
        assert!(line.starts_with('{') && line.contains("\"status\":\"pass\""), "{line}");
    }
    let bad = hcolor(&["recipe", "no-such-recipe"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn corpus_streams_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    // K4, the prism, K3,3, and one malformed line.
    fs::write(dir.path().join("c.g6"), "C~\nE{Sw\nEFz_\n!!!\n").unwrap();
    let o = hcolor(&["corpus", "c.g6", "--host", "s4", "--threads", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2), "malformed record is an error");
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains("\"status\":\"pass\"")).count(), 3);
    assert_eq!(text.lines().filter(|l| l.contains("\"status\":\"error\"")).count(), 1);

    let resumed = hcolor(&["corpus", "c.g6", "--host", "p", "--resume-from", "1"], dir.path());
    let text = stdout(&resumed);
    assert!(!text.contains("record-0\""));
    assert!(text.contains("record-1\""));

    let good = dir.path().join("good.g6");
    fs::write(&good, "C~\nE{Sw\n").unwrap();
    let ok = Command::new(env!("CARGO_BIN_EXE_hcolor"))
        .args(["corpus", "good.g6", "--host", "s4"])
        .env("HCOLOR_THREADS", "1")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));

    // K1,3-colourings are 3-edge-colourings, which the Petersen graph lacks.
    fs::write(dir.path().join("pp.g6"), "C~\nIheA@GUAo\n").unwrap();
    let fail = hcolor(&["corpus", "pp.g6", "--host", "@star:3"], dir.path());
    assert_eq!(fail.status.code(), Some(1));
}
