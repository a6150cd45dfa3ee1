use std::path::Path;
use std::process::{Command, Output};

fn tgrs(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tgrs")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn keygen(dir: &Path, extra: &[&str]) {
    let mut args = vec!["keygen", "--q", "31", "--n", "30", "--k", "10", "--t", "8", "--h", "4", "-o", "k"];
    args.extend_from_slice(extra);
    assert!(tgrs(dir, &args).status.success());
}

#[test]
fn message_round_trips_byte_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    keygen(d, &[]);
    let msg = "0 30 1 2 3 4 5 6 7 8\n";
    std::fs::write(d.join("m.txt"), msg).unwrap();
    assert!(tgrs(d, &["--seed", "9", "encrypt", "--pub", "k.pub", "--msg", "m.txt", "-o", "c.txt"]).status.success());
    assert_ne!(std::fs::read_to_string(d.join("c.txt")).unwrap(), msg);
    let out = tgrs(d, &["decrypt", "--key", "k.key", "--pub", "k.pub", "--ct", "c.txt"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), msg);
}

#[test]
fn outputs_carry_a_manifest_and_no_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    keygen(dir.path(), &["--seed", "4"]);
    let key = std::fs::read_to_string(dir.path().join("k.key")).unwrap();
    assert!(key.starts_with("# tgrs 0.1.0 keygen seed=4 q=31 n=30 k=10 t=8 h=4\nTGRS-KEY v1\n"));
    let out = tgrs(dir.path(), &["lemmas", "--check", "census", "--q", "3", "--s", "2", "--u", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(!text.contains("wall-time"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("# wall-time="));
    assert!(text.contains("census q=3 s=2 u=2 i=0 measured=216 predicted=216 verdict=PASS"));
    assert!(text.contains("census q=3 s=2 u=2 i=2 measured=36 predicted=24 verdict=FAIL"));
}

#[test]
fn distinguish_and_attack_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    keygen(d, &["--seed", "1"]);
    let out = tgrs(d, &["distinguish", "--pub", "k.pub", "--d", "17"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("code=public n=30 k=10"));
    assert!(text.lines().any(|l| l.starts_with("a=") && l.contains(" bound=")));
    assert!(text.ends_with("verdict=structured\n"));

    let out = tgrs(d, &["--seed", "1", "attack", "--pub", "k.pub"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let report = text.lines().find(|l| l.starts_with("case=")).unwrap();
    assert!(report.contains(" h=4 t=8 ") && report.ends_with("verified=true"), "{report}");
    assert!(text.contains("TGRS-KEY v1"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // usage
    assert_eq!(tgrs(d, &["frobnicate"]).status.code(), Some(1));
    assert_eq!(tgrs(d, &["keygen", "--q", "12", "--n", "5", "--k", "2", "--t", "1", "--h", "0", "-o", "x"]).status.code(), Some(1));
    assert_eq!(tgrs(d, &["--help"]).status.code(), Some(0));
    // io and format
    assert_eq!(tgrs(d, &["attack", "--pub", "missing.pub"]).status.code(), Some(1));
    std::fs::write(d.join("bad.pub"), "TGRS-PUB v1\nfield 7 1\n3 2 0\n1 2\n").unwrap();
    assert_eq!(tgrs(d, &["attack", "--pub", "bad.pub"]).status.code(), Some(1));
    // domain
    assert_eq!(tgrs(d, &["keygen", "--q", "13", "--n", "20", "--k", "5", "--t", "1", "--h", "0", "-o", "x"]).status.code(), Some(2));
    assert_eq!(tgrs(d, &["keygen", "--q", "13", "--n", "12", "--k", "5", "--t", "1", "--h", "7", "-o", "x"]).status.code(), Some(2));
    assert_eq!(tgrs(d, &["lemmas", "--check", "census", "--q", "5", "--s", "6", "--u", "6"]).status.code(), Some(2));
}
