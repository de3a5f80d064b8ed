use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superchoice"))
        .args(args)
        .env_remove("SUPERCHOICE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn compose_prints_both_stages() {
    let f = fixture("29_1.prof");
    let o = run(&[
        "compose",
        "--first",
        "2",
        "--second",
        "1",
        "--profile",
        f.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("stage1 {a, b}\n"), "{out}");
    assert!(out.contains("final {b}\n"), "{out}");
}

#[test]
fn condorcet_winner_may_be_empty() {
    let f = fixture("197.prof");
    let o = run(&["choose", "--proc", "19", "--profile", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{}\n");
}

#[test]
fn q_pareto_on_grades() {
    let f = fixture("qpareto.grd");
    let o = run(&[
        "choose",
        "--proc",
        "qpareto",
        "--q",
        "0",
        "--grades",
        f.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{g, h}\n");
}

#[test]
fn mnemonic_and_subset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.prof");
    std::fs::write(&path, "a b c\na b c\nb c a\nc a b\n").unwrap();
    let p = path.to_str().unwrap();
    let all = run(&["choose", "--proc", "borda", "--profile", p]);
    assert_eq!(stdout(&all), "{a, b, c}\n");
    let sub = run(&["choose", "--proc", "7", "--profile", p, "--subset", "a,b"]);
    assert_eq!(stdout(&sub), "{a}\n");
}

#[test]
fn output_is_byte_stable() {
    let f = fixture("29_1.prof");
    let args = [
        "check",
        "--axiom",
        "H",
        "--two-stage",
        "2>1",
        "--profile",
        f.to_str().unwrap(),
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert!(out.contains("verdict violated"), "{out}");
    assert!(out.contains("X' = {b, c}"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    let f = fixture("29_1.prof");
    let p = f.to_str().unwrap();
    for args in [
        vec!["choose", "--proc", "no-such-rule", "--profile", p],
        vec!["choose", "--proc", "borda", "--q", "2", "--profile", p],
        vec![
            "choose",
            "--proc",
            "1",
            "--profile",
            "/definitely/missing.prof",
        ],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn malformed_profile_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.prof");
    std::fs::write(&path, "a b c\na b\n").unwrap();
    let o = run(&["choose", "--proc", "1", "--profile", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed profile"));
}

#[test]
fn verify_and_search() {
    let v = run(&[
        "verify",
        "--axiom",
        "Mon1",
        "--two-stage",
        "29",
        "--m",
        "3",
        "--n",
        "3",
    ]);
    assert!(v.status.success());
    assert!(stdout(&v).contains("verified on 216 profiles"));

    let s = run(&[
        "search", "--axiom", "H", "--proc", "2>1", "--m", "1..=3", "--n", "1..=5",
    ]);
    assert!(s.status.success());
    let out = stdout(&s);
    assert!(out.contains("replay ok"), "{out}");

    // refuted verification is a forbidden violation
    let r = run(&[
        "verify", "--axiom", "H", "--proc", "2>1", "--m", "1..=3", "--n", "1..=5",
    ]);
    assert_eq!(r.status.code(), Some(1));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_superchoice"))
        .args([
            "verify",
            "--axiom",
            "Mon1",
            "--two-stage",
            "29",
            "--m",
            "3",
            "--n",
            "3",
        ])
        .env("SUPERCHOICE_BUDGET", "10")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("partial"));
}

#[test]
fn fixtures_table_and_failure_status() {
    let dir = fixture("");
    let ok = run(&["fixtures", "--dir", dir.to_str().unwrap()]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains(" 0 failed"));

    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("wrong.prof"),
        "#@ proc 2>1\n#@ expect choice = {a}\na b c\na c b\na c b\nc b a\nb a c\nb a c\n",
    )
    .unwrap();
    let bad = run(&["fixtures", "--dir", tmp.path().to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
}

#[test]
fn catalog_exports() {
    let o = run(&["catalog"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 785);
    assert!(out.starts_with("id\ti\tj\tstatus\tH\t"));
    let procs = run(&["catalog", "--procedures"]);
    let t = stdout(&procs);
    assert_eq!(t.lines().count(), 29);
    assert!(t.contains("19\tcondorcet\tCondorcet winner"));
}

#[test]
fn bench_writes_gnuplot() {
    let tmp = tempfile::tempdir().unwrap();
    let gp = tmp.path().join("out.dat");
    let o = run(&[
        "bench",
        "--procs",
        "borda",
        "--m",
        "20,40",
        "--trials",
        "1",
        "--gnuplot",
        gp.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
    assert!(std::fs::read_to_string(gp).unwrap().starts_with("# borda"));
}
