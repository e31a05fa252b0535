use std::process::{Command, Output};

fn qflag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qflag"))
        .args(args)
        .env_remove("QFLAG_MAX_RANK")
        .output()
        .expect("run qflag")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn target(t: &str, r: &str, s: &str) -> Vec<String> {
    ["--type", t, "--rank", r, "--node", s].iter().map(|x| x.to_string()).collect()
}

fn with(cmd: &str, tgt: Vec<String>, rest: &[&str]) -> Output {
    let mut args: Vec<&str> = vec![cmd];
    args.extend(tgt.iter().map(|s| s.as_str()));
    args.extend_from_slice(rest);
    qflag(&args)
}

#[test]
fn help_exits_zero() {
    let o = qflag(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qflag(&[]).status.code(), Some(2));
    assert_eq!(qflag(&["dims", "--type", "A"]).status.code(), Some(2));
    let o = with("dims", target("A", "2", "1"), &["--calculus", "dx"]);
    assert_eq!(o.status.code(), Some(2));
    let o = with("verify", target("A", "1", "1"), &["--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = with("rmatrix", target("A", "1", "1"), &["--kind", "rx"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_cominuscule_node_is_rejected() {
    let o = with("dims", target("B", "2", "2"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotIrreducibleFlag"));
}

#[test]
fn rank_limit_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qflag"))
        .args(["irrep", "--type", "A", "--rank", "3", "--node", "1"])
        .env("QFLAG_MAX_RANK", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dims_table() {
    let o = with("dims", target("A", "2", "1"), &["--max-degree", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let dims: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(dims, ["1", "4", "6", "4", "1", "0"]);
}

#[test]
fn dims_record() {
    let o = with("dims", target("A", "1", "1"), &["--calculus", "del", "--format", "record"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("calculus=del\tk=1\td=1"), "{text}");
    assert!(text.contains("k=2\td=0"), "{text}");
}

#[test]
fn irrep_lists_weights() {
    let o = with("irrep", target("B", "2", "1"), &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# V("));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 5);
    let o = with("irrep", target("A", "2", "1"), &["--weight", "1,1"]);
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 8);
}

#[test]
fn rmatrix_entries() {
    let o = with("rmatrix", target("A", "1", "1"), &["--kind", "rh", "--format", "record"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("entry\tkind=rh\t")));
    assert!(text.lines().count() >= 4);
}

#[test]
fn verify_passes_and_fails_with_exit_codes() {
    let o = with("verify", target("A", "1", "1"), &["--suite", "ybe,crels,spectrum"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.contains("\tpass")));
    let o = with("verify", target("A", "2", "1"), &["--suite", "graded"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn parallel_matches_sequential() {
    let args = ["--suite", "ybe,triangularity,volume"];
    let seq = with("verify", target("A", "2", "2"), &args);
    let mut par_args = args.to_vec();
    par_args.push("--parallel");
    let par = with("verify", target("A", "2", "2"), &par_args);
    assert_eq!(seq.stdout, par.stdout);
    assert_eq!(seq.status.code(), Some(0));
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("qflag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dims.txt");
    let o = with(
        "dims",
        target("A", "1", "1"),
        &["--output", path.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("1\t2"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}
