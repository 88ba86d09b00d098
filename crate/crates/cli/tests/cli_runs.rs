use std::fs;
use std::process::Command;

fn coda(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_coda")).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn temp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("coda-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn eval_and_step() {
    assert_eq!(coda(&["eval", "first 2 : a b c d"]), ("a b\n".into(), String::new(), 0));
    assert_eq!(coda(&["eval", "sum n : 3 5"]).0, "(n:8)\n");
    let (trace, _, code) = coda(&["step", "nat : 0", "--budget", "3"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[2], "2: 0 (nat:1)");
    assert_eq!(lines[3], "3: 0 1 (nat:2)");
}

#[test]
fn explain_reports_logic() {
    let (out, _, _) = coda(&["eval", "--explain", "last : nat : 0", "--budget", "20"]);
    assert!(out.contains("logic: undecided\nundecidable_hint: true"), "{out}");
}

#[test]
fn diagnostics_exit_nonzero() {
    let (out, err, code) = coda(&["eval", "def pass : x"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("(error:"));
    assert!(err.contains("axiom violation"));
    let (_, err, code) = coda(&["eval", "a/b"]);
    assert_eq!(code, 0);
    assert!(err.contains("reserved"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(coda(&["frobnicate"]).2, 2);
    assert_eq!(coda(&["eval"]).2, 2);
    assert_eq!(coda(&["eval", "x", "--budget", "many"]).2, 2);
    assert_eq!(coda(&["demo", "russell"]).2, 2);
    assert_eq!(coda(&["check", "law", "commutative", "sum n"]).2, 2);
}

#[test]
fn context_files_replay() {
    let file = temp("defs.tsv", "twice\ttwice\tdef\t{B B}\n");
    let path = file.to_str().unwrap();
    assert_eq!(coda(&["eval", "--context", path, "twice : a"]).0, "a a\n");
    let bad = temp("bad.tsv", "pass\tpass\tdef\t{B}\n");
    let (_, err, code) = coda(&["eval", "--context", bad.to_str().unwrap(), "a"]);
    assert_eq!(code, 1);
    assert!(err.contains("axiom violation"), "{err}");
}

#[test]
fn checks() {
    let (out, _, code) = coda(&["check", "space", "sum n", "--count", "50"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("passed"), "{out}");
    let (out, _, code) = coda(&["check", "morphism", "square", "sum n", "sum n", "--count", "50"]);
    assert_eq!(code, 1, "{out}");
    let (_, _, code) = coda(&["check", "law", "idempotent", "sort n", "--count", "50"]);
    assert_eq!(code, 0);
}

#[test]
fn search_from_files() {
    let pos = temp("pos.txt", "()\n(:) (:)\n# comment\n(:) (:) (:) (:)\n");
    let neg = temp("neg.txt", "(:)\n(:) (:) (:)\n");
    let (out, _, code) = coda(&[
        "search",
        "--pos",
        pos.to_str().unwrap(),
        "--neg",
        neg.to_str().unwrap(),
        "--vocab",
        "pass,aps,not,first",
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("aps not\t")), "{out}");
    let bad = temp("bad.txt", "(:\n");
    let (_, err, code) = coda(&["search", "--pos", bad.to_str().unwrap(), "--neg", neg.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.txt:1"), "{err}");
}

#[test]
fn demos_print_verdicts() {
    let (out, _, code) = coda(&["demo", "yablo", "--budget", "20"]);
    assert_eq!(code, 0);
    assert!(out.contains("logic: undecided"), "{out}");
    let (out, _, _) = coda(&["demo", "godel", "--budget", "9"]);
    assert!(out.contains("verdict: undecidable-hint"), "{out}");
}

#[test]
fn repl_session() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_coda"))
        .arg("repl")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"first 2 : a b c d\ndef pass : x\nlet X : a b\nX?\n\xff(<\n:quit\nnever reached\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "a b");
    assert!(lines[1].starts_with("(error:"));
    assert_eq!(lines[2], "()");
    assert_eq!(lines[3], "a b");
    assert_eq!(lines.len(), 5);
    assert!(String::from_utf8_lossy(&out.stderr).contains("axiom violation"));
}
