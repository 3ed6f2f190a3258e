use std::path::Path;
use std::process::{Command, Output};

fn succession(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_succession"))
        .args(args)
        .env_remove("SUCCESSION_CORPUS_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sunrise_first_hundred_days() {
    let o = succession(&["sunrise", "--days", "100", "--laws", "laplace,jp"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("law\tdays\tbits\tbits_ceil\tbytes"));
    assert_eq!(lines.next(), Some("laplace\t100\t300.089\t301\t38"));
    assert_eq!(lines.next(), Some("jp\t100\t224.597\t225\t29"));
}

#[test]
fn oracle_reports_pass() {
    let o = succession(&["oracle", "--max-k", "3", "--max-n", "5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("oracle equivalence: PASS"), "{out}");
    assert_eq!(out.lines().filter(|l| l.contains(": PASS")).count(), 4);
}

#[test]
fn empty_file_costs_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.bin");
    std::fs::write(&empty, b"").unwrap();
    let o = succession(&[
        "eval",
        "--law",
        "natural",
        "--file",
        empty.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(row[..5], ["empty.bin", "natural", "0", "0", "0.000"]);
}

#[test]
fn exit_codes() {
    assert_eq!(
        succession(&["sunrise", "--laws", "lidstone:-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(succession(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        succession(&["eval", "/definitely/missing"]).status.code(),
        Some(1)
    );
    assert_eq!(succession(&["--help"]).status.code(), Some(0));
}

#[test]
fn outputs_are_deterministic_and_formats_agree() {
    let args = [
        "analyze", "escape", "-k", "16", "-q", "3", "--from", "3", "--to", "300", "--points", "7",
    ];
    let a = stdout(&succession(&args));
    assert_eq!(a, stdout(&succession(&args)));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json = stdout(&succession(&json_args));
    let header: Vec<&str> = a.lines().next().unwrap().split('\t').collect();
    for (tsv, js) in a.lines().skip(1).zip(json.lines()) {
        let v: serde_json::Value = serde_json::from_str(js).unwrap();
        for (name, cell) in header.iter().zip(tsv.split('\t')) {
            assert_eq!(
                v[name].as_f64().unwrap(),
                cell.parse::<f64>().unwrap(),
                "{name}"
            );
        }
    }
}

#[test]
fn plotdata_curves() {
    let o = succession(&[
        "sunrise", "--days", "50", "--laws", "natural", "--format", "plotdata", "--stride", "10",
    ]);
    let cols = succession::plotdata::parse(&stdout(&o)).unwrap();
    assert_eq!(cols[0], vec![10.0, 20.0, 30.0, 40.0, 50.0]);
    assert!(cols[1].windows(2).all(|w| w[0] <= w[1]));
}

fn write_corpus(dir: &Path) -> String {
    std::fs::write(dir.join("ones"), vec![b'1'; 100]).unwrap();
    std::fs::write(dir.join("abc"), b"abcabcabcabc").unwrap();
    let digest = succession::corpus::sha256_hex(b"abcabcabcabc");
    format!("# test corpus\nones\t100\t-\t1\nabc\t12\t{digest}\t3\n")
}

#[test]
fn corpus_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.tsv");
    std::fs::write(&manifest, write_corpus(dir.path())).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_succession"))
        .args([
            "corpus",
            "--manifest",
            manifest.to_str().unwrap(),
            "--laws",
            "natural,laplace",
        ])
        .env("SUCCESSION_CORPUS_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "file\tq\tnatural\tlaplace");
    assert!(lines[1].starts_with("abc\t3\t"));
    assert!(lines[2].starts_with("ones\t1\t"));
    assert!(lines[3].starts_with("total\t-\t"));
}

#[test]
fn corpus_reports_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.tsv");
    let text = write_corpus(dir.path()) + "gone\t5\t-\n";
    std::fs::write(&manifest, text).unwrap();
    std::fs::write(dir.path().join("ones"), b"short").unwrap();
    let o = succession(&[
        "corpus",
        "--dir",
        dir.path().to_str().unwrap(),
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("gone: skipped (Missing)"), "{err}");
    assert!(err.contains("ones: skipped (SizeMismatch"), "{err}");
}
