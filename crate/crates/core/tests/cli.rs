use std::io::Write;
use std::process::{Command, Output, Stdio};

fn seqpart(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_seqpart"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_ends_with_pass() {
    let o = seqpart(&["table", "--max", "5"], "");
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.last(), Some(&"PASS"));
    let last_row: Vec<&str> = lines[lines.len() - 2].split('\t').collect();
    assert_eq!(&last_row[..3], &["5", "326", "52"]);
}

#[test]
fn table_json_records() {
    let o = seqpart(&["table", "--max", "12", "--cutoff", "3", "--format", "json"], "");
    assert!(o.status.success());
    let records: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 13);
    assert_eq!(records[11]["n"], 12);
    assert_eq!(records[11]["arrangements"], "1302061345");
    assert_eq!(records[11]["partitions"], "4213597");
    assert!(records[11]["enumerated"].is_null());
    assert_eq!(records[2]["enumerated"], serde_json::json!([16, 5]));
    assert_eq!(records[12]["kind"], "summary");
    assert_eq!(records[12]["pass"], true);
}

#[test]
fn dedekind_from_file_and_stdin() {
    let dir = std::env::temp_dir().join(format!("seqpart-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("seqs.txt");
    std::fs::write(&path, "x y x\n\nz z z z\n").unwrap();
    let o = seqpart(&["encode-dedekind", "--base", "x y z", "--markers", "4", "--in", path.to_str().unwrap()], "");
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "{x m0 m2} {y m1} {z} {m3}\n{x} {y} {z} {m0} {m1} {m2} {m3}\n{x} {y} {z m0 m1 m2 m3}\n"
    );
    let back = seqpart(&["decode-dedekind", "--base", "x y z", "--markers", "4"], &stdout(&o));
    assert_eq!(stdout(&back), "x y x\n\nz z z z\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn decoder_rejects_non_images() {
    let o = seqpart(&["decode-dedekind", "--base", "x y z", "--markers", "4"], "{x y m0} {z} {m1} {m2} {m3}\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let o = seqpart(&["encode-dedekind", "--base", "x y z", "--markers", "2"], "x y z\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_single_suite() {
    let o = seqpart(&["verify", "--suite", "dedekind"], "");
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("dedekind\tPASS") || l.starts_with("PASS")));
}

#[test]
fn fraenkel_bundle() {
    let o = seqpart(&["fraenkel", "--atoms", "6", "--esizes", "1,2,3", "--b", "2", "--format", "json"], "");
    assert!(o.status.success());
    let counts: Vec<(u64, u64)> = stdout(&o)
        .lines()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            assert_eq!(v["injection_exists"], false);
            assert_eq!(v["certificate_rechecked"], true);
            (v["supported_sequences"].as_u64().unwrap(), v["supported_partitions"].as_u64().unwrap())
        })
        .collect();
    assert_eq!(counts, [(2, 1), (5, 2), (16, 5)]);
}

#[test]
fn fraenkel_limits_are_usage_errors() {
    assert_eq!(seqpart(&["fraenkel", "--atoms", "7", "--esizes", "1", "--b", "2"], "").status.code(), Some(2));
    assert_eq!(seqpart(&["fraenkel", "--atoms", "1", "--esizes", "1", "--b", "2"], "").status.code(), Some(2));
}

#[test]
fn unknown_flags_and_subcommands() {
    assert_eq!(seqpart(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(seqpart(&["table", "--max", "3", "--nope"], "").status.code(), Some(2));
    assert_eq!(seqpart(&["seqnat", "decode"], "12x\n").status.code(), Some(2));
    assert!(seqpart(&["--version"], "").status.success());
}

#[test]
fn seqnat_decode_large() {
    let o = seqpart(&["seqnat", "decode"], "538236844275\n");
    assert_eq!(stdout(&o), "2 7 1 8\n");
}
