use std::io::Write;
use std::process::{Command, Output, Stdio};

fn rotbell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotbell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_ghz3_json() {
    let o = rotbell(&["analyze", "--ket", "|000>+|111>", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["r"].as_f64().unwrap(), 1.93789229252);
    assert_eq!(v["report"]["min_excluded_separability"], 2);
    assert!(v["verdict"].as_str().unwrap().contains("genuine 3-partite"));
    assert!((v["report"]["critical_visibility"].as_f64().unwrap() - 0.5160).abs() < 1e-4);
}

#[test]
fn analyze_product_reports_nothing() {
    let o = rotbell(&["analyze", "--ket", "|00>"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("r                    0\n"));
    assert!(out.contains("no separability class excluded"));
}

#[test]
fn analyze_biseparable_density_from_stdin() {
    // |+x⟩ ⊗ Bell: entries ±¼ on the support {000, 011, 100, 111}
    let support = [0usize, 3, 4, 7];
    let rows: Vec<String> = (0..8)
        .map(|r| {
            let row: Vec<String> = (0..8)
                .map(|c| {
                    let x = if support.contains(&r) && support.contains(&c) { 0.25 } else { 0.0 };
                    format!("[{x},0]")
                })
                .collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    let doc = format!(r#"{{"kind":"density","n":3,"matrix":[{}]}}"#, rows.join(","));
    let mut child = Command::new(env!("CARGO_BIN_EXE_rotbell"))
        .args(["analyze", "--input", "-", "--format", "csv"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let k2 = out.lines().find(|l| l.contains(",2,0.968946146259,")).expect("k=2 row");
    assert!(k2.contains("0.968946146259,false,"), "{k2}");
}

#[test]
fn oracle_flag_runs_checks() {
    let o = rotbell(&["analyze", "--ket", "|01>+|10>", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle: all checks passed"));
}

#[test]
fn exit_codes() {
    assert_eq!(rotbell(&["analyze", "--ket", "|0> + |11>"]).status.code(), Some(1));
    assert_eq!(rotbell(&["analyze", "--input", "/does/not/exist"]).status.code(), Some(1));
    assert_eq!(rotbell(&["analyze"]).status.code(), Some(1));
    assert_eq!(rotbell(&["nonsense"]).status.code(), Some(1));
    assert_eq!(rotbell(&["sweep", "--ket", "|0>", "--vmax", "2"]).status.code(), Some(1));
    assert_eq!(rotbell(&["verify", "--inject-sign-fault"]).status.code(), Some(2));
    assert_eq!(rotbell(&["--version"]).status.code(), Some(0));
}

#[test]
fn diagnostics_name_the_problem() {
    let o = rotbell(&["ghz", "--n", "3", "--visibility", "-0.5"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("visibility"), "{err}");
}

#[test]
fn verify_is_green_and_byte_identical() {
    let a = rotbell(&["verify", "--seed", "17", "--format", "json"]);
    let b = rotbell(&["verify", "--seed", "17", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn zoo_and_sweep_are_deterministic() {
    for args in [
        &["zoo", "--format", "csv", "--seed", "5"][..],
        &["sweep", "--ket", "|0000>+|1111>", "--format", "csv"][..],
    ] {
        let a = rotbell(args);
        let b = rotbell(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn zoo_columns() {
    let o = rotbell(&["zoo", "--format", "csv", "--samples", "10"]);
    let out = stdout(&o);
    let mut ghz = Vec::new();
    for line in out.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[4], "2", "{line}");
        assert!(f[7].parse::<f64>().unwrap() < 1.0);
        if f[2] == "2" {
            ghz.push(f[1].to_string());
        }
    }
    assert_eq!(
        ghz,
        ["1.23370055014", "1.93789229252", "3.04403409481", "4.78155757477", "7.51085307481"]
    );
}

#[test]
fn sweep_flip_for_ghz4() {
    let o = rotbell(&["sweep", "--ket", "|0000>+|1111>", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let lo = v["flip_between"][0].as_f64().unwrap();
    let hi = v["flip_between"][1].as_f64().unwrap();
    assert!(lo < 0.3285 && 0.3285 < hi);
    let mm = rotbell(&[
        "sweep",
        "--input",
        "-",
        "--format",
        "csv",
    ]);
    // no stdin given: an empty document is an input error
    assert_eq!(mm.status.code(), Some(1));
}
