use std::path::PathBuf;

use tropgon::cli::{self, ConstructArgs, FromWitnessArgs, RoundtripArgs};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn scratch(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn shipped_data_validates() {
    for f in ["seg2.trop", "circ4.trop", "tail.trop", "theta.trop"] {
        let out = cli::validate(&[data(f)]);
        assert_eq!(out.code, 0, "{f}: {}", out.stderr);
        assert!(out.stdout.ends_with("valid\n"));
    }
}

#[test]
fn div_prints_signed_terms() {
    let out = cli::div(&[data("seg2.trop")], "f");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "+1 @ e1@1/1, -1 @ e1@0/1\n");
}

#[test]
fn truncated_input_is_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("tail.trop")).unwrap();
    let cut = &text[..text.find("pieces 0:3/2").unwrap() + 8];
    let p = scratch(&dir, "cut.trop", cut);
    assert_eq!(cli::validate(&[p]).code, 2);
    assert_eq!(cli::validate(&[dir.path().join("missing.trop")]).code, 2);
}

#[test]
fn negative_length_names_the_edge() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("tail.trop")).unwrap().replace("edge t1 a tip 1/1", "edge t1 a tip -1/1");
    let out = cli::validate(&[scratch(&dir, "neg.trop", &text)]);
    assert_eq!(out.code, 1, "{}", out.stderr);
    assert!(out.stderr.contains("t1"), "{}", out.stderr);
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("bundle.trop");
    let cert = dir.path().join("cert.txt");
    let out = cli::construct(&ConstructArgs {
        paths: vec![data("tail.trop")],
        system: "s".into(),
        out: Some(bundle.clone()),
        certificate: Some(cert.clone()),
        quiet: true,
    });
    assert_eq!(out.code, 0, "{}", out.stderr);
    let c = std::fs::read_to_string(&cert).unwrap();
    assert!(c.contains("degree 2\n") && c.contains("indeterminacy c2@1/1 1\n"), "{c}");
    let v = cli::verify(&[bundle], "pi", "phi");
    assert_eq!(v.code, 0, "{}", v.stderr);
    assert!(v.stdout.contains("degree 2"));
}

#[test]
fn zero_slope_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("theta.trop")).unwrap();
    let edited = text
        .replacen("edge e1.0->l1@0/1 slope 1", "edge e1.0->l1@0/1 slope 0", 1)
        .replacen("edge e1.1->l1@1/2 slope -1", "edge e1.1->l1@0/1 slope 0", 1);
    assert_ne!(text, edited);
    let out = cli::verify(&[scratch(&dir, "bad.trop", &edited)], "pi", "phi");
    assert_eq!(out.code, 1, "{}", out.stderr);
    assert!(out.stderr.contains("not finite"), "{}", out.stderr);
}

#[test]
fn rank_failure_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("seg2.trop")).unwrap();
    let p = scratch(&dir, "seg2.trop", &text);
    let out = cli::construct(&ConstructArgs { paths: vec![p], system: "flat".into(), ..Default::default() });
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("rank-one test failed at"), "{}", out.stderr);
}

#[test]
fn roundtrips_succeed() {
    for (f, sys) in [("tail.trop", "s"), ("circ4.trop", "s"), ("seg2.trop", "s")] {
        let out = cli::roundtrip(&RoundtripArgs { paths: vec![data(f)], system: Some(sys.into()), ..Default::default() });
        assert_eq!(out.stdout, "systems equivalent\n", "{f}: {}", out.stderr);
    }
    let out = cli::roundtrip(&RoundtripArgs { paths: vec![data("theta.trop")], system: None, pi: "pi".into(), phi: "phi".into() });
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("witness recovered: degree 2"));
}

#[test]
fn from_witness_writes_a_loadable_system() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("lambda.trop");
    let out = cli::from_witness(&FromWitnessArgs {
        paths: vec![data("theta.trop")],
        pi: "pi".into(),
        phi: "phi".into(),
        point: None,
        out: Some(p.clone()),
    });
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(cli::validate(std::slice::from_ref(&p)).code, 0);
    let back = cli::roundtrip(&RoundtripArgs { paths: vec![p], system: Some("lambda".into()), ..Default::default() });
    assert_eq!(back.code, 0, "{}", back.stderr);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tropgon");
    let run = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap();
    let ok = run(&["div", data("seg2.trop").to_str().unwrap(), "--func", "f"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "+1 @ e1@1/1, -1 @ e1@0/1\n");
    let missing = run(&["validate", "/nonexistent/x.trop"]);
    assert_eq!(missing.status.code(), Some(2));
    let unknown = run(&["div", data("seg2.trop").to_str().unwrap(), "--func", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
}
