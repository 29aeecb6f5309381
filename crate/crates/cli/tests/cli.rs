use std::process::{Command, Output};

fn vdflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vdflab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dist_prints_exact_value() {
    let o = vdflab(&["dist", "K3", "--property", "triangle-free"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1/9"));
}

#[test]
fn dist_reads_wgraph_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.wgraph");
    std::fs::write(&f, "n 2\nweights 1/2 1/2\ne 0 1\n").unwrap();
    let json = dir.path().join("d.json");
    let o = vdflab(&[
        "dist",
        f.to_str().unwrap(),
        "--property",
        "edge-free",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(v["distance"], "1/4");
}

#[test]
fn test_is_reproducible_and_persists() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for f in [&a, &b] {
        let o = vdflab(&[
            "test", "K3", "--property", "triangle-free", "--s", "3", "--trials", "3000", "--seed", "5", "--csv",
            f.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(std::fs::read_to_string(&a).unwrap().starts_with("name,input,property"));
}

#[test]
fn sweep_reads_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.toml");
    std::fs::write(
        &cfg,
        "property = \"triangle-free\"\ntrials = 2000\nseed = 1\noutput = \"out.json\"\n\
         [input]\ngraph = \"K3\"\n[tester]\nvariant = \"vdf\"\nsample_size = 1\n\
         [sweep]\nsizes = [2, 6, 12]\n",
    )
    .unwrap();
    let o = vdflab(&["sweep", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("smallest sample size with lower bound >= 0.6666666666666666: 6"));
    assert!(dir.path().join("out.json").exists());
}

#[test]
fn blowup_verifies() {
    let o = vdflab(&["blowup", "K3", "--N", "6", "--verify"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("base distance 1/9, blowup distance 1/9"));
    let o = vdflab(&["blowup", "K3", "--N", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("v0"));
}

#[test]
fn gallery_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = vdflab(&["gallery", "ab-c5", "--out-dir", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1/25"));
    assert!(dir.path().join("ab-c5.cert.json").exists());
    assert!(!vdflab(&["gallery", "nope"]).status.success());
}

#[test]
fn regularity_reports_partition() {
    let o = vdflab(&["regularity", "C6", "--eps", "1/4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("irregular mass 0"));
}

#[test]
fn verify_suite_exit_codes() {
    let o = vdflab(&["verify", "distance"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(vdflab(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn unknown_property_is_an_error() {
    let o = vdflab(&["dist", "K3", "--property", "no-such"]);
    assert_eq!(o.status.code(), Some(2));
}
