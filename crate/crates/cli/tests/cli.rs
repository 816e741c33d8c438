use std::path::Path;
use std::process::{Command, Output};

fn bloch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bloch")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn honeycomb_dispersion_is_a_pyramid() {
    let o = bloch(&["dispersion", "--graph", "honeycomb", "--d", "2"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("terms: 9\n"), "{s}");
    assert!(s.contains("pyramid: apex l^2 (0,0,2)"), "{s}");
    assert!(s.contains("base of 6 vertices"), "{s}");
}

#[test]
fn dice_dispersion_has_cubic_apex() {
    let s = stdout(&bloch(&["dispersion", "--graph", "dice"]));
    assert!(s.contains("(0,0,3)") && s.contains("l^3"), "{s}");
    for p in ["(1,0,0)", "(-1,0,0)", "(1,-1,0)", "(1,0,1)", "(1,-1,1)"] {
        assert!(s.contains(p), "missing {p}");
    }
}

#[test]
fn single_vertex_json() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", r#"{"d":1,"vertices":["w"],"edges":[],"potential":{"w":"V"}}"#);
    let s = stdout(&bloch(&["dispersion", "--graph", &g]));
    assert!(s.starts_with("D(z,l) = -l + V\n"), "{s}");
}

#[test]
fn analyze_writes_a_replayable_deterministic_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let o = bloch(&[
            "analyze", "--graph", "honeycomb", "--Q", "2,3", "--potential", "random-rational(1)", "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(out.join("certificate.json")).unwrap();
        (stdout(&o).replace(out.to_str().unwrap(), "OUT"), text)
    };
    let (s1, c1) = run("a");
    let (s2, c2) = run("b");
    assert_eq!((s1.clone(), c1.clone()), (s2, c2));
    assert!(s1.contains("verdict: Irreducible\n"));
    let cert: serde_json::Value = serde_json::from_str(&c1).unwrap();
    bloch_core::criteria::replay_certificate(&cert).unwrap();
    let path = dir.path().join("a/certificate.json");
    assert_eq!(code(&bloch(&["replay", path.to_str().unwrap()])), 0);

    // tampering with a premise list is caught
    let mut bad = cert.clone();
    let facts = bad["facts"].as_array_mut().unwrap();
    let f = facts.iter_mut().find(|f| !f["premises"].as_array().unwrap().is_empty()).unwrap();
    f["premises"].as_array_mut().unwrap().pop();
    let p = write(dir.path(), "bad.json", &bad.to_string());
    let o = bloch(&["replay", &p]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("replay failed"));
}

#[test]
fn one_vertex_with_even_offset_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "w.json",
        r#"{"d":1,"vertices":["w"],"edges":[{"u":"w","v":"w","offset":[2],"label":"a"}]}"#,
    );
    let o = bloch(&["analyze", "--graph", &g, "--Q", "2", "--potential", "random-rational(3)"]);
    assert_eq!(code(&o), 10);
    let s = stdout(&o);
    assert!(s.contains("verdict: Inconclusive") && s.contains("= 2"), "{s}");
    assert!(o.stderr.is_empty());
}

#[test]
fn verify_checks_and_tolerance() {
    let base = ["verify", "--graph", "honeycomb", "--Q", "2,1", "--random-labels", "1"];
    let o = bloch(&[&base[..], &["--potential", "random-periodic(4)"]].concat());
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("pass ").count(), 4);
    let o = bloch(&[&base[..], &["--potential", "random-rational(4)"]].concat());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("n/a (potential not Z^d-periodic)"));
    let o = bloch(&[&base[..], &["--potential", "random-periodic(4)", "--tol", "0"]].concat());
    assert_eq!(code(&o), 1);
    // symbolic labels are rejected
    assert_eq!(code(&bloch(&["verify", "--graph", "honeycomb", "--Q", "2,1"])), 2);
}

#[test]
fn export_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x");
    let o = bloch(&[
        "export", "--graph", "honeycomb", "--random-labels", "2", "--potential", "zero", "--grid", "16", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let off = std::fs::read_to_string(out.join("newton.off")).unwrap();
    assert!(off.starts_with("OFF\n7 "), "{off}");
    let csv = std::fs::read_to_string(out.join("spectrum.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 16 * 16 * 2);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("newton.json")).unwrap()).unwrap();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 7);
}

fn band_ranges(csv: &str) -> Vec<(f64, f64)> {
    let mut r = vec![(f64::INFINITY, f64::NEG_INFINITY); 2];
    for line in csv.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let k: usize = cells[cells.len() - 2].parse().unwrap();
        let e: f64 = cells[cells.len() - 1].parse().unwrap();
        r[k - 1] = (r[k - 1].0.min(e), r[k - 1].1.max(e));
    }
    r
}

#[test]
fn spectrum_bands_stable_under_refinement() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(
        dir.path(),
        "hc.json",
        r#"{"d":2,"vertices":["u","v"],"edges":[
            {"u":"u","v":"v","offset":[0,0],"label":"6"},
            {"u":"u","v":"v","offset":[-1,0],"label":"3"},
            {"u":"u","v":"v","offset":[0,-1],"label":"2"}]}"#,
    );
    let ranges = |grid: &str| {
        let out = dir.path().join(grid);
        let o = bloch(&["export", "--graph", &g, "--grid", grid, "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        band_ranges(&std::fs::read_to_string(out.join("spectrum.csv")).unwrap())
    };
    let (coarse, fine) = (ranges("64"), ranges("256"));
    for (a, b) in coarse.iter().zip(&fine) {
        assert!((a.0 - b.0).abs() < 1e-3 && (a.1 - b.1).abs() < 1e-3, "{a:?} vs {b:?}");
    }
    // band edges of the closed form: 0 and 2(6+3+2) at z = 1
    assert!(coarse[0].0.abs() < 1e-9 && (coarse[1].1 - 22.0).abs() < 1e-9);
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "e.json", r#"{"d":2,"vertices":[],"edges":[]}"#);
    let out = dir.path().join("o");
    let o = bloch(&["export", "--graph", &empty, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert_eq!(code(&bloch(&["analyze", "--graph", "honeycomb", "--Q", "2,3,4"])), 2);
    assert_eq!(code(&bloch(&["analyze", "--graph", "nope", "--Q", "2"])), 2);
    assert_eq!(code(&bloch(&["expand", "--graph", "dice", "--Q", "3,3"])), 3);
    assert_eq!(code(&bloch(&["dispersion", "--graph", "honeycomb", "--potential", "x=1"])), 2);
}
