use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ornament(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ornament"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SEGMENTS: &str = r#"{
  "m": 2,
  "components": [
    {"name": "a", "dim": 1, "vertices": [["-1","0"],["1","0"]], "facets": [[0,1],[1,0]]},
    {"name": "b", "dim": 1, "vertices": [["0","-1"],["0","1"]], "facets": [[0,1],[1,0]]},
    {"name": "c", "dim": 1, "vertices": [["-1","-1"],["1","1"]], "facets": [[0,1],[1,0]]}
  ]
}"#;

#[test]
fn gen_validate_and_mu_on_the_borromean() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.json");
    let out = ornament(&["gen", "borromean", "--k", "1", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let v = ornament(&["validate", path(&file)]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(report(&v)["status"], "valid");
    let mu = ornament(&["mu", path(&file), "--method", "both", "--seed", "3"]);
    assert_eq!(mu.status.code(), Some(0));
    let r = report(&mu);
    assert_eq!(r["mu"], 1);
    assert_eq!(r["sweep"]["mu"], 1);
    assert_eq!(r["degree"]["mu"], 1);
    assert_eq!(r["agree"], true);
    for s in r["degree"]["solutions"].as_array().unwrap() {
        assert_eq!(s["barycentric"].as_array().unwrap().len(), 3);
    }
    assert!(String::from_utf8_lossy(&mu.stderr).contains("agree"));
}

#[test]
fn gen_is_deterministic_and_canonical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for f in [&a, &b] {
        let out = ornament(&[
            "gen",
            "random",
            "--k",
            "1",
            "--r",
            "1",
            "--seed",
            "42",
            "--out",
            path(f),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let doc = ornament_core::io::OrnamentDoc::parse(&text).unwrap();
    assert_eq!(doc.to_json(), text);
}

#[test]
fn trivial_gen_has_mu_zero() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.json");
    let out = ornament(&["gen", "trivial", "--k", "2", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let mu = ornament(&["mu", path(&file)]);
    assert_eq!(mu.status.code(), Some(0));
    assert_eq!(report(&mu)["mu"], 0);
    let custom = ornament(&["gen", "trivial", "--targets", "0,0;1/2,0;0,3"]);
    assert_eq!(custom.status.code(), Some(0));
    assert_eq!(report(&custom)["components"][1]["vertices"][0][0], "1/2");
    let bad = ornament(&["gen", "trivial", "--targets", "0,0;0,0;0,3"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn invalid_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let seg = dir.path().join("seg.json");
    std::fs::write(&seg, SEGMENTS).unwrap();
    let v = ornament(&["validate", path(&seg)]);
    assert_eq!(v.status.code(), Some(0));
    let r = report(&v);
    assert_eq!(r["status"], "invalid");
    assert!(r["ornament"]["witness"]["facets"].is_array());

    let mu = ornament(&["mu", path(&seg)]);
    assert_eq!(mu.status.code(), Some(1));

    let zero = dir.path().join("zero.json");
    std::fs::write(&zero, SEGMENTS.replace("\"-1\",\"0\"", "\"3/0\",\"0\"")).unwrap();
    let z = ornament(&["validate", path(&zero)]);
    assert_eq!(z.status.code(), Some(1));
    assert!(report(&z)["error"]
        .as_str()
        .unwrap()
        .contains("component 0"));

    let missing = ornament(&["validate", path(&dir.path().join("nope.json"))]);
    assert_eq!(missing.status.code(), Some(1));
    assert_eq!(
        ornament(&["gen", "borromean", "--k", "0"]).status.code(),
        Some(1)
    );
}

#[test]
fn dimension_mismatch_is_invalid_input() {
    // Three circles in R^3: 1 + 1 + 1 + 1 ≠ 6.
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d.json");
    let circle = |dx: i32| {
        format!(
            r#"{{"name": "c", "dim": 1, "vertices": [["{dx}","0","0"],["{}","1","0"],["{}","0","1"]], "facets": [[0,1],[1,2],[2,0]]}}"#,
            dx + 1,
            dx + 2
        )
    };
    std::fs::write(
        &file,
        format!(
            r#"{{"m": 3, "components": [{}, {}, {}]}}"#,
            circle(0),
            circle(10),
            circle(20)
        ),
    )
    .unwrap();
    let mu = ornament(&["mu", path(&file)]);
    assert_eq!(mu.status.code(), Some(1));
    assert!(report(&mu)["error"].as_str().unwrap().contains("2m-1"));
}

#[test]
fn track_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("b.json");
    let track = dir.path().join("track.json");
    let calm = dir.path().join("calm.json");
    assert_eq!(
        ornament(&["gen", "borromean", "--out", path(&file)])
            .status
            .code(),
        Some(0)
    );

    assert_eq!(
        ornament(&["track", path(&file), "--seed", "5", "--out", path(&track)])
            .status
            .code(),
        Some(0)
    );
    let s = ornament(&["sweep", path(&track)]);
    assert_eq!(s.status.code(), Some(0));
    let r = report(&s);
    assert_eq!(r["sum"], 1);
    assert_eq!(r["mu_start"], 1);
    assert_eq!(r["mu_end"], 0);
    assert_eq!(r["identity"], true);
    assert_eq!(r["unpaired"].as_array().unwrap().len(), 1);

    // The same track backwards.
    let doc =
        ornament_core::io::HomotopyDoc::parse(&std::fs::read_to_string(&track).unwrap()).unwrap();
    let reversed = dir.path().join("reversed.json");
    let rev = ornament_core::io::HomotopyDoc::from_track(&doc.to_track().unwrap().reversed());
    std::fs::write(&reversed, rev.to_json()).unwrap();
    let s = ornament(&["sweep", path(&reversed)]);
    assert_eq!(report(&s)["sum"], -1);

    assert_eq!(
        ornament(&["track", path(&file), "--eps", "1/64", "--out", path(&calm)])
            .status
            .code(),
        Some(0)
    );
    let s = ornament(&["sweep", path(&calm)]);
    assert_eq!(s.status.code(), Some(0));
    assert!(report(&s)["points"].as_array().unwrap().is_empty());
}

#[test]
fn sweep_rejects_invalid_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.json");
    let doc = format!(
        r#"{{"m": 2, "components": {}, "keyframes": [
            {{"t": "0", "vertices": [[["-1","0"],["1","0"]], [["0","-1"],["0","1"]], [["-1","-1"],["1","1"]]]}},
            {{"t": "1", "vertices": [[["-1","0"],["1","0"]], [["0","-1"],["0","1"]], [["-1","-1"],["1","1"]]]}}
        ]}}"#,
        serde_json::to_string(&serde_json::from_str::<Value>(SEGMENTS).unwrap()["components"])
            .unwrap()
    );
    std::fs::write(&file, doc).unwrap();
    let s = ornament(&["sweep", path(&file)]);
    assert_eq!(s.status.code(), Some(1));
}
