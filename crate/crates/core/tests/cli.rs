use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use trimax::diagram::WiringDiagram;
use trimax::faces::count_triangles;

fn trimax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trimax"))
        .args(args)
        .env_remove("TRIMAX_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn search_reports_best() {
    let o = trimax(&["search", "--n", "5", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("best=5 "));
    let o = trimax(&["search", "--n", "3"]);
    assert!(stdout(&o).starts_with("best=1 "));
}

#[test]
fn search_writes_a_verifiable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w7.wd");
    let o = trimax(&["search", "--n", "7", "--target", "11", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let d = WiringDiagram::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(count_triangles(&d).triangle_count, 11);

    let o = trimax(&["count", "--in", p(&out), "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["triangles"], 11);
    assert_eq!(v["used"], 33);
}

#[test]
fn exit_codes() {
    assert_eq!(
        trimax(&["search", "--n", "6", "--target", "8"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(trimax(&["search"]).status.code(), Some(2));
    assert_eq!(
        trimax(&["search", "--n", "6", "--target", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        trimax(&["count", "--in", "/nonexistent/file"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        trimax(&["duplicate", "--seed", "hex9"]).status.code(),
        Some(2)
    );
}

#[test]
fn count_formats() {
    let dir = tempfile::tempdir().unwrap();
    let three = dir.path().join("three.wd");
    std::fs::write(&three, "3 3\n1\n2\n1\n").unwrap();
    let o = trimax(&["count", "--in", p(&three)]);
    assert!(stdout(&o).starts_with("triangles=1 used=3 unused=0\n"));

    let partial = dir.path().join("partial.wd");
    std::fs::write(&partial, "# two columns\n4 2\n1 3\n2\n").unwrap();
    let o = trimax(&["count", "--in", p(&partial)]);
    assert!(stdout(&o).starts_with("incomplete closed_triangles=0 provably_unused="));

    let bad = dir.path().join("bad.wd");
    std::fs::write(&bad, "3 2\n1\n1 2\n").unwrap();
    let o = trimax(&["count", "--in", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn bounds_rows() {
    let o = stdout(&trimax(&["bounds", "--n", "8"]));
    assert!(o.contains("n=8 Affine Pseudolines formula=15 known=14"));
    let o = stdout(&trimax(&["bounds", "--n", "14"]));
    assert!(o.contains("Projective Pseudolines formula=59 known=58-59"));
    let o = stdout(&trimax(&["bounds", "--n", "100"]));
    assert_eq!(
        o,
        "n=100 Affine formula=3255\nn=100 Projective formula=3300\n"
    );
    let o = trimax(&["bounds", "--range", "3..30", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 28 * 4);
}

#[test]
fn duplicate_rounds_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hex13.arr");
    let o = trimax(&[
        "duplicate",
        "--seed",
        "hex7",
        "--iterations",
        "1",
        "--out",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n=13 triangles=47"));
    for file in [out.clone(), out.with_extension("wd")] {
        let o = trimax(&["count", "--in", p(&file), "--json"]);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["triangles"], 47, "{}", file.display());
    }

    let o = trimax(&["duplicate", "--seed", "hex7", "--iterations", "0"]);
    assert_eq!(stdout(&o), "round=0 n=7 triangles=11 precision=256\n");

    let o = trimax(&[
        "duplicate",
        "--seed",
        "simmons15",
        "--iterations",
        "1",
        "--json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[1]["n"], 29);
    assert_eq!(v[1]["triangles"], 261);
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_trimax"))
        .args(["duplicate", "--seed", "hex7", "--iterations", "0"])
        .env("TRIMAX_PRECISION", "512")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "round=0 n=7 triangles=11 precision=512\n");
    let o = Command::new(env!("CARGO_BIN_EXE_trimax"))
        .args(["duplicate", "--seed", "hex7"])
        .env("TRIMAX_PRECISION", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let three = dir.path().join("three.wd");
    std::fs::write(&three, "3 3\n1\n2\n1\n").unwrap();
    let svg = dir.path().join("three.svg");
    assert_eq!(
        trimax(&["render", "--in", p(&three), "--out", p(&svg)])
            .status
            .code(),
        Some(0)
    );
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 3);
    assert_eq!(text.matches("class=\"switch\"").count(), 3);

    let five = dir.path().join("five.wd");
    trimax(&["search", "--n", "5", "--exhaustive", "--out", p(&five)]);
    trimax(&["render", "--in", p(&five), "--out", p(&svg), "--highlight"]);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polygon").count(), 5);

    let arr = dir.path().join("hex.arr");
    trimax(&[
        "duplicate",
        "--seed",
        "hex7",
        "--iterations",
        "0",
        "--out",
        p(&arr),
    ]);
    trimax(&["render", "--in", p(&arr), "--out", p(&svg)]);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<line ").count(), 7);
}
