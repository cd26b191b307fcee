//! End-to-end checks of the command-line surface: the circle example,
//! byte-deterministic round trips, and the documented exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_mvsheaf")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mvsheaf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn mesh_path(name: &str) -> String {
    format!("{}/tests/meshes/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn circle_distance_flow() {
    let bf = tmp("bf.json");
    let bp = tmp("bp.json");
    let sf = tmp("sf.json");
    let sp = tmp("sp.json");
    let o = run(&[
        "levelset",
        "--mesh",
        &mesh_path("circle_f"),
        "--out",
        bf.to_str().unwrap(),
        "--mv",
        sf.to_str().unwrap(),
        "--verify-grid",
        "6",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("all dimensions match"));
    let o = run(&[
        "levelset",
        "--mesh",
        &mesh_path("circle_p"),
        "--out",
        bp.to_str().unwrap(),
        "--mv",
        sp.to_str().unwrap(),
    ]);
    assert!(o.status.success());

    let o = run(&["distance", bf.to_str().unwrap(), bp.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");

    let o = run(&["distance", sf.to_str().unwrap(), sp.to_str().unwrap(), "--kind", "mv"]);
    assert_eq!(stdout(&o).trim(), "1");

    let o = run(&["distance", bf.to_str().unwrap(), bf.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn functor_round_trip_is_byte_identical() {
    let sf = tmp("rt_sf.json");
    let b1 = tmp("rt_b1.json");
    let s1 = tmp("rt_s1.json");
    let b2 = tmp("rt_b2.json");
    let o = run(&[
        "levelset",
        "--mesh",
        &mesh_path("theta"),
        "--out",
        tmp("rt_dummy.json").to_str().unwrap(),
        "--mv",
        sf.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(run(&["xi", sf.to_str().unwrap(), "--out", b1.to_str().unwrap()]).status.success());
    assert!(run(&["psi", b1.to_str().unwrap(), "--out", s1.to_str().unwrap()]).status.success());
    assert!(run(&["xi", s1.to_str().unwrap(), "--out", b2.to_str().unwrap()]).status.success());
    let x = std::fs::read(&b1).unwrap();
    let y = std::fs::read(&b2).unwrap();
    assert_eq!(x, y, "xi-psi-xi must reproduce bytes");
}

#[test]
fn convolve_and_plot() {
    let bf = tmp("cp_bf.json");
    assert!(run(&[
        "levelset",
        "--mesh",
        &mesh_path("circle_f"),
        "--out",
        bf.to_str().unwrap()
    ])
    .status
    .success());
    let out = tmp("cp_conv.json");
    let o = run(&[
        "convolve",
        bf.to_str().unwrap(),
        "--eps",
        "1/2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("-3/2")); // closed bar expanded to [-3/2, 3/2]
    let svg = tmp("cp_plot.svg");
    let o = run(&["plot", bf.to_str().unwrap(), "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn exit_codes() {
    // malformed JSON: 2
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{nope").unwrap();
    let o = run(&["distance", bad.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[malformed]"));

    // missing file: 2
    let o = run(&["distance", "/nonexistent.json", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(2));

    // precondition violation: 3
    let bf = tmp("ec_bf.json");
    assert!(run(&[
        "levelset",
        "--mesh",
        &mesh_path("circle_f"),
        "--out",
        bf.to_str().unwrap()
    ])
    .status
    .success());
    let o = run(&[
        "convolve",
        bf.to_str().unwrap(),
        "--eps=-1",
        "--out",
        tmp("ec_out.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[precondition]"));
}

#[test]
fn oracle_check_and_budget_exit_code() {
    let sf = tmp("oc_sf.json");
    let sp = tmp("oc_sp.json");
    for (mesh, out) in [("circle_f", &sf), ("circle_p", &sp)] {
        assert!(run(&[
            "levelset",
            "--mesh",
            &mesh_path(mesh),
            "--out",
            tmp("oc_dummy.json").to_str().unwrap(),
            "--mv",
            out.to_str().unwrap(),
        ])
        .status
        .success());
    }
    let o = run(&[
        "distance",
        sf.to_str().unwrap(),
        sp.to_str().unwrap(),
        "--kind",
        "mv",
        "--check-oracle",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
    assert!(String::from_utf8_lossy(&o.stderr).contains("oracle confirms"));

    // an oversized system exhausts the enumeration budget: exit 4
    let big = tmp("oc_big.json");
    let block = r#"{"kind": "db", "trace": {"lo": "-3", "hi": "3", "lo_open": false, "hi_open": false}, "degree": 0}"#;
    let blocks: Vec<&str> = std::iter::repeat(block).take(12).collect();
    std::fs::write(&big, format!(r#"{{"blocks": [{}]}}"#, blocks.join(","))).unwrap();
    let o = run(&[
        "distance",
        big.to_str().unwrap(),
        big.to_str().unwrap(),
        "--kind",
        "mv",
        "--check-oracle",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[budget]"));
}

#[test]
fn selftest_smoke() {
    let o = run(&["selftest", "--seed", "5", "--cases", "6"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("selftest: all"));
    // deterministic under a fixed seed
    let o2 = run(&["selftest", "--seed", "5", "--cases", "6"]);
    assert_eq!(text, stdout(&o2));
}

#[test]
fn deterministic_outputs() {
    let out1 = tmp("det1.json");
    let out2 = tmp("det2.json");
    for out in [&out1, &out2] {
        assert!(run(&[
            "levelset",
            "--mesh",
            &mesh_path("disc"),
            "--out",
            out.to_str().unwrap()
        ])
        .status
        .success());
    }
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
}

#[test]
fn cleanup_marker() {
    // leave the temp dir tidy for repeated local runs
    let dir = std::env::temp_dir().join(format!("mvsheaf-cli-{}", std::process::id()));
    let _ = Path::new(&dir);
}
