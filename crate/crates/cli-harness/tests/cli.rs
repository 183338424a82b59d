use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcs")).args(args).output().unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gcs-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn summary(out: &Output) -> Value {
    records(out).pop().unwrap()
}

fn without_timing(text: &[u8]) -> Vec<Value> {
    String::from_utf8_lossy(text)
        .lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("elapsed_ms");
            v
        })
        .collect()
}

#[test]
fn main_identity_example() {
    let out = gcs(&["verify", "main-identity", "--n", "9", "--a", "5", "--b", "2", "--trials", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let checks: Vec<&Value> = recs.iter().filter(|r| r["check"] == "main-identity").collect();
    assert_eq!(checks.len(), 20);
    assert!(checks.iter().all(|r| r["pass"] == true && r["seed"] == 7));
    let trials: Vec<u64> = checks.iter().map(|r| r["trial"].as_u64().unwrap()).collect();
    assert_eq!(trials, (0..20).collect::<Vec<_>>());
    assert_eq!(summary(&out)["passed"], 20);
}

#[test]
fn every_verify_check_over_each_field() {
    for what in ["jacobi", "plucker", "pluckpluck", "longid", "main-identity", "detphi", "gamma6", "theta", "gencop"] {
        for ring in ["prime-field", "rational"] {
            let out = gcs(&["verify", what, "--ring", ring, "--trials", "2", "--n", "5", "--a", "4", "--b", "1"]);
            assert_eq!(out.status.code(), Some(0), "{what} {ring}: {}", String::from_utf8_lossy(&out.stderr));
            assert_eq!(summary(&out)["failed"], 0);
        }
    }
    let out = gcs(&["verify", "theta", "--k", "3", "--n", "5", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn symbolic_verify_within_caps() {
    let cases: &[&[&str]] = &[
        &["jacobi", "--n", "4"],
        &["plucker", "--n", "3"],
        &["pluckpluck", "--n", "4"],
        &["longid", "--k", "3"],
        &["main-identity", "--n", "3", "--a", "3", "--b", "0"],
        &["detphi", "--n", "3", "--a", "3", "--b", "1"],
        &["gamma6"],
    ];
    for c in cases {
        let mut args = vec!["verify"];
        args.extend_from_slice(c);
        args.extend(["--ring", "symbolic"]);
        let out = gcs(&args);
        assert_eq!(out.status.code(), Some(0), "{c:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(summary(&out)["passed"].as_u64().unwrap() >= 1);
    }
}

#[test]
fn replay_is_deterministic() {
    let args = ["verify", "detphi", "--n", "6", "--a", "5", "--b", "1", "--trials", "4", "--seed", "11"];
    let a = gcs(&args);
    let b = gcs(&args);
    assert_eq!(without_timing(&a.stdout), without_timing(&b.stdout));
    let c = gcs(&["verify", "jacobi", "--seed", "11", "--trials", "3"]);
    let d = gcs(&["verify", "jacobi", "--seed", "12", "--trials", "3"]);
    assert_ne!(without_timing(&c.stdout), without_timing(&d.stdout));
    let e = gcs(&["explore", "yz", "--n", "4", "--seed", "3"]);
    let f = gcs(&["explore", "yz", "--n", "4", "--seed", "3"]);
    assert_eq!(without_timing(&e.stdout), without_timing(&f.stdout));
}

#[test]
fn report_can_go_to_a_file() {
    let path = tmp("report.ndjson");
    let out = gcs(&["verify", "longid", "--k", "4", "--trials", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn double_seed_mutation_matches_phi1_star() {
    let path = tmp("sigma4.json");
    let p = path.to_str().unwrap();
    let out = gcs(&["seed", "build", "double", "--n", "4", "-o", p, "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let shape = &records(&out)[1];
    assert_eq!(shape["vertices"], 32);
    assert_eq!(shape["isolated"], 3);
    assert_eq!(shape["special"][0]["multiplicity"], 4);

    let file: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let special = file["special"].as_u64().unwrap().to_string();
    let after = tmp("sigma4-mutated.json");
    let out = gcs(&["seed", "mutate", p, "--at", &special, "-o", after.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let recs = records(&out);
    assert!(recs.iter().any(|r| r["check"] == "phi1-star" && r["pass"] == true));

    // by label, and back again
    let out = gcs(&["seed", "mutate", "--in", after.to_str().unwrap(), "--at", "phi1", "-o", tmp("back.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let back: Value = serde_json::from_str(&fs::read_to_string(tmp("back.json")).unwrap()).unwrap();
    assert_eq!(back["values"], file["values"]);
}

#[test]
fn band_seed_show_and_dot() {
    let path = tmp("band47.json");
    let dot = tmp("band47.dot");
    let out = gcs(&["seed", "build", "band", "--k", "4", "--n", "7", "-o", path.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let out = gcs(&["seed", "show", path.to_str().unwrap()]);
    let r = &records(&out)[0];
    assert_eq!(r["vertices"], 35);
    assert_eq!(r["isolated"], 3);
    assert_eq!(r["two_cycles"], false);
    let out = gcs(&["seed", "mutate", path.to_str().unwrap(), "--at", "phi~1"]);
    assert!(records(&out).iter().any(|r| r["check"] == "phi1-star" && r["pass"] == true));
}

#[test]
fn symbolic_seed_mutations_are_exact() {
    let path = tmp("sigma3-sym.json");
    let out = gcs(&["seed", "build", "double", "--n", "3", "--ring", "symbolic", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let file: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let mutable: Vec<String> = file["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|v| v["frozen"] == false)
        .map(|v| v["id"].to_string())
        .collect();
    assert!(!mutable.is_empty());
    for k in &mutable {
        let out = gcs(&["seed", "mutate", path.to_str().unwrap(), "--at", k]);
        assert_eq!(out.status.code(), Some(0), "vertex {k}");
    }
}

#[test]
fn explore_yz_lists_twelve_minors() {
    for ring in ["prime-field", "symbolic"] {
        let out = gcs(&["explore", "yz", "--n", "4", "--ring", ring]);
        assert_eq!(out.status.code(), Some(0));
        let recs = records(&out);
        let minors = recs.iter().find(|r| r["check"] == "yz-minors").unwrap();
        assert_eq!(minors["recovered"].as_array().unwrap().len(), 12);
    }
}

#[test]
fn explore_orbit_walks_the_exchange_graph() {
    let path = tmp("orbit-seed.json");
    gcs(&["seed", "build", "band", "--k", "2", "--n", "4", "-o", path.to_str().unwrap()]);
    let out = gcs(&["explore", "orbit", "--in", path.to_str().unwrap(), "--depth", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["involution_failures"], 0);
    assert!(r["distinct_variables"].as_u64().unwrap() > 8);
}

#[test]
fn configuration_errors_exit_nonzero() {
    let seed = tmp("cfg-seed.json");
    gcs(&["seed", "build", "double", "--n", "3", "-o", seed.to_str().unwrap()]);
    let s = seed.to_str().unwrap();
    let cases: &[&[&str]] = &[
        &["verify", "jacobi", "--trials", "0"],
        &["verify", "longid", "--ring", "symbolic", "--k", "5"],
        &["verify", "main-identity", "--ring", "symbolic", "--n", "4", "--a", "4", "--b", "0"],
        &["verify", "theta", "--ring", "symbolic"],
        &["verify", "main-identity", "--n", "5", "--a", "3", "--b", "2"],
        &["seed", "build", "double", "--n", "4"],
        &["seed", "build", "band", "--k", "4", "--n", "4", "-o", "x.json"],
        &["seed", "mutate", "/nonexistent/seed.json", "--at", "0"],
        &["seed", "mutate", s, "--at", "no-such-label"],
        &["seed", "mutate", s, "--at", "0"],
        &["explore", "orbit"],
        &["explore", "yz", "--n", "9", "--ring", "symbolic"],
        &["verify"],
    ];
    for c in cases {
        let out = gcs(c);
        assert_eq!(out.status.code(), Some(2), "{c:?}");
        assert!(!out.stderr.is_empty(), "{c:?}");
    }
}

#[test]
fn modulus_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_gcs"))
        .args(["verify", "jacobi", "--trials", "1"])
        .env("GCS_MODULUS", "1000003")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("mod 1000003"));
    let out = Command::new(env!("CARGO_BIN_EXE_gcs"))
        .args(["verify", "jacobi", "--trials", "1"])
        .env("GCS_MODULUS", "1000004")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
