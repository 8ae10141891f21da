//! End-to-end runs of the `combcert` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use combcert::coalition::{self, CoalitionInstance};
use combcert::fair::EdgePartition;
use combcert::rng::seeded;
use combcert::{io, Graph};

fn combcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_combcert"))
        .args(args)
        .env_remove(combcert::oracle::BUDGET_ENV)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn report(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    assert_eq!(v["schema"], 1);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
    v
}

#[test]
fn pack_two_cycles() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c100.txt", &io::write_graph(&Graph::cycle(100)));
    let v = report(&combcert(&["pack", "--g1", s(&c), "--g2", s(&c), "--seed", "7"]));
    assert!(v["outputs"]["girth"].as_u64().unwrap() >= 3);
    assert_eq!(v["outputs"]["edges"].as_array().unwrap().len(), 200);
    assert_eq!(v["seed"], 7);
}

#[test]
fn pack_mismatched_orders_exit_3() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", &io::write_graph(&Graph::cycle(10)));
    let b = write(&dir, "b.txt", &io::write_graph(&Graph::cycle(11)));
    assert_eq!(combcert(&["pack", "--g1", s(&a), "--g2", s(&b)]).status.code(), Some(3));
}

#[test]
fn pack_hamilton_union() {
    let v = report(&combcert(&["pack", "--hamilton-union", "n=1000", "d=2"]));
    assert!(v["outputs"]["girth"].as_u64().unwrap() >= 5);
    let layers: std::collections::BTreeSet<u64> =
        v["outputs"]["edges"].as_array().unwrap().iter().map(|e| e[2].as_u64().unwrap()).collect();
    assert_eq!(layers.len(), 2);
}

#[test]
fn fair_from_partition_file() {
    let dir = TempDir::new().unwrap();
    let p = EdgePartition::random(Graph::complete_bipartite(6), 3, &mut seeded(5));
    let path = write(&dir, "p.txt", &io::write_partition(&p));
    let v = report(&combcert(&["fair", "--host", "knn", "--n", "6", "--partition", s(&path), "--pattern", "matching"]));
    let out = &v["outputs"];
    assert!(out["dist_inf"].as_f64().unwrap() <= out["bound"].as_f64().unwrap());
    assert_eq!(out["certified"], true);
    assert_eq!(out["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn fair_rejects_pattern_outside_host() {
    let out = combcert(&["fair", "--host", "knn", "--n", "6", "--pattern", "hamilton"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cds_within_bound() {
    let dir = TempDir::new().unwrap();
    let mut rng = seeded(9);
    let g = loop {
        let g = Graph::random_gnp(60, 0.2, &mut rng);
        if g.is_connected() {
            break g;
        }
    };
    let path = write(&dir, "g.txt", &io::write_graph(&g));
    let v = report(&combcert(&["cds", "--graph", s(&path), "--algorithm", "derandomized"]));
    let size = v["outputs"]["size"].as_f64().unwrap();
    assert!(size <= combcert::cds::cds_bound(60, g.min_degree()));
    for alg in ["randomized", "greedy"] {
        report(&combcert(&["cds", "--graph", s(&path), "--algorithm", alg, "--seed", "3"]));
    }
}

#[test]
fn cds_disconnected_exit_3() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "g.txt", "4 2\n0 1\n2 3\n");
    assert_eq!(combcert(&["cds", "--graph", s(&path)]).status.code(), Some(3));
}

#[test]
fn coalition_actions() {
    let dir = TempDir::new().unwrap();
    let inst = coalition::random_coalition(9, 3, 5, &mut seeded(2)).unwrap();
    let path = write(&dir, "inst.txt", &io::write_instance(&inst));
    let v = report(&combcert(&["coalition", "--instance", s(&path), "--break", "--seed", "1"]));
    assert!(v["outputs"]["parts"].as_array().unwrap().len() >= 2);
    let v = report(&combcert(&["coalition", "--instance", s(&path), "--verify"]));
    assert_eq!(v["outputs"]["success"], false);
    let v = report(&combcert(&["coalition", "--instance", s(&path), "--claim", "2000", "--seed", "4"]));
    assert_eq!(v["outputs"]["trials"], 2000);

    let lists = coalition::coalition_construct(2, 4, 7).unwrap();
    let good = CoalitionInstance::with_coalition(7, 2, lists).unwrap();
    let path = write(&dir, "good.txt", &io::write_instance(&good));
    let v = report(&combcert(&["coalition", "--instance", s(&path), "--verify"]));
    assert_eq!(v["outputs"]["success"], true);
    assert_eq!(combcert(&["coalition", "--instance", s(&path), "--break"]).status.code(), Some(3));
}

#[test]
fn ball_and_kpn() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "ball.txt", "4 2\n1/2 1/2 0 1\n0001\n1101\n1000\n0111\n");
    let v = report(&combcert(&["ball", "--input", s(&path)]));
    assert!(v["outputs"]["count"].as_u64().unwrap() >= 2);
    let v = report(&combcert(&["kpn", "--n", "4", "--p", "2"]));
    assert_eq!(v["outputs"]["k"], 4);
    assert_eq!(combcert(&["kpn", "--n", "3", "--p", "2"]).status.code(), Some(3));
}

#[test]
fn oracle_and_budget_env() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "p.txt", &io::write_graph(&Graph::petersen()));
    let v = report(&combcert(&["oracle", "--graph", s(&path)]));
    assert_eq!(v["outputs"]["girth"], 5);
    assert_eq!(v["outputs"]["gamma"], 3);
    let out = Command::new(env!("CARGO_BIN_EXE_combcert"))
        .args(["oracle", "--graph", s(&path), "--what", "gamma"])
        .env(combcert::oracle::BUDGET_ENV, "gamma=8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_input_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "3 2\n0 1\n");
    assert_eq!(combcert(&["oracle", "--graph", s(&bad)]).status.code(), Some(2));
    let missing = dir.path().join("missing.txt");
    assert_eq!(combcert(&["cds", "--graph", s(&missing)]).status.code(), Some(2));
    assert_eq!(combcert(&["pack", "--hamilton-union", "n=x", "d=2"]).status.code(), Some(2));
    assert_eq!(combcert(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", &io::write_graph(&Graph::cycle(40)));
    let runs: Vec<Value> = (0..2)
        .map(|_| {
            let mut v = report(&combcert(&["pack", "--g1", s(&g), "--g2", s(&g), "--seed", "11"]));
            v.as_object_mut().unwrap().remove("wall_time_ms");
            v
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let out = dir.path().join("report.json");
    let first = combcert(&["kpn", "--n", "2", "--p", "2", "--out", s(&out)]);
    assert_eq!(first.status.code(), Some(0));
    assert!(first.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["command"], "kpn");
}
