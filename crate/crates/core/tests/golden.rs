//! Golden tests over the shipped corpus: every expression and graph file
//! has an `.expected` sidecar of oracle values.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use tga_core::engine::{eval_presentation, eval_zh, independent_set_presentation};
use tga_core::expr::{eval_expr, parse, serialize, CwExpr};
use tga_core::graphs::{read_graph, write_graph, ColoredGraph};
use tga_core::params::{alpha_brute, independent_set_count, omega_brute, read_target, z_partition_brute, WeightedTargetGraph};
use tga_core::semiring::{Nat, Q, TropicalValue};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn files(ext: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    out.sort();
    out
}

fn expected(path: &Path) -> BTreeMap<String, String> {
    let text = fs::read_to_string(path.with_extension("expected")).unwrap();
    text.lines()
        .filter_map(|l| l.split_once(' '))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn targets() -> Vec<(String, WeightedTargetGraph)> {
    files("h")
        .into_iter()
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), read_target(&fs::read_to_string(&p).unwrap()).unwrap()))
        .collect()
}

fn load_expr(path: &Path) -> (CwExpr, ColoredGraph) {
    let e = parse(&fs::read_to_string(path).unwrap()).unwrap();
    let g = eval_expr(&e, e.max_color().max(1)).unwrap();
    (e, g)
}

fn oracle_values(g: &ColoredGraph, hs: &[(String, WeightedTargetGraph)]) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    out.insert("n".to_string(), g.n().to_string());
    out.insert("mis".to_string(), alpha_brute(g).unwrap().to_string());
    out.insert("omega".to_string(), omega_brute(g).unwrap().to_string());
    out.insert("count".to_string(), independent_set_count(g).unwrap().to_string());
    for (name, h) in hs {
        out.insert(format!("zH:{name}"), z_partition_brute(g, h).unwrap().to_string());
    }
    out
}

#[test]
fn corpus_is_populated() {
    assert!(files("cwe").len() >= 20);
    assert!(files("g").len() >= 2);
    assert!(files("h").len() >= 3);
}

#[test]
fn expressions_match_sidecars() {
    let hs = targets();
    for path in files("cwe") {
        let (_, g) = load_expr(&path);
        assert_eq!(oracle_values(&g, &hs), expected(&path), "{}", path.display());
    }
}

#[test]
fn graphs_match_sidecars() {
    let hs = targets();
    for path in files("g") {
        let g = read_graph(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(oracle_values(&g, &hs), expected(&path), "{}", path.display());
        assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
    }
}

#[test]
fn engine_agrees_with_sidecars() {
    let hs = targets();
    for path in files("cwe") {
        let (e, _) = load_expr(&path);
        let want = expected(&path);
        let k = e.max_color().max(1);
        let alphabet: Vec<_> = e.recolor_alphabet().into_iter().collect();
        let mis = eval_presentation(&e, &independent_set_presentation::<TropicalValue>(k, &alphabet).unwrap()).unwrap();
        assert_eq!(mis.to_string(), want["mis"], "{}", path.display());
        let count = eval_presentation(&e, &independent_set_presentation::<Nat>(k, &alphabet).unwrap()).unwrap();
        assert_eq!(count.to_string(), want["count"], "{}", path.display());
        for (name, h) in &hs {
            assert_eq!(eval_zh(&e, h).unwrap().to_string(), want[&format!("zH:{name}")], "{} with {name}", path.display());
        }
    }
}

#[test]
fn parse_serialize_is_identity() {
    for path in files("cwe") {
        let text = fs::read_to_string(&path).unwrap();
        let e = parse(&text).unwrap();
        assert_eq!(serialize(&e), text.trim_end(), "{}", path.display());
        assert_eq!(parse(&serialize(&e)).unwrap(), e);
    }
}

fn fib(n: usize) -> u64 {
    (0..n).fold((0u64, 1u64), |(a, b), _| (b, a + b)).0
}

#[test]
fn family_files_match_closed_forms() {
    for path in files("cwe") {
        let stem = path.file_stem().unwrap().to_string_lossy().into_owned();
        let parts: Vec<&str> = stem.split('_').collect();
        let num = |i: usize| parts[i].parse::<usize>().unwrap();
        let (n, mis, count) = match parts[0] {
            "path" => (num(1), num(1).div_ceil(2), fib(num(1) + 2)),
            "cycle" => (num(1), num(1) / 2, fib(num(1) - 1) + fib(num(1) + 1)),
            "complete" => (num(1), 1, num(1) as u64 + 1),
            "star" => (num(1), num(1) - 1, (1u64 << (num(1) - 1)) + 1),
            "bipartite" => (num(1) + num(2), num(1).max(num(2)), (1u64 << num(1)) + (1u64 << num(2)) - 1),
            _ => continue,
        };
        let want = expected(&path);
        assert_eq!(want["n"], n.to_string(), "{stem}");
        assert_eq!(want["mis"], mis.to_string(), "{stem}");
        assert_eq!(want["count"], count.to_string(), "{stem}");
    }
}

#[test]
fn looped_vertex_target_counts_edges() {
    // One homomorphism, every vertex weighted 2 and every edge -1.
    let (_, h) = targets().into_iter().find(|(n, _)| n == "k5_loop").unwrap();
    for path in files("cwe") {
        let (_, g) = load_expr(&path);
        let want = Q::from_integer(2 * g.n() as i64 - g.edge_count() as i64);
        assert_eq!(z_partition_brute(&g, &h).unwrap(), TropicalValue::Finite(want), "{}", path.display());
    }
}
