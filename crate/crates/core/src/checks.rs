//! Seeded random instances and the property suites behind `tga check`.
//!
//! Every case draws from its own generator, derived from the run seed, a
//! per-property stream number and the case number, so cases can run in
//! parallel without changing any result.

use std::ops::Range;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{
    count_is_presentation, eval_linear, eval_presentation, eval_presentation_stats, eval_zh, linearize, mis_presentation,
    presentation_from_json, presentation_to_json,
};
use crate::expr::{as_linear, eval_expr, eval_word, generate, parse, serialize, CwExpr, ExprBuilder, Family, FamilySpec};
use crate::graphs::{
    canonical_form, disjoint_union, glue, is_k_connected, join, ColorSet, ColoredGraph, LabeledGraph, RecolorMap, ISO_GUARD,
};
use crate::hankel::{build_hankel, check_generators, rank_report};
use crate::params::{
    alpha_brute, alpha_weighted, independent_set_count, omega_brute, z_partition_brute, Param, UltimatelyPeriodicSet,
    WeightedTargetGraph, ZeroReport,
};
use crate::semiring::linalg::{combine, solve_combination};
use crate::semiring::{Nat, Rat, Semiring, TropicalValue, Q};

/// Generator for case `case` of stream `stream` under `seed`.
pub fn case_rng(seed: u64, stream: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((stream << 32) | case);
    rng
}

/// A `k`-colored graph with a vertex count drawn from `sizes` and edge
/// probability 1/2; with `plain` every vertex gets at most one color.
pub fn random_colored_graph(rng: &mut impl Rng, k: usize, sizes: Range<usize>, plain: bool) -> ColoredGraph {
    let n = rng.gen_range(sizes);
    let mut g = ColoredGraph::new(k, n);
    for v in 0..n {
        let colors = if plain {
            match rng.gen_range(0..=k) {
                0 => ColorSet::EMPTY,
                c => ColorSet::single(c),
            }
        } else {
            ColorSet(rng.gen_range(0..1u32 << k))
        };
        g.set_colors(v, colors).expect("colors within k");
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v).expect("valid edge");
            }
        }
    }
    g
}

/// A `k`-labeled graph with a vertex count drawn from `sizes`: each label
/// is placed on a distinct vertex or left undefined.
pub fn random_labeled_graph(rng: &mut impl Rng, k: usize, sizes: Range<usize>) -> LabeledGraph {
    let n = rng.gen_range(sizes);
    let mut g = LabeledGraph::new(k, n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(u, v).expect("valid edge");
            }
        }
    }
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(rng);
    for i in 1..=k {
        let v = if rng.gen_bool(0.75) { vertices.get(i - 1).copied() } else { None };
        g.set_label(i, v).expect("label within k");
    }
    g
}

/// An expression from one of the generator families with at most `max_n`
/// vertices.
pub fn random_family_expr(rng: &mut impl Rng, max_n: usize) -> (FamilySpec, CwExpr) {
    let family = *[Family::Path, Family::Cycle, Family::Complete, Family::CompleteBipartite, Family::CographRandom, Family::Star]
        .choose(rng)
        .expect("non-empty");
    let n = rng.gen_range(1..=max_n);
    let spec = match family {
        Family::CompleteBipartite => {
            let a = rng.gen_range(1..=max_n / 2);
            FamilySpec::bipartite(a, rng.gen_range(1..=max_n - a))
        }
        Family::CographRandom => FamilySpec::cograph(n, rng.gen()),
        f => FamilySpec::new(f, n),
    };
    let e = generate(&spec).expect("family expressions generate");
    (spec, e)
}

/// An arbitrary expression with up to `max_k` colors and up to
/// `max_leaves` leaves: any color sets, joins and recolorings, some leaves
/// weighted.
pub fn random_expr(rng: &mut impl Rng, max_k: usize, max_leaves: usize) -> CwExpr {
    let k = rng.gen_range(1..=max_k.max(1));
    let leaves = rng.gen_range(1..=max_leaves.max(1));
    let mut b = ExprBuilder::new();
    let mut live = Vec::new();
    for _ in 0..leaves {
        let colors = ColorSet(rng.gen_range(0..1u32 << k));
        let id = if rng.gen_bool(0.2) {
            b.weighted_leaf(colors, Q::new(rng.gen_range(-9..10), rng.gen_range(1..4)))
        } else {
            b.leaf(colors)
        };
        live.push(id);
    }
    while live.len() > 1 || rng.gen_bool(0.2) {
        let x = live.swap_remove(rng.gen_range(0..live.len()));
        if live.is_empty() || rng.gen_bool(0.2) {
            let rules: Vec<(ColorSet, ColorSet)> = (0..rng.gen_range(0..3))
                .map(|_| (ColorSet(rng.gen_range(0..1u32 << k)), ColorSet(rng.gen_range(0..1u32 << k))))
                .collect();
            live.push(b.recolor(RecolorMap::new(rules), x));
            if live.len() == 1 && rng.gen_bool(0.5) {
                break;
            }
            continue;
        }
        let y = live.swap_remove(rng.gen_range(0..live.len()));
        let id = if k >= 2 && rng.gen_bool(0.5) {
            let i = rng.gen_range(1..=k);
            let j = loop {
                let j = rng.gen_range(1..=k);
                if j != i {
                    break j;
                }
            };
            b.join(i, j, x, y)
        } else {
            b.union(x, y)
        };
        live.push(id);
    }
    b.finish(live[0]).expect("every node used once")
}

/// A target graph on 1 to 3 vertices with weights from `{−1, 0, 2}`.
pub fn random_target(rng: &mut impl Rng) -> WeightedTargetGraph {
    let grid = [-1i64, 0, 2];
    let n = rng.gen_range(1..=3);
    let mut h = WeightedTargetGraph::new(n);
    for a in 0..n {
        h.set_alpha(a, Q::from_integer(*grid.choose(rng).expect("grid"))).expect("vertex in range");
    }
    for a in 0..n {
        for b in a..n {
            if rng.gen_bool(0.6) {
                h.add_edge(a, b, Q::from_integer(*grid.choose(rng).expect("grid"))).expect("vertex in range");
            }
        }
    }
    h
}

/// An integer max-plus value in `lo..=hi`, bottom with probability `p`.
pub fn random_tropical(rng: &mut impl Rng, lo: i64, hi: i64, p: f64) -> TropicalValue {
    if rng.gen_bool(p) {
        TropicalValue::Bottom
    } else {
        TropicalValue::int(rng.gen_range(lo..=hi))
    }
}

/// Whether `target` is a max-plus combination of `rows` with every
/// coefficient bottom or an integer in `-bound..=bound`.
pub fn grid_solvable(rows: &[Vec<TropicalValue>], target: &[TropicalValue], bound: i64) -> bool {
    let choices: Vec<TropicalValue> =
        std::iter::once(TropicalValue::Bottom).chain((-bound..=bound).map(TropicalValue::int)).collect();
    let mut idx = vec![0usize; rows.len()];
    loop {
        let coeffs: Vec<TropicalValue> = idx.iter().map(|&i| choices[i].clone()).collect();
        if combine(&coeffs, rows, target.len()) == target {
            return true;
        }
        let mut p = 0;
        loop {
            if p == idx.len() {
                return false;
            }
            idx[p] += 1;
            if idx[p] < choices.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// The complement graph, colors kept.
pub fn complement(g: &ColoredGraph) -> ColoredGraph {
    let mut h = ColoredGraph::new(g.k(), g.n());
    for v in 0..g.n() {
        h.set_colors(v, g.colors(v)).expect("same k");
        for u in 0..v {
            if !g.has_edge(u, v) {
                h.add_edge(u, v).expect("valid edge");
            }
        }
    }
    h
}

/// Result of one property over a number of cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub suite: String,
    pub property: String,
    pub cases: usize,
    pub failures: usize,
    pub pass: bool,
    /// The lowest-numbered failing case.
    pub counterexample: Option<String>,
}

/// Runs `cases` independent cases of `prop`, in parallel.
pub fn run_property<F>(suite: &str, property: &str, seed: u64, stream: u64, cases: usize, prop: F) -> PropertyOutcome
where
    F: Fn(&mut ChaCha8Rng) -> Result<(), String> + Sync,
{
    let results: Vec<Result<(), String>> =
        (0..cases as u64).into_par_iter().map(|c| prop(&mut case_rng(seed, stream, c))).collect();
    let failures: Vec<(usize, String)> =
        results.into_iter().enumerate().filter_map(|(i, r)| r.err().map(|e| (i, e))).collect();
    PropertyOutcome {
        suite: suite.to_string(),
        property: property.to_string(),
        cases,
        failures: failures.len(),
        pass: failures.is_empty(),
        counterexample: failures.first().map(|(i, e)| format!("case {i}: {e}")),
    }
}

pub const SUITES: [&str; 6] = ["semiring", "graphs", "expr", "params", "hankel", "engine"];

/// Runs one named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, seed: u64, cases: usize) -> Result<Vec<PropertyOutcome>, String> {
    let mut out = Vec::new();
    for (stream, suite) in SUITES.iter().enumerate() {
        if name != "all" && name != *suite {
            continue;
        }
        let base = (stream as u64) << 8;
        out.extend(match *suite {
            "semiring" => semiring_suite(seed, base, cases),
            "graphs" => graphs_suite(seed, base, cases),
            "expr" => expr_suite(seed, base, cases),
            "params" => params_suite(seed, base, cases),
            "hankel" => hankel_suite(),
            _ => engine_suite(seed, base, cases),
        });
    }
    if out.is_empty() {
        return Err(format!("unknown suite `{name}` (expected one of {} or all)", SUITES.join(", ")));
    }
    Ok(out)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn semiring_laws<S: Semiring>(a: &S, b: &S, c: &S) -> Result<(), String> {
    let ok = a.plus(b) == b.plus(a)
        && a.times(b) == b.times(a)
        && a.plus(&b.plus(c)) == a.plus(b).plus(c)
        && a.times(&b.times(c)) == a.times(b).times(c)
        && a.times(&b.plus(c)) == a.times(b).plus(&a.times(c))
        && a.plus(&S::zero()) == *a
        && a.times(&S::one()) == *a
        && a.times(&S::zero()) == S::zero();
    check(ok, || format!("laws fail at a={a}, b={b}, c={c}"))
}

fn semiring_suite(seed: u64, base: u64, cases: usize) -> Vec<PropertyOutcome> {
    let s = "semiring";
    vec![
        run_property(s, "maxplus_laws", seed, base, cases, |rng| {
            let [a, b, c] = [0; 3].map(|_| random_tropical(rng, -5, 5, 0.2));
            semiring_laws(&a, &b, &c)
        }),
        run_property(s, "nat_laws", seed, base + 1, cases, |rng| {
            let [a, b, c] = [0; 3].map(|_| Nat(rng.gen_range(0..50)));
            semiring_laws(&a, &b, &c)
        }),
        run_property(s, "rat_laws", seed, base + 2, cases, |rng| {
            let [a, b, c] = [0; 3].map(|_| Rat(Q::new(rng.gen_range(-9..10), rng.gen_range(1..5))));
            semiring_laws(&a, &b, &c)
        }),
        run_property(s, "constructed_systems_solve", seed, base + 3, cases, |rng| {
            let (m, n) = (rng.gen_range(1..5), rng.gen_range(1..6));
            let rows: Vec<Vec<TropicalValue>> = (0..m).map(|_| (0..n).map(|_| random_tropical(rng, -5, 5, 0.25)).collect()).collect();
            let coeffs: Vec<TropicalValue> = (0..m).map(|_| random_tropical(rng, -5, 5, 0.25)).collect();
            let target = combine(&coeffs, &rows, n);
            match solve_combination(&rows, &target) {
                Some(c) => check(combine(&c, &rows, n) == target, || format!("coefficients {c:?} miss {target:?}")),
                None => Err(format!("solvable target {target:?} reported unsolvable for rows {rows:?}")),
            }
        }),
        run_property(s, "classification_matches_grid_search", seed, base + 4, cases, |rng| {
            let rows: Vec<Vec<TropicalValue>> = (0..3).map(|_| (0..3).map(|_| random_tropical(rng, -3, 3, 0.2)).collect()).collect();
            let target: Vec<TropicalValue> = (0..3).map(|_| random_tropical(rng, -3, 3, 0.2)).collect();
            let solver = solve_combination(&rows, &target).is_some();
            let grid = grid_solvable(&rows, &target, 6);
            check(solver == grid, || format!("rows {rows:?}, target {target:?}: solver {solver}, grid {grid}"))
        }),
    ]
}

/// Canonical-form checks of commutativity and associativity for one
/// operation on random operands.
fn op_laws<F>(a: &ColoredGraph, b: &ColoredGraph, c: &ColoredGraph, op: F) -> Result<(), String>
where
    F: Fn(&ColoredGraph, &ColoredGraph) -> ColoredGraph,
{
    let cf = |g: &ColoredGraph| canonical_form(g).map_err(|e| e.to_string());
    check(cf(&op(a, b))? == cf(&op(b, a))?, || format!("not commutative on {a:?} and {b:?}"))?;
    check(cf(&op(&op(a, b), c))? == cf(&op(a, &op(b, c)))?, || format!("not associative on {a:?}, {b:?}, {c:?}"))
}

/// Exclusive size bound for a third operand of at most 5 vertices that
/// keeps the three-operand composite within the isomorphism guard.
fn third_size(first_two: usize) -> usize {
    5.min(ISO_GUARD - first_two) + 1
}

fn graphs_suite(seed: u64, base: u64, cases: usize) -> Vec<PropertyOutcome> {
    let s = "graphs";
    vec![
        run_property(s, "union_laws", seed, base, cases, |rng| {
            let k = rng.gen_range(0..3);
            let [a, b] = [0; 2].map(|_| random_colored_graph(rng, k, 0..6, false));
            let c = random_colored_graph(rng, k, 0..third_size(a.n() + b.n()), false);
            op_laws(&a, &b, &c, |x, y| disjoint_union(x, y).expect("same k"))
        }),
        run_property(s, "join_laws", seed, base + 1, cases, |rng| {
            let k = rng.gen_range(2..4);
            let i = rng.gen_range(1..=k);
            let j = if i == k { 1 } else { i + 1 };
            let [a, b] = [0; 2].map(|_| random_colored_graph(rng, k, 0..6, false));
            let c = random_colored_graph(rng, k, 0..third_size(a.n() + b.n()), false);
            op_laws(&a, &b, &c, |x, y| join(i, j, x, y).expect("valid join"))
        }),
        run_property(s, "glue_laws", seed, base + 2, cases, |rng| {
            let k = rng.gen_range(0..3);
            let [a, b] = [0; 2].map(|_| random_labeled_graph(rng, k, k..6));
            let ab = glue(&a, &b).expect("same k");
            let c = (0..64)
                .map(|_| random_labeled_graph(rng, k, k..6))
                .find(|c| glue(&ab, c).expect("same k").n() <= ISO_GUARD)
                .unwrap_or_else(|| LabeledGraph::new(k, 0));
            let [a, b, c] = [a, b, c].map(|g| g.to_colored());
            op_laws(&a, &b, &c, |x, y| {
                let (x, y) = (LabeledGraph::from_colored(x).expect("labeled"), LabeledGraph::from_colored(y).expect("labeled"));
                glue(&x, &y).expect("same k").to_colored()
            })
        }),
        run_property(s, "glue_is_not_k_plus_1_connected", seed, base + 3, cases, |rng| {
            let k = rng.gen_range(0..3);
            let a = random_labeled_graph(rng, k, k + 1..6);
            let b = random_labeled_graph(rng, k, k + 1..6);
            if a.unlabeled_vertices().is_empty() || b.unlabeled_vertices().is_empty() {
                return Ok(());
            }
            let g = glue(&a, &b).expect("same k").to_colored();
            check(!is_k_connected(&g, k), || format!("glue of {a:?} and {b:?} is {}-connected", k + 1))
        }),
    ]
}

fn expr_suite(seed: u64, base: u64, cases: usize) -> Vec<PropertyOutcome> {
    let s = "expr";
    vec![
        run_property(s, "parse_serialize_round_trip", seed, base, cases, |rng| {
            let e = random_expr(rng, 3, 11);
            let text = serialize(&e);
            let back = parse(&text).map_err(|err| format!("{text}: {err}"))?;
            check(back == e && serialize(&back) == text, || format!("round trip changed {text}"))
        }),
        run_property(s, "linear_word_builds_same_graph", seed, base + 1, cases, |rng| {
            let (spec, e) = random_family_expr(rng, 12);
            let Some(w) = as_linear(&e) else { return Ok(()) };
            let k = spec.colors_needed();
            let (g1, g2) = (eval_expr(&e, k).map_err(|x| x.to_string())?, eval_word(&w, k).map_err(|x| x.to_string())?);
            check(canonical_form(&g1).ok() == canonical_form(&g2).ok(), || format!("{spec:?}: word and tree differ"))
        }),
        run_property(s, "family_sizes", seed, base + 2, cases, |rng| {
            let (spec, e) = random_family_expr(rng, 15);
            let g = eval_expr(&e, spec.colors_needed()).map_err(|x| x.to_string())?;
            check(g.n() == spec.vertex_count() && e.is_plain(), || format!("{spec:?} built {} vertices", g.n()))
        }),
    ]
}

fn params_suite(seed: u64, base: u64, cases: usize) -> Vec<PropertyOutcome> {
    let s = "params";
    vec![
        run_property(s, "unit_weights_give_alpha", seed, base, cases, |rng| {
            let g = random_colored_graph(rng, 0, 0..10, true);
            let ones = vec![Q::from_integer(1); g.n()];
            check(alpha_weighted(&g, &ones).ok() == alpha_brute(&g).ok(), || format!("{g:?}"))
        }),
        run_property(s, "omega_is_alpha_of_complement", seed, base + 1, cases, |rng| {
            let g = random_colored_graph(rng, 0, 0..10, true);
            check(omega_brute(&g).ok() == alpha_brute(&complement(&g)).ok(), || format!("{g:?}"))
        }),
        run_property(s, "independent_sets_outnumber_alpha", seed, base + 2, cases, |rng| {
            let g = random_colored_graph(rng, 0, 0..10, true);
            let count = independent_set_count(&g).map_err(|e| e.to_string())?;
            let alpha = alpha_brute(&g).map_err(|e| e.to_string())?;
            check(TropicalValue::int(count as i64) > alpha && count >= 1 << alpha_as_u32(&alpha), || format!("{g:?}"))
        }),
        run_property(s, "single_loop_partition_function", seed, base + 3, cases, |rng| {
            let g = random_colored_graph(rng, 0, 0..8, true);
            let (a, b) = (rng.gen_range(-3..4), rng.gen_range(-3..4));
            let h = WeightedTargetGraph::single_loop(Q::from_integer(a), Q::from_integer(b));
            let want = TropicalValue::int(a * g.n() as i64 + b * g.edge_count() as i64);
            check(z_partition_brute(&g, &h).ok() == Some(want), || format!("{g:?} with α={a}, β={b}"))
        }),
    ]
}

fn alpha_as_u32(a: &TropicalValue) -> u32 {
    a.finite().map_or(0, |q| q.to_integer() as u32)
}

fn hankel_suite() -> Vec<PropertyOutcome> {
    let s = "hankel";
    let sets = [
        ("{1}", UltimatelyPeriodicSet::finite([1])),
        ("{1,3}", UltimatelyPeriodicSet::finite([1, 3])),
        ("{1,2}+2@2", UltimatelyPeriodicSet::periodic([1, 2], 2, 2)),
    ];
    let mut out = Vec::new();
    for (name, a) in sets {
        for k0 in [0, 1] {
            let param = Param::FA { k0, a: a.clone(), report: ZeroReport::SemiringZero };
            let result = (|| -> Result<(), String> {
                let h = build_hankel::<TropicalValue>(&param, &crate::graphs::GraphOp::Glue, 0, 4, crate::hankel::guard_cap())
                    .map_err(|e| e.to_string())?;
                let report = rank_report(&h, &[2, 3, 4]).map_err(|e| e.to_string())?;
                check(report.ranks.iter().all(|&r| r <= 2), || format!("ranks {:?}", report.ranks))?;
                let k1 = h.find(|g| g.n() == 1).ok_or("no single vertex")?;
                check(check_generators(&h, &[k1, 0]).map_err(|e| e.to_string())?, || "rows [K1, empty] do not generate".into())
            })();
            out.push(PropertyOutcome {
                suite: s.to_string(),
                property: format!("fA_rank_at_most_two(A={name},k0={k0})"),
                cases: 1,
                failures: usize::from(result.is_err()),
                pass: result.is_ok(),
                counterexample: result.err(),
            });
        }
    }
    out
}

fn engine_suite(seed: u64, base: u64, cases: usize) -> Vec<PropertyOutcome> {
    let s = "engine";
    let alphabet = |e: &CwExpr| e.recolor_alphabet().into_iter().collect::<Vec<_>>();
    vec![
        run_property(s, "mis_matches_alpha", seed, base, cases, |rng| {
            let (spec, e) = random_family_expr(rng, 15);
            let k = spec.colors_needed();
            let p = mis_presentation(k, &alphabet(&e)).map_err(|x| x.to_string())?;
            let g = eval_expr(&e, k).map_err(|x| x.to_string())?;
            let (got, want) = (eval_presentation(&e, &p).map_err(|x| x.to_string())?, alpha_brute(&g).map_err(|x| x.to_string())?);
            check(got == want, || format!("{spec:?}: presentation {got}, oracle {want}"))
        }),
        run_property(s, "zh_matches_brute_force", seed, base + 1, cases, |rng| {
            let (spec, e) = random_family_expr(rng, 8);
            let h = random_target(rng);
            let g = eval_expr(&e, spec.colors_needed()).map_err(|x| x.to_string())?;
            let (got, want) = (eval_zh(&e, &h).map_err(|x| x.to_string())?, z_partition_brute(&g, &h).map_err(|x| x.to_string())?);
            check(got == want, || format!("{spec:?} into {h:?}: dp {got}, oracle {want}"))
        }),
        run_property(s, "linear_count_matches_brute_force", seed, base + 2, cases, |rng| {
            let (spec, e) = random_family_expr(rng, 12);
            let Some(w) = as_linear(&e) else { return Ok(()) };
            let k = spec.colors_needed();
            let lp = count_is_presentation(k, &alphabet(&e)).map_err(|x| x.to_string())?;
            let got = eval_linear(&w, &lp).map_err(|x| x.to_string())?;
            let want = independent_set_count(&eval_word(&w, k).map_err(|x| x.to_string())?).map_err(|x| x.to_string())?;
            check(got == Nat(want), || format!("{spec:?}: {got} vs {want}"))
        }),
        run_property(s, "linear_matches_tree", seed, base + 3, cases, |rng| {
            let (spec, e) = random_family_expr(rng, 12);
            let Some(w) = as_linear(&e) else { return Ok(()) };
            let p = mis_presentation(spec.colors_needed(), &alphabet(&e)).map_err(|x| x.to_string())?;
            let (a, b) = (eval_linear(&w, &linearize(&p)).map_err(|x| x.to_string())?, eval_presentation(&e, &p).map_err(|x| x.to_string())?);
            check(a == b, || format!("{spec:?}: {a} vs {b}"))
        }),
        run_property(s, "presentation_file_round_trip", seed, base + 4, cases.min(20), |rng| {
            let (spec, e) = random_family_expr(rng, 10);
            let p = mis_presentation(spec.colors_needed(), &alphabet(&e)).map_err(|x| x.to_string())?;
            let back = presentation_from_json::<TropicalValue>(&presentation_to_json(&p)).map_err(|x| x.to_string())?;
            check(eval_presentation(&e, &back).ok() == eval_presentation(&e, &p).ok(), || format!("{spec:?}"))
        }),
        run_property(s, "work_is_linear_in_size", seed, base + 5, 1, |_| {
            let p = mis_presentation(2, &alphabet(&generate(&FamilySpec::new(Family::Path, 3)).expect("path"))).map_err(|x| x.to_string())?;
            let ops = |n: usize| -> Result<u64, String> {
                let e = generate(&FamilySpec::new(Family::Path, n)).map_err(|x| x.to_string())?;
                Ok(eval_presentation_stats(&e, &p).map_err(|x| x.to_string())?.1.ops)
            };
            let (a, b) = (ops(1000)?, ops(2000)?);
            let ratio = b as f64 / a as f64;
            check((1.8..=2.2).contains(&ratio), || format!("op ratio {ratio}"))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_small_scale() {
        let outcomes = run_suite("all", 1, 15).unwrap();
        let failing: Vec<_> = outcomes.iter().filter(|o| !o.pass).collect();
        assert!(failing.is_empty(), "{failing:?}");
        assert!(SUITES.iter().all(|s| outcomes.iter().any(|o| o.suite == *s)));
        assert!(run_suite("nope", 1, 1).is_err());
    }

    #[test]
    fn outcomes_depend_only_on_the_seed() {
        let a = serde_json::to_string(&run_suite("graphs", 9, 25).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite("graphs", 9, 25).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn failing_property_reports_a_counterexample() {
        let o = run_property("demo", "always_fails", 0, 0, 5, |_| Err("boom".to_string()));
        assert!(!o.pass);
        assert_eq!(o.failures, 5);
        assert_eq!(o.counterexample.as_deref(), Some("case 0: boom"));
    }

    #[test]
    fn grid_search_agrees_on_a_trivial_system() {
        let rows = vec![vec![TropicalValue::int(0), TropicalValue::Bottom]];
        assert!(grid_solvable(&rows, &[TropicalValue::int(3), TropicalValue::Bottom], 6));
        assert!(!grid_solvable(&rows, &[TropicalValue::int(3), TropicalValue::int(1)], 6));
    }
}
