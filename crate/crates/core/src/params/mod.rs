//! Brute-force graph parameters (independence and clique numbers, tropical
//! partition functions, the size-set parameters `f_A` and `g_A^r`) and
//! quantum graphs with their induced inner product.

mod quantum;
mod sets;
mod target;

use std::fmt;

use thiserror::Error;

use crate::graphs::{is_connected, is_k_connected, is_r_regular, ColoredGraph, GraphError};
use crate::semiring::{Semiring, TropicalValue, Q};

pub use quantum::QuantumGraph;
pub use sets::UltimatelyPeriodicSet;
pub use target::{read_target, write_target, ScaledWeights, WeightedTargetGraph};

/// Largest graph handed to the exhaustive independent-set search.
pub const ALPHA_GUARD: usize = 25;
/// Largest number of candidate maps `|V(H)|^n` for the partition function.
pub const HOM_GUARD: u64 = 531_441;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("resource guard exceeded: {what} ({value} > {limit})")]
    Guard { what: &'static str, value: u64, limit: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("target graph line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("invalid size set '{0}'")]
    SetSyntax(String),
    #[error("color count mismatch: {0} vs {1}")]
    KMismatch(usize, usize),
    #[error("value {value} of {param} is not representable in the {carrier} carrier")]
    Carrier { param: String, value: String, carrier: &'static str },
    #[error("weight vector has {got} entries for {n} vertices")]
    WeightCount { got: usize, n: usize },
}

fn check_alpha_guard(n: usize) -> Result<(), ParamError> {
    if n > ALPHA_GUARD {
        return Err(ParamError::Guard { what: "independent-set search vertices", value: n as u64, limit: ALPHA_GUARD as u64 });
    }
    Ok(())
}

/// Maximum total weight of an independent set over `cands` (bitmask).
fn mwis(adj: &[u32], w: &[Q], cands: u32) -> Q {
    if cands == 0 {
        return Q::from_integer(0);
    }
    let v = cands.trailing_zeros() as usize;
    let rest = cands & !(1 << v);
    let gain = if w[v] > Q::from_integer(0) { w[v] } else { Q::from_integer(0) };
    if adj[v] & rest == 0 {
        return gain + mwis(adj, w, rest);
    }
    let skip = mwis(adj, w, rest);
    if w[v] <= Q::from_integer(0) {
        return skip;
    }
    let take = w[v] + mwis(adj, w, rest & !adj[v]);
    skip.max(take)
}

fn adjacency32(g: &ColoredGraph, complement: bool) -> Vec<u32> {
    let n = g.n();
    let mut adj = vec![0u32; n];
    for u in 0..n {
        for v in 0..n {
            if u != v && g.has_edge(u, v) != complement {
                adj[u] |= 1 << v;
            }
        }
    }
    adj
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Independence number as a max-plus value; the empty graph gives 0.
pub fn alpha_brute(g: &ColoredGraph) -> Result<TropicalValue, ParamError> {
    alpha_weighted(g, &vec![Q::from_integer(1); g.n()])
}

/// Largest total vertex weight of an independent set. Vertices of
/// non-positive weight are never worth taking, so the result is ≥ 0.
pub fn alpha_weighted(g: &ColoredGraph, weights: &[Q]) -> Result<TropicalValue, ParamError> {
    check_alpha_guard(g.n())?;
    if weights.len() != g.n() {
        return Err(ParamError::WeightCount { got: weights.len(), n: g.n() });
    }
    Ok(TropicalValue::Finite(mwis(&adjacency32(g, false), weights, full_mask(g.n()))))
}

fn count_is(adj: &[u32], cands: u32) -> u64 {
    if cands == 0 {
        return 1;
    }
    let v = cands.trailing_zeros() as usize;
    let rest = cands & !(1 << v);
    count_is(adj, rest) + count_is(adj, rest & !adj[v])
}

/// Number of independent sets, the empty set included.
pub fn independent_set_count(g: &ColoredGraph) -> Result<u64, ParamError> {
    check_alpha_guard(g.n())?;
    Ok(count_is(&adjacency32(g, false), full_mask(g.n())))
}

/// Clique number: the independence number of the complement.
pub fn omega_brute(g: &ColoredGraph) -> Result<TropicalValue, ParamError> {
    check_alpha_guard(g.n())?;
    let ones = vec![Q::from_integer(1); g.n()];
    Ok(TropicalValue::Finite(mwis(&adjacency32(g, true), &ones, full_mask(g.n()))))
}

/// `max_h Σ α(h(v)) + Σ β(h(u),h(v))` over edge-preserving maps
/// `h: G → H`; bottom when no homomorphism exists.
pub fn z_partition_brute(g: &ColoredGraph, h: &WeightedTargetGraph) -> Result<TropicalValue, ParamError> {
    let n = g.n();
    let maps = (h.n() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if maps > HOM_GUARD {
        return Err(ParamError::Guard { what: "candidate homomorphisms", value: maps, limit: HOM_GUARD });
    }
    if n == 0 {
        return Ok(TropicalValue::Finite(Q::from_integer(0)));
    }
    let w = h.scaled()?;
    // Breadth-first order, so most vertices meet an already placed neighbor
    // and non-edges of H prune early.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        order.push(root);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for v in 0..n {
                if !seen[v] && g.has_edge(u, v) {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
    }
    // Earlier neighbors of each position, so every edge is scored once.
    let back: Vec<Vec<usize>> =
        (0..n).map(|p| (0..p).filter(|&q| g.has_edge(order[q], order[p])).collect()).collect();
    // Upper bound on what positions `p..` can still add.
    let max_alpha = w.alpha.iter().copied().max().unwrap_or(0);
    let max_beta = w.beta.iter().flatten().copied().max().unwrap_or(0);
    let mut rest = vec![0i128; n + 1];
    for p in (0..n).rev() {
        rest[p] = rest[p + 1] + max_alpha + back[p].len() as i128 * max_beta;
    }
    let mut search = HomSearch { back: &back, w: &w, rest: &rest, image: vec![0; n], best: None };
    search.extend(0, 0);
    search.best.map_or(Ok(TropicalValue::Bottom), |b| Ok(TropicalValue::Finite(w.unscale(b)?)))
}

/// Exhaustive search over maps with an exact bound: a branch is cut only
/// when even the largest remaining weights cannot beat the best total.
struct HomSearch<'a> {
    back: &'a [Vec<usize>],
    w: &'a ScaledWeights,
    rest: &'a [i128],
    image: Vec<usize>,
    best: Option<i128>,
}

impl HomSearch<'_> {
    fn extend(&mut self, p: usize, acc: i128) {
        if self.best.is_some_and(|b| acc + self.rest[p] <= b) {
            return;
        }
        if p == self.image.len() {
            self.best = Some(acc);
            return;
        }
        'targets: for a in 0..self.w.n {
            let mut score = acc + self.w.alpha[a];
            for &q in &self.back[p] {
                match self.w.beta(self.image[q], a) {
                    Some(b) => score += b,
                    None => continue 'targets,
                }
            }
            self.image[p] = a;
            self.extend(p + 1, score);
        }
    }
}

/// What `f_A` and `g_A^r` report when their predicate fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum ZeroReport {
    /// The ⊕-unit of the carrier (−∞ in max-plus, 0 in a field).
    #[default]
    SemiringZero,
    /// The integer 0 embedded in the carrier (the ⊗-unit in max-plus).
    EmbeddedInteger,
}

impl ZeroReport {
    fn value<S: Semiring>(self) -> S {
        match self {
            ZeroReport::SemiringZero => S::zero(),
            ZeroReport::EmbeddedInteger => S::from_count(0),
        }
    }
}

/// `|V(G)|` if `G` is `(k0+1)`-connected and `|V(G)| ∈ A`, where
/// `(k0+1)`-connected means no `k0` vertices disconnect it (so `k0 = 0`
/// is plain connectivity).
pub fn f_a<S: Semiring>(g: &ColoredGraph, k0: usize, a: &UltimatelyPeriodicSet, report: ZeroReport) -> S {
    let n = g.n() as u64;
    if a.contains(n) && is_k_connected(g, k0) {
        S::from_count(n)
    } else {
        report.value()
    }
}

/// `|V(G)|` if `G` is connected, `r`-regular and `|V(G)| ∈ A`.
pub fn g_ar<S: Semiring>(g: &ColoredGraph, r: usize, a: &UltimatelyPeriodicSet, report: ZeroReport) -> S {
    let n = g.n() as u64;
    if a.contains(n) && is_r_regular(g, r) && is_connected(g) {
        S::from_count(n)
    } else {
        report.value()
    }
}

/// A graph parameter selectable at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Alpha,
    Omega,
    FA { k0: usize, a: UltimatelyPeriodicSet, report: ZeroReport },
    GAr { r: usize, a: UltimatelyPeriodicSet, report: ZeroReport },
    ZH(WeightedTargetGraph),
}

impl Param {
    pub fn name(&self) -> &'static str {
        match self {
            Param::Alpha => "mis",
            Param::Omega => "omega",
            Param::FA { .. } => "fA",
            Param::GAr { .. } => "gAr",
            Param::ZH(_) => "zH",
        }
    }

    /// The parameter value in carrier `S`. Tropical parameters are mapped
    /// through `S::from_tropical`, falling back to the rational embedding
    /// for finite values.
    pub fn eval<S: Semiring>(&self, g: &ColoredGraph) -> Result<S, ParamError> {
        let tropical = match self {
            Param::FA { k0, a, report } => return Ok(f_a(g, *k0, a, *report)),
            Param::GAr { r, a, report } => return Ok(g_ar(g, *r, a, *report)),
            Param::Alpha => alpha_brute(g)?,
            Param::Omega => omega_brute(g)?,
            Param::ZH(h) => z_partition_brute(g, h)?,
        };
        S::from_tropical(&tropical)
            .or_else(|| tropical.finite().and_then(|q| S::from_rational(&q)))
            .ok_or_else(|| ParamError::Carrier {
                param: self.name().to_string(),
                value: tropical.to_string(),
                carrier: S::descriptor().name,
            })
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::FA { k0, a, .. } => write!(f, "fA(k0={k0},A={a})"),
            Param::GAr { r, a, .. } => write!(f, "gAr(r={r},A={a})"),
            Param::ZH(h) => write!(f, "zH(h={})", h.n()),
            p => f.write_str(p.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{disjoint_union, ColorSet};
    use crate::semiring::Rat;
    use proptest::prelude::*;

    fn t(n: i64) -> TropicalValue {
        TropicalValue::Finite(Q::from_integer(n))
    }

    fn random_graph(n: usize, edges: &[(usize, usize)]) -> ColoredGraph {
        let mut g = ColoredGraph::new(0, n);
        for &(u, v) in edges {
            if u < n && v < n && u != v {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn subsets_alpha(g: &ColoredGraph) -> usize {
        (0u32..1 << g.n())
            .filter(|s| (0..g.n()).all(|u| (0..g.n()).all(|v| !(s >> u & 1 == 1 && s >> v & 1 == 1 && g.has_edge(u, v)))))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn alpha_and_omega_examples() {
        let k5 = ColoredGraph::complete(5);
        assert_eq!(alpha_brute(&k5).unwrap(), t(1));
        assert_eq!(omega_brute(&k5).unwrap(), t(5));
        assert_eq!(alpha_brute(&ColoredGraph::path(4)).unwrap(), t(2));
        assert_eq!(alpha_brute(&ColoredGraph::new(0, 7)).unwrap(), t(7));
        assert_eq!(alpha_brute(&ColoredGraph::empty(0)).unwrap(), t(0));
        assert_eq!(omega_brute(&ColoredGraph::empty(0)).unwrap(), t(0));
        assert!(alpha_brute(&ColoredGraph::new(0, 26)).is_err());
        assert_eq!(alpha_brute(&ColoredGraph::new(0, 25)).unwrap(), t(25));
    }

    #[test]
    fn independent_set_counts() {
        // Fibonacci numbers for paths, n + 1 for cliques
        let fib = [1, 2, 3, 5, 8, 13, 21];
        for (n, &want) in fib.iter().enumerate() {
            assert_eq!(independent_set_count(&ColoredGraph::path(n)).unwrap(), want);
        }
        assert_eq!(independent_set_count(&ColoredGraph::complete(6)).unwrap(), 7);
        assert_eq!(independent_set_count(&ColoredGraph::new(0, 10)).unwrap(), 1024);
    }

    #[test]
    fn weighted_alpha_skips_negative_vertices() {
        let p3 = ColoredGraph::path(3);
        let w = [Q::from_integer(2), Q::from_integer(5), Q::from_integer(2)];
        assert_eq!(alpha_weighted(&p3, &w).unwrap(), t(5));
        let w = [Q::from_integer(-1), Q::from_integer(-1), Q::new(1, 2)];
        assert_eq!(alpha_weighted(&p3, &w).unwrap(), TropicalValue::Finite(Q::new(1, 2)));
    }

    #[test]
    fn partition_function_examples() {
        let looped = WeightedTargetGraph::single_loop(Q::from_integer(2), Q::from_integer(-1));
        for g in [ColoredGraph::complete(5), ColoredGraph::path(4), ColoredGraph::cycle(6)] {
            let want = 2 * g.n() as i64 - g.edge_count() as i64;
            assert_eq!(z_partition_brute(&g, &looped).unwrap(), t(want));
        }
        let bare = WeightedTargetGraph::new(1);
        assert_eq!(z_partition_brute(&ColoredGraph::complete(2), &bare).unwrap(), TropicalValue::Bottom);
        let mut k2 = WeightedTargetGraph::new(2);
        k2.add_edge(0, 1, Q::from_integer(0)).unwrap();
        assert_eq!(z_partition_brute(&ColoredGraph::cycle(4), &k2).unwrap(), t(0));
        assert_eq!(z_partition_brute(&ColoredGraph::cycle(5), &k2).unwrap(), TropicalValue::Bottom);
        assert!(z_partition_brute(&ColoredGraph::new(0, 13), &WeightedTargetGraph::new(3)).is_err());
    }

    #[test]
    fn size_set_parameters() {
        let a2 = UltimatelyPeriodicSet::finite([2]);
        assert_eq!(f_a::<Rat>(&ColoredGraph::new(0, 2), 0, &a2, ZeroReport::SemiringZero), Rat(Q::from_integer(0)));
        assert_eq!(
            f_a::<TropicalValue>(&ColoredGraph::new(0, 2), 0, &a2, ZeroReport::EmbeddedInteger),
            t(0)
        );
        assert_eq!(f_a::<TropicalValue>(&ColoredGraph::new(0, 2), 0, &a2, ZeroReport::SemiringZero), TropicalValue::Bottom);
        let a3 = UltimatelyPeriodicSet::finite([3]);
        assert_eq!(f_a::<TropicalValue>(&ColoredGraph::path(3), 0, &a3, ZeroReport::SemiringZero), t(3));
        // P3 has a cut vertex.
        assert_eq!(f_a::<TropicalValue>(&ColoredGraph::path(3), 1, &a3, ZeroReport::SemiringZero), TropicalValue::Bottom);
        let a5 = UltimatelyPeriodicSet::finite([4, 5]);
        assert_eq!(g_ar::<TropicalValue>(&ColoredGraph::cycle(5), 2, &a5, ZeroReport::SemiringZero), t(5));
        let all = UltimatelyPeriodicSet::all();
        assert_eq!(g_ar::<TropicalValue>(&ColoredGraph::path(3), 2, &all, ZeroReport::EmbeddedInteger), t(0));
        assert_eq!(g_ar::<TropicalValue>(&ColoredGraph::new(0, 2), 0, &all, ZeroReport::SemiringZero), TropicalValue::Bottom);
    }

    #[test]
    fn param_dispatch() {
        let g = ColoredGraph::cycle(5);
        assert_eq!(Param::Alpha.eval::<TropicalValue>(&g).unwrap(), t(2));
        assert_eq!(Param::Alpha.eval::<Rat>(&g).unwrap(), Rat(Q::from_integer(2)));
        let z = Param::ZH(WeightedTargetGraph::new(1));
        assert!(z.eval::<Rat>(&g).is_err());
        assert_eq!(z.eval::<TropicalValue>(&g).unwrap(), TropicalValue::Bottom);
    }

    proptest! {
        #[test]
        fn alpha_matches_subset_enumeration(n in 0usize..10, edges in prop::collection::vec((0usize..10, 0usize..10), 0..30)) {
            let g = random_graph(n, &edges);
            prop_assert_eq!(alpha_brute(&g).unwrap(), t(subsets_alpha(&g) as i64));
        }

        #[test]
        fn alpha_adds_under_disjoint_union(
            n1 in 0usize..7, e1 in prop::collection::vec((0usize..7, 0usize..7), 0..15),
            n2 in 0usize..7, e2 in prop::collection::vec((0usize..7, 0usize..7), 0..15),
        ) {
            let (g1, g2) = (random_graph(n1, &e1), random_graph(n2, &e2));
            let u = disjoint_union(&g1, &g2).unwrap();
            let sum = alpha_brute(&g1).unwrap().finite().unwrap() + alpha_brute(&g2).unwrap().finite().unwrap();
            prop_assert_eq!(alpha_brute(&u).unwrap(), TropicalValue::Finite(sum));
        }

        #[test]
        fn zero_weight_partition_detects_homomorphisms(
            n in 1usize..7, edges in prop::collection::vec((0usize..7, 0usize..7), 0..12),
            hn in 1usize..4, hedges in prop::collection::vec((0usize..3, 0usize..3), 0..5),
        ) {
            let g = random_graph(n, &edges);
            let mut h = WeightedTargetGraph::new(hn);
            for (a, b) in hedges {
                if a < hn && b < hn {
                    h.add_edge(a, b, Q::from_integer(0)).unwrap();
                }
            }
            // brute-force existence over all maps
            let exists = (0..(hn as u64).pow(n as u32)).any(|code| {
                let img: Vec<usize> = (0..n).map(|v| (code / (hn as u64).pow(v as u32)) as usize % hn).collect();
                g.edges().all(|(u, v)| h.beta(img[u], img[v]).is_some())
            });
            let z = z_partition_brute(&g, &h).unwrap();
            prop_assert_eq!(z == t(0), exists);
            prop_assert_eq!(z == TropicalValue::Bottom, !exists);
        }
    }

    #[test]
    fn colors_do_not_affect_oracles() {
        let mut g = ColoredGraph::path(4).uncolored(2);
        g.set_colors(0, ColorSet::single(2)).unwrap();
        assert_eq!(alpha_brute(&g).unwrap(), t(2));
    }
}
