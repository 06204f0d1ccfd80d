//! k-colored and k-labeled simple graphs with disjoint union, gluing,
//! the binary (i,j)-join and recoloring, plus canonical forms, enumeration
//! and connectivity predicates for small graphs.

mod canon;
mod connectivity;
mod text;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use canon::{canonical_form, canonicalize, enumerate_colored_graphs, enumerate_labeled_graphs, is_isomorphic, CanonicalForm, ISO_GUARD};
pub use connectivity::{is_connected, is_k_connected, is_r_regular};
pub use text::{read_graph, write_graph};

/// Largest supported color count (colors are bits of a `u32`).
pub const MAX_COLORS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("color count mismatch: {0} vs {1}")]
    ColorCountMismatch(usize, usize),
    #[error("join requires distinct colors, got ({0},{0})")]
    JoinSameColor(usize),
    #[error("color {color} out of range 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not label-shaped: color {0} is held by more than one vertex")]
    NotLabelShaped(usize),
    #[error("resource guard exceeded: {what} ({value} > {limit})")]
    Guard { what: &'static str, value: usize, limit: usize },
    #[error("graph text line {line}: {msg}")]
    Format { line: usize, msg: String },
}

/// A set of colors from `[k]`, stored as bits (color `c` is bit `c-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColorSet(pub u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn single(c: usize) -> Self {
        assert!((1..=MAX_COLORS).contains(&c), "color {c} out of range");
        ColorSet(1 << (c - 1))
    }

    pub fn from_colors<I: IntoIterator<Item = usize>>(colors: I) -> Self {
        colors.into_iter().fold(ColorSet::EMPTY, |s, c| s.union(ColorSet::single(c)))
    }

    pub fn contains(self, c: usize) -> bool {
        (1..=MAX_COLORS).contains(&c) && self.0 & (1 << (c - 1)) != 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Colors in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=MAX_COLORS).filter(move |&c| self.contains(c))
    }

    pub fn max_color(self) -> usize {
        (32 - self.0.leading_zeros()) as usize
    }

    /// At most one color.
    pub fn is_plain(self) -> bool {
        self.len() <= 1
    }

    pub fn all(k: usize) -> ColorSet {
        if k == 0 {
            ColorSet::EMPTY
        } else {
            ColorSet((u32::MAX) >> (32 - k))
        }
    }

    pub(crate) fn check_k(self, k: usize) -> Result<(), GraphError> {
        match self.max_color() {
            c if c > k => Err(GraphError::ColorOutOfRange { color: c, k }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// A recoloring `ρ: 2^[k] → 2^[k]` given by explicit rewrite rules;
/// color sets without a rule are left unchanged.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RecolorMap {
    rules: Vec<(ColorSet, ColorSet)>,
}

impl RecolorMap {
    /// Later rules for the same source set override earlier ones.
    pub fn new<I: IntoIterator<Item = (ColorSet, ColorSet)>>(rules: I) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (from, to) in rules {
            map.insert(from, to);
        }
        RecolorMap { rules: map.into_iter().filter(|(f, t)| f != t).collect() }
    }

    pub fn identity() -> Self {
        RecolorMap::default()
    }

    pub fn rules(&self) -> &[(ColorSet, ColorSet)] {
        &self.rules
    }

    pub fn apply(&self, s: ColorSet) -> ColorSet {
        self.rules
            .binary_search_by(|(f, _)| f.cmp(&s))
            .map(|i| self.rules[i].1)
            .unwrap_or(s)
    }

    /// Induced action on unions of single colors: `S ↦ ⋃_{c∈S} ρ({c})`.
    /// Agrees with the vertex action whenever every vertex carries at most
    /// one color and the map is plain.
    pub fn apply_to_union(&self, s: ColorSet) -> ColorSet {
        s.iter().fold(ColorSet::EMPTY, |acc, c| acc.union(self.apply(ColorSet::single(c))))
    }

    /// Maps single colors to at most one color and fixes the empty set.
    pub fn is_plain(&self) -> bool {
        self.rules
            .iter()
            .all(|(f, t)| if f.is_empty() { t.is_empty() } else { !f.is_plain() || t.is_plain() })
    }

    pub fn max_color(&self) -> usize {
        self.rules.iter().map(|(f, t)| f.max_color().max(t.max_color())).max().unwrap_or(0)
    }
}

impl fmt::Display for RecolorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (from, to)) in self.rules.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{from}->{to}")?;
        }
        Ok(())
    }
}

/// A simple graph on vertices `0..n` with a color set per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    k: usize,
    colors: Vec<ColorSet>,
    edges: BTreeSet<(usize, usize)>,
}

impl ColoredGraph {
    pub fn new(k: usize, n: usize) -> Self {
        assert!(k <= MAX_COLORS, "at most {MAX_COLORS} colors");
        ColoredGraph { k, colors: vec![ColorSet::EMPTY; n], edges: BTreeSet::new() }
    }

    pub fn empty(k: usize) -> Self {
        Self::new(k, 0)
    }

    pub fn single_vertex(k: usize, colors: ColorSet) -> Result<Self, GraphError> {
        let mut g = Self::new(k, 1);
        g.set_colors(0, colors)?;
        Ok(g)
    }

    pub fn from_edges(k: usize, n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(k, n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(0, n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::from_edges(0, n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edges(0, n, &edges).unwrap()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn colors(&self, v: usize) -> ColorSet {
        self.colors[v]
    }

    pub fn color_sets(&self) -> &[ColorSet] {
        &self.colors
    }

    /// The class `C(i)`: vertices whose color set contains `i`.
    pub fn color_class(&self, i: usize) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.colors[v].contains(i)).collect()
    }

    pub fn add_vertex(&mut self, colors: ColorSet) -> Result<usize, GraphError> {
        colors.check_k(self.k)?;
        self.colors.push(colors);
        Ok(self.colors.len() - 1)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn set_colors(&mut self, v: usize, colors: ColorSet) -> Result<(), GraphError> {
        if v >= self.n() {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        colors.check_k(self.k)?;
        self.colors[v] = colors;
        Ok(())
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n()];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Adjacency as bit rows; `n ≤ 64`.
    pub fn adjacency_bits(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "bit adjacency needs n <= 64");
        let mut adj = vec![0u64; self.n()];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    /// The same graph with every color removed and color count `k`.
    pub fn uncolored(&self, k: usize) -> Self {
        ColoredGraph { k, colors: vec![ColorSet::EMPTY; self.n()], edges: self.edges.clone() }
    }

    /// Renumbers vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n());
        let mut colors = vec![ColorSet::EMPTY; self.n()];
        for (v, &p) in perm.iter().enumerate() {
            colors[p] = self.colors[v];
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
            .collect();
        ColoredGraph { k: self.k, colors, edges }
    }

    /// Every color class has at most one vertex, i.e. the coloring is a
    /// (partial, possibly non-injective) labeling.
    pub fn is_label_shaped(&self) -> bool {
        (1..=self.k).all(|i| self.colors.iter().filter(|c| c.contains(i)).count() <= 1)
    }
}

/// A simple graph with a partial labeling `[k] → V(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    labels: Vec<Option<usize>>,
}

impl LabeledGraph {
    pub fn new(k: usize, n: usize) -> Self {
        LabeledGraph { n, edges: BTreeSet::new(), labels: vec![None; k] }
    }

    pub fn k(&self) -> usize {
        self.labels.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label(&self, i: usize) -> Option<usize> {
        self.labels[i - 1]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn set_label(&mut self, i: usize, v: Option<usize>) -> Result<(), GraphError> {
        let k = self.k();
        if i == 0 || i > k {
            return Err(GraphError::ColorOutOfRange { color: i, k });
        }
        if let Some(v) = v {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        self.labels[i - 1] = v;
        Ok(())
    }

    /// Vertex `v` gets the color set `{i : ℓ(i) = v}`.
    pub fn to_colored(&self) -> ColoredGraph {
        let mut g = ColoredGraph::new(self.k(), self.n);
        g.edges = self.edges.clone();
        for (i, l) in self.labels.iter().enumerate() {
            if let Some(v) = l {
                g.colors[*v] = g.colors[*v].union(ColorSet::single(i + 1));
            }
        }
        g
    }

    pub fn from_colored(g: &ColoredGraph) -> Result<Self, GraphError> {
        let mut l = LabeledGraph::new(g.k(), g.n());
        l.edges = g.edges.clone();
        for i in 1..=g.k() {
            let class = g.color_class(i);
            match class.as_slice() {
                [] => {}
                [v] => l.labels[i - 1] = Some(*v),
                _ => return Err(GraphError::NotLabelShaped(i)),
            }
        }
        Ok(l)
    }

    /// Vertices not carrying any label.
    pub fn unlabeled_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|v| !self.labels.contains(&Some(*v))).collect()
    }
}

fn same_k(a: usize, b: usize) -> Result<(), GraphError> {
    if a == b {
        Ok(())
    } else {
        Err(GraphError::ColorCountMismatch(a, b))
    }
}

/// `G₁ ⊔ G₂`: vertices of `g2` are shifted by `g1.n()`.
pub fn disjoint_union(g1: &ColoredGraph, g2: &ColoredGraph) -> Result<ColoredGraph, GraphError> {
    let mut g = g1.clone();
    union_into(&mut g, g2)?;
    Ok(g)
}

/// In-place `g ⊔ other`.
pub(crate) fn union_into(g: &mut ColoredGraph, other: &ColoredGraph) -> Result<(), GraphError> {
    same_k(g.k, other.k)?;
    let shift = g.n();
    g.colors.extend_from_slice(&other.colors);
    g.edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
    Ok(())
}

/// `η̄ᵢⱼ(G₁, G₂)`: disjoint union, then every `u ∈ C(i)`, `v ∈ C(j)` with
/// `u ≠ v` becomes adjacent, classes taken in the merged coloring.
pub fn join(i: usize, j: usize, g1: &ColoredGraph, g2: &ColoredGraph) -> Result<ColoredGraph, GraphError> {
    let mut g = g1.clone();
    join_into(i, j, &mut g, g2)?;
    Ok(g)
}

/// In-place `η̄ᵢⱼ(g, other)`.
pub(crate) fn join_into(i: usize, j: usize, g: &mut ColoredGraph, other: &ColoredGraph) -> Result<(), GraphError> {
    same_k(g.k, other.k)?;
    check_join_colors(i, j, g.k)?;
    union_into(g, other)?;
    let ci = g.color_class(i);
    let cj = g.color_class(j);
    for &u in &ci {
        for &v in &cj {
            if u != v {
                g.edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_join_colors(i: usize, j: usize, k: usize) -> Result<(), GraphError> {
    for c in [i, j] {
        if c == 0 || c > k {
            return Err(GraphError::ColorOutOfRange { color: c, k });
        }
    }
    if i == j {
        return Err(GraphError::JoinSameColor(i));
    }
    Ok(())
}

/// Replaces each vertex's color set `S` by `ρ(S)`.
pub fn recolor(rho: &RecolorMap, g: &ColoredGraph) -> Result<ColoredGraph, GraphError> {
    let mut out = g.clone();
    recolor_in_place(rho, &mut out)?;
    Ok(out)
}

pub(crate) fn recolor_in_place(rho: &RecolorMap, g: &mut ColoredGraph) -> Result<(), GraphError> {
    for c in g.colors.iter_mut() {
        *c = rho.apply(*c);
        c.check_k(g.k)?;
    }
    Ok(())
}

/// `G₁ ⊔ₖ G₂`: disjoint union, then for every label defined in both
/// operands the two labeled vertices are identified. Parallel edges
/// collapse; an edge whose endpoints get identified is dropped.
pub fn glue(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<LabeledGraph, GraphError> {
    same_k(g1.k(), g2.k())?;
    let total = g1.n + g2.n;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in g1.labels.iter().zip(&g2.labels) {
        if let (Some(a), Some(b)) = (a, b) {
            let ra = find(&mut parent, *a);
            let rb = find(&mut parent, g1.n + b);
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut index = vec![usize::MAX; total];
    let mut next = 0;
    for v in 0..total {
        let r = find(&mut parent, v);
        if index[r] == usize::MAX {
            index[r] = next;
            next += 1;
        }
        index[v] = index[r];
    }
    let mut out = LabeledGraph::new(g1.k(), next);
    let all_edges = g1
        .edges
        .iter()
        .copied()
        .chain(g2.edges.iter().map(|&(u, v)| (u + g1.n, v + g1.n)));
    for (u, v) in all_edges {
        let (a, b) = (index[u], index[v]);
        if a != b {
            out.edges.insert((a.min(b), a.max(b)));
        }
    }
    for (i, (a, b)) in g1.labels.iter().zip(&g2.labels).enumerate() {
        out.labels[i] = match (a, b) {
            (Some(a), _) => Some(index[*a]),
            (None, Some(b)) => Some(index[g1.n + b]),
            (None, None) => None,
        };
    }
    Ok(out)
}

/// A binary graph operation usable as the `□` of a Hankel matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphOp {
    Union,
    /// Gluing on label-shaped colored graphs.
    Glue,
    Join(usize, usize),
}

impl GraphOp {
    pub fn apply(&self, g1: &ColoredGraph, g2: &ColoredGraph) -> Result<ColoredGraph, GraphError> {
        match *self {
            GraphOp::Union => disjoint_union(g1, g2),
            GraphOp::Join(i, j) => join(i, j, g1, g2),
            GraphOp::Glue => {
                let a = LabeledGraph::from_colored(g1)?;
                let b = LabeledGraph::from_colored(g2)?;
                Ok(glue(&a, &b)?.to_colored())
            }
        }
    }

    pub fn is_commutative(&self) -> bool {
        true
    }
}

impl fmt::Display for GraphOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphOp::Union => f.write_str("union"),
            GraphOp::Glue => f.write_str("glue"),
            GraphOp::Join(i, j) => write!(f, "join({i},{j})"),
        }
    }
}

impl FromStr for GraphOp {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "union" => Ok(GraphOp::Union),
            "glue" => Ok(GraphOp::Glue),
            _ => {
                let inner = s
                    .strip_prefix("join(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| format!("unknown operation `{s}`"))?;
                let (i, j) = inner.split_once(',').ok_or_else(|| format!("bad join `{s}`"))?;
                let i = i.trim().parse().map_err(|_| format!("bad join `{s}`"))?;
                let j = j.trim().parse().map_err(|_| format!("bad join `{s}`"))?;
                Ok(GraphOp::Join(i, j))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1(k: usize, c: ColorSet) -> ColoredGraph {
        ColoredGraph::single_vertex(k, c).unwrap()
    }

    #[test]
    fn union_examples() {
        let a = k1(0, ColorSet::EMPTY);
        let u = disjoint_union(&a, &a).unwrap();
        assert_eq!((u.n(), u.edge_count()), (2, 0));
        let k2 = ColoredGraph::complete(2);
        let u = disjoint_union(&k2, &k2).unwrap();
        assert_eq!((u.n(), u.edge_count()), (4, 2));
        assert_eq!(disjoint_union(&k2, &ColoredGraph::empty(0)).unwrap(), k2);
        assert!(disjoint_union(&k2, &ColoredGraph::empty(1)).is_err());
    }

    #[test]
    fn join_examples() {
        let c1 = ColorSet::single(1);
        let c2 = ColorSet::single(2);
        let g = join(1, 2, &k1(2, c1), &k1(2, c2)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 1));
        let g = join(1, 2, &k1(2, ColorSet::EMPTY), &k1(2, c2)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (2, 0));
        let two = |c| disjoint_union(&k1(2, c), &k1(2, c)).unwrap();
        let g = join(1, 2, &two(c1), &two(c2)).unwrap();
        assert!(is_isomorphic(&g.uncolored(0), &ColoredGraph::cycle(4)).unwrap());
        assert_eq!(join(1, 1, &two(c1), &two(c1)), Err(GraphError::JoinSameColor(1)));
        assert!(join(1, 3, &two(c1), &two(c1)).is_err());
    }

    #[test]
    fn join_never_makes_loops_and_joins_within_operand() {
        let both = ColorSet::from_colors([1, 2]);
        let g = join(1, 2, &k1(2, both), &ColoredGraph::empty(2)).unwrap();
        assert_eq!(g.edge_count(), 0);
        let mut left = k1(2, ColorSet::single(1));
        left.add_vertex(ColorSet::single(2)).unwrap();
        let g = join(1, 2, &left, &ColoredGraph::empty(2)).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn recolor_examples() {
        let g = k1(2, ColorSet::single(1));
        assert_eq!(recolor(&RecolorMap::identity(), &g).unwrap(), g);
        let erase = RecolorMap::new([(ColorSet::single(1), ColorSet::EMPTY)]);
        assert_eq!(recolor(&erase, &g).unwrap().colors(0), ColorSet::EMPTY);
        let swap = RecolorMap::new([(ColorSet::single(1), ColorSet::single(2))]);
        assert_eq!(recolor(&swap, &g).unwrap().colors(0), ColorSet::single(2));
        assert!(recolor(&RecolorMap::new([(ColorSet::single(1), ColorSet::single(3))]), &g).is_err());
    }

    #[test]
    fn recolor_map_plainness() {
        assert!(RecolorMap::new([(ColorSet::single(1), ColorSet::EMPTY)]).is_plain());
        assert!(!RecolorMap::new([(ColorSet::EMPTY, ColorSet::single(1))]).is_plain());
        assert!(!RecolorMap::new([(ColorSet::single(1), ColorSet::from_colors([1, 2]))]).is_plain());
        let m = RecolorMap::new([(ColorSet::single(1), ColorSet::single(2)), (ColorSet::single(2), ColorSet::EMPTY)]);
        assert_eq!(m.apply_to_union(ColorSet::from_colors([1, 2, 3])), ColorSet::from_colors([2, 3]));
        assert_eq!(m.to_string(), "{1}->{2},{2}->{}");
    }

    fn labeled_k2(label_at: usize) -> LabeledGraph {
        let mut g = LabeledGraph::new(1, 2);
        g.add_edge(0, 1).unwrap();
        g.set_label(1, Some(label_at)).unwrap();
        g
    }

    #[test]
    fn glue_examples() {
        let p = glue(&labeled_k2(0), &labeled_k2(1)).unwrap();
        assert_eq!((p.n(), p.edge_count()), (3, 2));
        assert!(is_isomorphic(&p.to_colored().uncolored(0), &ColoredGraph::path(3)).unwrap());
        let e = LabeledGraph::new(1, 0);
        assert_eq!(glue(&labeled_k2(0), &e).unwrap(), labeled_k2(0));
        let mut a = LabeledGraph::new(1, 1);
        a.set_label(1, Some(0)).unwrap();
        let g = glue(&a, &a).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.label(1), Some(0));
    }

    #[test]
    fn glue_collapses_identified_edges() {
        // labels 1,2 on both endpoints of K2 in g1, both on one vertex in g2
        let mut g1 = LabeledGraph::new(2, 2);
        g1.add_edge(0, 1).unwrap();
        g1.set_label(1, Some(0)).unwrap();
        g1.set_label(2, Some(1)).unwrap();
        let mut g2 = LabeledGraph::new(2, 1);
        g2.set_label(1, Some(0)).unwrap();
        g2.set_label(2, Some(0)).unwrap();
        let g = glue(&g1, &g2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (1, 0));
    }

    #[test]
    fn labeled_colored_roundtrip() {
        let g = labeled_k2(1);
        let c = g.to_colored();
        assert!(c.is_label_shaped());
        assert_eq!(LabeledGraph::from_colored(&c).unwrap(), g);
        let mut bad = ColoredGraph::new(1, 2);
        bad.set_colors(0, ColorSet::single(1)).unwrap();
        bad.set_colors(1, ColorSet::single(1)).unwrap();
        assert_eq!(LabeledGraph::from_colored(&bad), Err(GraphError::NotLabelShaped(1)));
    }

    #[test]
    fn op_names_roundtrip() {
        for op in [GraphOp::Union, GraphOp::Glue, GraphOp::Join(1, 2)] {
            assert_eq!(op.to_string().parse::<GraphOp>().unwrap(), op);
        }
    }

    #[test]
    fn simple_graph_invariants() {
        let mut g = ColoredGraph::new(1, 2);
        assert_eq!(g.add_edge(0, 0), Err(GraphError::SelfLoop(0)));
        assert!(g.add_edge(0, 2).is_err());
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.set_colors(0, ColorSet::single(2)).is_err());
    }
}
