//! Clique-width parse trees and linear clique-width words.
//!
//! A [`CwExpr`] is stored as an arena in post-order (children before
//! parents, the root last), so evaluation and serialization are plain loops
//! and deep linear expressions never recurse.

mod families;
mod parse;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graphs::{self, ColorSet, ColoredGraph, GraphError, RecolorMap};
use crate::semiring::Q;

pub use families::{generate, Family, FamilySpec};
pub use parse::{parse, parse_with_k, serialize, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("node {0} is used more than once or is unreachable")]
    NotATree(usize),
    #[error("invalid family spec: {0}")]
    Family(String),
}

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Node {
    Leaf { colors: ColorSet, weight: Option<Q> },
    Union(NodeId, NodeId),
    Join { i: usize, j: usize, left: NodeId, right: NodeId },
    Recolor { map: RecolorMap, child: NodeId },
}

impl Node {
    pub fn children(&self) -> Vec<NodeId> {
        match self {
            Node::Leaf { .. } => vec![],
            Node::Union(l, r) | Node::Join { left: l, right: r, .. } => vec![*l, *r],
            Node::Recolor { child, .. } => vec![*child],
        }
    }

    fn remap(&self, f: impl Fn(NodeId) -> NodeId) -> Node {
        match self {
            Node::Leaf { .. } => self.clone(),
            Node::Union(l, r) => Node::Union(f(*l), f(*r)),
            Node::Join { i, j, left, right } => Node::Join { i: *i, j: *j, left: f(*left), right: f(*right) },
            Node::Recolor { map, child } => Node::Recolor { map: map.clone(), child: f(*child) },
        }
    }
}

/// A clique-width expression tree. Structural equality is equality of the
/// post-order node lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CwExpr {
    nodes: Vec<Node>,
}

/// Incremental construction of expressions; nodes may be created in any
/// order as long as the result is a tree.
#[derive(Debug, Default)]
pub struct ExprBuilder {
    nodes: Vec<Node>,
}

impl ExprBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaf(&mut self, colors: ColorSet) -> NodeId {
        self.push(Node::Leaf { colors, weight: None })
    }

    pub fn weighted_leaf(&mut self, colors: ColorSet, weight: Q) -> NodeId {
        self.push(Node::Leaf { colors, weight: Some(weight) })
    }

    pub fn union(&mut self, left: NodeId, right: NodeId) -> NodeId {
        self.push(Node::Union(left, right))
    }

    pub fn join(&mut self, i: usize, j: usize, left: NodeId, right: NodeId) -> NodeId {
        self.push(Node::Join { i, j, left, right })
    }

    pub fn recolor(&mut self, map: RecolorMap, child: NodeId) -> NodeId {
        self.push(Node::Recolor { map, child })
    }

    fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    /// Reorders the subtree under `root` into post-order.
    pub fn finish(self, root: NodeId) -> Result<CwExpr, ExprError> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut visited = vec![false; self.nodes.len()];
        // (node, children already pushed)
        let mut stack = vec![(root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                order.push(id);
                continue;
            }
            if std::mem::replace(&mut visited[id], true) {
                return Err(ExprError::NotATree(id));
            }
            stack.push((id, true));
            for c in self.nodes[id].children().into_iter().rev() {
                stack.push((c, false));
            }
        }
        let mut new_id = vec![usize::MAX; self.nodes.len()];
        for (pos, &id) in order.iter().enumerate() {
            new_id[id] = pos;
        }
        let nodes = order.iter().map(|&id| self.nodes[id].remap(|c| new_id[c])).collect();
        Ok(CwExpr { nodes })
    }
}

impl CwExpr {
    pub fn leaf(colors: ColorSet) -> Self {
        CwExpr { nodes: vec![Node::Leaf { colors, weight: None }] }
    }

    pub(crate) fn from_postorder(nodes: Vec<Node>) -> Self {
        debug_assert!(!nodes.is_empty());
        CwExpr { nodes }
    }

    fn combine(left: CwExpr, right: CwExpr, make: impl FnOnce(NodeId, NodeId) -> Node) -> CwExpr {
        let shift = left.nodes.len();
        let l = shift - 1;
        let mut nodes = left.nodes;
        nodes.extend(right.nodes.into_iter().map(|n| n.remap(|c| c + shift)));
        let r = nodes.len() - 1;
        nodes.push(make(l, r));
        CwExpr { nodes }
    }

    pub fn union(left: CwExpr, right: CwExpr) -> CwExpr {
        Self::combine(left, right, Node::Union)
    }

    pub fn join(i: usize, j: usize, left: CwExpr, right: CwExpr) -> CwExpr {
        Self::combine(left, right, |left, right| Node::Join { i, j, left, right })
    }

    pub fn recolor(map: RecolorMap, child: CwExpr) -> CwExpr {
        let mut nodes = child.nodes;
        let c = nodes.len() - 1;
        nodes.push(Node::Recolor { map, child: c });
        CwExpr { nodes }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> NodeId {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf { .. })).count()
    }

    /// Largest color mentioned anywhere in the expression.
    pub fn max_color(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| match n {
                Node::Leaf { colors, .. } => colors.max_color(),
                Node::Union(..) => 0,
                Node::Join { i, j, .. } => *i.max(j),
                Node::Recolor { map, .. } => map.max_color(),
            })
            .max()
            .unwrap_or(0)
    }

    pub fn recolor_alphabet(&self) -> BTreeSet<RecolorMap> {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Recolor { map, .. } => Some(map.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn has_weights(&self) -> bool {
        self.nodes.iter().any(|n| matches!(n, Node::Leaf { weight: Some(_), .. }))
    }

    /// Every leaf and recoloring uses at most one color per vertex.
    pub fn is_plain(&self) -> bool {
        self.nodes.iter().all(|n| match n {
            Node::Leaf { colors, .. } => colors.is_plain(),
            Node::Recolor { map, .. } => map.is_plain(),
            _ => true,
        })
    }

    pub fn check_k(&self, k: usize) -> Result<(), ExprError> {
        for n in &self.nodes {
            match n {
                Node::Leaf { colors, .. } => colors.check_k(k)?,
                Node::Join { i, j, .. } => graphs::check_join_colors(*i, *j, k)?,
                Node::Recolor { map, .. } => {
                    if map.max_color() > k {
                        return Err(GraphError::ColorOutOfRange { color: map.max_color(), k }.into());
                    }
                }
                Node::Union(..) => {}
            }
        }
        Ok(())
    }
}

/// Evaluates bottom-up to a concrete `k`-colored graph.
pub fn eval_expr(e: &CwExpr, k: usize) -> Result<ColoredGraph, ExprError> {
    Ok(eval_expr_weighted(e, k)?.0)
}

/// Evaluation that also returns each vertex's leaf weight.
pub fn eval_expr_weighted(e: &CwExpr, k: usize) -> Result<(ColoredGraph, Vec<Option<Q>>), ExprError> {
    e.check_k(k)?;
    let mut done: Vec<Option<(ColoredGraph, Vec<Option<Q>>)>> = vec![None; e.len()];
    for (id, node) in e.nodes.iter().enumerate() {
        let value = match node {
            Node::Leaf { colors, weight } => (ColoredGraph::single_vertex(k, *colors)?, vec![*weight]),
            Node::Union(l, r) | Node::Join { left: l, right: r, .. } => {
                let (mut g, mut wl) = done[*l].take().expect("post-order");
                let (gr, wr) = done[*r].take().expect("post-order");
                match node {
                    Node::Join { i, j, .. } => graphs::join_into(*i, *j, &mut g, &gr)?,
                    _ => graphs::union_into(&mut g, &gr)?,
                }
                wl.extend(wr);
                (g, wl)
            }
            Node::Recolor { map, child } => {
                let (mut g, w) = done[*child].take().expect("post-order");
                graphs::recolor_in_place(map, &mut g)?;
                (g, w)
            }
        };
        done[id] = Some(value);
    }
    Ok(done.pop().flatten().expect("non-empty expression"))
}

/// One step of a linear clique-width construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Disjoint union with a single vertex.
    AddVertex { colors: ColorSet, weight: Option<Q> },
    /// `η̄ᵢⱼ` with a single vertex.
    SmallJoin { i: usize, j: usize, colors: ColorSet, weight: Option<Q> },
    Recolor(RecolorMap),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearWord {
    pub initial: ColorSet,
    pub initial_weight: Option<Q>,
    pub steps: Vec<Step>,
}

impl LinearWord {
    pub fn vertex_count(&self) -> usize {
        1 + self.steps.iter().filter(|s| !matches!(s, Step::Recolor(_))).count()
    }

    pub fn to_expr(&self) -> CwExpr {
        let mut b = ExprBuilder::new();
        let mut cur = b.push(Node::Leaf { colors: self.initial, weight: self.initial_weight });
        for s in &self.steps {
            cur = match s {
                Step::AddVertex { colors, weight } => {
                    let v = b.push(Node::Leaf { colors: *colors, weight: *weight });
                    b.union(cur, v)
                }
                Step::SmallJoin { i, j, colors, weight } => {
                    let v = b.push(Node::Leaf { colors: *colors, weight: *weight });
                    b.join(*i, *j, cur, v)
                }
                Step::Recolor(map) => b.recolor(map.clone(), cur),
            };
        }
        b.finish(cur).expect("word builds a tree")
    }

    pub fn is_plain(&self) -> bool {
        self.initial.is_plain()
            && self.steps.iter().all(|s| match s {
                Step::AddVertex { colors, .. } | Step::SmallJoin { colors, .. } => colors.is_plain(),
                Step::Recolor(m) => m.is_plain(),
            })
    }
}

/// The word of a linear expression: every binary node must have a leaf
/// child. Returns `None` otherwise.
pub fn as_linear(e: &CwExpr) -> Option<LinearWord> {
    let leaf = |id: NodeId| match &e.nodes[id] {
        Node::Leaf { colors, weight } => Some((*colors, *weight)),
        _ => None,
    };
    let mut steps = Vec::new();
    let mut cur = e.root();
    loop {
        match &e.nodes[cur] {
            Node::Leaf { colors, weight } => {
                steps.reverse();
                return Some(LinearWord { initial: *colors, initial_weight: *weight, steps });
            }
            Node::Recolor { map, child } => {
                steps.push(Step::Recolor(map.clone()));
                cur = *child;
            }
            Node::Union(l, r) | Node::Join { left: l, right: r, .. } => {
                let (rest, (colors, weight)) = match (leaf(*l), leaf(*r)) {
                    (_, Some(v)) => (*l, v),
                    (Some(v), None) => (*r, v),
                    (None, None) => return None,
                };
                steps.push(match &e.nodes[cur] {
                    Node::Join { i, j, .. } => Step::SmallJoin { i: *i, j: *j, colors, weight },
                    _ => Step::AddVertex { colors, weight },
                });
                cur = rest;
            }
        }
    }
}

pub fn eval_word(w: &LinearWord, k: usize) -> Result<ColoredGraph, ExprError> {
    let mut g = ColoredGraph::single_vertex(k, w.initial)?;
    for s in &w.steps {
        match s {
            Step::AddVertex { colors, .. } => {
                g.add_vertex(*colors)?;
            }
            Step::SmallJoin { i, j, colors, .. } => {
                graphs::join_into(*i, *j, &mut g, &ColoredGraph::single_vertex(k, *colors)?)?
            }
            Step::Recolor(map) => graphs::recolor_in_place(map, &mut g)?,
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{canonical_form, is_isomorphic};

    fn c(i: usize) -> ColorSet {
        ColorSet::single(i)
    }

    #[test]
    fn eval_simple_join() {
        let e = parse("(j 1 2 (v {1}) (v {2}))").unwrap();
        let g = eval_expr(&e, 2).unwrap();
        assert!(is_isomorphic(&g.uncolored(0), &ColoredGraph::complete(2)).unwrap());
        assert!(eval_expr(&e, 1).is_err());
    }

    #[test]
    fn builder_reorders_to_postorder() {
        let mut b = ExprBuilder::new();
        let a = b.leaf(c(1));
        let bb = b.leaf(c(2));
        let u = b.union(bb, a);
        let e = b.finish(u).unwrap();
        assert_eq!(e, CwExpr::union(CwExpr::leaf(c(2)), CwExpr::leaf(c(1))));
        let mut b = ExprBuilder::new();
        let a = b.leaf(c(1));
        let u = b.union(a, a);
        assert!(matches!(b.finish(u), Err(ExprError::NotATree(_))));
    }

    #[test]
    fn balanced_union_is_not_linear() {
        let pair = || CwExpr::union(CwExpr::leaf(c(1)), CwExpr::leaf(c(1)));
        assert!(as_linear(&CwExpr::union(pair(), pair())).is_none());
        assert!(as_linear(&pair()).is_some());
    }

    #[test]
    fn linear_words_agree_with_trees() {
        for spec in [
            FamilySpec::new(Family::Path, 5),
            FamilySpec::new(Family::Complete, 3),
            FamilySpec::new(Family::Cycle, 6),
            FamilySpec::new(Family::Star, 4),
        ] {
            let e = generate(&spec).unwrap();
            let k = spec.colors_needed();
            let w = as_linear(&e).expect("family is linear");
            let g1 = eval_expr(&e, k).unwrap();
            let g2 = eval_word(&w, k).unwrap();
            assert_eq!(canonical_form(&g1).unwrap(), canonical_form(&g2).unwrap());
            assert_eq!(w.to_expr(), e);
        }
    }

    #[test]
    fn deep_expressions_do_not_recurse() {
        let e = generate(&FamilySpec::new(Family::Path, 20_000)).unwrap();
        let text = serialize(&e);
        assert_eq!(parse(&text).unwrap(), e);
        let w = as_linear(&e).unwrap();
        assert_eq!(w.vertex_count(), 20_000);
        let g = eval_expr(&e, 2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (20_000, 19_999));
    }

    #[test]
    fn weights_follow_vertices() {
        let e = parse("(u (v {1} w=3) (v {} w=-1/2))").unwrap();
        let (g, w) = eval_expr_weighted(&e, 1).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(w, vec![Some(Q::from_integer(3)), Some(Q::new(-1, 2))]);
        assert!(e.has_weights());
    }
}
