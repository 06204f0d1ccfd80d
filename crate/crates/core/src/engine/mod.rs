//! Evaluation of graph parameters on clique-width expressions from finite
//! presentations: bilinear tables over a basis of classes, their curried
//! linear form for linear clique-width words, a count-vector dynamic
//! program for tropical partition functions, and an experimental
//! presentation synthesizer.

mod builtin;
mod json;
mod linear;
mod synth;
mod tables;
mod zh;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::expr::{CwExpr, ExprError, Node};
use crate::graphs::{ColorSet, RecolorMap};
use crate::hankel::HankelError;
use crate::params::ParamError;
use crate::semiring::{Semiring, Q};

pub use builtin::{count_is_presentation, independent_set_presentation, mis_presentation, MAX_BUILTIN_K, TABLE_ENTRY_GUARD};
pub use json::{presentation_from_json, presentation_semiring, presentation_to_json};
pub use linear::{eval_linear, eval_linear_stats, linearize, LinearPresentation, StepMatrix};
pub use synth::{synthesize_presentation, SynthDiagnostics, SynthOptions};
pub use tables::{BilinearTable, SparseMatrix};
pub use zh::{eval_zh, eval_zh_batch, STATE_GUARD};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("resource guard exceeded: {what} ({value} > {limit})")]
    Guard { what: &'static str, value: usize, limit: usize },
    #[error("unsupported recoloring {0}")]
    UnsupportedRecolor(String),
    #[error("no leaf vector for color set {0}")]
    UnsupportedLeaf(ColorSet),
    #[error("no join table for ({0},{1})")]
    MissingJoin(usize, usize),
    #[error("color {color} exceeds presentation color count {k}")]
    ColorOverflow { color: usize, k: usize },
    #[error("leaf weight {0} is not representable in the {1} carrier")]
    Weight(Q, &'static str),
    #[error("join at node {0} adds edges between classes that are already adjacent")]
    RedundantJoin(usize),
    #[error("presentation format: {0}")]
    Format(String),
    #[error("representation not solvable at this truncation: {0}")]
    Unsolvable(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Hankel(#[from] HankelError),
}

/// Leaf representation `base ⊕ w ⊗ dir`, where `w` is the leaf weight or
/// the presentation default. Without `dir` the leaf ignores weights.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafVec<S> {
    pub base: Vec<S>,
    pub dir: Option<Vec<S>>,
}

impl<S: Semiring> LeafVec<S> {
    pub fn fixed(base: Vec<S>) -> Self {
        LeafVec { base, dir: None }
    }

    pub fn value(&self, w: &S) -> Vec<S> {
        match &self.dir {
            None => self.base.clone(),
            Some(dir) => self.base.iter().zip(dir).map(|(b, d)| b.plus(&w.times(d))).collect(),
        }
    }
}

/// A finite presentation over `m` basis classes.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation<S> {
    pub k: usize,
    pub m: usize,
    pub default_weight: S,
    pub leaf: BTreeMap<ColorSet, LeafVec<S>>,
    pub union_tab: BilinearTable<S>,
    /// Keyed by `(i, j)` with `i < j`; `η̄ᵢⱼ = η̄ⱼᵢ`.
    pub join_tab: BTreeMap<(usize, usize), BilinearTable<S>>,
    pub recolor_tab: BTreeMap<RecolorMap, SparseMatrix<S>>,
    pub out: Vec<S>,
}

/// Work done by one evaluation: expression nodes visited and semiring
/// multiplications performed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalStats {
    pub nodes: usize,
    pub ops: u64,
}

fn join_key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

impl<S: Semiring> Presentation<S> {
    pub fn join_table(&self, i: usize, j: usize) -> Result<&BilinearTable<S>, EngineError> {
        self.join_tab.get(&join_key(i, j)).ok_or(EngineError::MissingJoin(i, j))
    }

    pub fn leaf_vec(&self, colors: ColorSet, weight: Option<&Q>) -> Result<Vec<S>, EngineError> {
        let entry = self.leaf.get(&colors).ok_or(EngineError::UnsupportedLeaf(colors))?;
        let w = match weight {
            None => self.default_weight.clone(),
            Some(q) => S::from_rational(q).ok_or(EngineError::Weight(*q, S::descriptor().name))?,
        };
        Ok(entry.value(&w))
    }

    /// `⊕_p w_p ⊗ out_p`.
    pub fn output(&self, w: &[S], stats: &mut EvalStats) -> S {
        let mut acc = S::zero();
        for (a, b) in w.iter().zip(&self.out) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc.plus(&a.times(b));
                stats.ops += 1;
            }
        }
        acc
    }

    /// Checks that every leaf, join and recoloring in `e` is supported.
    pub fn check_supports(&self, e: &CwExpr) -> Result<(), EngineError> {
        if e.max_color() > self.k {
            return Err(EngineError::ColorOverflow { color: e.max_color(), k: self.k });
        }
        for node in e.nodes() {
            match node {
                Node::Leaf { colors, weight } => {
                    let entry = self.leaf.get(colors).ok_or(EngineError::UnsupportedLeaf(*colors))?;
                    if let (Some(q), Some(_)) = (weight, &entry.dir) {
                        S::from_rational(q).ok_or(EngineError::Weight(*q, S::descriptor().name))?;
                    }
                }
                Node::Union(..) => {}
                Node::Join { i, j, .. } => {
                    self.join_table(*i, *j)?;
                }
                Node::Recolor { map, .. } => {
                    if !self.recolor_tab.contains_key(map) {
                        return Err(EngineError::UnsupportedRecolor(map.to_string()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Bottom-up evaluation of `e` in a single pass over its post-order.
pub fn eval_presentation<S: Semiring>(e: &CwExpr, p: &Presentation<S>) -> Result<S, EngineError> {
    eval_presentation_stats(e, p).map(|(v, _)| v)
}

pub fn eval_presentation_stats<S: Semiring>(e: &CwExpr, p: &Presentation<S>) -> Result<(S, EvalStats), EngineError> {
    let (root, mut stats) = eval_vector(e, p)?;
    let value = p.output(&root, &mut stats);
    Ok((value, stats))
}

/// Coordinate vector of the class of `e`'s graph.
pub fn eval_vector<S: Semiring>(e: &CwExpr, p: &Presentation<S>) -> Result<(Vec<S>, EvalStats), EngineError> {
    p.check_supports(e)?;
    let mut stats = EvalStats::default();
    let mut vecs: Vec<Option<Vec<S>>> = vec![None; e.len()];
    for (id, node) in e.nodes().iter().enumerate() {
        stats.nodes += 1;
        let v = match node {
            Node::Leaf { colors, weight } => p.leaf_vec(*colors, weight.as_ref())?,
            Node::Union(l, r) => {
                let (u, v) = (vecs[*l].take().expect("post-order"), vecs[*r].take().expect("post-order"));
                p.union_tab.apply(&u, &v, &mut stats.ops)
            }
            Node::Join { i, j, left, right } => {
                let (u, v) = (vecs[*left].take().expect("post-order"), vecs[*right].take().expect("post-order"));
                p.join_table(*i, *j)?.apply(&u, &v, &mut stats.ops)
            }
            Node::Recolor { map, child } => {
                let u = vecs[*child].take().expect("post-order");
                let m = p.recolor_tab.get(map).ok_or_else(|| EngineError::UnsupportedRecolor(map.to_string()))?;
                m.apply(&u, &mut stats.ops)
            }
        };
        vecs[id] = Some(v);
    }
    Ok((vecs.pop().flatten().expect("non-empty expression"), stats))
}
