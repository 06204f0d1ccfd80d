use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use smallvec::{smallvec, SmallVec};

use super::EngineError;
use crate::expr::{CwExpr, Node};
use crate::graphs::ColorSet;
use crate::params::{ScaledWeights, WeightedTargetGraph};
use crate::semiring::TropicalValue;

/// Most live count vectors kept at any node.
pub const STATE_GUARD: usize = 1 << 20;

/// Most targets sharing one pass.
const BATCH: usize = 256;

type Counts = SmallVec<[u16; 12]>;

/// Count vectors indexed by `(color - 1) * |V(H)| + a`, mapped to the best
/// partial score of every target in the pass, scaled to integers.
type States = FxHashMap<Counts, Vec<i128>>;

/// Which color classes are nonempty and which pairs of classes already
/// have an edge between them, as bit masks over colors.
#[derive(Clone, Copy)]
struct Shape {
    nonempty: u64,
    adjacent: [u64; 33],
}

impl Shape {
    fn new() -> Self {
        Shape { nonempty: 0, adjacent: [0; 33] }
    }

    fn merge(&mut self, other: &Shape) {
        self.nonempty |= other.nonempty;
        for (a, b) in self.adjacent.iter_mut().zip(&other.adjacent) {
            *a |= *b;
        }
    }

    fn is_nonempty(&self, c: usize) -> bool {
        self.nonempty >> c & 1 == 1
    }

    fn is_adjacent(&self, c: usize, d: usize) -> bool {
        self.adjacent[c] >> d & 1 == 1
    }

    fn set_adjacent(&mut self, c: usize, d: usize) {
        self.adjacent[c] |= 1 << d;
        self.adjacent[d] |= 1 << c;
    }
}

/// Tropical partition function `Z_{H,α,β}` of the graph of `e` by a
/// dynamic program over per-class target counts. Requires every leaf to
/// carry at most one color, plain recolorings, and irredundant joins (no
/// join re-adds an edge that already exists).
pub fn eval_zh(e: &CwExpr, h: &WeightedTargetGraph) -> Result<TropicalValue, EngineError> {
    Ok(eval_zh_batch(e, std::slice::from_ref(h))?.pop().expect("one target"))
}

/// [`eval_zh`] for many targets. Targets with the same vertex count and
/// edge set reach the same count vectors, so they share one pass whose
/// states carry a score per target.
pub fn eval_zh_batch(e: &CwExpr, hs: &[WeightedTargetGraph]) -> Result<Vec<TropicalValue>, EngineError> {
    if e.leaf_count() > u16::MAX as usize {
        return Err(EngineError::Guard { what: "vertices", value: e.leaf_count(), limit: u16::MAX as usize });
    }
    let mut groups: BTreeMap<(usize, Vec<(usize, usize)>), Vec<usize>> = BTreeMap::new();
    for (idx, h) in hs.iter().enumerate() {
        groups.entry((h.n(), h.edges().map(|(edge, _)| edge).collect())).or_default().push(idx);
    }
    let mut out = vec![TropicalValue::Bottom; hs.len()];
    for members in groups.values() {
        for chunk in members.chunks(BATCH) {
            let ws = chunk.iter().map(|&i| hs[i].scaled()).collect::<Result<Vec<_>, _>>()?;
            for ((&i, w), best) in chunk.iter().zip(&ws).zip(eval_pass(e, &ws)?) {
                if let Some(best) = best {
                    out[i] = TropicalValue::Finite(w.unscale(best)?);
                }
            }
        }
    }
    Ok(out)
}

/// One pass for targets with a common vertex count and edge set.
fn eval_pass(e: &CwExpr, ws: &[ScaledWeights]) -> Result<Vec<Option<i128>>, EngineError> {
    let k = e.max_color();
    let hn = ws[0].n;
    let width = k * hn;
    let slot = |c: usize, a: usize| (c - 1) * hn + a;
    let alpha: Vec<Vec<i128>> = (0..hn).map(|a| ws.iter().map(|w| w.alpha[a]).collect()).collect();
    let beta: Vec<Option<Vec<i128>>> = (0..hn * hn)
        .map(|xy| ws[0].beta[xy].map(|_| ws.iter().map(|w| w.beta[xy].expect("shared edge set")).collect()))
        .collect();
    let live = live_colors(e, k);
    let mut done: Vec<Option<States>> = vec![None; e.len()];
    let mut shapes = vec![Shape::new(); e.len()];
    for (id, node) in e.nodes().iter().enumerate() {
        let (states, shape) = match node {
            Node::Leaf { colors, .. } => {
                if !colors.is_plain() {
                    return Err(EngineError::UnsupportedLeaf(*colors));
                }
                let mut states = States::default();
                for (a, scores) in alpha.iter().enumerate() {
                    let mut counts: Counts = smallvec![0; width];
                    for c in colors.iter() {
                        counts[slot(c, a)] = 1;
                    }
                    insert_max(&mut states, counts, scores.clone());
                }
                let mut shape = Shape::new();
                for c in colors.iter() {
                    shape.nonempty |= 1 << c;
                }
                (states, shape)
            }
            Node::Union(l, r) => {
                let (a, b) = (done[*l].take().expect("post-order"), done[*r].take().expect("post-order"));
                let mut shape = shapes[*l];
                shape.merge(&shapes[*r]);
                (combine(&a, &b, ws.len(), |_, _| true)?, shape)
            }
            Node::Join { i, j, left, right } => {
                let (a, b) = (done[*left].take().expect("post-order"), done[*right].take().expect("post-order"));
                let mut shape = shapes[*left];
                shape.merge(&shapes[*right]);
                let (i, j) = (*i, *j);
                if shape.is_nonempty(i) && shape.is_nonempty(j) {
                    if shape.is_adjacent(i, j) {
                        return Err(EngineError::RedundantJoin(id));
                    }
                    shape.set_adjacent(i, j);
                }
                let states = combine(&a, &b, ws.len(), |counts, gain| {
                    for x in 0..hn {
                        let ci = counts[slot(i, x)];
                        if ci == 0 {
                            continue;
                        }
                        for y in 0..hn {
                            let cj = counts[slot(j, y)];
                            if cj == 0 {
                                continue;
                            }
                            let Some(bs) = &beta[x * hn + y] else { return false };
                            let m = i128::from(ci) * i128::from(cj);
                            for (g, b) in gain.iter_mut().zip(bs) {
                                *g += b * m;
                            }
                        }
                    }
                    true
                })?;
                (states, shape)
            }
            Node::Recolor { map, child } => {
                if !map.is_plain() {
                    return Err(EngineError::UnsupportedRecolor(map.to_string()));
                }
                let a = done[*child].take().expect("post-order");
                let sa = shapes[*child];
                let target = |c: usize| map.apply(ColorSet::single(c)).iter().next();
                let mut states = States::default();
                for (counts, v) in a {
                    let mut next: Counts = smallvec![0; width];
                    for c in 1..=k {
                        if let Some(d) = target(c) {
                            for x in 0..hn {
                                next[slot(d, x)] += counts[slot(c, x)];
                            }
                        }
                    }
                    insert_max(&mut states, next, v);
                }
                let mut shape = Shape::new();
                for c in 1..=k {
                    let Some(d) = target(c).filter(|_| sa.is_nonempty(c)) else { continue };
                    shape.nonempty |= 1 << d;
                    for c2 in 1..=k {
                        if let Some(d2) = target(c2).filter(|_| sa.is_nonempty(c2) && sa.is_adjacent(c, c2)) {
                            shape.set_adjacent(d, d2);
                        }
                    }
                }
                (states, shape)
            }
        };
        let dead: Vec<usize> = (1..=k).filter(|&c| !live[id].contains(c)).flat_map(|c| (0..hn).map(move |a| slot(c, a))).collect();
        done[id] = Some(forget(states, &dead));
        shapes[id] = shape;
    }
    let root = done.pop().flatten().expect("non-empty expression");
    let mut best = vec![None; ws.len()];
    for scores in root.values() {
        for (b, &s) in best.iter_mut().zip(scores) {
            *b = Some(b.map_or(s, |x: i128| x.max(s)));
        }
    }
    Ok(best)
}

/// Colors whose counts some later join can still read, per node. A join
/// makes its two colors live below it and a recoloring pulls liveness
/// back through its map; the root has none.
fn live_colors(e: &CwExpr, k: usize) -> Vec<ColorSet> {
    let nodes = e.nodes();
    let mut live = vec![ColorSet::EMPTY; nodes.len()];
    for id in (0..nodes.len()).rev() {
        let here = live[id];
        match &nodes[id] {
            Node::Leaf { .. } => {}
            Node::Union(l, r) => {
                live[*l] = here;
                live[*r] = here;
            }
            Node::Join { i, j, left, right } => {
                let below = here.union(ColorSet::from_colors([*i, *j]));
                live[*left] = below;
                live[*right] = below;
            }
            Node::Recolor { map, child } => {
                live[*child] = ColorSet::from_colors((1..=k).filter(|&c| map.apply(ColorSet::single(c)).iter().any(|d| here.contains(d))));
            }
        }
    }
    live
}

/// Zeroes the given count slots, keeping the best scores per merged state.
fn forget(states: States, slots: &[usize]) -> States {
    if slots.is_empty() {
        return states;
    }
    let mut out = States::default();
    for (mut counts, v) in states {
        for &s in slots {
            counts[s] = 0;
        }
        insert_max(&mut out, counts, v);
    }
    out
}

fn insert_max(states: &mut States, counts: Counts, v: Vec<i128>) {
    match states.get_mut(counts.as_slice()) {
        Some(x) => {
            for (x, v) in x.iter_mut().zip(v) {
                *x = (*x).max(v);
            }
        }
        None => {
            states.insert(counts, v);
        }
    }
}

/// All pairwise sums; `gain` adds each target's join score to its buffer
/// (zeroed beforehand) or rejects the combined counts.
fn combine(a: &States, b: &States, targets: usize, gain: impl Fn(&[u16], &mut [i128]) -> bool) -> Result<States, EngineError> {
    let mut out = States::default();
    let mut counts = Counts::new();
    let mut g = vec![0i128; targets];
    for (ca, va) in a {
        for (cb, vb) in b {
            counts.clear();
            counts.extend(ca.iter().zip(cb).map(|(x, y)| x + y));
            g.fill(0);
            if !gain(&counts, &mut g) {
                continue;
            }
            match out.get_mut(counts.as_slice()) {
                Some(x) => {
                    for (((x, a), b), g) in x.iter_mut().zip(va).zip(vb).zip(&g) {
                        *x = (*x).max(a + b + g);
                    }
                }
                None => {
                    out.insert(counts.clone(), va.iter().zip(vb).zip(&g).map(|((a, b), g)| a + b + g).collect());
                    if out.len() > STATE_GUARD {
                        return Err(EngineError::Guard { what: "partition states", value: out.len(), limit: STATE_GUARD });
                    }
                }
            }
        }
    }
    Ok(out)
}
