//! Expressions for standard families of small clique-width.
//!
//! All generators use plain colorings (each vertex carries at most one
//! color) and never join two classes that are already adjacent.
//!
//! | family | colors | shape |
//! |---|---|---|
//! | path | 2 | `{1}` marks the growing end, finished vertices are uncolored |
//! | cycle | 3 | `{3}` holds the first vertex until the closing join |
//! | complete | 2 | new vertex `{2}` joined to `{1}`, then merged into `{1}` |
//! | complete_bipartite | 2 | two union chains joined once |
//! | star | 2 | center `{1}`, leaves join as `{2}` and are uncolored |
//! | cograph_random | 2 | random cotree; join nodes recolor one side to `{2}` |

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CwExpr, ExprBuilder, ExprError, NodeId};
use crate::graphs::{ColorSet, RecolorMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    CographRandom,
    Star,
}

impl Family {
    pub const ALL: [Family; 6] =
        [Family::Path, Family::Cycle, Family::Complete, Family::CompleteBipartite, Family::CographRandom, Family::Star];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete_bipartite",
            Family::CographRandom => "cograph_random",
            Family::Star => "star",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| ExprError::Family(format!("unknown family '{s}'")))
    }
}

/// `n` is the vertex count, except for `complete_bipartite` where the
/// sides have `n` and `m` vertices and for `star` where `n` counts all
/// vertices including the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n, m: n, seed: 0 }
    }

    pub fn bipartite(a: usize, b: usize) -> Self {
        FamilySpec { family: Family::CompleteBipartite, n: a, m: b, seed: 0 }
    }

    pub fn cograph(n: usize, seed: u64) -> Self {
        FamilySpec { family: Family::CographRandom, n, m: n, seed }
    }

    pub fn colors_needed(&self) -> usize {
        match self.family {
            Family::Cycle => 3,
            _ => 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self.family {
            Family::CompleteBipartite => self.n + self.m,
            _ => self.n,
        }
    }
}

fn single(c: usize) -> ColorSet {
    ColorSet::single(c)
}

fn map(rules: &[(usize, Option<usize>)]) -> RecolorMap {
    RecolorMap::new(rules.iter().map(|&(f, t)| (single(f), t.map_or(ColorSet::EMPTY, single))))
}

pub fn generate(spec: &FamilySpec) -> Result<CwExpr, ExprError> {
    if spec.n == 0 || (spec.family == Family::CompleteBipartite && spec.m == 0) {
        return Err(ExprError::Family("sizes must be at least 1".into()));
    }
    let mut b = ExprBuilder::new();
    let root = match spec.family {
        Family::Path => path(&mut b, spec.n),
        Family::Cycle if spec.n < 3 => path(&mut b, spec.n),
        Family::Cycle => cycle(&mut b, spec.n),
        Family::Complete => {
            let mut cur = b.leaf(single(1));
            for _ in 1..spec.n {
                let v = b.leaf(single(2));
                let j = b.join(1, 2, cur, v);
                cur = b.recolor(map(&[(2, Some(1))]), j);
            }
            cur
        }
        Family::CompleteBipartite => {
            let left = union_chain(&mut b, spec.n, 1);
            let right = union_chain(&mut b, spec.m, 2);
            b.join(1, 2, left, right)
        }
        Family::Star => {
            let mut cur = b.leaf(single(1));
            for _ in 1..spec.n {
                let v = b.leaf(single(2));
                let j = b.join(1, 2, cur, v);
                cur = b.recolor(map(&[(2, None)]), j);
            }
            cur
        }
        Family::CographRandom => cograph(&mut b, spec.n, spec.seed),
    };
    b.finish(root)
}

fn path(b: &mut ExprBuilder, n: usize) -> NodeId {
    let mut cur = b.leaf(single(1));
    for _ in 1..n {
        let v = b.leaf(single(2));
        let j = b.join(1, 2, cur, v);
        cur = b.recolor(map(&[(1, None), (2, Some(1))]), j);
    }
    cur
}

fn cycle(b: &mut ExprBuilder, n: usize) -> NodeId {
    let first = b.leaf(single(3));
    let v = b.leaf(single(2));
    let j = b.join(3, 2, first, v);
    let mut cur = b.recolor(map(&[(2, Some(1))]), j);
    for _ in 2..n - 1 {
        let v = b.leaf(single(2));
        let j = b.join(1, 2, cur, v);
        cur = b.recolor(map(&[(1, None), (2, Some(1))]), j);
    }
    let merged = b.recolor(map(&[(3, Some(1))]), cur);
    let v = b.leaf(single(2));
    b.join(1, 2, merged, v)
}

fn union_chain(b: &mut ExprBuilder, n: usize, c: usize) -> NodeId {
    let mut cur = b.leaf(single(c));
    for _ in 1..n {
        let v = b.leaf(single(c));
        cur = b.union(cur, v);
    }
    cur
}

enum Task {
    Build(usize),
    Union,
    Join,
}

/// Random cotree on `n` vertices, all colored `{1}` at the root.
fn cograph(b: &mut ExprBuilder, n: usize, seed: u64) -> NodeId {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tasks = vec![Task::Build(n)];
    let mut built: Vec<NodeId> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Build(1) => built.push(b.leaf(single(1))),
            Task::Build(size) => {
                let split = rng.gen_range(1..size);
                tasks.push(if rng.gen_bool(0.5) { Task::Union } else { Task::Join });
                tasks.push(Task::Build(size - split));
                tasks.push(Task::Build(split));
            }
            Task::Union | Task::Join => {
                let right = built.pop().unwrap();
                let left = built.pop().unwrap();
                let node = if matches!(task, Task::Union) {
                    b.union(left, right)
                } else {
                    let r = b.recolor(map(&[(1, Some(2))]), right);
                    let j = b.join(1, 2, left, r);
                    b.recolor(map(&[(2, Some(1))]), j)
                };
                built.push(node);
            }
        }
    }
    built.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval_expr;
    use crate::graphs::{canonical_form, is_connected, ColoredGraph};

    fn eval(spec: &FamilySpec) -> ColoredGraph {
        eval_expr(&generate(spec).unwrap(), spec.colors_needed()).unwrap().uncolored(0)
    }

    fn has_induced_p4(g: &ColoredGraph) -> bool {
        let n = g.n();
        let p4 = canonical_form(&ColoredGraph::path(4)).unwrap();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() != 4 {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            let mut h = ColoredGraph::new(0, 4);
            for a in 0..4 {
                for c in a + 1..4 {
                    if g.has_edge(vs[a], vs[c]) {
                        h.add_edge(a, c).unwrap();
                    }
                }
            }
            if canonical_form(&h).unwrap() == p4 {
                return true;
            }
        }
        false
    }

    #[test]
    fn families_match_direct_constructions() {
        for n in 1..=7 {
            let direct = [
                (FamilySpec::new(Family::Path, n), ColoredGraph::path(n)),
                (FamilySpec::new(Family::Complete, n), ColoredGraph::complete(n)),
            ];
            for (spec, g) in direct {
                assert_eq!(canonical_form(&eval(&spec)).unwrap(), canonical_form(&g).unwrap(), "{spec:?}");
            }
        }
        for n in 3..=8 {
            let g = eval(&FamilySpec::new(Family::Cycle, n));
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&ColoredGraph::cycle(n)).unwrap());
        }
        let k23 = eval(&FamilySpec::bipartite(2, 3));
        assert_eq!(k23.edge_count(), 6);
        assert!(is_connected(&k23));
        let star = eval(&FamilySpec::new(Family::Star, 5));
        assert_eq!(star.degrees().iter().max(), Some(&4));
        assert_eq!(star.edge_count(), 4);
    }

    #[test]
    fn complete_five_has_every_edge() {
        let g = eval(&FamilySpec::new(Family::Complete, 5));
        for u in 0..5 {
            for v in u + 1..5 {
                assert!(g.has_edge(u, v));
            }
        }
        let k2 = eval(&FamilySpec::new(Family::Path, 2));
        assert_eq!((k2.n(), k2.edge_count()), (2, 1));
    }

    #[test]
    fn random_cographs_are_p4_free() {
        for seed in 0..20 {
            let spec = FamilySpec::cograph(6, seed);
            let g = eval(&spec);
            assert_eq!(g.n(), 6);
            assert!(!has_induced_p4(&g), "seed {seed}");
        }
        assert_eq!(generate(&FamilySpec::cograph(6, 1)).unwrap(), generate(&FamilySpec::cograph(6, 1)).unwrap());
    }

    #[test]
    fn sizes_match_and_colors_are_plain() {
        for family in Family::ALL {
            for n in 1..=8 {
                let spec = FamilySpec { family, n, m: 2, seed: n as u64 };
                let e = generate(&spec).unwrap();
                assert!(e.is_plain());
                assert!(e.max_color() <= 4);
                assert_eq!(eval(&spec).n(), spec.vertex_count());
            }
        }
        assert!(generate(&FamilySpec::new(Family::Path, 0)).is_err());
        assert_eq!("complete_bipartite".parse::<Family>().unwrap(), Family::CompleteBipartite);
    }
}
