use std::collections::BTreeMap;

use super::{join_key, EngineError, EvalStats, LeafVec, Presentation, SparseMatrix};
use crate::expr::{LinearWord, Step};
use crate::graphs::{ColorSet, RecolorMap};
use crate::semiring::{Semiring, Q};

/// Step matrix `base ⊕ w ⊗ dir` for adding a vertex of weight `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepMatrix<S> {
    pub base: SparseMatrix<S>,
    pub dir: Option<SparseMatrix<S>>,
}

impl<S: Semiring> StepMatrix<S> {
    fn apply(&self, v: &[S], w: &S, ops: &mut u64) -> Vec<S> {
        let mut out = self.base.apply(v, ops);
        if let Some(dir) = &self.dir {
            for (o, d) in out.iter_mut().zip(dir.apply(v, ops)) {
                *o = o.plus(&w.times(&d));
            }
        }
        out
    }
}

/// A presentation acting on linear words by vector-matrix products.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearPresentation<S> {
    pub k: usize,
    pub m: usize,
    pub default_weight: S,
    pub init: BTreeMap<ColorSet, LeafVec<S>>,
    pub add: BTreeMap<ColorSet, StepMatrix<S>>,
    /// Keyed by `(i, j, colors)` with `i < j`.
    pub small_join: BTreeMap<(usize, usize, ColorSet), StepMatrix<S>>,
    pub recolor: BTreeMap<RecolorMap, SparseMatrix<S>>,
    pub out: Vec<S>,
}

/// Curries every union and join table with every leaf vector.
pub fn linearize<S: Semiring>(p: &Presentation<S>) -> LinearPresentation<S> {
    let curry = |tab: &super::BilinearTable<S>, leaf: &LeafVec<S>| StepMatrix {
        base: tab.curry_right(&leaf.base),
        dir: leaf.dir.as_ref().map(|d| tab.curry_right(d)),
    };
    let add = p.leaf.iter().map(|(c, l)| (*c, curry(&p.union_tab, l))).collect();
    let mut small_join = BTreeMap::new();
    for (&(i, j), tab) in &p.join_tab {
        for (c, l) in &p.leaf {
            small_join.insert((i, j, *c), curry(tab, l));
        }
    }
    LinearPresentation {
        k: p.k,
        m: p.m,
        default_weight: p.default_weight.clone(),
        init: p.leaf.clone(),
        add,
        small_join,
        recolor: p.recolor_tab.clone(),
        out: p.out.clone(),
    }
}

impl<S: Semiring> LinearPresentation<S> {
    fn weight(&self, w: Option<&Q>) -> Result<S, EngineError> {
        match w {
            None => Ok(self.default_weight.clone()),
            Some(q) => S::from_rational(q).ok_or(EngineError::Weight(*q, S::descriptor().name)),
        }
    }

    fn check_colors(&self, c: ColorSet) -> Result<(), EngineError> {
        if c.max_color() > self.k {
            return Err(EngineError::ColorOverflow { color: c.max_color(), k: self.k });
        }
        Ok(())
    }
}

pub fn eval_linear<S: Semiring>(w: &LinearWord, lp: &LinearPresentation<S>) -> Result<S, EngineError> {
    eval_linear_stats(w, lp).map(|(v, _)| v)
}

pub fn eval_linear_stats<S: Semiring>(w: &LinearWord, lp: &LinearPresentation<S>) -> Result<(S, EvalStats), EngineError> {
    let mut stats = EvalStats { nodes: 1, ops: 0 };
    lp.check_colors(w.initial)?;
    let init = lp.init.get(&w.initial).ok_or(EngineError::UnsupportedLeaf(w.initial))?;
    let mut v = init.value(&lp.weight(w.initial_weight.as_ref())?);
    for step in &w.steps {
        stats.nodes += 1;
        v = match step {
            Step::AddVertex { colors, weight } => {
                lp.check_colors(*colors)?;
                let m = lp.add.get(colors).ok_or(EngineError::UnsupportedLeaf(*colors))?;
                m.apply(&v, &lp.weight(weight.as_ref())?, &mut stats.ops)
            }
            Step::SmallJoin { i, j, colors, weight } => {
                lp.check_colors(*colors)?;
                let (a, b) = join_key(*i, *j);
                let m = match lp.small_join.get(&(a, b, *colors)) {
                    Some(m) => m,
                    None if lp.init.contains_key(colors) => return Err(EngineError::MissingJoin(*i, *j)),
                    None => return Err(EngineError::UnsupportedLeaf(*colors)),
                };
                m.apply(&v, &lp.weight(weight.as_ref())?, &mut stats.ops)
            }
            Step::Recolor(map) => {
                let m = lp.recolor.get(map).ok_or_else(|| EngineError::UnsupportedRecolor(map.to_string()))?;
                m.apply(&v, &mut stats.ops)
            }
        };
    }
    let mut acc = S::zero();
    for (a, b) in v.iter().zip(&lp.out) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc.plus(&a.times(b));
            stats.ops += 1;
        }
    }
    Ok((acc, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{count_is_presentation, eval_presentation, mis_presentation};
    use crate::expr::{as_linear, eval_word, generate, parse, Family, FamilySpec};
    use crate::params::independent_set_count;
    use crate::semiring::Nat;
    use proptest::prelude::*;

    fn word(s: &str) -> LinearWord {
        as_linear(&parse(s).unwrap()).unwrap()
    }

    fn count(w: &LinearWord, k: usize) -> u64 {
        let alphabet: Vec<_> = w.to_expr().recolor_alphabet().into_iter().collect();
        eval_linear(w, &count_is_presentation(k, &alphabet).unwrap()).unwrap().0
    }

    #[test]
    fn worked_examples() {
        let p3 = as_linear(&generate(&FamilySpec::new(Family::Path, 3)).unwrap()).unwrap();
        assert_eq!(count(&p3, 2), 5);
        assert_eq!(count(&word("(j 1 2 (v {1}) (v {2}))"), 2), 3);
        assert_eq!(count(&word("(v {1})"), 1), 2);
        assert_eq!(count(&word("(v {})"), 1), 2);
        assert_eq!(count(&word("(u (v {1}) (v {1}))"), 1), 4);
        let k3 = as_linear(&generate(&FamilySpec::new(Family::Complete, 3)).unwrap()).unwrap();
        assert_eq!(count(&k3, 2), 4);
    }

    #[test]
    fn unsupported_steps_are_errors() {
        let lp = count_is_presentation(2, &[]).unwrap();
        assert!(matches!(eval_linear(&word("(r {{1}->{2}} (v {1}))"), &lp), Err(EngineError::UnsupportedRecolor(_))));
        assert!(matches!(eval_linear(&word("(u (v {1}) (v {1,2}))"), &lp), Err(EngineError::UnsupportedLeaf(_))));
        assert!(matches!(eval_linear(&word("(u (v {1}) (v {3}))"), &lp), Err(EngineError::ColorOverflow { .. })));
        assert!(matches!(eval_linear(&word("(v {1} w=1/2)"), &lp), Err(EngineError::Weight(..))));
    }

    proptest! {
        #[test]
        fn linear_and_tree_evaluation_agree(n in 1usize..12, fam in 0usize..4) {
            let fam = [Family::Path, Family::Cycle, Family::Complete, Family::Star][fam];
            let e = generate(&FamilySpec::new(fam, n)).unwrap();
            let w = as_linear(&e).unwrap();
            let k = 3;
            let alphabet: Vec<_> = e.recolor_alphabet().into_iter().collect();
            let p = mis_presentation(k, &alphabet).unwrap();
            prop_assert_eq!(eval_linear(&w, &linearize(&p)).unwrap(), eval_presentation(&e, &p).unwrap());
            let g = eval_word(&w, k).unwrap();
            let lp = count_is_presentation(k, &alphabet).unwrap();
            prop_assert_eq!(eval_linear(&w, &lp).unwrap(), Nat(independent_set_count(&g).unwrap()));
        }
    }
}
