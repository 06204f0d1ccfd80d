use std::collections::BTreeMap;

use super::{BilinearTable, EngineError, LeafVec, LinearPresentation, Presentation, SparseMatrix};
use crate::graphs::{ColorSet, RecolorMap};
use crate::semiring::{Nat, Semiring, TropicalValue};

/// Largest color count accepted by the subset-state presentations.
pub const MAX_BUILTIN_K: usize = 12;

/// Total stored table entries allowed for one presentation.
pub const TABLE_ENTRY_GUARD: usize = 1 << 23;

/// Presentation over subset states `S ⊆ [k]`, the colors occupied by a
/// chosen independent set. Over max-plus it computes the maximum weight
/// of an independent set; over the naturals it counts weighted
/// independent sets. Leaves must carry at most one color and every map
/// in `alphabet` must be plain.
pub fn independent_set_presentation<S: Semiring>(k: usize, alphabet: &[RecolorMap]) -> Result<Presentation<S>, EngineError> {
    if k > MAX_BUILTIN_K {
        return Err(EngineError::Guard { what: "presentation colors", value: k, limit: MAX_BUILTIN_K });
    }
    let m = 1usize << k;
    let pairs = k * k.saturating_sub(1) / 2;
    let estimate = m * m * (1 + pairs);
    if estimate > TABLE_ENTRY_GUARD {
        return Err(EngineError::Guard { what: "presentation table entries", value: estimate, limit: TABLE_ENTRY_GUARD });
    }
    let state = |s: ColorSet| s.0 as usize;
    let unit = |r: usize| {
        let mut v = vec![S::zero(); m];
        v[r] = S::one();
        v
    };

    let mut leaf = BTreeMap::new();
    leaf.insert(ColorSet::EMPTY, LeafVec { base: unit(0), dir: Some(unit(0)) });
    for c in 1..=k {
        let s = ColorSet::single(c);
        leaf.insert(s, LeafVec { base: unit(0), dir: Some(unit(state(s))) });
    }

    let union_tab = BilinearTable::from_fn(m, |p, q| vec![(p | q, S::one())]);
    let mut join_tab = BTreeMap::new();
    for i in 1..=k {
        for j in i + 1..=k {
            let both = state(ColorSet::from_colors([i, j]));
            let tab = BilinearTable::from_fn(m, |p, q| {
                let r = p | q;
                if r & both == both {
                    vec![]
                } else {
                    vec![(r, S::one())]
                }
            });
            join_tab.insert((i, j), tab);
        }
    }

    let mut recolor_tab = BTreeMap::new();
    for map in alphabet {
        if !map.is_plain() {
            return Err(EngineError::UnsupportedRecolor(map.to_string()));
        }
        if map.max_color() > k {
            return Err(EngineError::ColorOverflow { color: map.max_color(), k });
        }
        let entries = (0..m).map(|p| (p, state(map.apply_to_union(ColorSet(p as u32))), S::one()));
        recolor_tab.insert(map.clone(), SparseMatrix::from_entries(m, entries));
    }

    Ok(Presentation {
        k,
        m,
        default_weight: S::from_count(1),
        leaf,
        union_tab,
        join_tab,
        recolor_tab,
        out: vec![S::one(); m],
    })
}

/// Maximum-weight independent set over max-plus.
pub fn mis_presentation(k: usize, alphabet: &[RecolorMap]) -> Result<Presentation<TropicalValue>, EngineError> {
    independent_set_presentation(k, alphabet)
}

/// Independent-set counting over the naturals on linear words.
pub fn count_is_presentation(k: usize, alphabet: &[RecolorMap]) -> Result<LinearPresentation<Nat>, EngineError> {
    Ok(super::linearize(&independent_set_presentation::<Nat>(k, alphabet)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Q;

    #[test]
    fn join_table_kills_co_occupied_colors() {
        let p = mis_presentation(3, &[]).unwrap();
        let tab = p.join_table(2, 1).unwrap();
        let both = ColorSet::from_colors([1, 2]).0 as usize;
        for a in 0..p.m {
            for b in 0..p.m {
                assert!(tab.cell(a, b)[both].is_zero());
                assert_eq!(tab.cell(a, b), tab.cell(b, a));
            }
        }
        assert!(p.union_tab.is_symmetric());
        assert!(!p.union_tab.is_sparse());
        assert!(mis_presentation(4, &[]).unwrap().union_tab.is_sparse());
        assert_eq!(p.union_tab.cell(1, 2)[3], TropicalValue::Finite(Q::from_integer(0)));
    }

    #[test]
    fn guards_and_plainness() {
        assert!(matches!(mis_presentation(13, &[]), Err(EngineError::Guard { .. })));
        assert!(matches!(mis_presentation(11, &[]), Err(EngineError::Guard { .. })));
        let split = RecolorMap::new([(ColorSet::single(1), ColorSet::from_colors([1, 2]))]);
        assert!(matches!(mis_presentation(2, &[split]), Err(EngineError::UnsupportedRecolor(_))));
        let wide = RecolorMap::new([(ColorSet::single(1), ColorSet::single(3))]);
        assert!(matches!(mis_presentation(2, &[wide]), Err(EngineError::ColorOverflow { .. })));
        assert!(mis_presentation(8, &[]).is_ok());
    }
}
