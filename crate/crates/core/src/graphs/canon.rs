use std::collections::BTreeMap;
use std::fmt;

use super::{ColorSet, ColoredGraph, GraphError};

/// Isomorphism tests and canonical forms are limited to this many vertices.
pub const ISO_GUARD: usize = 10;

/// Text identifying a colored-isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub String);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Color refinement starting from (color set, degree); returns a stable,
/// isomorphism-invariant class index per vertex.
fn refine(g: &ColoredGraph, adj: &[u64]) -> Vec<usize> {
    let n = g.n();
    let init: Vec<(u32, u32)> = (0..n).map(|v| (g.colors(v).0, adj[v].count_ones())).collect();
    let mut label = dense_ranks(&init);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| label[u]).collect();
                ns.sort_unstable();
                (label[v], ns)
            })
            .collect();
        let next = dense_ranks(&sigs);
        let before = label.iter().max().map_or(0, |m| m + 1);
        let after = next.iter().max().map_or(0, |m| m + 1);
        label = next;
        if after == before {
            return label;
        }
    }
}

fn dense_ranks<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

struct Search<'a> {
    adj: &'a [u64],
    cell_of_pos: Vec<usize>,
    label: Vec<usize>,
    twin_rep: Vec<usize>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, perm: &mut Vec<usize>, used: &mut u64, bits: &mut Vec<bool>, better: bool) {
        let p = perm.len();
        if p == self.cell_of_pos.len() {
            if better || self.best.is_none() {
                self.best = Some((bits.clone(), perm.clone()));
            }
            return;
        }
        let cell = self.cell_of_pos[p];
        let mut tried = 0u64;
        for v in 0..self.label.len() {
            if self.label[v] != cell || *used >> v & 1 == 1 {
                continue;
            }
            // Unused twins are interchangeable; try one per twin class.
            let rep = self.twin_rep[v];
            if tried >> rep & 1 == 1 {
                continue;
            }
            tried |= 1 << rep;
            let start = bits.len();
            for &u in perm.iter() {
                bits.push(self.adj[v] >> u & 1 == 1);
            }
            let mut now_better = better;
            let mut prune = false;
            if !better {
                if let Some((best, _)) = &self.best {
                    match bits[start..].cmp(&best[start..bits.len()]) {
                        std::cmp::Ordering::Less => now_better = true,
                        std::cmp::Ordering::Greater => prune = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            if !prune {
                perm.push(v);
                *used |= 1 << v;
                self.run(perm, used, bits, now_better);
                *used &= !(1 << v);
                perm.pop();
            }
            bits.truncate(start);
        }
    }
}

/// Canonical form together with a canonical ordering: `order[p]` is the
/// vertex placed at position `p`.
fn canonical_order(g: &ColoredGraph) -> Result<(CanonicalForm, Vec<usize>), GraphError> {
    let n = g.n();
    if n > ISO_GUARD {
        return Err(GraphError::Guard { what: "isomorphism vertex count", value: n, limit: ISO_GUARD });
    }
    let adj = g.adjacency_bits();
    let label = refine(g, &adj);
    let mut cell_of_pos: Vec<usize> = label.clone();
    cell_of_pos.sort_unstable();
    let twin_rep: Vec<usize> = (0..n)
        .map(|v| {
            (0..n)
                .find(|&u| {
                    label[u] == label[v] && (adj[u] & !(1 << v)) == (adj[v] & !(1 << u))
                })
                .unwrap()
        })
        .collect();
    let mut search = Search { adj: &adj, cell_of_pos, label: label.clone(), twin_rep, best: None };
    search.run(&mut Vec::with_capacity(n), &mut 0, &mut Vec::new(), false);
    let (bits, order) = search.best.expect("search visits at least one ordering");
    let colors: Vec<String> = order.iter().map(|&v| format!("{:x}", g.colors(v).0)).collect();
    let bit_text: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
    let text = format!("{:02}|{}|{}|{}", n, g.k(), colors.join(","), bit_text);
    Ok((CanonicalForm(text), order))
}

pub fn canonical_form(g: &ColoredGraph) -> Result<CanonicalForm, GraphError> {
    canonical_order(g).map(|(f, _)| f)
}

/// The graph renumbered into its canonical vertex order.
pub fn canonicalize(g: &ColoredGraph) -> Result<(CanonicalForm, ColoredGraph), GraphError> {
    let (form, order) = canonical_order(g)?;
    let mut perm = vec![0; g.n()];
    for (p, &v) in order.iter().enumerate() {
        perm[v] = p;
    }
    Ok((form, g.permuted(&perm)))
}

pub fn is_isomorphic(g1: &ColoredGraph, g2: &ColoredGraph) -> Result<bool, GraphError> {
    if g1.k() != g2.k() || g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    let mut c1: Vec<ColorSet> = g1.color_sets().to_vec();
    let mut c2: Vec<ColorSet> = g2.color_sets().to_vec();
    c1.sort();
    c2.sort();
    if c1 != c2 {
        return Ok(false);
    }
    Ok(canonical_form(g1)? == canonical_form(g2)?)
}

/// One representative per colored-isomorphism class with at most `max_n`
/// vertices, ordered by (vertex count, canonical form). Index 0 is the
/// empty graph. Fails once more than `cap` classes would be produced.
pub fn enumerate_colored_graphs(k: usize, max_n: usize, cap: usize) -> Result<Vec<ColoredGraph>, GraphError> {
    enumerate(k, max_n, cap, |_| true)
}

/// Like [`enumerate_colored_graphs`] restricted to label-shaped colorings
/// (each color on at most one vertex), i.e. k-labeled graphs.
pub fn enumerate_labeled_graphs(k: usize, max_n: usize, cap: usize) -> Result<Vec<ColoredGraph>, GraphError> {
    enumerate(k, max_n, cap, ColoredGraph::is_label_shaped)
}

fn enumerate(
    k: usize,
    max_n: usize,
    cap: usize,
    keep: impl Fn(&ColoredGraph) -> bool,
) -> Result<Vec<ColoredGraph>, GraphError> {
    if max_n > ISO_GUARD {
        return Err(GraphError::Guard { what: "enumeration vertex count", value: max_n, limit: ISO_GUARD });
    }
    let mut all = vec![ColoredGraph::empty(k)];
    let mut level = vec![ColoredGraph::empty(k)];
    let color_sets = 1u64 << k;
    for n in 1..=max_n {
        let mut found: BTreeMap<CanonicalForm, ColoredGraph> = BTreeMap::new();
        for g in &level {
            for cs in 0..color_sets {
                for nbrs in 0u64..(1 << (n - 1)) {
                    let mut h = g.clone();
                    let v = h.add_vertex(ColorSet(cs as u32))?;
                    for u in 0..n - 1 {
                        if nbrs >> u & 1 == 1 {
                            h.add_edge(u, v)?;
                        }
                    }
                    if !keep(&h) {
                        continue;
                    }
                    let (form, canon) = canonicalize(&h)?;
                    found.entry(form).or_insert(canon);
                    if all.len() + found.len() > cap {
                        return Err(GraphError::Guard {
                            what: "enumerated classes",
                            value: all.len() + found.len(),
                            limit: cap,
                        });
                    }
                }
            }
        }
        level = found.into_values().collect();
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn iso_examples() {
        let p3 = ColoredGraph::path(3);
        let p3b = ColoredGraph::from_edges(0, 3, &[(0, 2), (2, 1)]).unwrap();
        assert!(is_isomorphic(&p3, &p3b).unwrap());
        assert!(!is_isomorphic(&ColoredGraph::complete(3), &p3).unwrap());
        let a = ColoredGraph::single_vertex(2, ColorSet::single(1)).unwrap();
        let b = ColoredGraph::single_vertex(2, ColorSet::single(2)).unwrap();
        assert!(!is_isomorphic(&a, &b).unwrap());
        assert!(canonical_form(&ColoredGraph::path(11)).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let e = enumerate_colored_graphs(0, 1, 512).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].n(), 0);
        assert_eq!(enumerate_colored_graphs(0, 2, 512).unwrap().len(), 4);
        assert_eq!(enumerate_colored_graphs(1, 1, 512).unwrap().len(), 3);
        // unlabeled graphs on ≤4 vertices: 1 + 1 + 2 + 4 + 11
        assert_eq!(enumerate_colored_graphs(0, 4, 512).unwrap().len(), 19);
        assert!(enumerate_colored_graphs(2, 4, 10).is_err());
    }

    #[test]
    fn enumeration_is_ordered_and_distinct() {
        let e = enumerate_colored_graphs(1, 3, 512).unwrap();
        let forms: Vec<_> = e.iter().map(|g| (g.n(), canonical_form(g).unwrap())).collect();
        let mut sorted = forms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(forms, sorted);
    }

    #[test]
    fn twin_heavy_graphs_are_fast() {
        assert!(canonical_form(&ColoredGraph::new(0, 10)).is_ok());
        assert!(canonical_form(&ColoredGraph::complete(10)).is_ok());
    }

    proptest! {
        #[test]
        fn canonical_form_is_permutation_invariant(
            n in 0usize..8,
            edges in prop::collection::vec((0usize..8, 0usize..8), 0..20),
            colors in prop::collection::vec(0u32..4, 8),
            seed in any::<u64>(),
        ) {
            let mut g = ColoredGraph::new(2, n);
            for v in 0..n { g.set_colors(v, ColorSet(colors[v])).unwrap(); }
            for (u, v) in edges { if u < n && v < n && u != v { g.add_edge(u, v).unwrap(); } }
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = g.permuted(&perm);
            prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
            let (_, c) = canonicalize(&g).unwrap();
            prop_assert_eq!(canonical_form(&c).unwrap(), canonical_form(&g).unwrap());
        }
    }
}
