use super::ColoredGraph;

fn connected_without(adj: &[Vec<usize>], removed: &[bool]) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|&v| !removed[v]) else {
        return true;
    };
    let mut seen = removed.to_vec();
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Reachability; the empty graph counts as connected.
pub fn is_connected(g: &ColoredGraph) -> bool {
    connected_without(&g.neighbors(), &vec![false; g.n()])
}

/// True iff no set of at most `kk` vertices disconnects the rest.
/// `kk = 0` is plain connectivity; a graph too small to be disconnected by
/// any admissible removal (e.g. `K₁`) is vacuously `kk`-connected.
pub fn is_k_connected(g: &ColoredGraph, kk: usize) -> bool {
    fn go(adj: &[Vec<usize>], removed: &mut Vec<bool>, from: usize, left: usize) -> bool {
        if !connected_without(adj, removed) {
            return false;
        }
        if left == 0 {
            return true;
        }
        for v in from..adj.len() {
            removed[v] = true;
            let ok = go(adj, removed, v + 1, left - 1);
            removed[v] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    let adj = g.neighbors();
    go(&adj, &mut vec![false; g.n()], 0, kk)
}

/// Every vertex has degree exactly `r`.
pub fn is_r_regular(g: &ColoredGraph, r: usize) -> bool {
    g.degrees().iter().all(|&d| d == r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectivity_examples() {
        let c4 = ColoredGraph::cycle(4);
        assert!(is_k_connected(&c4, 1));
        assert!(!is_k_connected(&c4, 2));
        assert!(!is_k_connected(&ColoredGraph::new(0, 2), 0));
        for kk in 1..5 {
            assert!(is_k_connected(&ColoredGraph::new(0, 1), kk));
        }
        assert!(is_connected(&ColoredGraph::empty(0)));
        assert!(is_k_connected(&ColoredGraph::complete(4), 3));
        assert!(!is_k_connected(&ColoredGraph::path(4), 1));
    }

    #[test]
    fn regularity() {
        assert!(is_r_regular(&ColoredGraph::cycle(5), 2));
        assert!(!is_r_regular(&ColoredGraph::path(3), 2));
        assert!(is_r_regular(&ColoredGraph::complete(4), 3));
    }
}
