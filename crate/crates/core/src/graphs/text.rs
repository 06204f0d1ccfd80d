//! Line-oriented graph text: `g <n> <k>`, then `c <v> <color>...` and
//! `e <u> <v>` lines. Vertices are 0-based, colors 1-based.

use std::fmt::Write;

use super::{ColorSet, ColoredGraph, GraphError};

fn err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Format { line, msg: msg.into() }
}

fn num(tok: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    tok.ok_or_else(|| err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| err(line, format!("bad {what}")))
}

pub fn read_graph(text: &str) -> Result<ColoredGraph, GraphError> {
    let mut g: Option<ColoredGraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let tag = toks.next().unwrap();
        match (tag, g.as_mut()) {
            ("g", None) => {
                let n = num(toks.next(), line, "vertex count")?;
                let k = num(toks.next(), line, "color count")?;
                if k > super::MAX_COLORS {
                    return Err(err(line, format!("at most {} colors", super::MAX_COLORS)));
                }
                g = Some(ColoredGraph::new(k, n));
            }
            ("g", Some(_)) => return Err(err(line, "duplicate header")),
            (_, None) => return Err(err(line, "expected `g <n> <k>` header")),
            ("c", Some(g)) => {
                let v = num(toks.next(), line, "vertex")?;
                let mut cs = ColorSet::EMPTY;
                for t in toks.by_ref() {
                    let c: usize = t.parse().map_err(|_| err(line, "bad color"))?;
                    if c == 0 || c > g.k() {
                        return Err(err(line, format!("color {c} out of range")));
                    }
                    cs = cs.union(ColorSet::single(c));
                }
                g.set_colors(v, cs).map_err(|e| err(line, e.to_string()))?;
            }
            ("e", Some(g)) => {
                let u = num(toks.next(), line, "vertex")?;
                let v = num(toks.next(), line, "vertex")?;
                g.add_edge(u, v).map_err(|e| err(line, e.to_string()))?;
            }
            (t, Some(_)) => return Err(err(line, format!("unknown line tag `{t}`"))),
        }
        if toks.next().is_some() {
            return Err(err(line, "trailing tokens"));
        }
    }
    g.ok_or_else(|| err(0, "empty input"))
}

pub fn write_graph(g: &ColoredGraph) -> String {
    let mut out = format!("g {} {}\n", g.n(), g.k());
    for v in 0..g.n() {
        let cs = g.colors(v);
        if !cs.is_empty() {
            let _ = write!(out, "c {v}");
            for c in cs.iter() {
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn read_write() {
        let text = "# a colored path\ng 3 2\nc 0 1\nc 2 1 2\n\ne 0 1\ne 1 2 # tail\n";
        let g = read_graph(text).unwrap();
        assert_eq!((g.n(), g.k(), g.edge_count()), (3, 2, 2));
        assert_eq!(g.colors(1), ColorSet::EMPTY);
        assert_eq!(g.colors(2), ColorSet::from_colors([1, 2]));
        assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_lines() {
        assert!(matches!(read_graph("g 2 1\ne 0 0\n"), Err(GraphError::Format { line: 2, .. })));
        assert!(matches!(read_graph("e 0 1\n"), Err(GraphError::Format { line: 1, .. })));
        assert!(matches!(read_graph("g 2 1\nc 0 3\n"), Err(GraphError::Format { line: 2, .. })));
    }
}
