use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{eval_presentation, BilinearTable, EngineError, LeafVec, Presentation, SparseMatrix};
use crate::expr::{eval_expr, CwExpr};
use crate::graphs::{recolor, write_graph, ColorSet, ColoredGraph, GraphOp, RecolorMap};
use crate::hankel::{all_ops, build_stacked_with};
use crate::params::ParamError;
use crate::semiring::linalg::{extract_basis, principal_solution, solve_combination};
use crate::semiring::{Semiring, TropicalValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthOptions {
    pub k: usize,
    /// Largest graph size in the truncation.
    pub max_n: usize,
    /// Matrix-side guard for the enumeration.
    pub cap: usize,
    /// Fail on the first representation that is not solvable instead of
    /// recording it in the diagnostics.
    pub strict: bool,
}

/// What the synthesizer found. Agreement on the pool is evidence, not a
/// proof: the truncation may miss generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SynthDiagnostics {
    pub experimental: bool,
    pub index_size: usize,
    pub basis_size: usize,
    /// Basis graphs in the graph text format.
    pub basis: Vec<String>,
    pub unsolved: Vec<String>,
    pub pool_size: usize,
    pub pool_agree: usize,
    pub pool_disagree: usize,
    /// Pool expressions the presentation could not evaluate.
    pub pool_unsupported: usize,
}

impl SynthDiagnostics {
    pub fn all_solvable(&self) -> bool {
        self.unsolved.is_empty()
    }
}

/// Builds a max-plus presentation of `f` from the stacked union/join
/// Hankel truncation over `k`-colored graphs with at most `max_n` vertices.
/// Recoloring tables are built for every map used in `pool`.
pub fn synthesize_presentation<F>(
    f: F,
    opts: SynthOptions,
    pool: &[CwExpr],
) -> Result<(Presentation<TropicalValue>, SynthDiagnostics), EngineError>
where
    F: Fn(&ColoredGraph) -> Result<TropicalValue, ParamError> + Sync,
{
    let k = opts.k;
    let ops = all_ops(k);
    let (index, h) = build_stacked_with(&f, &ops, k, opts.max_n, opts.cap)?;
    let rows = h.row_vecs();
    let basis_ids = extract_basis(&rows);
    let basis: Vec<&ColoredGraph> = basis_ids.iter().map(|&i| &index[i]).collect();
    let basis_rows: Vec<&[TropicalValue]> = basis_ids.iter().map(|&i| rows[i].as_slice()).collect();
    let m = basis.len();

    let row_of = |g: &ColoredGraph| -> Result<Vec<TropicalValue>, EngineError> {
        let mut row = Vec::with_capacity(h.cols());
        for op in &ops {
            for y in &index {
                row.push(f(&op.apply(g, y).map_err(ParamError::from)?)?);
            }
        }
        Ok(row)
    };
    // Coordinates of `g` in the basis; the principal solution when `g` is
    // not representable, flagged by `false`.
    let solve = |g: &ColoredGraph| -> Result<(Vec<TropicalValue>, bool), EngineError> {
        let target = row_of(g)?;
        Ok(match solve_combination(&basis_rows, &target) {
            Some(c) => (c, true),
            None => (principal_solution(&basis_rows, &target), false),
        })
    };

    let mut unsolved = Vec::new();
    let mut record = |what: String, (coords, exact): (Vec<TropicalValue>, bool)| -> Result<Vec<TropicalValue>, EngineError> {
        if !exact {
            if opts.strict {
                return Err(EngineError::Unsolvable(what));
            }
            unsolved.push(what);
        }
        Ok(coords)
    };

    let mut leaf = BTreeMap::new();
    for colors in std::iter::once(ColorSet::EMPTY).chain((1..=k).map(ColorSet::single)) {
        let g = ColoredGraph::single_vertex(k, colors).map_err(ParamError::from)?;
        let coords = record(format!("leaf {colors}"), solve(&g)?)?;
        leaf.insert(colors, LeafVec::fixed(coords));
    }

    let mut union_tab = None;
    let mut join_tab = BTreeMap::new();
    for op in &ops {
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|p| (p..m).map(move |q| (p, q))).collect();
        let solved = pairs
            .par_iter()
            .map(|&(p, q)| {
                let g = op.apply(basis[p], basis[q]).map_err(ParamError::from)?;
                solve(&g)
            })
            .collect::<Result<Vec<_>, EngineError>>()?;
        let mut cells = BTreeMap::new();
        for ((p, q), coords) in pairs.into_iter().zip(solved) {
            let c = record(format!("{op} of basis {p} and {q}"), coords)?;
            cells.insert((p, q), c.clone());
            cells.insert((q, p), c);
        }
        let tab = BilinearTable::from_fn(m, |p, q| cells[&(p, q)].iter().cloned().enumerate().collect());
        match *op {
            GraphOp::Join(i, j) => {
                join_tab.insert((i, j), tab);
            }
            _ => union_tab = Some(tab),
        }
    }
    let union_tab = union_tab.expect("union is always present");

    let alphabet: BTreeSet<RecolorMap> = pool.iter().flat_map(CwExpr::recolor_alphabet).collect();
    let mut recolor_tab = BTreeMap::new();
    for map in alphabet {
        if map.max_color() > k {
            record(format!("recoloring {map} exceeds {k} colors"), (vec![TropicalValue::Bottom; m], false))?;
            continue;
        }
        let mut rows = Vec::with_capacity(m);
        for (p, g) in basis.iter().enumerate() {
            let image = recolor(&map, g).map_err(ParamError::from)?;
            rows.push(record(format!("recoloring {map} of basis {p}"), solve(&image)?)?);
        }
        recolor_tab.insert(map, SparseMatrix::from_dense(&rows));
    }

    let out = basis.iter().map(|g| f(g)).collect::<Result<Vec<_>, _>>()?;
    let p = Presentation {
        k,
        m,
        default_weight: TropicalValue::one(),
        leaf,
        union_tab,
        join_tab,
        recolor_tab,
        out,
    };

    let (mut agree, mut disagree, mut unsupported) = (0, 0, 0);
    for e in pool {
        let got = match eval_presentation(e, &p) {
            Ok(v) => v,
            Err(_) => {
                unsupported += 1;
                continue;
            }
        };
        let g = eval_expr(e, k)?;
        if got == f(&g)? {
            agree += 1;
        } else {
            disagree += 1;
        }
    }
    let diagnostics = SynthDiagnostics {
        experimental: true,
        index_size: index.len(),
        basis_size: m,
        basis: basis.iter().map(|g| write_graph(g)).collect(),
        unsolved,
        pool_size: pool.len(),
        pool_agree: agree,
        pool_disagree: disagree,
        pool_unsupported: unsupported,
    };
    Ok((p, diagnostics))
}
