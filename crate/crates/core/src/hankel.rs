//! Finite truncations of Hankel matrices `H(f,□)_{ij} = f(Xᵢ □ Xⱼ)` over
//! graph enumerations, with row ranks and generator checks.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graphs::{enumerate_colored_graphs, enumerate_labeled_graphs, ColoredGraph, GraphError, GraphOp};
use crate::params::{Param, ParamError};
use crate::semiring::linalg::{extract_basis, Matrix, RowAlgebra};
use crate::semiring::Semiring;

/// Default limit on the matrix side (number of enumerated graphs).
pub const DEFAULT_GUARD_CAP: usize = 512;

/// The matrix-side guard, overridden by the `TGA_GUARD_CAP` environment
/// variable when it holds a positive integer.
pub fn guard_cap() -> usize {
    std::env::var("TGA_GUARD_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&c: &usize| c > 0)
        .unwrap_or(DEFAULT_GUARD_CAP)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HankelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("row index {0} out of range")]
    BadIndex(usize),
    #[error("truncation size {0} exceeds the built size {1}")]
    BadSize(usize, usize),
    #[error("no truncation sizes given")]
    NoSizes,
}

/// `H(f,□)` restricted to all graphs with at most `max_n` vertices.
#[derive(Debug, Clone)]
pub struct TruncatedHankel<S> {
    pub op: GraphOp,
    pub k: usize,
    pub max_n: usize,
    pub param: String,
    pub index: Vec<ColoredGraph>,
    pub entries: Matrix<S>,
}

/// Row/column index for `op`: label-shaped graphs for gluing, all
/// `k`-colored graphs otherwise.
pub fn index_for(op: &GraphOp, k: usize, max_n: usize, cap: usize) -> Result<Vec<ColoredGraph>, HankelError> {
    Ok(match op {
        GraphOp::Glue => enumerate_labeled_graphs(k, max_n, cap)?,
        _ => enumerate_colored_graphs(k, max_n, cap)?,
    })
}

/// Builds the truncation with an arbitrary parameter function.
pub fn build_hankel_with<S, F>(
    param: &str,
    f: F,
    op: &GraphOp,
    k: usize,
    max_n: usize,
    cap: usize,
) -> Result<TruncatedHankel<S>, HankelError>
where
    S: Semiring,
    F: Fn(&ColoredGraph) -> Result<S, ParamError> + Sync,
{
    let index = index_for(op, k, max_n, cap)?;
    let rows = index
        .par_iter()
        .map(|x| {
            index
                .iter()
                .map(|y| -> Result<S, HankelError> { Ok(f(&op.apply(x, y)?)?) })
                .collect::<Result<Vec<S>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let entries = Matrix::from_rows(rows).expect("square matrix of finite entries");
    Ok(TruncatedHankel { op: *op, k, max_n, param: param.to_string(), index, entries })
}

pub fn build_hankel<S: Semiring>(
    param: &Param,
    op: &GraphOp,
    k: usize,
    max_n: usize,
    cap: usize,
) -> Result<TruncatedHankel<S>, HankelError> {
    build_hankel_with(&param.to_string(), |g| param.eval::<S>(g), op, k, max_n, cap)
}

impl<S: Semiring> TruncatedHankel<S> {
    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Number of index graphs with at most `n` vertices (a prefix).
    pub fn prefix_len(&self, n: usize) -> usize {
        self.index.partition_point(|g| g.n() <= n)
    }

    /// The leading `len × len` block as rows.
    pub fn block(&self, len: usize) -> Vec<Vec<S>> {
        (0..len).map(|i| self.entries.row(i)[..len].to_vec()).collect()
    }

    /// Index of the first graph satisfying `pred`.
    pub fn find(&self, pred: impl Fn(&ColoredGraph) -> bool) -> Option<usize> {
        self.index.iter().position(pred)
    }
}

/// Ranks of the leading blocks up to each size in `sizes`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub param: String,
    pub op: String,
    pub sizes: Vec<usize>,
    pub ranks: Vec<usize>,
    pub basis_rows: Vec<usize>,
    pub stabilized: bool,
}

impl RankReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

pub fn rank_report<S: RowAlgebra>(h: &TruncatedHankel<S>, sizes: &[usize]) -> Result<RankReport, HankelError> {
    if sizes.is_empty() {
        return Err(HankelError::NoSizes);
    }
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let mut ranks = Vec::new();
    let mut basis_rows = Vec::new();
    for &n in &sizes {
        if n > h.max_n {
            return Err(HankelError::BadSize(n, h.max_n));
        }
        basis_rows = extract_basis(&h.block(h.prefix_len(n)));
        ranks.push(basis_rows.len());
    }
    let stabilized = ranks.len() >= 2 && ranks[ranks.len() - 1] == ranks[ranks.len() - 2];
    Ok(RankReport { param: h.param.clone(), op: h.op.to_string(), sizes, ranks, basis_rows, stabilized })
}

/// True iff every row is a combination of the candidate rows.
pub fn check_generators<S: RowAlgebra>(h: &TruncatedHankel<S>, candidates: &[usize]) -> Result<bool, HankelError> {
    if let Some(&bad) = candidates.iter().find(|&&c| c >= h.len()) {
        return Err(HankelError::BadIndex(bad));
    }
    let gens: Vec<&[S]> = candidates.iter().map(|&c| h.entries.row(c)).collect();
    Ok((0..h.len())
        .into_par_iter()
        .all(|i| S::solve_combination(&gens, h.entries.row(i)).is_some()))
}

/// Rows `Xᵢ`, columns the concatenated blocks `(□, Yⱼ)` for each operation
/// in `ops`; every single-operation matrix is a column block of it.
pub fn build_stacked_with<S, F>(
    f: F,
    ops: &[GraphOp],
    k: usize,
    max_n: usize,
    cap: usize,
) -> Result<(Vec<ColoredGraph>, Matrix<S>), HankelError>
where
    S: Semiring,
    F: Fn(&ColoredGraph) -> Result<S, ParamError> + Sync,
{
    let index = enumerate_colored_graphs(k, max_n, cap)?;
    let rows = index
        .par_iter()
        .map(|x| {
            let mut row = Vec::with_capacity(ops.len() * index.len());
            for op in ops {
                for y in &index {
                    row.push(f(&op.apply(x, y)?)?);
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, HankelError>>()?;
    Ok((index, Matrix::from_rows(rows).expect("finite entries")))
}

/// The binary operations available on `k`-colored graphs: union and every
/// join `η̄ᵢⱼ` with `i < j`.
pub fn all_ops(k: usize) -> Vec<GraphOp> {
    let mut ops = vec![GraphOp::Union];
    for i in 1..=k {
        for j in i + 1..=k {
            ops.push(GraphOp::Join(i, j));
        }
    }
    ops
}
