//! Row-semimodule linear algebra: residuation, solvability of
//! `⊕ⱼ xⱼ ⊗ rowⱼ = target`, basis extraction and row-rank.
//!
//! Max-plus uses the principal-solution test: the greatest sub-solution
//! `x̂ⱼ = min_i (targetᵢ − rowⱼᵢ)` reproduces the target iff any solution
//! exists. Min-plus is handled through negation, the rationals through
//! Gaussian elimination, and the naturals through an exact bounded search.

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use super::{Boolean, MinPlus, Nat, Rat, Semiring, TropicalValue, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("entry ({row},{col}) is +inf")]
    TopEntry { row: usize, col: usize },
}

/// Dense row-major matrix over a semiring.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type TropicalMatrix = Matrix<TropicalValue>;

impl<S: Semiring> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged { row: r, len: row.len(), expected: cols });
            }
            for (c, v) in row.iter().enumerate() {
                if is_top(v) {
                    return Err(MatrixError::TopEntry { row: r, col: c });
                }
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Principal submatrix on the given (row, column) index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

fn is_top<S: 'static>(v: &S) -> bool {
    (v as &dyn std::any::Any)
        .downcast_ref::<TropicalValue>()
        .is_some_and(|t| *t == TropicalValue::Top)
}

/// Greatest `x` with `a ⊗ x ≤ b` in max-plus.
pub fn residual(b: TropicalValue, a: TropicalValue) -> TropicalValue {
    use TropicalValue::*;
    match (b, a) {
        (_, Bottom) => Top,
        (Bottom, _) => Bottom,
        (Top, _) => Top,
        (Finite(_), Top) => Bottom,
        (Finite(b), Finite(a)) => Finite(b - a),
    }
}

/// `⊕ⱼ coeffsⱼ ⊗ rowsⱼ`; the empty combination is the all-zero vector.
pub fn combine<S: Semiring, R: AsRef<[S]>>(coeffs: &[S], rows: &[R], len: usize) -> Vec<S> {
    assert_eq!(coeffs.len(), rows.len(), "coefficient count mismatch");
    let mut out = vec![S::zero(); len];
    for (c, row) in coeffs.iter().zip(rows) {
        let row = row.as_ref();
        assert_eq!(row.len(), len, "row length mismatch");
        if c.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(row) {
            if !v.is_zero() {
                *o = o.plus(&c.times(v));
            }
        }
    }
    out
}

/// The principal (greatest) sub-solution of `⊕ⱼ xⱼ ⊗ rowsⱼ ≤ target`.
/// Rows that constrain nothing get `Bottom` instead of `Top`.
pub fn principal_solution<R: AsRef<[TropicalValue]>>(rows: &[R], target: &[TropicalValue]) -> Vec<TropicalValue> {
    rows.iter()
        .map(|row| {
            let row = row.as_ref();
            assert_eq!(row.len(), target.len(), "row length mismatch");
            let mut best = TropicalValue::Top;
            for (t, r) in target.iter().zip(row) {
                if *r == TropicalValue::Bottom {
                    continue;
                }
                let x = residual(*t, *r);
                if x < best {
                    best = x;
                    if best == TropicalValue::Bottom {
                        break;
                    }
                }
            }
            if best == TropicalValue::Top {
                TropicalValue::Bottom
            } else {
                best
            }
        })
        .collect()
}

/// Coefficients expressing `target` over `rows` in max-plus, if any exist.
pub fn solve_combination<R: AsRef<[TropicalValue]>>(rows: &[R], target: &[TropicalValue]) -> Option<Vec<TropicalValue>> {
    let x = principal_solution(rows, target);
    (combine(&x, rows, target.len()) == target).then_some(x)
}

/// Semirings with a decision procedure for row-combination membership.
pub trait RowAlgebra: Semiring {
    fn solve_combination<R: AsRef<[Self]>>(rows: &[R], target: &[Self]) -> Option<Vec<Self>>;

    /// Normal form up to invertible scaling: rows with equal keys generate
    /// each other. `None` for rows equal to the empty combination.
    fn scale_key(row: &[Self]) -> Option<Vec<Self>>;
}

impl RowAlgebra for TropicalValue {
    fn solve_combination<R: AsRef<[Self]>>(rows: &[R], target: &[Self]) -> Option<Vec<Self>> {
        solve_combination(rows, target)
    }

    fn scale_key(row: &[Self]) -> Option<Vec<Self>> {
        let first = row.iter().find_map(TropicalValue::finite)?;
        let shift = TropicalValue::Finite(-first);
        Some(row.iter().map(|v| v.times(&shift)).collect())
    }
}

impl RowAlgebra for MinPlus {
    fn solve_combination<R: AsRef<[Self]>>(rows: &[R], target: &[Self]) -> Option<Vec<Self>> {
        let dual_rows: Vec<Vec<TropicalValue>> =
            rows.iter().map(|r| r.as_ref().iter().map(MinPlus::to_max_plus).collect()).collect();
        let dual_target: Vec<TropicalValue> = target.iter().map(MinPlus::to_max_plus).collect();
        solve_combination(&dual_rows, &dual_target)
            .map(|x| x.iter().map(TropicalValue::to_min_plus).collect())
    }

    fn scale_key(row: &[Self]) -> Option<Vec<Self>> {
        let dual: Vec<TropicalValue> = row.iter().map(MinPlus::to_max_plus).collect();
        TropicalValue::scale_key(&dual).map(|k| k.iter().map(TropicalValue::to_min_plus).collect())
    }
}

impl RowAlgebra for Boolean {
    fn solve_combination<R: AsRef<[Self]>>(rows: &[R], target: &[Self]) -> Option<Vec<Self>> {
        // Principal solution: row j may be used iff its support lies in the target's.
        let x: Vec<Boolean> = rows
            .iter()
            .map(|row| {
                let row = row.as_ref();
                assert_eq!(row.len(), target.len(), "row length mismatch");
                Boolean(row.iter().any(|r| r.0) && row.iter().zip(target).all(|(r, t)| !r.0 || t.0))
            })
            .collect();
        (combine(&x, rows, target.len()) == target).then_some(x)
    }

    fn scale_key(row: &[Self]) -> Option<Vec<Self>> {
        row.iter().any(|b| b.0).then(|| row.to_vec())
    }
}

impl RowAlgebra for Rat {
    fn solve_combination<R: AsRef<[Self]>>(rows: &[R], target: &[Self]) -> Option<Vec<Self>> {
        let unknowns = rows.len();
        let eqs = target.len();
        // Augmented system: one equation per coordinate, one unknown per row.
        let mut a: Vec<Vec<Q>> = (0..eqs)
            .map(|i| {
                let mut eq: Vec<Q> = rows
                    .iter()
                    .map(|r| {
                        let r = r.as_ref();
                        assert_eq!(r.len(), eqs, "row length mismatch");
                        r[i].0
                    })
                    .collect();
                eq.push(target[i].0);
                eq
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..unknowns {
            let Some(p) = (r..eqs).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for v in a[r].iter_mut() {
                *v *= inv;
            }
            for i in 0..eqs {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c];
                    for j in 0..=unknowns {
                        let d = a[r][j] * f;
                        a[i][j] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == eqs {
                break;
            }
        }
        if a[r..].iter().any(|eq| !eq[unknowns].is_zero()) {
            return None;
        }
        let mut x = vec![Rat(Q::zero()); unknowns];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = Rat(a[row][unknowns]);
        }
        Some(x)
    }

    fn scale_key(row: &[Self]) -> Option<Vec<Self>> {
        let first = row.iter().find(|v| !v.0.is_zero())?.0;
        Some(row.iter().map(|v| Rat(v.0 / first)).collect())
    }
}

impl RowAlgebra for Nat {
    /// Exact: every useful coefficient of row j is bounded by
    /// `min_i target_i / row_ji` over the row's support.
    fn solve_combination<R: AsRef<[Self]>>(rows: &[R], target: &[Self]) -> Option<Vec<Self>> {
        fn search(rows: &[&[Nat]], j: usize, rest: &mut Vec<u64>, x: &mut Vec<Nat>) -> bool {
            if rest.iter().all(|&v| v == 0) {
                return true;
            }
            if j == rows.len() {
                return false;
            }
            // Every remaining positive coordinate must be reachable by some later row.
            for (i, &v) in rest.iter().enumerate() {
                if v > 0 && !rows[j..].iter().any(|r| r[i].0 > 0) {
                    return false;
                }
            }
            let row = &rows[j];
            let cap = row
                .iter()
                .zip(rest.iter())
                .filter(|(r, _)| r.0 > 0)
                .map(|(r, t)| t / r.0)
                .min();
            let Some(cap) = cap else {
                return search(rows, j + 1, rest, x);
            };
            for c in (0..=cap).rev() {
                for (t, r) in rest.iter_mut().zip(row.iter()) {
                    *t -= c * r.0;
                }
                x[j] = Nat(c);
                if search(rows, j + 1, rest, x) {
                    return true;
                }
                for (t, r) in rest.iter_mut().zip(row.iter()) {
                    *t += c * r.0;
                }
            }
            x[j] = Nat(0);
            false
        }
        let rows: Vec<&[Nat]> = rows.iter().map(AsRef::as_ref).collect();
        for r in &rows {
            assert_eq!(r.len(), target.len(), "row length mismatch");
        }
        let mut rest: Vec<u64> = target.iter().map(|t| t.0).collect();
        let mut x = vec![Nat(0); rows.len()];
        search(&rows, 0, &mut rest, &mut x).then_some(x)
    }

    fn scale_key(row: &[Self]) -> Option<Vec<Self>> {
        row.iter().any(|v| v.0 > 0).then(|| row.to_vec())
    }
}

/// Repeatedly drops the lowest-index row expressible by the remaining rows;
/// returns the surviving indices in increasing order.
///
/// A row that is not expressible by some set stays inexpressible by every
/// subset, so one ascending pass realises the repeated removal. Rows that are
/// scaling-equivalent to a later row are removed without solving.
pub fn extract_basis<S: RowAlgebra>(rows: &[Vec<S>]) -> Vec<usize> {
    let n = rows.len();
    let mut alive = vec![true; n];
    let mut last_of_class: HashMap<String, usize> = HashMap::new();
    let mut class_of = vec![None; n];
    for (i, row) in rows.iter().enumerate() {
        match S::scale_key(row) {
            None => alive[i] = false,
            Some(key) => {
                let key = format!("{key:?}");
                last_of_class.insert(key.clone(), i);
                class_of[i] = Some(key);
            }
        }
    }
    for i in 0..n {
        if let Some(key) = &class_of[i] {
            if last_of_class[key] != i {
                alive[i] = false;
            }
        }
    }
    for i in 0..n {
        if !alive[i] {
            continue;
        }
        let others: Vec<&[S]> = (0..n).filter(|&j| j != i && alive[j]).map(|j| rows[j].as_slice()).collect();
        if S::solve_combination(&others, &rows[i]).is_some() {
            alive[i] = false;
        }
    }
    (0..n).filter(|&i| alive[i]).collect()
}

pub fn row_rank<S: RowAlgebra>(m: &Matrix<S>) -> usize {
    extract_basis(&m.row_vecs()).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use TropicalValue::{Bottom, Top};

    fn t(n: i64) -> TropicalValue {
        TropicalValue::int(n)
    }

    #[test]
    fn residual_conventions() {
        assert_eq!(residual(t(3), t(1)), t(2));
        assert_eq!(residual(t(3), Bottom), Top);
        assert_eq!(residual(Bottom, Bottom), Top);
        assert_eq!(residual(Bottom, t(0)), Bottom);
    }

    #[test]
    fn solve_examples() {
        let rows = vec![vec![t(0), t(1)], vec![t(1), t(0)]];
        let x = solve_combination(&rows, &[t(2), t(3)]).unwrap();
        assert_eq!(x, vec![t(2), t(1)]);
        assert_eq!(combine(&x, &rows, 2), vec![t(2), t(3)]);
        assert_eq!(principal_solution(&rows, &[t(5), Bottom]), vec![Bottom, Bottom]);
        assert!(solve_combination(&rows, &[t(5), Bottom]).is_none());
        let v = vec![t(4), Bottom, t(-1)];
        assert_eq!(solve_combination(&[v.clone()], &v), Some(vec![t(0)]));
    }

    #[test]
    fn all_bottom_row_gets_bottom_coefficient() {
        let rows = vec![vec![Bottom, Bottom], vec![t(0), t(0)]];
        assert_eq!(solve_combination(&rows, &[t(1), t(1)]), Some(vec![Bottom, t(1)]));
        assert_eq!(solve_combination::<Vec<TropicalValue>>(&[], &[Bottom, Bottom]), Some(vec![]));
    }

    #[test]
    fn basis_examples() {
        let rows = vec![vec![t(0), t(0)], vec![t(1), t(1)], vec![t(0), Bottom]];
        // (0,0) and (1,1) are mutual multiples; the later one survives the scan.
        assert_eq!(extract_basis(&rows), vec![1, 2]);
        assert_eq!(extract_basis(&[vec![Bottom, Bottom], vec![Bottom, Bottom]]), Vec::<usize>::new());
        assert_eq!(extract_basis(&[vec![t(3), Bottom]]), vec![0]);
    }

    #[test]
    fn lowest_index_removed_first() {
        // Row 0 = 0⊗row1 ⊕ 0⊗row2, nothing else is removable.
        let rows = vec![vec![t(0), t(0)], vec![t(0), Bottom], vec![Bottom, t(0)]];
        assert_eq!(extract_basis(&rows), vec![1, 2]);
    }

    #[test]
    fn rank_examples() {
        let id = Matrix::from_rows(vec![vec![t(0), Bottom], vec![Bottom, t(0)]]).unwrap();
        assert_eq!(row_rank(&id), 2);
        let same = Matrix::from_rows(vec![vec![t(1), t(2)]; 3]).unwrap();
        assert_eq!(row_rank(&same), 1);
        let scaled = Matrix::from_rows(vec![vec![t(0), t(0)], vec![t(1), t(1)], vec![t(2), t(2)]]).unwrap();
        assert_eq!(row_rank(&scaled), 1);
    }

    #[test]
    fn matrix_rejects_top_and_ragged() {
        assert!(matches!(
            Matrix::from_rows(vec![vec![t(0), Top]]),
            Err(MatrixError::TopEntry { row: 0, col: 1 })
        ));
        assert!(Matrix::from_rows(vec![vec![t(0)], vec![]]).is_err());
    }

    #[test]
    fn rational_solver() {
        let r = |n: i64| Rat(Q::from_integer(n));
        let rows = vec![vec![r(1), r(0), r(1)], vec![r(0), r(1), r(1)]];
        let x = Rat::solve_combination(&rows, &[r(2), r(-3), r(-1)]).unwrap();
        assert_eq!(combine(&x, &rows, 3), vec![r(2), r(-3), r(-1)]);
        assert!(Rat::solve_combination(&rows, &[r(1), r(1), r(0)]).is_none());
        let dup = vec![vec![r(1), r(2)], vec![r(2), r(4)], vec![r(0), r(0)]];
        assert_eq!(extract_basis(&dup), vec![1]);
    }

    #[test]
    fn natural_solver_is_exact() {
        let n = Nat;
        let rows = vec![vec![n(2), n(0)], vec![n(1), n(1)]];
        assert!(Nat::solve_combination(&rows, &[n(5), n(1)]).is_some());
        assert!(Nat::solve_combination(&rows, &[n(1), n(2)]).is_none());
        assert!(Nat::solve_combination(&rows, &[n(0), n(0)]).is_some());
        // over ℕ, (2,2) generates (4,4) but not conversely
        assert_eq!(extract_basis(&[vec![n(4), n(4)], vec![n(2), n(2)]]), vec![1]);
    }

    #[test]
    fn boolean_and_min_plus_solvers() {
        let b = Boolean;
        let rows = vec![vec![b(true), b(false)], vec![b(false), b(true)]];
        assert!(Boolean::solve_combination(&rows, &[b(true), b(true)]).is_some());
        assert!(Boolean::solve_combination(&rows[..1], &[b(true), b(true)]).is_none());
        let m = |v: i64| MinPlus::Finite(Q::from_integer(v));
        let rows = vec![vec![m(0), m(1)], vec![m(1), m(0)]];
        let x = MinPlus::solve_combination(&rows, &[m(-2), m(-1)]).unwrap();
        assert_eq!(combine(&x, &rows, 2), vec![m(-2), m(-1)]);
    }

    fn tv() -> impl Strategy<Value = TropicalValue> {
        prop_oneof![1 => Just(Bottom), 4 => (-5i64..=5).prop_map(t)]
    }

    fn system(rows: usize, cols: usize) -> impl Strategy<Value = (Vec<Vec<TropicalValue>>, Vec<TropicalValue>)> {
        (
            prop::collection::vec(prop::collection::vec(tv(), cols), rows),
            prop::collection::vec(tv(), cols),
        )
    }

    proptest! {
        #[test]
        fn constructed_targets_are_solved((rows, coeffs) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            (prop::collection::vec(prop::collection::vec(tv(), c), r), prop::collection::vec(tv(), r))
        })) {
            let cols = rows[0].len();
            let target = combine(&coeffs, &rows, cols);
            let x = solve_combination(&rows, &target).expect("constructed system is solvable");
            prop_assert_eq!(combine(&x, &rows, cols), target);
        }

        #[test]
        fn principal_solution_is_a_subsolution((rows, target) in system(3, 4)) {
            let x = principal_solution(&rows, &target);
            let lhs = combine(&x, &rows, 4);
            for (l, b) in lhs.iter().zip(&target) {
                prop_assert!(l <= b);
            }
        }

        #[test]
        fn basis_is_independent_and_generating((rows, _) in system(5, 3)) {
            let basis = extract_basis(&rows);
            let brows: Vec<_> = basis.iter().map(|&i| rows[i].clone()).collect();
            for row in &rows {
                prop_assert!(solve_combination(&brows, row).is_some());
            }
            for (p, row) in brows.iter().enumerate() {
                let others: Vec<_> = brows.iter().enumerate().filter(|(q, _)| *q != p).map(|(_, r)| r.clone()).collect();
                prop_assert!(solve_combination(&others, row).is_none());
            }
        }

        #[test]
        fn rank_invariant_under_permutation_and_scaling(
            (rows, _) in system(4, 3),
            shift in -4i64..4,
            which in 0usize..4,
        ) {
            let base = extract_basis(&rows).len();
            let mut perm = rows.clone();
            perm.reverse();
            prop_assert_eq!(extract_basis(&perm).len(), base);
            let mut scaled = rows.clone();
            scaled[which] = scaled[which].iter().map(|v| v.times(&t(shift))).collect();
            prop_assert_eq!(extract_basis(&scaled).len(), base);
        }
    }
}
