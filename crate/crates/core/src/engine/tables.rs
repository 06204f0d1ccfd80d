use crate::semiring::Semiring;

/// An `m × m` matrix stored as its non-zero entries per row; vectors are
/// multiplied from the left (`v ↦ v · M`).
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<S> {
    m: usize,
    rows: Vec<Vec<(usize, S)>>,
}

impl<S: Semiring> SparseMatrix<S> {
    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let m = rows.len();
        let rows = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect())
            .collect();
        SparseMatrix { m, rows }
    }

    pub fn from_entries(m: usize, entries: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); m];
        for (r, c, v) in entries {
            if v.is_zero() {
                continue;
            }
            match rows[r].iter_mut().find(|(cc, _)| *cc == c) {
                Some((_, acc)) => *acc = acc.plus(&v),
                None => rows[r].push((c, v)),
            }
        }
        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
        }
        SparseMatrix { m, rows }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn row(&self, r: usize) -> &[(usize, S)] {
        &self.rows[r]
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.m]; self.m];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[S], ops: &mut u64) -> Vec<S> {
        let mut out = vec![S::zero(); self.m];
        for (p, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, a) in &self.rows[p] {
                out[*c] = out[*c].plus(&x.times(a));
                *ops += 1;
            }
        }
        out
    }

    /// `self ⊕ w ⊗ other`.
    pub fn plus_scaled(&self, w: &S, other: &SparseMatrix<S>) -> SparseMatrix<S> {
        let entries = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v.clone())))
            .chain(
                other
                    .rows
                    .iter()
                    .enumerate()
                    .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, w.times(v)))),
            );
        SparseMatrix::from_entries(self.m, entries)
    }
}

/// A bilinear map `(u, v) ↦ ⊕_{p,q} u_p ⊗ v_q ⊗ tab(p,q)` given by one
/// length-`m` vector per basis pair. Stored sparsely when at least 90% of
/// the `m³` entries are zero.
#[derive(Debug, Clone, PartialEq)]
pub enum BilinearTable<S> {
    Dense { m: usize, data: Vec<Vec<S>> },
    /// `entries[offsets[p]..offsets[p+1]]` holds `(q, r, value)` for row `p`.
    Sparse { m: usize, offsets: Vec<usize>, entries: Vec<(usize, usize, S)> },
}

impl<S: Semiring> BilinearTable<S> {
    /// Builds from the non-zero `(r, value)` entries of each `tab(p,q)`.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> Vec<(usize, S)>) -> Self {
        let mut offsets = Vec::with_capacity(m + 1);
        let mut entries = Vec::new();
        for p in 0..m {
            offsets.push(entries.len());
            for q in 0..m {
                let mut cell: Vec<(usize, S)> = Vec::new();
                for (r, v) in f(p, q) {
                    if v.is_zero() {
                        continue;
                    }
                    match cell.iter_mut().find(|(rr, _)| *rr == r) {
                        Some((_, acc)) => *acc = acc.plus(&v),
                        None => cell.push((r, v)),
                    }
                }
                cell.sort_by_key(|(r, _)| *r);
                entries.extend(cell.into_iter().map(|(r, v)| (q, r, v)));
            }
        }
        offsets.push(entries.len());
        let total = m * m * m;
        if entries.len() * 10 <= total {
            return BilinearTable::Sparse { m, offsets, entries };
        }
        let mut data = vec![vec![S::zero(); m]; m * m];
        for p in 0..m {
            for (q, r, v) in &entries[offsets[p]..offsets[p + 1]] {
                data[p * m + q][*r] = v.clone();
            }
        }
        BilinearTable::Dense { m, data }
    }

    pub fn m(&self) -> usize {
        match self {
            BilinearTable::Dense { m, .. } | BilinearTable::Sparse { m, .. } => *m,
        }
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self, BilinearTable::Sparse { .. })
    }

    /// `tab(p,q)` as a full vector.
    pub fn cell(&self, p: usize, q: usize) -> Vec<S> {
        match self {
            BilinearTable::Dense { m, data } => data[p * m + q].clone(),
            BilinearTable::Sparse { m, offsets, entries } => {
                let mut out = vec![S::zero(); *m];
                for (qq, r, v) in &entries[offsets[p]..offsets[p + 1]] {
                    if *qq == q {
                        out[*r] = v.clone();
                    }
                }
                out
            }
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.m();
        (0..m).all(|p| (p + 1..m).all(|q| self.cell(p, q) == self.cell(q, p)))
    }

    pub fn apply(&self, u: &[S], v: &[S], ops: &mut u64) -> Vec<S> {
        let m = self.m();
        let mut out = vec![S::zero(); m];
        match self {
            BilinearTable::Dense { data, .. } => {
                for (p, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                    for (q, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                        let ab = a.times(b);
                        for (o, t) in out.iter_mut().zip(&data[p * m + q]) {
                            if !t.is_zero() {
                                *o = o.plus(&ab.times(t));
                                *ops += 1;
                            }
                        }
                    }
                }
            }
            BilinearTable::Sparse { offsets, entries, .. } => {
                for (p, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                    for (q, r, t) in &entries[offsets[p]..offsets[p + 1]] {
                        if v[*q].is_zero() {
                            continue;
                        }
                        out[*r] = out[*r].plus(&a.times(&v[*q]).times(t));
                        *ops += 1;
                    }
                }
            }
        }
        out
    }

    /// The linear map `u ↦ apply(u, leaf)`.
    pub fn curry_right(&self, leaf: &[S]) -> SparseMatrix<S> {
        let m = self.m();
        let mut entries = Vec::new();
        for p in 0..m {
            for (q, l) in leaf.iter().enumerate().filter(|(_, l)| !l.is_zero()) {
                for (r, t) in self.cell(p, q).into_iter().enumerate() {
                    if !t.is_zero() {
                        entries.push((p, r, l.times(&t)));
                    }
                }
            }
        }
        SparseMatrix::from_entries(m, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Nat, Rat, Q};

    #[test]
    fn dense_and_sparse_agree() {
        let m = 3;
        let f = |p: usize, q: usize| vec![((p + q) % m, Nat((p * q + 1) as u64)), (p, Nat(1))];
        let dense = BilinearTable::from_fn(m, f);
        assert!(!dense.is_sparse());
        let sparse_only = BilinearTable::from_fn(8, |p, q| if p == q { vec![(p, Nat(2))] } else { vec![] });
        assert!(sparse_only.is_sparse());
        let u = vec![Nat(1), Nat(0), Nat(3)];
        let v = vec![Nat(2), Nat(5), Nat(1)];
        let mut ops = 0;
        let got = dense.apply(&u, &v, &mut ops);
        // direct evaluation of the definition
        let mut want = vec![Nat(0); m];
        for p in 0..m {
            for q in 0..m {
                for (r, t) in f(p, q) {
                    want[r] = want[r].plus(&u[p].times(&v[q]).times(&t));
                }
            }
        }
        assert_eq!(got, want);
        let BilinearTable::Dense { data, .. } = &dense else { unreachable!() };
        let as_sparse = BilinearTable::Sparse {
            m,
            offsets: (0..=m).map(|p| p * m * m).collect(),
            entries: (0..m)
                .flat_map(|p| (0..m).flat_map(move |q| (0..m).map(move |r| (p, q, r))))
                .map(|(p, q, r)| (q, r, data[p * m + q][r].clone()))
                .collect(),
        };
        assert_eq!(as_sparse.apply(&u, &v, &mut ops), want);
    }

    #[test]
    fn curried_tables_match_bilinear_application() {
        let t = BilinearTable::from_fn(2, |p, q| vec![(p ^ q, Rat(Q::from_integer(1 + p as i64)))]);
        let leaf = vec![Rat(Q::from_integer(2)), Rat(Q::new(1, 3))];
        let u = vec![Rat(Q::from_integer(-1)), Rat(Q::from_integer(4))];
        let mut ops = 0;
        assert_eq!(t.curry_right(&leaf).apply(&u, &mut ops), t.apply(&u, &leaf, &mut ops));
        let m = SparseMatrix::from_entries(2, [(0, 1, Nat(2)), (0, 1, Nat(3)), (1, 0, Nat(0))]);
        assert_eq!(m.to_dense(), vec![vec![Nat(0), Nat(5)], vec![Nat(0), Nat(0)]]);
        assert_eq!(SparseMatrix::from_dense(&m.to_dense()), m);
    }
}
