//! Sparse exact Gaussian elimination.
//!
//! Rows are stored as sorted `(column, value)` lists. The reducer keeps a
//! semi-echelon set of pivot rows (leading coefficient 1, no entries left of
//! the pivot) and only back-substitutes when a reduced row echelon form is
//! requested.

use std::collections::BTreeMap;

use super::scalar::GQ;

pub type SparseVec = Vec<(usize, GQ)>;

pub fn to_sparse(v: &[GQ]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<GQ> {
    let mut out = vec![GQ::zero(); len];
    for (k, x) in v {
        out[*k] = x.clone();
    }
    out
}

/// `row - factor * pivot`, both sorted.
fn axpy(row: &SparseVec, factor: &GQ, pivot: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(factor * &pivot[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(row: &mut SparseVec, factor: &GQ) {
    for (_, x) in row.iter_mut() {
        *x = &*x * factor;
    }
}

#[derive(Debug, Clone, Default)]
pub struct RowReducer {
    pivots: BTreeMap<usize, SparseVec>,
}

impl RowReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` until its leading column is not a pivot column.
    fn reduce_leading(&self, mut row: SparseVec) -> SparseVec {
        loop {
            let Some((col, lead)) = row.first().cloned() else { return row };
            match self.pivots.get(&col) {
                Some(p) => row = axpy(&row, &lead, p),
                None => return row,
            }
        }
    }

    /// Fully reduces `row` against all pivots (every pivot column cleared).
    pub fn reduce_full(&self, row: SparseVec) -> SparseVec {
        let mut row = row;
        let mut idx = 0;
        while idx < row.len() {
            let col = row[idx].0;
            if let Some(p) = self.pivots.get(&col) {
                let f = row[idx].1.clone();
                row = axpy(&row, &f, p);
                // entries before idx are untouched since pivot rows start at col
            } else {
                idx += 1;
            }
        }
        row
    }

    /// Inserts a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let mut row = self.reduce_leading(row);
        if row.is_empty() {
            return false;
        }
        let inv = row[0].1.inv().expect("nonzero leading entry");
        scale(&mut row, &inv);
        let col = row[0].0;
        self.pivots.insert(col, row);
        true
    }

    pub fn contains(&self, row: &SparseVec) -> bool {
        self.reduce_leading(row.clone()).is_empty()
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    pub fn rref(&self) -> Vec<SparseVec> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &c in cols.iter().rev() {
            let row = self.pivots[&c].clone();
            let (head, tail) = row.split_at(1);
            let mut acc: SparseVec = head.to_vec();
            let mut rest: SparseVec = tail.to_vec();
            // clear later pivot columns using already reduced rows
            let mut idx = 0;
            while idx < rest.len() {
                let col = rest[idx].0;
                if let Some(p) = done.get(&col) {
                    let f = rest[idx].1.clone();
                    rest = axpy(&rest, &f, p);
                } else {
                    idx += 1;
                }
            }
            acc.extend(rest);
            done.insert(c, acc);
        }
        done.into_values().collect()
    }
}

/// Reduced row echelon basis of the span of `rows`.
pub fn rref_rows(rows: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut r = RowReducer::new();
    for row in rows {
        r.insert(row);
    }
    r.rref()
}

/// Rank of a matrix given by sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut r = RowReducer::new();
    for row in rows {
        r.insert(row);
    }
    r.rank()
}

/// Basis of `{x : A x = 0}` for `A` with `ncols` columns given by sparse rows.
///
/// The basis is the standard one read off the RREF: one vector per free
/// column, with a 1 in that column.
pub fn kernel_basis(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Vec<SparseVec> {
    let rref = rref_rows(rows);
    let mut pivot_of_col = vec![None; ncols];
    for (r, row) in rref.iter().enumerate() {
        pivot_of_col[row[0].0] = Some(r);
    }
    // column -> list of (pivot row, coefficient)
    let mut col_entries: BTreeMap<usize, Vec<(usize, GQ)>> = BTreeMap::new();
    for row in &rref {
        let pc = row[0].0;
        for (c, v) in &row[1..] {
            col_entries.entry(*c).or_default().push((pc, v.clone()));
        }
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if pivot_of_col[f].is_some() {
            continue;
        }
        let mut v: SparseVec = vec![(f, GQ::one())];
        if let Some(entries) = col_entries.get(&f) {
            for (pc, coef) in entries {
                v.push((*pc, -coef));
            }
        }
        v.sort_by_key(|e| e.0);
        out.push(v);
    }
    out
}
