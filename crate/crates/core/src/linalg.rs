//! Exact linear algebra over `Q(zeta_N)`: dense row reduction for small
//! matrices and an incremental sparse echelon form for large systems.

use std::collections::BTreeMap;

use crate::coefficients::{CycloField, CycloScalar};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<CycloScalar>,
}

impl Matrix {
    pub fn zeros(field: &'static CycloField, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &'static CycloField, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloScalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn row(&self, i: usize) -> &[CycloScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CycloScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let field = self.data.first().or(other.data.first()).unwrap().field();
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let field = self.data[0].field();
        let mut acc = Matrix::identity(field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sub_scalar_identity(&self, c: &CycloScalar) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] = &out[(i, i)] - c;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                if i == j {
                    self[(i, j)].is_one()
                } else {
                    self[(i, j)].is_zero()
                }
            })
        })
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(i, j)] - &(&factor * &self[(r, j)]);
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<CycloScalar>> {
        let field = match self.data.first() {
            Some(x) => x.field(),
            None => return Vec::new(),
        };
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![field.zero(); self.cols];
                v[f] = field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&m[(row, f)];
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let field = self.data.first()?.field();
        let mut aug = Matrix::zeros(field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = field.one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(field, n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = CycloScalar;
    fn index(&self, (i, j): (usize, usize)) -> &CycloScalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CycloScalar {
        &mut self.data[i * self.cols + j]
    }
}

pub type SparseRow = BTreeMap<usize, CycloScalar>;

/// Incrementally maintained reduced echelon basis of a row space.
///
/// Each stored row has a leading one at its pivot column and zeros in every
/// other pivot column, so reducing a new row is a single pass.
#[derive(Default, Debug, Clone)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> SparseEchelon {
        SparseEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &usize> {
        self.rows.keys()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let cols: Vec<usize> = row.keys().copied().collect();
        for c in cols {
            let Some(pivot_row) = self.rows.get(&c) else {
                continue;
            };
            let Some(factor) = row.get(&c).cloned() else {
                continue;
            };
            for (j, v) in pivot_row {
                let prod = &factor * v;
                let entry = row.entry(*j).or_insert_with(|| factor.field().zero());
                *entry -= &prod;
                if entry.is_zero() {
                    row.remove(j);
                }
            }
        }
        row
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        row.retain(|_, v| !v.is_zero());
        let Some((&pc, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero");
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(factor) = other.get(&pc).cloned() {
                for (j, v) in &row {
                    let prod = &factor * v;
                    let entry = other.entry(*j).or_insert_with(|| factor.field().zero());
                    *entry -= &prod;
                    if entry.is_zero() {
                        other.remove(j);
                    }
                }
            }
        }
        self.rows.insert(pc, row);
        true
    }

    /// Whether the row lies in the current span.
    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).values().all(CycloScalar::is_zero)
    }

    /// Nullspace basis of the stored rows, viewed as equations on `ncols` unknowns.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseRow> {
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !self.rows.contains_key(c)) {
            let mut v = SparseRow::new();
            let mut field = None;
            for (&pc, row) in &self.rows {
                if let Some(x) = row.get(&free) {
                    field = Some(x.field());
                    v.insert(pc, -x);
                }
            }
            let one = match field {
                Some(f) => f.one(),
                None => match self.rows.values().next().and_then(|r| r.values().next()) {
                    Some(x) => x.field().one(),
                    None => return Vec::new(),
                },
            };
            v.insert(free, one);
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> &'static CycloField {
        CycloField::get(24)
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| f().int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        let x = Matrix::from_rows(ns[0].iter().map(|v| vec![v.clone()]).collect());
        assert!(a.mul(&x).data.iter().all(CycloScalar::is_zero));
    }

    #[test]
    fn inverse_with_roots() {
        let i = f().zeta_pow(6);
        let a = Matrix::from_rows(vec![
            vec![i.clone(), f().int(1)],
            vec![f().zero(), -&i],
        ]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn sparse_echelon_matches_dense() {
        let a = m(&[&[1, 2, 3, 0], &[0, 1, 1, 1], &[1, 3, 4, 1], &[2, 0, 1, 5]]);
        let mut e = SparseEchelon::new();
        for i in 0..a.rows {
            let row: SparseRow = a
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect();
            e.insert(row);
        }
        assert_eq!(e.rank(), a.rank());
        let ns = e.nullspace(4);
        assert_eq!(ns.len(), 4 - a.rank());
        for v in ns {
            for i in 0..a.rows {
                let mut acc = f().zero();
                for (j, x) in &v {
                    acc += &(&a[(i, *j)] * x);
                }
                assert!(acc.is_zero());
            }
        }
    }
}
