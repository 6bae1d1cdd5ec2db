//! Dense matrices over F_p with row reduction, and a sparse rank routine.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::field::Prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of signed entries reduced mod p.
    ///
    /// Panics if the rows have differing lengths.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, p.reduce(v));
            }
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        self.data[i * self.cols + j] = v % self.p.get();
    }

    pub fn row(&self, i: usize) -> &[u16] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u16>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = p.add(out.data[idx], p.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and rank.
    pub fn echelon_rank(&self) -> (usize, FpMatrix) {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        (pivots.len(), m)
    }

    pub fn rank(&self) -> usize {
        self.echelon_rank().0
    }

    /// Reduces in place to RREF and returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = p.inv(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j);
                self.data[r * self.cols + j] = p.mul(v, inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(r, j);
                    if v != 0 {
                        let idx = i * self.cols + j;
                        self.data[idx] = p.sub(self.data[idx], p.mul(f, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right kernel `{v : Mv = 0}`, one vector per column of the result.
    pub fn kernel(&self) -> FpMatrix {
        let (_, rref) = self.echelon_rank();
        let p = self.p;
        let mut pivot_of_col = vec![None; self.cols];
        let mut r = 0;
        for (c, slot) in pivot_of_col.iter_mut().enumerate() {
            if r < rref.rows && rref.get(r, c) != 0 {
                *slot = Some(r);
                r += 1;
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| pivot_of_col[c].is_none()).collect();
        let mut k = FpMatrix::zeros(p, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, 1);
            for (c, &piv) in pivot_of_col.iter().enumerate() {
                if let Some(row) = piv {
                    k.set(c, j, p.neg(rref.get(row, f)));
                }
            }
        }
        k
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(aug.select_columns(&cols))
    }

    /// Columns `cols` of `self` as a new matrix.
    pub fn select_columns(&self, cols: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.rows, cols.len());
        for i in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(i, c));
            }
        }
        out
    }
}

/// Rank of the span of sparse rows `(column, value)`, by incremental elimination.
pub fn sparse_rank(p: Prime, rows: impl IntoIterator<Item = Vec<(usize, u16)>>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, u16)>> = HashMap::new();
    for row in rows {
        let mut v: BTreeMap<usize, u16> = BTreeMap::new();
        for (c, x) in row {
            let e = v.entry(c).or_insert(0);
            *e = p.add(*e, p.reduce(x as i64));
        }
        v.retain(|_, x| *x != 0);
        while let Some((&lead, &coef)) = v.iter().next() {
            match pivots.get(&lead) {
                Some(piv) => {
                    // pivot rows are normalized to a leading 1
                    for &(c, x) in piv {
                        let e = v.entry(c).or_insert(0);
                        *e = p.sub(*e, p.mul(coef, x));
                        if *e == 0 {
                            v.remove(&c);
                        }
                    }
                }
                None => {
                    let inv = p.inv(coef);
                    pivots.insert(lead, v.iter().map(|(&c, &x)| (c, p.mul(x, inv))).collect());
                    break;
                }
            }
        }
    }
    pivots.len()
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u16::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn inverse_and_sparse_rank() {
        // determinant 3
        let m = FpMatrix::from_rows(p(5), &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(p(5), 3));
        assert!(FpMatrix::from_rows(p(2), &[vec![1, 1], vec![1, 1]]).inverse().is_none());
        let rows = vec![vec![(0, 1), (2, 1)], vec![(1, 1), (2, 1)], vec![(0, 1), (1, 1)], vec![(3, 2)]];
        assert_eq!(sparse_rank(p(2), rows.clone()), 2);
        assert_eq!(sparse_rank(p(3), rows.clone()), 4);
        let dense: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                let mut v = vec![0i64; 4];
                for &(c, x) in r {
                    v[c] += x as i64;
                }
                v
            })
            .collect();
        assert_eq!(FpMatrix::from_rows(p(3), &dense).rank(), 4);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::identity(p(2), 3).rank(), 3);
        assert_eq!(FpMatrix::zeros(p(2), 3, 4).rank(), 0);
        let m = FpMatrix::from_rows(p(2), &[vec![1, 1], vec![1, 1]]);
        let (r, e) = m.echelon_rank();
        assert_eq!(r, 1);
        assert_eq!(e, FpMatrix::from_rows(p(2), &[vec![1, 1], vec![0, 0]]));
    }

    #[test]
    fn rref_is_reduced() {
        let m = FpMatrix::from_rows(p(5), &[vec![2, 4, 1], vec![1, 2, 3], vec![0, 0, 1]]);
        let (r, e) = m.echelon_rank();
        assert_eq!(r, 2);
        assert_eq!(e, FpMatrix::from_rows(p(5), &[vec![1, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]));
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = FpMatrix::from_rows(p(3), &[vec![1, 2, 0, 1], vec![2, 1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.cols(), 4 - m.rank());
        assert!(m.mul(&k).is_zero());
        assert_eq!(k.rank(), k.cols());
    }
}
