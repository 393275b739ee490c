use std::fmt;

use num_traits::Zero;

use super::ring::{int, Ring, Scalar};

/// Sparse row-major matrix. Each row holds `(column, value)` pairs sorted by column, without zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols)
                .map(|j| self.get(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.rows[i].push((i, int(1)));
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<Scalar>>, ncols: usize) -> Self {
        let mut m = Matrix::zeros(rows.len(), ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            m.rows[i] = row
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        Matrix::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
            ncols,
        )
    }

    /// Builds a matrix whose columns are the given dense vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.rows[i].push((j, v.clone()));
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(
            i < self.nrows && j < self.ncols,
            "index ({i},{j}) out of bounds"
        );
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => {
                if v.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    row.insert(k, (j, v));
                }
            }
        }
    }

    /// Adds `v` to entry `(i, j)` using the ring's arithmetic.
    pub fn add_at(&mut self, ring: Ring, i: usize, j: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(i, j);
        self.set(i, j, ring.add(&cur, v));
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.ncols]; self.nrows];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ncols, self.nrows);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                t.rows[*j].push((i, v.clone()));
            }
        }
        t
    }

    /// Matrix product computed in `ring`, without reducing modulo torsion.
    pub fn mul(&self, ring: Ring, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.nrows, other.ncols);
        let mut acc: Vec<Scalar> = vec![Scalar::zero(); other.ncols];
        let mut touched: Vec<usize> = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    if acc[*j].is_zero() {
                        touched.push(*j);
                    }
                    acc[*j] = &acc[*j] + a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &j in &touched {
                let v = ring.normalize(std::mem::take(&mut acc[j]));
                if !v.is_zero() {
                    out.rows[i].push((j, v));
                }
            }
            touched.clear();
        }
        out
    }

    pub fn apply(&self, ring: Ring, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| {
                let s = row
                    .iter()
                    .fold(Scalar::zero(), |acc, (j, a)| acc + a * &v[*j]);
                ring.normalize(s)
            })
            .collect()
    }

    pub fn scale(&self, ring: Ring, c: &Scalar) -> Matrix {
        let mut out = Matrix::zeros(self.nrows, self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                let w = ring.mul(v, c);
                if !w.is_zero() {
                    out.rows[i].push((*j, w));
                }
            }
        }
        out
    }

    pub fn add(&self, ring: Ring, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (i, row) in other.rows.iter().enumerate() {
            for (j, v) in row {
                out.add_at(ring, i, *j, v);
            }
        }
        out
    }

    pub fn sub(&self, ring: Ring, other: &Matrix) -> Matrix {
        self.add(ring, &other.scale(ring, &int(-1)))
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`, adding to existing entries.
    pub fn add_block(&mut self, ring: Ring, r0: usize, c0: usize, block: &Matrix) {
        for (i, row) in block.rows.iter().enumerate() {
            for (j, v) in row {
                self.add_at(ring, r0 + i, c0 + j, v);
            }
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows, other.nrows);
        let mut out = self.clone();
        out.ncols += other.ncols;
        for (i, row) in other.rows.iter().enumerate() {
            out.rows[i].extend(row.iter().map(|(j, v)| (j + self.ncols, v.clone())));
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.ncols);
        let mut out = self.clone();
        out.nrows += other.nrows;
        out.rows.extend(other.rows.iter().cloned());
        out
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.nrows + other.nrows, self.ncols + other.ncols);
        out.rows[..self.nrows].clone_from_slice(&self.rows);
        for (i, row) in other.rows.iter().enumerate() {
            out.rows[self.nrows + i] = row
                .iter()
                .map(|(j, v)| (j + self.ncols, v.clone()))
                .collect();
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix {
            nrows: idx.len(),
            ncols: self.ncols,
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.ncols];
        for (new, &old) in idx.iter().enumerate() {
            pos[old] = new;
        }
        let mut out = Matrix::zeros(self.nrows, idx.len());
        for (i, row) in self.rows.iter().enumerate() {
            let mut r: Vec<(usize, Scalar)> = row
                .iter()
                .filter(|(j, _)| pos[*j] != usize::MAX)
                .map(|(j, v)| (pos[*j], v.clone()))
                .collect();
            r.sort_by_key(|(j, _)| *j);
            out.rows[i] = r;
        }
        out
    }

    pub(crate) fn map_rows<F>(&mut self, mut f: F)
    where
        F: FnMut(usize, Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)>,
    {
        for i in 0..self.nrows {
            let row = std::mem::take(&mut self.rows[i]);
            self.rows[i] = f(i, row)
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let z = Ring::Integers;
        let a = Matrix::from_i64(&[vec![1, 2], vec![0, -1]]);
        let b = Matrix::from_i64(&[vec![3, 0, 1], vec![1, 1, 0]]);
        let ab = a.mul(z, &b);
        assert_eq!(ab, Matrix::from_i64(&[vec![5, 2, 1], vec![-1, -1, 0]]));
        assert_eq!(ab.transpose().transpose(), ab);
        assert_eq!(a.apply(z, &[int(1), int(1)]), vec![int(3), int(-1)]);
    }

    #[test]
    fn set_and_stack() {
        let mut m = Matrix::zeros(2, 2);
        m.set(1, 0, int(4));
        m.set(1, 0, int(0));
        assert!(m.is_zero());
        let i = Matrix::identity(2);
        let s = i.hstack(&i);
        assert_eq!(s.ncols(), 4);
        assert_eq!(s.get(1, 3), int(1));
        let d = i.block_diag(&Matrix::identity(1));
        assert_eq!(d.get(2, 2), int(1));
        assert_eq!(d.select_columns(&[2, 0]).get(0, 1), int(1));
    }
}
