//! Dense exact matrices.
//!
//! Arithmetic goes through a [`Field`] so that the same code serves the
//! rationals and prime fields.

use num_traits::Zero;

use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::from_integer(1.into()));
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_i64(f: Field, rows: usize, cols: usize, vals: &[i64]) -> Self {
        Matrix::from_rows(rows, cols, vals.iter().map(|&v| f.from_i64(v)).collect())
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, f: Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, f.add(&cur, &f.mul(a, b)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, f: Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, f: Field, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, f: Field, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self, f: Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, f: Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column in ascending order.
    pub fn nullspace(&self, f: Field) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Nullspace basis packed as the columns of a matrix.
    pub fn kernel_matrix(&self, f: Field) -> Matrix {
        Matrix::from_columns(self.cols, &self.nullspace(f))
    }

    /// Linearly independent columns spanning the column space (a subset of the original columns).
    pub fn column_basis(&self, f: Field) -> Matrix {
        let (_, pivots) = self.rref(f);
        self.select_columns(&pivots)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.set(ii, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// Solves `self * X = b`, returning one solution if any exists.
    pub fn solve(&self, f: Field, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve shape mismatch");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref(f);
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, f: Field, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let bm = Matrix::from_columns(self.rows, &[b.to_vec()]);
        self.solve(f, &bm).map(|x| x.column(0))
    }

    pub fn inverse(&self, f: Field) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(f, &Matrix::identity(self.rows))?;
        if self.rank(f) == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self, f: Field) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack_all(rows: usize, parts: &[Matrix]) -> Matrix {
        parts.iter().fold(Matrix::zeros(rows, 0), |acc, p| acc.hstack(p))
    }

    pub fn vstack_all(cols: usize, parts: &[Matrix]) -> Matrix {
        parts.iter().fold(Matrix::zeros(0, cols), |acc, p| acc.vstack(p))
    }

    pub fn block_diag(parts: &[Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            m.paste(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    /// Flattens row-major into a vector.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn pow(&self, f: Field, mut e: usize) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self, f: Field) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Extends the independent columns of `self` to a basis of the whole space using unit vectors.
    /// Returns the indices of the unit vectors that were added.
    pub fn complement_units(&self, f: Field) -> Vec<usize> {
        let mut acc = self.column_basis(f);
        let mut added = Vec::new();
        let mut rank = acc.cols;
        for i in 0..self.rows {
            if rank == self.rows {
                break;
            }
            let mut e = Matrix::zeros(self.rows, 1);
            e.set(i, 0, f.one());
            let cand = acc.hstack(&e);
            let r = cand.rank(f);
            if r > rank {
                acc = cand;
                rank = r;
                added.push(i);
            }
        }
        added
    }
}

/// Row-reduces a list of vectors and returns a basis of their span.
pub fn span_basis(f: Field, len: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.len(), len, vectors.iter().flat_map(|v| v.iter().cloned()).collect());
    let (r, pivots) = m.rref(f);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn span_dim(f: Field, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    span_basis(f, len, vectors).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn rref_and_nullspace() {
        let f = q();
        let m = Matrix::from_i64(f, 2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(m.rank(f), 1);
        let ns = m.nullspace(f);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(f, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let f = q();
        let a = Matrix::from_i64(f, 2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse(f).unwrap();
        assert_eq!(a.mul(f, &inv), Matrix::identity(2));
        let b = Matrix::from_i64(f, 2, 1, &[3, 2]);
        let x = a.solve(f, &b).unwrap();
        assert_eq!(a.mul(f, &x), b);
        let singular = Matrix::from_i64(f, 2, 2, &[1, 1, 1, 1]);
        assert!(singular.inverse(f).is_none());
        assert!(singular.solve(f, &Matrix::from_i64(f, 2, 1, &[1, 0])).is_none());
    }

    #[test]
    fn prime_field_rank_differs() {
        let m = Matrix::from_i64(Field::Rationals, 2, 2, &[1, 1, 1, 4]);
        assert_eq!(m.rank(Field::Rationals), 2);
        let f3 = Field::prime(3).unwrap();
        let m3 = Matrix::from_i64(f3, 2, 2, &[1, 1, 1, 4]);
        assert_eq!(m3.rank(f3), 1);
    }

    #[test]
    fn complement_extends_to_basis() {
        let f = q();
        let m = Matrix::from_i64(f, 3, 1, &[1, 1, 0]);
        let added = m.complement_units(f);
        assert_eq!(added.len(), 2);
    }
}
