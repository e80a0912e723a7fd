//! Dense matrices over a [`Field`] with cubic Gaussian elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::field::{Fe, Field};
use crate::subspace::Subspace;

impl Field {
    /// `dst += c * src`.
    #[inline]
    pub fn axpy(&self, dst: &mut [Fe], c: Fe, src: &[Fe]) {
        if c == 0 {
            return;
        }
        debug_assert_eq!(dst.len(), src.len());
        if self.is_prime_field() {
            let p = self.characteristic() as u64;
            let c = c as u64;
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = ((*d as u64 + c * s as u64) % p) as Fe;
            }
        } else {
            for (d, &s) in dst.iter_mut().zip(src) {
                if s != 0 {
                    *d = self.add(*d, self.mul(c, s));
                }
            }
        }
    }

    pub fn scale_slice(&self, v: &mut [Fe], c: Fe) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        if self.is_prime_field() {
            let p = self.characteristic() as u64;
            let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
            (s % p) as Fe
        } else {
            a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Fe>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: &Field, rows: usize, cols: &[Vec<Fe>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Fe) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_vec(field, rows, cols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, 1, &other.data);
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, self.field.neg(1), &other.data);
        out
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let mut out = self.clone();
        self.field.scale_slice(&mut out.data, c);
        out
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: Fe, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "incompatible shapes for product");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        if f.is_prime_field() {
            // Accumulate unreduced in u64, reduce once per row.
            let p = f.characteristic() as u64;
            let mut acc = vec![0u64; other.cols];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|a| *a = 0);
                for (k, &a) in self.row(i).iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let a = a as u64;
                    for (s, &b) in acc.iter_mut().zip(other.row(k)) {
                        *s += a * b as u64;
                    }
                }
                for (o, &s) in out.row_mut(i).iter_mut().zip(&acc) {
                    *o = (s % p) as Fe;
                }
            }
        } else {
            for i in 0..self.rows {
                for k in 0..self.cols {
                    let a = self[(i, k)];
                    if a != 0 {
                        let (src, dst) = (other.row(k).to_vec(), out.row_mut(i));
                        f.axpy(dst, a, &src);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `[self, other]` side by side.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        })
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::from_vec(&self.field, self.rows + other.rows, self.cols, data)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, idx.len(), self.cols, |i, j| self[(idx[i], j)])
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        Matrix::from_fn(f, self.rows * other.rows, self.cols * other.cols, |i, j| {
            f.mul(self[(i / other.rows, j / other.cols)], other[(i % other.rows, j % other.cols)])
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let (r, c) = (self.rows, self.cols);
        Matrix::from_fn(&self.field, r + other.rows, c + other.cols, |i, j| match (i < r, j < c) {
            (true, true) => self[(i, j)],
            (false, false) => other[(i - r, j - c)],
            _ => 0,
        })
    }

    pub fn trace(&self) -> Fe {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| self.field.add(acc, self[(i, i)]))
    }

    /// In-place reduction to reduced row-echelon form; returns the pivot columns.
    fn reduce(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in c..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            f.scale_slice(&mut self.data[r * cols + c..(r + 1) * cols], inv);
            let pivot_row: Vec<Fe> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let x = self.data[i * cols + c];
                if x != 0 {
                    f.axpy(&mut self.data[i * cols + c..(i + 1) * cols], f.neg(x), &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.reduce();
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Null space `{x : self * x = 0}` as a subspace of `F^cols`.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let vecs: Vec<Vec<Fe>> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(matrix[(r, free)]);
                }
                v
            })
            .collect();
        Subspace::from_vectors(f, self.cols, &vecs)
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix(self.clone())
    }

    pub fn column_space(&self) -> Subspace {
        self.transpose().row_space()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let Rref { matrix, rank, .. } = self.hstack(&Matrix::identity(&self.field, n)).rref();
        if rank < n || (0..n).any(|i| matrix[(i, i)] != 1) {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(matrix.select_cols(&idx))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// One solution `x` of `self * x = b`, if any.
    pub fn solve(&self, b: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(&self.field, self.rows, &[b.to_vec()]));
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = matrix[(r, self.cols)];
        }
        Some(x)
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        self.pow(self.rows as u64).is_zero()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Fe;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Fe {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fe {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
