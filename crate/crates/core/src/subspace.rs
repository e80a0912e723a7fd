//! Subspaces of `F^n` in canonical reduced row-echelon form.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Matrix;

/// A subspace stored as a full-rank RREF basis; equal subspaces have equal
/// representatives, so `==` is subspace equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace { basis: Matrix::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Row space of `m`.
    pub fn from_matrix(m: Matrix) -> Self {
        let r = m.rref();
        let idx: Vec<usize> = (0..r.rank).collect();
        Subspace { basis: r.matrix.select_rows(&idx), pivots: r.pivots }
    }

    pub fn from_vectors(field: &Field, ambient: usize, vecs: &[Vec<Fe>]) -> Self {
        Self::from_matrix(Matrix::from_rows(field, ambient, vecs))
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Fe>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(v.len(), self.ambient_dim());
        let f = self.field();
        let coords: Vec<Fe> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut r = v.to_vec();
        for (i, &c) in coords.iter().enumerate() {
            f.axpy(&mut r, f.neg(c), self.basis.row(i));
        }
        r.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies inside,
    /// and is a canonical coset representative otherwise.
    pub fn reduce(&self, v: &[Fe]) -> Vec<Fe> {
        let f = self.field();
        let mut r = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let x = r[c];
            if x != 0 {
                f.axpy(&mut r, f.neg(x), self.basis.row(i));
            }
        }
        r
    }

    /// Indices of standard basis vectors spanning a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::from_matrix(self.basis.vstack(&other.basis)))
    }

    /// Intersection by Zassenhaus' combined elimination of `[[A, A], [B, 0]]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let n = self.ambient_dim();
        let f = self.field();
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&Matrix::zeros(f, other.dim(), n));
        let r = top.vstack(&bottom).rref();
        let rows: Vec<Vec<Fe>> = (0..r.rank)
            .filter(|&i| r.matrix.row(i)[..n].iter().all(|&x| x == 0))
            .map(|i| r.matrix.row(i)[n..].to_vec())
            .collect();
        Ok(Subspace::from_vectors(f, n, &rows))
    }

    /// Image of the subspace under `m` (acting on column vectors).
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vecs: Vec<Vec<Fe>> = (0..self.dim()).map(|i| m.mul_vec(self.basis.row(i))).collect();
        Subspace::from_vectors(self.field(), m.rows(), &vecs)
    }

    pub fn is_invariant_under(&self, m: &Matrix) -> bool {
        (0..self.dim()).all(|i| self.contains(&m.mul_vec(self.basis.row(i))))
    }
}

/// Incrementally built semi-echelon basis, for spinning up spans.
#[derive(Clone)]
pub struct Echelon {
    field: Field,
    len: usize,
    rows: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field, len: usize) -> Self {
        Echelon { field: field.clone(), len, rows: vec![], pivots: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [Fe]) {
        let f = &self.field;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x != 0 {
                f.axpy(v, f.neg(x), row);
            }
        }
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was.
    pub fn insert(&mut self, v: &[Fe]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(v[c]);
        self.field.scale_slice(&mut v, inv);
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|&x| x == 0)
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_vectors(&self.field, self.len, &self.rows)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient_dim(), self.basis_vectors())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_lines_in_the_plane() {
        let f = Field::prime(3).unwrap();
        let a = Subspace::from_vectors(&f, 2, &[vec![1, 0]]);
        let b = Subspace::from_vectors(&f, 2, &[vec![1, 1]]);
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(&f, 2));
    }

    #[test]
    fn canonical_representative() {
        let f = Field::prime(5).unwrap();
        let a = Subspace::from_vectors(&f, 3, &[vec![1, 2, 3], vec![0, 1, 1]]);
        let b = Subspace::from_vectors(&f, 3, &[vec![1, 3, 4], vec![2, 4, 1], vec![3, 0, 3]]);
        assert_eq!(a.dim(), 2);
        assert_eq!(b, a);
        assert!(!a.contains(&[2, 0, 4]));
    }

    #[test]
    fn mismatch_reported() {
        let f = Field::prime(3).unwrap();
        let a = Subspace::full(&f, 2);
        let b = Subspace::full(&f, 3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch(_))));
    }
}
