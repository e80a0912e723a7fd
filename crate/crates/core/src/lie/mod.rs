//! Restricted Lie algebras given by structure constants and a p-map on a basis.

mod structure;

pub use structure::{PSubalgebra, Predicates};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::Matrix;

/// Coordinate vector of a Lie algebra element.
pub type Element = Vec<Fe>;

/// A finite-dimensional restricted Lie algebra `(g, [p])`.
///
/// Only the brackets of basis vectors and the p-map on basis vectors are
/// stored; the p-map of an arbitrary element is always derived through
/// Jacobson's formula.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RestrictedLieAlgebra {
    field: Field,
    names: Vec<String>,
    /// `bracket[i][j]` = coordinates of `[e_i, e_j]`.
    bracket: Vec<Vec<Element>>,
    /// `pmap[i]` = coordinates of `e_i^[p]`.
    pmap: Vec<Element>,
}

/// Outcome of [`RestrictedLieAlgebra::verify_axioms`]; each field holds the
/// first failing index tuple, if any.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct AxiomReport {
    pub antisymmetry: Option<(usize, usize)>,
    pub jacobi: Option<(usize, usize, usize)>,
    pub restrictedness: Option<usize>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry.is_none() && self.jacobi.is_none() && self.restrictedness.is_none()
    }
}

impl RestrictedLieAlgebra {
    pub fn new(field: &Field, names: Vec<String>, bracket: Vec<Vec<Element>>, pmap: Vec<Element>) -> Result<Self> {
        let n = names.len();
        let shape_ok = bracket.len() == n
            && bracket.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == n))
            && pmap.len() == n
            && pmap.iter().all(|v| v.len() == n);
        if !shape_ok {
            return Err(Error::DimensionMismatch(format!("structure tables must be {n}x{n}x{n} and {n}x{n}")));
        }
        let q = field.order() as Fe;
        let in_range = bracket.iter().flatten().flatten().chain(pmap.iter().flatten()).all(|&c| c < q);
        if !in_range {
            return Err(Error::Format("coefficient outside the field".into()));
        }
        Ok(RestrictedLieAlgebra { field: field.clone(), names, bracket, pmap })
    }

    /// Builds an algebra from sparse integer data: `brackets` lists
    /// `(i, j, [e_i, e_j])` for `i < j` (antisymmetry fills the rest) and
    /// `pmap` lists `(i, e_i^[p])`; integer coefficients are reduced into the
    /// prime field.
    pub fn from_sparse(
        field: &Field,
        names: &[&str],
        brackets: &[(usize, usize, &[i64])],
        pmap: &[(usize, &[i64])],
    ) -> Result<Self> {
        let n = names.len();
        let vec_of = |c: &[i64]| -> Result<Element> {
            if c.len() != n {
                return Err(Error::DimensionMismatch(format!("coefficient vector of length {}", c.len())));
            }
            Ok(c.iter().map(|&x| field.from_int(x)).collect())
        };
        let mut table = vec![vec![vec![0; n]; n]; n];
        for &(i, j, c) in brackets {
            let v = vec_of(c)?;
            table[j][i] = v.iter().map(|&x| field.neg(x)).collect();
            table[i][j] = v;
        }
        let mut pm = vec![vec![0; n]; n];
        for &(i, c) in pmap {
            pm[i] = vec_of(c)?;
        }
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), table, pm)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket_table(&self) -> &[Vec<Element>] {
        &self.bracket
    }

    pub fn pmap_table(&self) -> &[Element] {
        &self.pmap
    }

    pub fn zero(&self) -> Element {
        vec![0; self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Element {
        let q = self.field.order();
        (0..self.dim()).map(|_| rng.gen_range(0..q) as Fe).collect()
    }

    pub fn add(&self, x: &[Fe], y: &[Fe]) -> Element {
        let mut out = x.to_vec();
        self.field.axpy(&mut out, 1, y);
        out
    }

    pub fn scale(&self, c: Fe, x: &[Fe]) -> Element {
        x.iter().map(|&a| self.field.mul(c, a)).collect()
    }

    /// Bilinear extension of the structure constants. Panics on length mismatch.
    pub fn bracket(&self, x: &[Fe], y: &[Fe]) -> Element {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "element length must match the algebra dimension");
        let f = &self.field;
        let mut out = vec![0; n];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    f.axpy(&mut out, f.mul(a, b), &self.bracket[i][j]);
                }
            }
        }
        out
    }

    pub fn checked_bracket(&self, x: &[Fe], y: &[Fe]) -> Result<Element> {
        if x.len() != self.dim() || y.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "elements of length {} and {} in an algebra of dimension {}",
                x.len(),
                y.len(),
                self.dim()
            )));
        }
        Ok(self.bracket(x, y))
    }

    /// Matrix of `ad x`; column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Fe]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Element> = (0..n).map(|j| self.bracket(x, &self.basis_vector(j))).collect();
        Matrix::from_cols(&self.field, n, &cols)
    }

    /// The Jacobson terms `s_1(x, y), ..., s_{p-1}(x, y)`, read off from
    /// `ad(x T + y)^(p-1)(x) = sum_i i s_i(x, y) T^(i-1)` in `g[T]`.
    pub fn jacobson_si(&self, x: &[Fe], y: &[Fe]) -> Vec<Element> {
        let p = self.p() as usize;
        let f = &self.field;
        // poly[k] is the coefficient of T^k.
        let mut poly: Vec<Element> = vec![x.to_vec()];
        for _ in 0..p - 1 {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                f.axpy(&mut next[k], 1, &self.bracket(y, c));
                f.axpy(&mut next[k + 1], 1, &self.bracket(x, c));
            }
            poly = next;
        }
        (1..p)
            .map(|i| {
                let inv = f.inv(f.from_int(i as i64));
                poly[i - 1].iter().map(|&c| f.mul(inv, c)).collect()
            })
            .collect()
    }

    /// `x^[p]`, peeling one basis summand at a time:
    /// `(y + a e_i)^[p] = y^[p] + a^p e_i^[p] + sum_j s_j(y, a e_i)`.
    pub fn pmap(&self, x: &[Fe]) -> Element {
        let f = &self.field;
        let mut partial = self.zero();
        let mut acc = self.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let term = self.scale(a, &self.basis_vector(i));
            f.axpy(&mut acc, f.frobenius(a), &self.pmap[i]);
            if partial.iter().any(|&c| c != 0) {
                for s in self.jacobson_si(&partial, &term) {
                    f.axpy(&mut acc, 1, &s);
                }
            }
            partial[i] = a;
        }
        acc
    }

    /// `x^([p]^iterations)`.
    pub fn pmap_iter(&self, x: &[Fe], iterations: usize) -> Element {
        (0..iterations).fold(x.to_vec(), |y, _| self.pmap(&y))
    }

    pub fn is_p_nilpotent(&self, x: &[Fe]) -> bool {
        let mut y = x.to_vec();
        for _ in 0..=self.dim() {
            if y.iter().all(|&c| c == 0) {
                return true;
            }
            y = self.pmap(&y);
        }
        y.iter().all(|&c| c == 0)
    }

    /// Checks antisymmetry, the Jacobi identity on basis triples, and
    /// `ad(e_i^[p]) = (ad e_i)^p` for every basis index.
    pub fn verify_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let f = &self.field;
        let mut report = AxiomReport::default();
        'anti: for i in 0..n {
            for j in i..n {
                let neg: Element = self.bracket[j][i].iter().map(|&c| f.neg(c)).collect();
                if self.bracket[i][j] != neg {
                    report.antisymmetry = Some((i, j));
                    break 'anti;
                }
            }
        }
        'jac: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let mut s = self.bracket(&a, &self.bracket(&b, &c));
                    f.axpy(&mut s, 1, &self.bracket(&b, &self.bracket(&c, &a)));
                    f.axpy(&mut s, 1, &self.bracket(&c, &self.bracket(&a, &b)));
                    if s.iter().any(|&x| x != 0) {
                        report.jacobi = Some((i, j, k));
                        break 'jac;
                    }
                }
            }
        }
        for i in 0..n {
            let lhs = self.ad_matrix(&self.pmap[i]);
            let rhs = self.ad_matrix(&self.basis_vector(i)).pow(self.p() as u64);
            if lhs != rhs {
                report.restrictedness = Some(i);
                break;
            }
        }
        report
    }

    /// The same algebra written in the basis `vectors`.
    pub fn change_basis(&self, vectors: &[Element]) -> Result<Self> {
        let n = self.dim();
        if vectors.len() != n || vectors.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch("a basis needs n vectors of length n".into()));
        }
        let inv = Matrix::from_cols(&self.field, n, vectors)
            .inverse()
            .ok_or_else(|| Error::BadParameters("vectors are not a basis".into()))?;
        let coords = |v: Element| inv.mul_vec(&v);
        let bracket = vectors.iter().map(|a| vectors.iter().map(|b| coords(self.bracket(a, b))).collect()).collect();
        let pmap = vectors.iter().map(|a| coords(self.pmap(a))).collect();
        let names = (0..n).map(|i| format!("v{i}")).collect();
        Self::new(&self.field, names, bracket, pmap)
    }

    /// The same structure constants over a larger field of the same
    /// characteristic, through the canonical embedding of fields.
    pub fn extend_scalars(&self, field: &Field) -> Result<Self> {
        if field == &self.field {
            return Ok(self.clone());
        }
        let embed = self.field.embedding_into(field)?;
        let map = |x: &Element| -> Element { x.iter().map(|&c| embed[c as usize]).collect() };
        Ok(RestrictedLieAlgebra {
            field: field.clone(),
            names: self.names.clone(),
            bracket: self.bracket.iter().map(|row| row.iter().map(map).collect()).collect(),
            pmap: self.pmap.iter().map(map).collect(),
        })
    }
}
