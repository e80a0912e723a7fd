use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::lie::RestrictedLieAlgebra;
use crate::matrix::Matrix;
use crate::subspace::{Echelon, Subspace};

/// Sparse vector of `(monomial index, coefficient)` pairs.
pub type Sparse = Vec<(usize, Fe)>;

/// Largest `n log2 p` accepted by [`U0Algebra::new`].
pub const LOG2_BUDGET: f64 = 18.0;

/// Data about the indecomposable projectives, computed once per algebra.
#[derive(Clone, Debug)]
pub(crate) struct ProjectiveType {
    /// Basis (as elements of U_0) of one indecomposable left ideal summand.
    pub summand: Vec<Vec<Fe>>,
    /// Basis of its (simple) socle.
    pub socle: Vec<Vec<Fe>>,
}

/// The restricted enveloping algebra on the PBW basis
/// `e_1^a_1 ... e_n^a_n`, `0 <= a_i < p`. The monomial index is the base-p
/// number `a_1 a_2 ... a_n` with `a_1` most significant.
pub struct U0Algebra {
    base: RestrictedLieAlgebra,
    p: usize,
    n: usize,
    dim: usize,
    /// `left[i][a]` = `e_i * e^a`.
    left: Vec<Vec<Sparse>>,
    radical: OnceLock<RadicalData>,
    projectives: OnceLock<Vec<ProjectiveType>>,
}

#[derive(Clone, Debug)]
pub(crate) struct RadicalData {
    /// Whether the radical is the augmentation ideal.
    pub augmentation: bool,
    /// Elements generating the radical as a left ideal.
    pub generators: Vec<Vec<Fe>>,
    /// A basis of the radical.
    pub basis: Subspace,
}

impl std::fmt::Debug for U0Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "U0({:?}, dim {})", self.base.names(), self.dim)
    }
}

fn cache() -> &'static Mutex<Vec<Arc<U0Algebra>>> {
    static CACHE: OnceLock<Mutex<Vec<Arc<U0Algebra>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

impl U0Algebra {
    pub fn new(base: &RestrictedLieAlgebra) -> Result<Self> {
        let p = base.p() as usize;
        let n = base.dim();
        let size = n as f64 * (p as f64).log2();
        if size > LOG2_BUDGET {
            return Err(Error::BudgetExceeded {
                what: "restricted enveloping algebra",
                needed: (p as u128).pow(n as u32),
                budget: 1 << 18,
            });
        }
        let dim = p.pow(n as u32);
        let mut builder = Straightener { base, p, n, dim, memo: HashMap::new() };
        let left = (0..n).map(|i| (0..dim).map(|a| builder.left(i, a).as_ref().clone()).collect()).collect();
        Ok(U0Algebra {
            base: base.clone(),
            p,
            n,
            dim,
            left,
            radical: OnceLock::new(),
            projectives: OnceLock::new(),
        })
    }

    /// A shared instance, reused across modules over the same algebra.
    pub fn shared(base: &RestrictedLieAlgebra) -> Result<Arc<Self>> {
        let mut guard = cache().lock().unwrap();
        if let Some(u) = guard.iter().find(|u| &u.base == base) {
            return Ok(u.clone());
        }
        let u = Arc::new(Self::new(base)?);
        if guard.len() >= 32 {
            guard.remove(0);
        }
        guard.push(u.clone());
        Ok(u)
    }

    pub fn base(&self) -> &RestrictedLieAlgebra {
        &self.base
    }

    pub fn field(&self) -> &Field {
        self.base.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> usize {
        self.n
    }

    pub fn exponents(&self, idx: usize) -> Vec<usize> {
        let mut a = vec![0; self.n];
        let mut r = idx;
        for i in (0..self.n).rev() {
            a[i] = r % self.p;
            r /= self.p;
        }
        a
    }

    pub fn index(&self, exponents: &[usize]) -> usize {
        exponents.iter().fold(0, |acc, &a| acc * self.p + a)
    }

    pub fn unit(&self) -> Vec<Fe> {
        self.monomial(0)
    }

    pub fn monomial(&self, idx: usize) -> Vec<Fe> {
        let mut v = vec![0; self.dim];
        v[idx] = 1;
        v
    }

    /// The image of the Lie algebra element `x` in U_0.
    pub fn embed(&self, x: &[Fe]) -> Vec<Fe> {
        let mut v = vec![0; self.dim];
        for (i, &c) in x.iter().enumerate() {
            v[self.stride(i)] = c;
        }
        v
    }

    fn stride(&self, i: usize) -> usize {
        self.p.pow((self.n - 1 - i) as u32)
    }

    pub(crate) fn left_table(&self, i: usize) -> &[Sparse] {
        &self.left[i]
    }

    /// `e_i * v`.
    pub fn left_mul_gen(&self, i: usize, v: &[Fe]) -> Vec<Fe> {
        let f = self.field();
        let mut out = vec![0; self.dim];
        for (a, &c) in v.iter().enumerate() {
            if c != 0 {
                for &(b, d) in &self.left[i][a] {
                    out[b] = f.add(out[b], f.mul(c, d));
                }
            }
        }
        out
    }

    pub fn mul(&self, u: &[Fe], v: &[Fe]) -> Vec<Fe> {
        let f = self.field();
        let mut out = vec![0; self.dim];
        for (a, &c) in u.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut w = v.to_vec();
            for (i, &e) in self.exponents(a).iter().enumerate().rev() {
                for _ in 0..e {
                    w = self.left_mul_gen(i, &w);
                }
            }
            f.axpy(&mut out, c, &w);
        }
        out
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn regular_action(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (a, col) in self.left[i].iter().enumerate() {
            for &(b, c) in col {
                m.row_mut(b)[a] = c;
            }
        }
        m
    }

    /// Matrix of right multiplication by `u`.
    pub fn right_mul_matrix(&self, u: &[Fe]) -> Matrix {
        let cols: Vec<Vec<Fe>> = (0..self.dim).map(|a| self.mul(&self.monomial(a), u)).collect();
        Matrix::from_cols(self.field(), self.dim, &cols)
    }

    pub(crate) fn radical_data(&self) -> &RadicalData {
        self.radical.get_or_init(|| self.compute_radical())
    }

    fn compute_radical(&self) -> RadicalData {
        let f = self.field();
        let augmentation: Vec<Vec<Fe>> = (1..self.dim).map(|a| self.monomial(a)).collect();
        // The augmentation ideal is the radical iff it is nilpotent:
        // aug^(k+1) = sum_i e_i aug^k.
        let mut layer = augmentation.clone();
        while !layer.is_empty() {
            let mut ech = Echelon::new(f, self.dim);
            for v in &layer {
                for i in 0..self.n {
                    ech.insert(&self.left_mul_gen(i, v));
                }
            }
            let next = ech.into_subspace().basis_vectors();
            if next.len() == layer.len() {
                break;
            }
            layer = next;
        }
        if layer.is_empty() {
            return RadicalData {
                augmentation: true,
                generators: (0..self.n).map(|i| self.monomial(self.stride(i))).collect(),
                basis: Subspace::from_vectors(f, self.dim, &augmentation),
            };
        }
        let gens: Vec<Matrix> = (0..self.n).map(|i| self.regular_action(i)).collect();
        let flat = crate::radical::algebra_radical(&gens);
        let unit = self.unit();
        let elements: Vec<Vec<Fe>> = flat
            .basis_vectors()
            .into_iter()
            .map(|v| Matrix::from_vec(f, self.dim, self.dim, v).mul_vec(&unit))
            .collect();
        let basis = Subspace::from_vectors(f, self.dim, &elements);
        let elements = basis.basis_vectors();
        let mut square = Echelon::new(f, self.dim);
        for a in &elements {
            for b in &elements {
                square.insert(&self.mul(a, b));
            }
        }
        let generators = independent_mod(&square.into_subspace(), elements);
        RadicalData { augmentation: false, generators, basis }
    }

    pub(crate) fn projective_types(&self) -> &[ProjectiveType] {
        self.projectives.get_or_init(|| super::structure::projective_types(self))
    }

    /// The Jacobson radical of U_0 as a subspace of the PBW coordinates.
    pub fn radical(&self) -> Subspace {
        self.radical_data().basis.clone()
    }

    pub fn is_local(&self) -> bool {
        self.radical_data().augmentation
    }
}

/// Picks vectors from `candidates` independent modulo `base`.
fn independent_mod(base: &Subspace, candidates: Vec<Vec<Fe>>) -> Vec<Vec<Fe>> {
    let f = base.field();
    let mut ech = Echelon::new(f, base.ambient_dim());
    for v in base.basis_vectors() {
        ech.insert(&v);
    }
    candidates.into_iter().filter(|v| ech.insert(v)).collect()
}

struct Straightener<'a> {
    base: &'a RestrictedLieAlgebra,
    p: usize,
    n: usize,
    dim: usize,
    memo: HashMap<(usize, usize), Arc<Sparse>>,
}

impl Straightener<'_> {
    fn stride(&self, i: usize) -> usize {
        self.p.pow((self.n - 1 - i) as u32)
    }

    fn digit(&self, a: usize, i: usize) -> usize {
        a / self.stride(i) % self.p
    }

    fn first(&self, a: usize) -> Option<usize> {
        (0..self.n).find(|&i| self.digit(a, i) != 0)
    }

    fn add_into(&self, acc: &mut [Fe], c: Fe, v: &Sparse) {
        let f = self.base.field();
        for &(b, d) in v {
            acc[b] = f.add(acc[b], f.mul(c, d));
        }
    }

    /// `sum_k x_k (e_k * e^a)`.
    fn lie_times(&mut self, x: &[Fe], a: usize, acc: &mut [Fe]) {
        for (k, &c) in x.iter().enumerate() {
            if c != 0 {
                let v = self.left(k, a);
                self.add_into(acc, c, &v);
            }
        }
    }

    fn left(&mut self, i: usize, a: usize) -> Arc<Sparse> {
        if let Some(v) = self.memo.get(&(i, a)) {
            return v.clone();
        }
        let si = self.stride(i);
        let result: Sparse = match self.first(a) {
            Some(j) if j < i => {
                // e_i e_j r = e_j (e_i r) + [e_i, e_j] r
                let r = a - self.stride(j);
                let inner = self.left(i, r);
                let mut acc = vec![0; self.dim];
                for &(b, c) in inner.iter() {
                    let v = self.left(j, b);
                    self.add_into(&mut acc, c, &v);
                }
                let br = self.base.bracket_table()[i][j].clone();
                self.lie_times(&br, r, &mut acc);
                sparse(&acc)
            }
            Some(j) if j == i && self.digit(a, i) == self.p - 1 => {
                // e_i^p = e_i^[p]
                let r = a - (self.p - 1) * si;
                let mut acc = vec![0; self.dim];
                let pm = self.base.pmap_table()[i].clone();
                self.lie_times(&pm, r, &mut acc);
                sparse(&acc)
            }
            _ => vec![(a + si, 1)],
        };
        let result = Arc::new(result);
        self.memo.insert((i, a), result.clone());
        result
    }
}

fn sparse(v: &[Fe]) -> Sparse {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}
