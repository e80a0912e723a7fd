use std::sync::Arc;

use super::algebra::U0Algebra;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::lie::{Element, RestrictedLieAlgebra};
use crate::matrix::Matrix;
use crate::subspace::{Echelon, Subspace};

/// Largest module dimension produced by induction or tensor products.
pub const DIM_BUDGET: usize = 1 << 13;

/// A finite-dimensional U_0(g)-module given by the action matrices of the
/// basis of g.
#[derive(Clone)]
pub struct RepModule {
    u0: Arc<U0Algebra>,
    actions: Vec<Matrix>,
    dim: usize,
}

/// First failing invariant of [`RepModule::verify_report`].
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ModuleFailure {
    Bracket(usize, usize),
    PMap(usize),
}

impl std::fmt::Display for ModuleFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModuleFailure::Bracket(i, j) => write!(f, "bracket relation fails for basis pair ({i}, {j})"),
            ModuleFailure::PMap(i) => write!(f, "p-map relation fails for basis index {i}"),
        }
    }
}

/// A module homomorphism.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub source: RepModule,
    pub target: RepModule,
    /// `dim target x dim source`.
    pub matrix: Matrix,
}

impl Morphism {
    pub fn is_intertwining(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        (0..s.gens()).all(|i| t.action(i).mul(&self.matrix) == self.matrix.mul(s.action(i)))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_invertible()
    }
}

impl std::fmt::Debug for RepModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RepModule(dim {} over {:?})", self.dim, self.algebra().names())
    }
}

impl RepModule {
    /// Wraps action matrices without checking the relations; see [`Self::verify`].
    pub fn new(algebra: &RestrictedLieAlgebra, actions: Vec<Matrix>) -> Result<Self> {
        Self::over(U0Algebra::shared(algebra)?, actions)
    }

    pub(crate) fn over(u0: Arc<U0Algebra>, actions: Vec<Matrix>) -> Result<Self> {
        let n = u0.gens();
        if actions.len() != n {
            return Err(Error::DimensionMismatch(format!("{} action matrices for {n} generators", actions.len())));
        }
        let dim = actions.first().map_or(0, |m| m.rows());
        if actions.iter().any(|m| m.rows() != dim || m.cols() != dim || m.field() != u0.field()) {
            return Err(Error::DimensionMismatch("action matrices must be square of one size".into()));
        }
        Ok(RepModule { u0, actions, dim })
    }

    /// The zero module, or a module of dimension `dim` over the zero algebra.
    fn empty(u0: Arc<U0Algebra>, dim: usize) -> Self {
        let actions = (0..u0.gens()).map(|_| Matrix::zeros(u0.field(), dim, dim)).collect();
        RepModule { u0, actions, dim }
    }

    pub fn zero(algebra: &RestrictedLieAlgebra) -> Result<Self> {
        Ok(Self::empty(U0Algebra::shared(algebra)?, 0))
    }

    pub fn u0(&self) -> &Arc<U0Algebra> {
        &self.u0
    }

    pub fn algebra(&self) -> &RestrictedLieAlgebra {
        self.u0.base()
    }

    pub fn field(&self) -> &Field {
        self.u0.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> usize {
        self.actions.len()
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Action of a Lie algebra element.
    pub fn act(&self, x: &[Fe]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m.add_scaled(c, &self.actions[i]);
            }
        }
        m
    }

    /// Action of an element of U_0 in PBW coordinates, by Horner's scheme
    /// in each variable.
    pub fn act_element(&self, u: &[Fe]) -> Matrix {
        assert_eq!(u.len(), self.u0.dim());
        let p = self.algebra().p() as usize;
        self.horner(u, 0, p).unwrap_or_else(|| Matrix::zeros(self.field(), self.dim, self.dim))
    }

    fn horner(&self, coeffs: &[Fe], var: usize, p: usize) -> Option<Matrix> {
        if var == self.gens() {
            let c = coeffs[0];
            return (c != 0).then(|| Matrix::identity(self.field(), self.dim).scale(c));
        }
        let block = coeffs.len() / p;
        let mut acc: Option<Matrix> = None;
        for k in (0..p).rev() {
            if let Some(a) = acc.take() {
                acc = Some(self.actions[var].mul(&a));
            }
            if let Some(term) = self.horner(&coeffs[k * block..(k + 1) * block], var + 1, p) {
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
        }
        acc
    }

    /// `e^a v` for every PBW monomial `a`, indexed like U_0.
    pub fn orbit(&self, v: &[Fe]) -> Vec<Vec<Fe>> {
        let u = &self.u0;
        let mut out: Vec<Vec<Fe>> = Vec::with_capacity(u.dim());
        out.push(v.to_vec());
        for idx in 1..u.dim() {
            let a = u.exponents(idx);
            let j = a.iter().position(|&x| x != 0).unwrap();
            let mut b = a.clone();
            b[j] -= 1;
            let prev = &out[u.index(&b)];
            out.push(self.actions[j].mul_vec(prev));
        }
        out
    }

    pub fn verify_report(&self) -> Option<ModuleFailure> {
        let l = self.algebra();
        let n = self.gens();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&self.actions[i], &self.actions[j]);
                if self.act(&l.bracket_table()[i][j]) != a.mul(b).sub(&b.mul(a)) {
                    return Some(ModuleFailure::Bracket(i, j));
                }
            }
        }
        let p = l.p() as u64;
        (0..n).find(|&i| self.act(&l.pmap_table()[i]) != self.actions[i].pow(p)).map(ModuleFailure::PMap)
    }

    pub fn verify(&self) -> std::result::Result<(), ModuleFailure> {
        self.verify_report().map_or(Ok(()), Err)
    }

    fn check_same(&self, other: &RepModule) -> Result<()> {
        if self.algebra() != other.algebra() {
            return Err(Error::DimensionMismatch("modules over different algebras".into()));
        }
        Ok(())
    }

    /// The regular module U_0 acting on itself from the left.
    pub fn regular(algebra: &RestrictedLieAlgebra) -> Result<Self> {
        let u0 = U0Algebra::shared(algebra)?;
        let actions = (0..u0.gens()).map(|i| u0.regular_action(i)).collect();
        Self::over(u0, actions)
    }

    /// `rank` copies of the regular module.
    pub fn free(algebra: &RestrictedLieAlgebra, rank: usize) -> Result<Self> {
        let reg = Self::regular(algebra)?;
        let mut m = Self::empty(reg.u0.clone(), 0);
        for _ in 0..rank {
            m = m.direct_sum(&reg)?;
        }
        Ok(m)
    }

    pub fn trivial(algebra: &RestrictedLieAlgebra) -> Result<Self> {
        Self::character_module(algebra, &vec![0; algebra.dim()])
    }

    /// The one-dimensional module on which `e_i` acts by `lambda[i]`.
    pub fn character_module(algebra: &RestrictedLieAlgebra, lambda: &[Fe]) -> Result<Self> {
        if lambda.len() != algebra.dim() {
            return Err(Error::DimensionMismatch("character length".into()));
        }
        let f = algebra.field();
        let actions = lambda.iter().map(|&c| Matrix::from_vec(f, 1, 1, vec![c])).collect();
        Self::new(algebra, actions)
    }

    pub fn direct_sum(&self, other: &RepModule) -> Result<Self> {
        self.check_same(other)?;
        let actions = self.actions.iter().zip(&other.actions).map(|(a, b)| a.direct_sum(b)).collect();
        Self::over(self.u0.clone(), actions)
    }

    pub fn tensor(&self, other: &RepModule) -> Result<Self> {
        self.check_same(other)?;
        let size = self.dim * other.dim;
        if size > DIM_BUDGET {
            return Err(Error::BudgetExceeded { what: "tensor product", needed: size as u128, budget: DIM_BUDGET as u128 });
        }
        let (ia, ib) = (Matrix::identity(self.field(), self.dim), Matrix::identity(self.field(), other.dim));
        let actions =
            self.actions.iter().zip(&other.actions).map(|(a, b)| a.kron(&ib).add(&ia.kron(b))).collect();
        Self::over(self.u0.clone(), actions)
    }

    pub fn dual(&self) -> Self {
        let f = self.field();
        let actions = self.actions.iter().map(|a| a.transpose().scale(f.neg(1))).collect();
        RepModule { u0: self.u0.clone(), actions, dim: self.dim }
    }

    /// The action on the submodule `s`, in its canonical basis.
    pub fn submodule(&self, s: &Subspace) -> Result<Self> {
        let basis = s.basis_vectors();
        let mut actions = Vec::with_capacity(self.gens());
        for a in &self.actions {
            let cols = basis
                .iter()
                .map(|v| s.coordinates(&a.mul_vec(v)).ok_or(Error::NotAnIdeal))
                .collect::<Result<Vec<_>>>()?;
            actions.push(Matrix::from_cols(self.field(), basis.len(), &cols));
        }
        Ok(RepModule { u0: self.u0.clone(), actions, dim: basis.len() })
    }

    /// The quotient by the submodule `s`, on the standard complement of `s`.
    pub fn quotient(&self, s: &Subspace) -> Self {
        let comp = s.complement_indices();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Fe>> = comp
                    .iter()
                    .map(|&c| {
                        let r = s.reduce(&a.col(c));
                        comp.iter().map(|&k| r[k]).collect()
                    })
                    .collect();
                Matrix::from_cols(self.field(), comp.len(), &cols)
            })
            .collect();
        RepModule { u0: self.u0.clone(), actions, dim: comp.len() }
    }

    /// Smallest submodule containing `vectors`.
    pub fn spin(&self, vectors: &[Vec<Fe>]) -> Subspace {
        let mut ech = Echelon::new(self.field(), self.dim);
        let mut queue: Vec<Vec<Fe>> = vec![];
        for v in vectors {
            if ech.insert(v) {
                queue.push(v.clone());
            }
        }
        let mut next = 0;
        while next < queue.len() {
            let v = queue[next].clone();
            next += 1;
            for a in &self.actions {
                let w = a.mul_vec(&v);
                if ech.insert(&w) {
                    queue.push(w);
                }
            }
        }
        ech.into_subspace()
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        self.actions.iter().all(|a| s.is_invariant_under(a))
    }

    /// The same module over a larger field, through the canonical embedding.
    pub fn extend_scalars(&self, field: &Field) -> Result<Self> {
        if field == self.field() {
            return Ok(self.clone());
        }
        let big = self.algebra().extend_scalars(field)?;
        let embed = self.field().embedding_into(field)?;
        let actions = self
            .actions
            .iter()
            .map(|a| Matrix::from_fn(field, self.dim, self.dim, |r, c| embed[a[(r, c)] as usize]))
            .collect();
        Self::new(&big, actions)
    }

    /// Restriction to the p-subalgebra `h`, acting through its canonical basis.
    pub fn restrict(&self, h: &Subspace) -> Result<Self> {
        let sub = self.algebra().subalgebra(h)?;
        let actions = h.basis_vectors().iter().map(|b| self.act(b)).collect();
        Self::new(&sub, actions)
    }

    /// `U_0(L) (x)_{U_0(h)} N`, where `N` is a module over `L.subalgebra(h)`.
    pub fn induce(l: &RestrictedLieAlgebra, h: &Subspace, n: &RepModule) -> Result<Self> {
        let sub = l.subalgebra(h)?;
        if n.algebra() != &sub {
            return Err(Error::DimensionMismatch("module is not over the given subalgebra".into()));
        }
        let f = l.field();
        let p = l.p() as usize;
        let comp = h.complement_indices();
        let m = comp.len();
        let size = n.dim() * p.pow(m as u32);
        if size > DIM_BUDGET {
            return Err(Error::BudgetExceeded { what: "induced module", needed: size as u128, budget: DIM_BUDGET as u128 });
        }
        // Adapted basis: complement vectors first, then the basis of h.
        let mut adapted: Vec<Element> = comp.iter().map(|&c| l.basis_vector(c)).collect();
        adapted.extend(h.basis_vectors());
        let lp = l.change_basis(&adapted)?;
        let u = U0Algebra::shared(&lp)?;
        let k = h.dim();
        let pk = p.pow(k as u32);
        let d = n.dim();
        // Monomial index = complement part * p^k + subalgebra part.
        let sub_u = n.u0();
        let sub_ops: Vec<Matrix> = (0..pk).map(|b| n.act_element(&sub_u.monomial(b))).collect();
        let pm = p.pow(m as u32);
        let mut new_actions = Vec::with_capacity(lp.dim());
        for i in 0..lp.dim() {
            let mut mat = Matrix::zeros(f, pm * d, pm * d);
            for a in 0..pm {
                for &(idx, c) in &u.left_table(i)[a * pk] {
                    let (a2, b) = (idx / pk, idx % pk);
                    let op = &sub_ops[b];
                    for r in 0..d {
                        for s in 0..d {
                            let v = op[(r, s)];
                            if v != 0 {
                                let (row, col) = (a2 * d + r, a * d + s);
                                let cur = mat[(row, col)];
                                mat.row_mut(row)[col] = f.add(cur, f.mul(c, v));
                            }
                        }
                    }
                }
            }
            new_actions.push(mat);
        }
        // Back to the original basis: e_j = sum_i coords_i adapted_i.
        let change = Matrix::from_cols(f, l.dim(), &adapted).inverse().expect("adapted basis");
        let actions = (0..l.dim())
            .map(|j| {
                let mut acc = Matrix::zeros(f, pm * d, pm * d);
                for (i, a) in new_actions.iter().enumerate() {
                    let c = change[(i, j)];
                    if c != 0 {
                        acc.add_scaled(c, a);
                    }
                }
                acc
            })
            .collect();
        Self::new(l, actions)
    }
}

/// All characters: linear forms vanishing on `[g, g]` with
/// `lambda(e_i^[p]) = lambda(e_i)^p`.
pub fn characters(l: &RestrictedLieAlgebra, budget: u128) -> Result<Vec<Vec<Fe>>> {
    let f = l.field();
    let n = l.dim();
    let derived = l.derived_algebra();
    // Linear forms vanishing on the derived algebra: kernel of its basis matrix.
    let ann = derived.basis().kernel();
    let r = ann.dim();
    let q = f.order() as u128;
    let count = q.checked_pow(r as u32).unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded { what: "character enumeration", needed: count, budget });
    }
    let basis = ann.basis_vectors();
    let mut out = vec![];
    for code in 0..count {
        let mut lambda = vec![0; n];
        let mut c = code;
        for b in &basis {
            let coef = (c % q) as Fe;
            c /= q;
            f.axpy(&mut lambda, coef, b);
        }
        let ok = (0..n).all(|i| f.dot(&lambda, &l.pmap_table()[i]) == f.frobenius(lambda[i]));
        if ok {
            out.push(lambda);
        }
    }
    out.sort();
    Ok(out)
}
