use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{ProjectiveType, U0Algebra};
use super::hom::{end, hom};
use super::module::RepModule;
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::matrix::Matrix;
use crate::radical::radical_of_algebra;
use crate::subspace::{Echelon, Subspace};

/// Largest module handed to [`decompose`].
pub const DECOMPOSE_BUDGET: usize = 512;

/// Random endomorphisms tried per summand before giving up.
const SPLIT_ATTEMPTS: usize = 200;

/// A multiset entry of stripped indecomposable projectives.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ProjectiveCount {
    pub dim: usize,
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct Stripped {
    pub core: RepModule,
    pub projectives: Vec<ProjectiveCount>,
}

impl Stripped {
    pub fn projective_summands(&self) -> usize {
        self.projectives.iter().map(|c| c.count).sum()
    }
}

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Isomorphic(Matrix),
    NotIsomorphic,
    Unknown,
}

impl IsoOutcome {
    pub fn is_true(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn is_false(&self) -> bool {
        matches!(self, IsoOutcome::NotIsomorphic)
    }
}

impl RepModule {
    /// `J(U_0) M`.
    pub fn radical(&self) -> Subspace {
        let f = self.field();
        let data = self.u0().radical_data();
        if data.augmentation {
            let cols: Vec<Vec<Fe>> = self.actions().iter().flat_map(|a| a.transpose().row_vecs()).collect();
            return Subspace::from_vectors(f, self.dim(), &cols);
        }
        let cols: Vec<Vec<Fe>> = data
            .generators
            .iter()
            .flat_map(|g| self.act_element(g).transpose().row_vecs())
            .collect();
        self.spin(&cols)
    }

    /// `{ m : J(U_0) m = 0 }`.
    pub fn socle(&self) -> Subspace {
        let data = self.u0().radical_data();
        let ops: Vec<Matrix> = if data.augmentation {
            self.actions().to_vec()
        } else {
            data.generators.iter().map(|g| self.act_element(g)).collect()
        };
        let stacked = ops.iter().fold(Matrix::zeros(self.field(), 0, self.dim()), |acc, m| acc.vstack(m));
        stacked.kernel()
    }

    pub fn radical_submodule(&self) -> RepModule {
        self.submodule(&self.radical()).expect("the radical is a submodule")
    }

    pub fn top(&self) -> RepModule {
        self.quotient(&self.radical())
    }

    /// Splits off every indecomposable projective summand.
    pub fn strip_projectives(&self) -> Stripped {
        let types = self.u0().projective_types();
        let mut projectives = vec![];
        let mut free_part = Echelon::new(self.field(), self.dim());
        for ty in types {
            let ops: Vec<Matrix> = ty.socle.iter().map(|s| self.act_element(s)).collect();
            let mut seen = Echelon::new(self.field(), self.dim());
            let mut count = 0;
            for c in 0..self.dim() {
                let images: Vec<Vec<Fe>> = ops.iter().map(|o| o.col(c)).collect();
                if images.iter().all(|v| seen.contains(v)) {
                    continue;
                }
                for v in &images {
                    seen.insert(v);
                }
                count += 1;
                let mut m = vec![0; self.dim()];
                m[c] = 1;
                let orbit = self.orbit(&m);
                for x in &ty.summand {
                    let mut v = vec![0; self.dim()];
                    for (a, &coef) in x.iter().enumerate() {
                        if coef != 0 {
                            self.field().axpy(&mut v, coef, &orbit[a]);
                        }
                    }
                    free_part.insert(&v);
                }
            }
            if count > 0 {
                projectives.push(ProjectiveCount { dim: ty.summand.len(), count });
            }
        }
        let expected: usize = projectives.iter().map(|c| c.dim * c.count).sum();
        assert_eq!(free_part.dim(), expected, "projective summands must embed");
        let core = self.quotient(&free_part.into_subspace());
        Stripped { core, projectives }
    }

    pub fn is_projective(&self) -> bool {
        self.strip_projectives().core.dim() == 0
    }

    /// Projectivity by splitting a free cover: decides whether
    /// `U_0^g -> M` has a section. Cost grows quickly; meant for small modules.
    pub fn is_projective_by_splitting(&self) -> bool {
        if self.dim() == 0 {
            return true;
        }
        let (cover, pi) = self.free_cover();
        let sections = hom(self, &cover);
        let f = self.field();
        let d = self.dim();
        let cols: Vec<Vec<Fe>> = sections.iter().map(|s| pi.mul(s).data().to_vec()).collect();
        if cols.is_empty() {
            return false;
        }
        let a = Matrix::from_cols(f, d * d, &cols);
        a.solve(Matrix::identity(f, d).data()).is_some()
    }

    /// A free module mapping onto `self`, generated by lifts of a top basis,
    /// together with the surjection.
    pub fn free_cover(&self) -> (RepModule, Matrix) {
        let f = self.field();
        let generators = self.radical().complement_indices();
        let mut cols: Vec<Vec<Fe>> = vec![];
        for &c in &generators {
            let mut m = vec![0; self.dim()];
            m[c] = 1;
            cols.extend(self.orbit(&m));
        }
        let cover = RepModule::free(self.algebra(), generators.len()).expect("algebra already has U_0");
        (cover, Matrix::from_cols(f, self.dim(), &cols))
    }

    /// `Omega^1`: the projective-free part of the kernel of a free cover.
    pub fn omega(&self) -> RepModule {
        let (cover, pi) = self.free_cover();
        let kernel = pi.kernel();
        cover.submodule(&kernel).expect("kernel of a module map").strip_projectives().core
    }

    /// `Omega^n` for any integer `n`, negative shifts through duality.
    pub fn heller(&self, n: i32) -> RepModule {
        match n {
            0 => self.strip_projectives().core,
            n if n > 0 => (0..n).fold(self.clone(), |m, _| m.omega()),
            n => self.dual().heller(-n).dual(),
        }
    }
}

/// Indecomposable summands of `m`, each certified by a local endomorphism ring.
pub fn decompose(m: &RepModule, seed: u64) -> Result<Vec<RepModule>> {
    if m.dim() > DECOMPOSE_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "decomposition",
            needed: m.dim() as u128,
            budget: DECOMPOSE_BUDGET as u128,
        });
    }
    let pieces = decompose_subspaces(m, &end(m), seed)?;
    pieces.iter().map(|s| m.submodule(s)).collect()
}

/// Splits `m` into indecomposable submodules using `endos`, a spanning set of
/// `End(m)`.
pub(crate) fn decompose_subspaces(m: &RepModule, endos: &[Matrix], seed: u64) -> Result<Vec<Subspace>> {
    let f = m.field().clone();
    let d = m.dim();
    if d == 0 {
        return Ok(vec![]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done: Vec<Subspace> = vec![];
    let mut todo: Vec<Subspace> = vec![Subspace::full(&f, d)];
    let mut attempts = 0usize;
    while let Some(x) = todo.pop() {
        if x.dim() == 1 || quick_indecomposable(&m.submodule(&x)?) {
            done.push(x);
            continue;
        }
        // End(x) = pi_x End(m) iota_x, with pi_x the projection along the other pieces.
        let others: Vec<&Subspace> = done.iter().chain(todo.iter()).collect();
        let mut cols: Vec<Vec<Fe>> = x.basis_vectors();
        for o in &others {
            cols.extend(o.basis_vectors());
        }
        let pinv = Matrix::from_cols(&f, d, &cols).inverse().expect("direct sum decomposition");
        let rows: Vec<usize> = (0..x.dim()).collect();
        let proj = pinv.select_rows(&rows);
        let xb = Matrix::from_cols(&f, d, &x.basis_vectors());
        let local: Vec<Matrix> = endos.iter().map(|e| proj.mul(&e.mul(&xb))).collect();
        let mut ech = Echelon::new(&f, x.dim() * x.dim());
        let local: Vec<Matrix> = local.into_iter().filter(|e| ech.insert(e.data())).collect();

        match split_once(&local, &mut rng, 8) {
            Some((a, b)) => {
                todo.push(lift(&xb, &a));
                todo.push(lift(&xb, &b));
            }
            None if is_local_algebra(&local) => done.push(x),
            None => {
                attempts += 1;
                match split_once(&local, &mut rng, SPLIT_ATTEMPTS) {
                    Some((a, b)) => {
                        todo.push(lift(&xb, &a));
                        todo.push(lift(&xb, &b));
                    }
                    None => return Err(Error::Unknown(format!("no splitting found after {attempts} rounds"))),
                }
            }
        }
    }
    done.sort_by_key(|s| (s.dim(), s.pivots().to_vec()));
    Ok(done)
}

/// Simple top or simple socle forces indecomposability.
fn quick_indecomposable(m: &RepModule) -> bool {
    m.dim() - m.radical().dim() == 1 || m.socle().dim() == 1
}

fn lift(basis: &Matrix, s: &Subspace) -> Subspace {
    let vecs: Vec<Vec<Fe>> = s.basis_vectors().iter().map(|v| basis.mul_vec(v)).collect();
    Subspace::from_vectors(basis.field(), basis.rows(), &vecs)
}

/// Tries Fitting decompositions `ker (phi - c)^d + im (phi - c)^d` for random `phi`.
fn split_once(endos: &[Matrix], rng: &mut ChaCha8Rng, tries: usize) -> Option<(Subspace, Subspace)> {
    let first = endos.first()?;
    let f = first.field().clone();
    let d = first.rows();
    let q = f.order();
    for _ in 0..tries {
        let mut phi = Matrix::zeros(&f, d, d);
        for e in endos {
            phi.add_scaled(rng.gen_range(0..q) as Fe, e);
        }
        for c in f.elements() {
            let psi = phi.sub(&Matrix::identity(&f, d).scale(c)).pow(d as u64);
            let ker = psi.kernel();
            if !ker.is_zero() && ker.dim() < d {
                return Some((ker, psi.column_space()));
            }
        }
    }
    None
}

/// Whether the algebra spanned by `basis` is local: its semisimple quotient
/// is commutative with a one-dimensional Berlekamp subalgebra, hence a field.
fn is_local_algebra(basis: &[Matrix]) -> bool {
    let Some(first) = basis.first() else {
        return false;
    };
    let f = first.field().clone();
    let d = first.rows();
    let rad = radical_of_algebra(basis);
    if basis.len() - rad.len() == 1 {
        return true;
    }
    let rad_space = Subspace::from_vectors(&f, d * d, &rad.iter().map(|m| m.data().to_vec()).collect::<Vec<_>>());
    let commutative = basis.iter().all(|a| {
        basis.iter().all(|b| rad_space.contains(a.mul(b).sub(&b.mul(a)).data()))
    });
    if !commutative {
        return false;
    }
    // x -> x^q - x is linear on the commutative quotient A / J(A); its kernel
    // dimension counts the simple factors.
    let mut ech = Echelon::new(&f, d * d);
    for r in &rad {
        ech.insert(r.data());
    }
    let reps: Vec<&Matrix> = basis.iter().filter(|b| ech.insert(b.data())).collect();
    let reduced: Vec<Vec<Fe>> = reps.iter().map(|m| rad_space.reduce(m.data())).collect();
    let quotient = Subspace::from_vectors(&f, d * d, &reduced);
    let q = f.order() as u64;
    let cols: Vec<Vec<Fe>> = reps
        .iter()
        .map(|c| quotient.coordinates(&rad_space.reduce(c.pow(q).sub(c).data())).expect("closed algebra"))
        .collect();
    reps.len() - Matrix::from_cols(&f, quotient.dim(), &cols).rank() == 1
}

/// Dimensions of composition factors, sorted.
pub fn composition_factor_dims(m: &RepModule, seed: u64) -> Result<Vec<usize>> {
    if m.u0().is_local() {
        return Ok(vec![1; m.dim()]);
    }
    let mut out = vec![];
    let mut cur = m.clone();
    while cur.dim() > 0 {
        let rad = cur.radical();
        let layer = cur.quotient(&rad);
        out.extend(decompose(&layer, seed)?.iter().map(|s| s.dim()));
        cur = cur.submodule(&rad)?;
    }
    out.sort();
    Ok(out)
}

/// Isomorphism test: random invertible homomorphisms first, then invariants,
/// then an exhaustive search when `q^(dim Hom) <= 10^6`.
pub fn is_isomorphic(m: &RepModule, n: &RepModule, seed: u64) -> IsoOutcome {
    if m.algebra() != n.algebra() || m.dim() != n.dim() {
        return IsoOutcome::NotIsomorphic;
    }
    let f = m.field().clone();
    if m.dim() == 0 {
        return IsoOutcome::Isomorphic(Matrix::zeros(&f, 0, 0));
    }
    let h = hom(m, n);
    if h.is_empty() {
        return IsoOutcome::NotIsomorphic;
    }
    let q = f.order() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let combine = |coeffs: &[Fe]| {
        let mut x = Matrix::zeros(&f, n.dim(), m.dim());
        for (c, b) in coeffs.iter().zip(&h) {
            if *c != 0 {
                x.add_scaled(*c, b);
            }
        }
        x
    };
    for _ in 0..64 {
        let coeffs: Vec<Fe> = (0..h.len()).map(|_| rng.gen_range(0..q) as Fe).collect();
        let x = combine(&coeffs);
        if x.is_invertible() {
            return IsoOutcome::Isomorphic(x);
        }
    }
    if h.len() != end(m).len() || h.len() != end(n).len() {
        return IsoOutcome::NotIsomorphic;
    }
    match (composition_factor_dims(m, seed), composition_factor_dims(n, seed)) {
        (Ok(a), Ok(b)) if a != b => return IsoOutcome::NotIsomorphic,
        _ => {}
    }
    let total = (q as f64).powi(h.len() as i32);
    if total > 1e6 {
        return IsoOutcome::Unknown;
    }
    let mut coeffs = vec![0 as Fe; h.len()];
    loop {
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return IsoOutcome::NotIsomorphic;
            }
            coeffs[i] += 1;
            if coeffs[i] as u64 == q {
                coeffs[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        let x = combine(&coeffs);
        if x.is_invertible() {
            return IsoOutcome::Isomorphic(x);
        }
    }
}

pub(crate) fn projective_types(u: &U0Algebra) -> Vec<ProjectiveType> {
    let reg = RepModule::regular(u.base()).expect("algebra already built");
    if u.is_local() {
        let summand = (0..u.dim()).map(|a| u.monomial(a)).collect();
        return vec![ProjectiveType { summand, socle: reg.socle().basis_vectors() }];
    }
    let endos: Vec<Matrix> = (0..u.dim()).map(|a| u.right_mul_matrix(&u.monomial(a))).collect();
    let pieces = decompose_subspaces(&reg, &endos, 0).expect("regular module decomposes");
    let mut types: Vec<ProjectiveType> = vec![];
    for piece in pieces {
        let sub = reg.submodule(&piece).expect("left ideal");
        let known = types.iter().any(|t| t.socle.iter().any(|s| !sub.act_element(s).is_zero()));
        if known {
            continue;
        }
        let basis = piece.basis();
        let socle = sub.socle().basis_vectors().iter().map(|v| basis.transpose().mul_vec(v)).collect();
        types.push(ProjectiveType { summand: piece.basis_vectors(), socle });
    }
    types
}
