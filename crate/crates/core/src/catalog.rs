//! Named restricted Lie algebras and modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::lie::{Element, RestrictedLieAlgebra};
use crate::matrix::Matrix;
use crate::subspace::{Echelon, Subspace};
use crate::u0rep::RepModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeisenbergPmap {
    /// All p-th powers vanish.
    Zero,
    /// `z^[p] = z`, the rest vanish.
    ToralCenter,
}

/// Parameters accepted by [`build`]; entries ignore what they do not use.
#[derive(Clone, Debug)]
pub struct CatalogParams {
    pub rank: usize,
    pub omega: i64,
    pub chain: usize,
    pub seed: u64,
    pub toral_center: bool,
}

impl Default for CatalogParams {
    fn default() -> Self {
        CatalogParams { rank: 2, omega: 1, chain: 1, seed: 0, toral_center: false }
    }
}

#[derive(Clone, Debug)]
pub enum CatalogObject {
    Algebra(RestrictedLieAlgebra),
    Module(RepModule),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub object: CatalogObject,
}

pub const NAMES: &[&str] = &[
    "elementary_abelian",
    "torus",
    "heisenberg",
    "two_dim_nonabelian",
    "sl2",
    "sl2_s",
    "b_s",
    "thm_a_case",
    "thm_a_case_a",
    "random_unipotent",
    "baby_verma_Z0",
    "rad_Z0",
];

pub fn build(name: &str, field: &Field, params: &CatalogParams) -> Result<CatalogEntry> {
    let algebra = |l: Result<RestrictedLieAlgebra>| l.map(CatalogObject::Algebra);
    let object = match name {
        "elementary_abelian" => algebra(elementary_abelian(field, params.rank)),
        "torus" => algebra(torus(field, params.rank)),
        "heisenberg" => {
            let variant = if params.toral_center { HeisenbergPmap::ToralCenter } else { HeisenbergPmap::Zero };
            algebra(heisenberg(field, variant))
        }
        "two_dim_nonabelian" => algebra(two_dim_nonabelian(field)),
        "sl2" => algebra(sl2(field)),
        "sl2_s" => algebra(sl2_s(field)),
        "b_s" => algebra(b_s(field)),
        "thm_a_case" => algebra(thm_a_case(field, field.from_int(params.omega), params.chain)),
        "thm_a_case_a" => algebra(thm_a_case_a(field)),
        "random_unipotent" => algebra(random_unipotent(field, params.seed)),
        "baby_verma_Z0" => baby_verma_z0(field).map(CatalogObject::Module),
        "rad_Z0" => rad_z0(field).map(CatalogObject::Module),
        _ => Err(Error::UnknownEntry(name.to_string())),
    }?;
    Ok(CatalogEntry { name: name.to_string(), object })
}

fn validated(l: RestrictedLieAlgebra) -> Result<RestrictedLieAlgebra> {
    let report = l.verify_axioms();
    if report.passed() {
        Ok(l)
    } else {
        Err(Error::AxiomFailure(format!("{report:?}")))
    }
}

fn names_of(prefix: &str, r: usize) -> Vec<String> {
    (1..=r).map(|i| format!("{prefix}{i}")).collect()
}

fn abelian(field: &Field, names: Vec<String>, pmap: Vec<Element>) -> Result<RestrictedLieAlgebra> {
    let n = names.len();
    validated(RestrictedLieAlgebra::new(field, names, vec![vec![vec![0; n]; n]; n], pmap)?)
}

/// Abelian of dimension `r` with zero p-map.
pub fn elementary_abelian(field: &Field, r: usize) -> Result<RestrictedLieAlgebra> {
    abelian(field, names_of("e", r), vec![vec![0; r]; r])
}

/// Abelian of dimension `r` with `t_i^[p] = t_i`.
pub fn torus(field: &Field, r: usize) -> Result<RestrictedLieAlgebra> {
    abelian(field, names_of("t", r), Matrix::identity(field, r).row_vecs())
}

/// `[x, y] = z` with `z` central.
pub fn heisenberg(field: &Field, variant: HeisenbergPmap) -> Result<RestrictedLieAlgebra> {
    let pmap: &[(usize, &[i64])] = match variant {
        HeisenbergPmap::Zero => &[],
        HeisenbergPmap::ToralCenter => &[(2, &[0, 0, 1])],
    };
    validated(RestrictedLieAlgebra::from_sparse(field, &["x", "y", "z"], &[(0, 1, &[0, 0, 1])], pmap)?)
}

/// `<h, e>` with `[h, e] = e`, `h^[p] = h`, `e^[p] = 0`.
pub fn two_dim_nonabelian(field: &Field) -> Result<RestrictedLieAlgebra> {
    validated(RestrictedLieAlgebra::from_sparse(field, &["h", "e"], &[(0, 1, &[0, 1])], &[(0, &[1, 0])])?)
}

/// Basis `e, h, f`.
pub fn sl2(field: &Field) -> Result<RestrictedLieAlgebra> {
    validated(RestrictedLieAlgebra::from_sparse(
        field,
        &["e", "h", "f"],
        &[(0, 1, &[-2, 0, 0]), (0, 2, &[0, 1, 0]), (1, 2, &[0, 0, -2])],
        &[(1, &[0, 1, 0])],
    )?)
}

/// `sl2 + K c0` with `c0` central, `h^[p] = h + c0` and `c0^[p] = 0`. Basis `e, h, f, c0`.
pub fn sl2_s(field: &Field) -> Result<RestrictedLieAlgebra> {
    validated(RestrictedLieAlgebra::from_sparse(
        field,
        &["e", "h", "f", "c0"],
        &[(0, 1, &[-2, 0, 0, 0]), (0, 2, &[0, 1, 0, 0]), (1, 2, &[0, 0, -2, 0])],
        &[(1, &[0, 1, 0, 1])],
    )?)
}

/// `<e, h + c0>` inside [`sl2_s`].
pub fn b_s_subspace(field: &Field) -> Subspace {
    Subspace::from_vectors(field, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 1]])
}

pub fn b_s(field: &Field) -> Result<RestrictedLieAlgebra> {
    let sub = sl2_s(field)?.subalgebra(&b_s_subspace(field))?;
    let names = vec!["e".to_string(), "h+c0".to_string()];
    validated(RestrictedLieAlgebra::new(field, names, sub.bracket_table().to_vec(), sub.pmap_table().to_vec())?)
}

fn require_p3(field: &Field) -> Result<()> {
    if field.characteristic() != 3 {
        return Err(Error::BadParameters("this entry is defined for p = 3 only".into()));
    }
    Ok(())
}

/// Basis `x, y, z, w1..w_chain` at p = 3: `[x, y] = z`, `[x, z] = w_chain`,
/// `[y, z] = omega w_chain`, `z^[3] = w1`, `w_i^[3] = w_(i+1)`, the `w_i` central.
pub fn thm_a_case(field: &Field, omega: Fe, chain: usize) -> Result<RestrictedLieAlgebra> {
    require_p3(field)?;
    if chain == 0 {
        return Err(Error::BadParameters("chain length must be at least 1".into()));
    }
    let n = 3 + chain;
    let mut names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    names.extend(names_of("w", chain));
    let unit = |i: usize| -> Element {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let mut bracket = vec![vec![vec![0; n]; n]; n];
    let mut set = |i: usize, j: usize, v: Element| {
        bracket[j][i] = v.iter().map(|&c| field.neg(c)).collect();
        bracket[i][j] = v;
    };
    set(0, 1, unit(2));
    set(0, 2, unit(n - 1));
    set(1, 2, unit(n - 1).iter().map(|&c| field.mul(omega, c)).collect());
    let mut pmap = vec![vec![0; n]; n];
    for i in 2..n - 1 {
        pmap[i] = unit(i + 1);
    }
    validated(RestrictedLieAlgebra::new(field, names, bracket, pmap)?)
}

/// Membership in the closed-form nullcone of [`thm_a_case`]: the coefficient
/// of `w_chain` is `a^2 b - omega a b^2 + g_(chain-1)^3` and that of `w_k`
/// (k < chain) is `g_(k-1)^3`, where `g_0` is the `z` coordinate.
pub fn thm_a_predicted_nullcone(field: &Field, omega: Fe, v: &[Fe]) -> bool {
    let n = v.len();
    let chain = n - 3;
    let (a, b) = (v[0], v[1]);
    let cube = |k: usize| field.frobenius(v[2 + k]);
    let quad = field.sub(field.mul(field.mul(a, a), b), field.mul(omega, field.mul(a, field.mul(b, b))));
    (1..chain).all(|k| cube(k - 1) == 0) && field.add(quad, cube(chain - 1)) == 0
}

/// Basis `x, y, z, c1, c2` at p = 3 with independent central targets:
/// `[x, y] = z`, `[x, z] = c1`, `[y, z] = c2`, `z^[3] = c1`, `c1^[3] = c2`.
pub fn thm_a_case_a(field: &Field) -> Result<RestrictedLieAlgebra> {
    require_p3(field)?;
    validated(RestrictedLieAlgebra::from_sparse(
        field,
        &["x", "y", "z", "c1", "c2"],
        &[(0, 1, &[0, 0, 1, 0, 0]), (0, 2, &[0, 0, 0, 1, 0]), (1, 2, &[0, 0, 0, 0, 1])],
        &[(2, &[0, 0, 0, 1, 0]), (3, &[0, 0, 0, 0, 1])],
    )?)
}

/// The p-closure of two random strictly upper triangular matrices, kept
/// when its dimension lies in `2..=5`.
pub fn random_unipotent(field: &Field, seed: u64) -> Result<RestrictedLieAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.order();
    loop {
        let size = rng.gen_range(3..=4);
        let mut gen = || {
            let data = (0..size * size).map(|k| if k % size > k / size { rng.gen_range(0..q) as Fe } else { 0 }).collect();
            Matrix::from_vec(field, size, size, data)
        };
        let gens = [gen(), gen()];
        if let Some(l) = matrix_p_closure(field, size, &gens) {
            if (2..=5).contains(&l.dim()) {
                return validated(l);
            }
        }
    }
}

fn matrix_p_closure(field: &Field, size: usize, gens: &[Matrix]) -> Option<RestrictedLieAlgebra> {
    let p = field.characteristic() as u64;
    let mut ech = Echelon::new(field, size * size);
    let mut span: Vec<Matrix> = vec![];
    let push = |m: Matrix, ech: &mut Echelon, span: &mut Vec<Matrix>| {
        if ech.insert(m.data()) {
            span.push(m);
        }
    };
    for g in gens {
        push(g.clone(), &mut ech, &mut span);
    }
    let mut done = 0;
    while done < span.len() {
        let m = span[done].clone();
        let mut fresh = vec![m.pow(p)];
        fresh.extend(span[..done].iter().map(|a| a.mul(&m).sub(&m.mul(a))));
        for w in fresh {
            push(w, &mut ech, &mut span);
        }
        done += 1;
    }
    if span.len() < 2 {
        return None;
    }
    let space = ech.into_subspace();
    let basis: Vec<Matrix> = space
        .basis_vectors()
        .into_iter()
        .map(|v| Matrix::from_vec(field, size, size, v))
        .collect();
    let coords = |m: Matrix| space.coordinates(m.data()).expect("closed span");
    let bracket = basis
        .iter()
        .map(|a| basis.iter().map(|b| coords(a.mul(b).sub(&b.mul(a)))).collect())
        .collect();
    let pmap = basis.iter().map(|a| coords(a.pow(p))).collect();
    RestrictedLieAlgebra::new(field, names_of("u", basis.len()), bracket, pmap).ok()
}

/// `U_0(sl2_s) (x)_{U_0(b_s)} K`, of dimension 9 at p = 3.
pub fn baby_verma_z0(field: &Field) -> Result<RepModule> {
    let l = sl2_s(field)?;
    let h = b_s_subspace(field);
    let trivial = RepModule::character_module(&l.subalgebra(&h)?, &[0, 0])?;
    let m = RepModule::induce(&l, &h, &trivial)?;
    m.verify().map_err(|e| Error::AxiomFailure(e.to_string()))?;
    Ok(m)
}

/// The radical of [`baby_verma_z0`].
pub fn rad_z0(field: &Field) -> Result<RepModule> {
    let z = baby_verma_z0(field)?;
    let r = z.radical_submodule();
    r.verify().map_err(|e| Error::AxiomFailure(e.to_string()))?;
    Ok(r)
}
