//! Endotrivial modules: constant rank, generic kernels and degrees, syzygy
//! functions, the degree/syzygy identity and the Heller-walk classifier.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::lie::{Element, RestrictedLieAlgebra};
use crate::subspace::{Echelon, Subspace};
use crate::u0rep::{composition_factor_dims, is_isomorphic, IsoOutcome, ProjectiveCount, RepModule};
use crate::variety::{self, EdgePredicate, IncidenceGraph, Plane};

/// Largest `dim(core)^2` for which `M (x) M*` is formed.
pub const ENDOTRIVIAL_BUDGET: usize = 1600;

/// Default Heller walk length for the classifier.
pub const DEFAULT_DEPTH: usize = 8;

/// Walk steps allowed when computing a syzygy value.
const SYZYGY_WALK_LIMIT: usize = 64;

const ISO_SEED: u64 = 0x5eed;

fn is_trivial_one_dim(m: &RepModule) -> bool {
    m.dim() == 1 && m.actions().iter().all(|a| a[(0, 0)] == 0)
}

/// `M (x) M* ~ K (+) proj`, decided on the projective-free core of `M`.
pub fn is_endotrivial(m: &RepModule) -> Result<bool> {
    let core = m.strip_projectives().core;
    if core.dim() == 0 {
        return Ok(false);
    }
    let needed = core.dim() * core.dim();
    if needed > ENDOTRIVIAL_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "endotriviality test",
            needed: needed as u128,
            budget: ENDOTRIVIAL_BUDGET as u128,
        });
    }
    let t = core.tensor(&core.dual())?;
    Ok(is_trivial_one_dim(&t.strip_projectives().core))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantRankReport {
    pub is_constant: bool,
    pub rank: Option<usize>,
    /// Nullcone points with their ranks: the first point examined and, when
    /// the rank varies, the first point disagreeing with it.
    pub witnesses: Vec<(Element, usize)>,
}

/// Rank of `x_M` over every nonzero `x` in `V(g)(F)`, one point per line.
pub fn constant_rank(m: &RepModule, f: &Field) -> Result<ConstantRankReport> {
    let mf = m.extend_scalars(f)?;
    let mut first: Option<(Element, usize)> = None;
    for x in variety::nullcone_points(m.algebra(), f)? {
        match x.iter().find(|&&c| c != 0) {
            Some(&1) => {}
            _ => continue,
        }
        let r = mf.act(&x).rank();
        match &first {
            None => first = Some((x, r)),
            Some((x0, r0)) if *r0 != r => {
                return Ok(ConstantRankReport {
                    is_constant: false,
                    rank: None,
                    witnesses: vec![(x0.clone(), *r0), (x, r)],
                })
            }
            _ => {}
        }
    }
    let rank = first.as_ref().map_or(0, |w| w.1);
    Ok(ConstantRankReport { is_constant: true, rank: Some(rank), witnesses: first.into_iter().collect() })
}

/// Sum of `ker x_M` over the lines of `e`, requiring constant rank on `e`.
fn kernel_sum(m: &RepModule, e: &Plane) -> Result<Subspace> {
    let mut rank = None;
    let mut ech = Echelon::new(m.field(), m.dim());
    for x in e.lines() {
        let a = m.act(&x);
        let r = a.rank();
        if *rank.get_or_insert(r) != r {
            return Err(Error::NotConstantRankOnPlane);
        }
        for v in a.kernel().basis_vectors() {
            ech.insert(&v);
        }
    }
    Ok(ech.into_subspace())
}

fn plane_over(e: &Plane, big: &Field) -> Result<Plane> {
    let embed = e.space().field().embedding_into(big)?;
    let [a, b] = e.basis();
    let lift = |x: &[Fe]| -> Element { x.iter().map(|&c| embed[c as usize]).collect() };
    Plane::spanned_by(big, &lift(&a), &lift(&b))
}

/// The generic kernel of `M|_e` over `F`, where `e` is a plane of `g (x) F`.
pub fn generic_kernel(m: &RepModule, e: &Plane, f: &Field) -> Result<Subspace> {
    kernel_sum(&m.extend_scalars(f)?, e)
}

/// Whether the generic kernel keeps its dimension over the degree-2
/// extension of `F`.
pub fn generic_kernel_stable(m: &RepModule, e: &Plane, f: &Field) -> Result<bool> {
    let big = Field::new(f.characteristic(), 2 * f.degree(), None)?;
    let small = generic_kernel(m, e, f)?.dim();
    let large = kernel_sum(&m.extend_scalars(&big)?, &plane_over(e, &big)?)?.dim();
    Ok(small == large)
}

pub fn degree(m: &RepModule, e: &Plane, f: &Field) -> Result<usize> {
    Ok(m.dim() - generic_kernel(m, e, f)?.dim())
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeEntry {
    pub plane: String,
    pub degree: usize,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub entries: Vec<DegreeEntry>,
}

pub fn degree_function(m: &RepModule, f: &Field) -> Result<DegreeReport> {
    let planes = variety::e2_points(m.algebra(), f)?;
    let mf = m.extend_scalars(f)?;
    let mut entries = vec![];
    for e in &planes {
        let k = kernel_sum(&mf, e)?.dim();
        entries.push(DegreeEntry { plane: e.label(m.algebra().names()), degree: m.dim() - k, kernel_dim: k });
    }
    Ok(DegreeReport { entries })
}

fn restrict_to_plane(m: &RepModule, e: &Plane, f: &Field) -> Result<RepModule> {
    m.extend_scalars(f)?.restrict(e.space())
}

/// The signed number of Heller steps from `K` to the core of `M|_e`,
/// certified by an isomorphism with `Omega^s(K)`.
pub fn syzygy_value(m: &RepModule, e: &Plane, f: &Field) -> Result<i32> {
    let r = restrict_to_plane(m, e, f)?;
    if !is_endotrivial(&r)? {
        return Err(Error::NotEndotrivialOnPlane);
    }
    let core = r.strip_projectives().core;
    let s = walk_to_trivial(&core)?;
    let k = RepModule::trivial(core.algebra())?;
    match is_isomorphic(&core, &k.heller(s), ISO_SEED) {
        IsoOutcome::Isomorphic(_) => Ok(s),
        IsoOutcome::NotIsomorphic => Err(Error::NotEndotrivialOnPlane),
        IsoOutcome::Unknown => Err(Error::Unknown(format!("certifying syzygy value {s}"))),
    }
}

/// For a core `N ~ Omega^s(K)` over a rank-2 elementary abelian algebra,
/// exactly one Heller direction shrinks `N` until it reaches `K`.
fn walk_to_trivial(core: &RepModule) -> Result<i32> {
    if core.dim() == 1 {
        return if is_trivial_one_dim(core) { Ok(0) } else { Err(Error::NotEndotrivialOnPlane) };
    }
    let (down, up) = (core.heller(1), core.heller(-1));
    let (mut cur, sign) = if down.dim() < core.dim() {
        (down, -1)
    } else if up.dim() < core.dim() {
        (up, 1)
    } else {
        return Err(Error::NotEndotrivialOnPlane);
    };
    let mut steps = 1;
    while cur.dim() > 1 {
        if steps >= SYZYGY_WALK_LIMIT {
            return Err(Error::WalkDepthExceeded(SYZYGY_WALK_LIMIT));
        }
        let next = cur.heller(-sign);
        if next.dim() >= cur.dim() {
            return Err(Error::NotEndotrivialOnPlane);
        }
        cur = next;
        steps += 1;
    }
    if !is_trivial_one_dim(&cur) {
        return Err(Error::NotEndotrivialOnPlane);
    }
    Ok(sign * steps as i32)
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyEntry {
    pub plane: String,
    pub value: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyReport {
    pub entries: Vec<SyzygyEntry>,
    pub constant: bool,
    /// Set when `g` is unipotent, its pencil graph is connected, and yet the
    /// values differ.
    pub contradiction_candidate: bool,
}

pub fn syzygy_function(m: &RepModule, f: &Field) -> Result<SyzygyReport> {
    let l = m.algebra();
    let planes = variety::e2_points(l, f)?;
    if planes.is_empty() {
        return Err(Error::EmptyE2);
    }
    let mut entries = vec![];
    for e in &planes {
        entries.push(SyzygyEntry { plane: e.label(l.names()), value: syzygy_value(m, e, f)? });
    }
    let constant = entries.windows(2).all(|w| w[0].value == w[1].value);
    let contradiction_candidate = !constant && l.is_unipotent() && {
        let lf = l.extend_scalars(f)?;
        IncidenceGraph::spanning_forest(&lf, planes, EdgePredicate::Pencil).is_connected()
    };
    Ok(SyzygyReport { entries, constant, contradiction_candidate })
}

#[derive(Clone, Debug, Serialize)]
pub struct Syz3Check {
    pub plane: String,
    pub degree: usize,
    pub syzygy: i32,
    pub lhs: i64,
    pub rhs: Option<i64>,
    pub holds: bool,
}

/// `2p deg_M(e)` against `(p-1)(dim M - 1 - p s)` when `dim M = 1 mod p`
/// and against `(p-1)(dim M + 1) - p(s + 1)` when `dim M = -1 mod p`.
pub fn syz3_rhs(p: i64, dim: i64, s: i64) -> Option<i64> {
    match dim.rem_euclid(p) {
        1 => Some((p - 1) * (dim - 1 - p * s)),
        r if r == p - 1 => Some((p - 1) * (dim + 1) - p * (s + 1)),
        _ => None,
    }
}

pub fn check_syz3(m: &RepModule, f: &Field) -> Result<Vec<Syz3Check>> {
    let p = m.field().characteristic() as i64;
    let dim = m.dim() as i64;
    if dim % p == 0 {
        return Err(Error::DimensionDivisibleByP);
    }
    let l = m.algebra();
    let mut out = vec![];
    for e in variety::e2_points(l, f)? {
        let deg = degree(m, &e, f)?;
        let syzygy = syzygy_value(m, &e, f)?;
        let lhs = 2 * p * deg as i64;
        let rhs = syz3_rhs(p, dim, syzygy as i64);
        out.push(Syz3Check { plane: e.label(l.names()), degree: deg, syzygy, lhs, rhs, holds: rhs == Some(lhs) });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityCheck {
    pub plane: String,
    pub degree: usize,
    pub dual_degree: usize,
    pub rank: usize,
    pub holds: bool,
}

/// `deg_M(e) + deg_{M*}(e) = rk(M)` at every plane.
pub fn check_degree_duality(m: &RepModule, f: &Field) -> Result<Vec<DualityCheck>> {
    let report = constant_rank(m, f)?;
    let rank = report.rank.ok_or(Error::NotConstantRankOnPlane)?;
    let dual = m.dual();
    let l = m.algebra();
    let mut out = vec![];
    for e in variety::e2_points(l, f)? {
        let deg = degree(m, &e, f)?;
        let dual_degree = degree(&dual, &e, f)?;
        out.push(DualityCheck { plane: e.label(l.names()), degree: deg, dual_degree, rank, holds: deg + dual_degree == rank });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassificationStatus {
    Classified,
    NoMatch,
}

/// One certified presentation `core ~ Omega^n(K_lambda)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HellerMatch {
    pub n: i32,
    pub lambda: Vec<Fe>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub status: ClassificationStatus,
    /// The match with least `|n|` (positive `n` first on ties).
    pub n: Option<i32>,
    pub lambda: Option<Vec<Fe>>,
    /// Number of indecomposable projective summands split off.
    pub proj_mult: usize,
    pub projectives: Vec<ProjectiveCount>,
    /// Every match found within the walk depth; several occur when the
    /// Heller operator is periodic on `K_lambda`.
    pub matches: Vec<HellerMatch>,
    pub core_dim: usize,
    /// Whether `M (x) M*` was formed; skipped when the core exceeds
    /// [`ENDOTRIVIAL_BUDGET`], leaving certification to the isomorphism.
    pub endotriviality_checked: bool,
}

fn lcm(a: u32, b: u32) -> u32 {
    let gcd = |mut x: u32, mut y: u32| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    a / gcd(a, b) * b
}

/// Writes `M` as `Omega^n(K_lambda) (+) proj` by walking Heller shifts of
/// its core in both directions, collecting one-dimensional modules. A
/// direction ends at `depth`, at the dimension cap, or after two
/// consecutive dimension increases.
pub fn classify_endotrivial(m: &RepModule, f: &Field, depth: usize, force: bool) -> Result<ClassificationResult> {
    let mf = m.extend_scalars(f)?;
    let l: &RestrictedLieAlgebra = mf.algebra();
    if !force && !l.is_supersolvable() {
        return Err(Error::NotSupersolvable);
    }
    if l.is_supersolvable() {
        let factors = composition_factor_dims(&mf, ISO_SEED)?;
        if factors.iter().any(|&d| d > 1) {
            let suggested_degree = factors.iter().fold(1u32, |acc, &d| lcm(acc, d as u32));
            return Err(Error::NotSplit { suggested_degree });
        }
    }
    let stripped = mf.strip_projectives();
    let core = stripped.core;
    if core.dim() == 0 {
        return Err(Error::NotEndotrivial);
    }
    let endotriviality_checked = core.dim() * core.dim() <= ENDOTRIVIAL_BUDGET;
    if endotriviality_checked && !is_endotrivial(&core)? {
        return Err(Error::NotEndotrivial);
    }

    let cap = 2 * core.dim() + mf.u0().dim();
    let mut found: Vec<(i32, RepModule)> = vec![];
    if core.dim() == 1 {
        found.push((0, core.clone()));
    }
    for sign in [1i32, -1] {
        let mut cur = core.clone();
        let mut rises = 0;
        for step in 1..=depth as i32 {
            let next = cur.heller(sign);
            rises = if next.dim() > cur.dim() { rises + 1 } else { 0 };
            cur = next;
            if cur.dim() == 0 || cur.dim() > cap || rises == 2 {
                break;
            }
            if cur.dim() == 1 {
                found.push((-sign * step, cur.clone()));
            }
        }
    }

    let mut matches = vec![];
    for (n, one) in found {
        let lambda: Vec<Fe> = one.actions().iter().map(|a| a[(0, 0)]).collect();
        let target = RepModule::character_module(l, &lambda)?.heller(n);
        match is_isomorphic(&core, &target, ISO_SEED) {
            IsoOutcome::Isomorphic(_) => matches.push(HellerMatch { n, lambda }),
            IsoOutcome::NotIsomorphic => {}
            IsoOutcome::Unknown => return Err(Error::Unknown(format!("certifying Omega^{n}"))),
        }
    }
    matches.sort_by_key(|h| (h.n.abs(), -h.n, h.lambda.clone()));
    matches.dedup();
    let best = matches.first().cloned();
    Ok(ClassificationResult {
        status: if best.is_some() { ClassificationStatus::Classified } else { ClassificationStatus::NoMatch },
        n: best.as_ref().map(|h| h.n),
        lambda: best.map(|h| h.lambda),
        proj_mult: stripped.projectives.iter().map(|c| c.count).sum(),
        projectives: stripped.projectives,
        matches,
        core_dim: core.dim(),
        endotriviality_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, HeisenbergPmap};

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn plane(l: &RestrictedLieAlgebra, a: &str, b: &str) -> Plane {
        let (x, y) = (l.basis_vector(l.index_of(a).unwrap()), l.basis_vector(l.index_of(b).unwrap()));
        Plane::spanned_by(l.field(), &x, &y).unwrap()
    }

    fn ea2() -> RestrictedLieAlgebra {
        catalog::elementary_abelian(&f3(), 2).unwrap()
    }

    fn whole_plane(l: &RestrictedLieAlgebra) -> Plane {
        Plane::new(Subspace::full(l.field(), 2)).unwrap()
    }

    /// Oracle: generic kernel from every nonzero vector of the plane.
    fn generic_kernel_oracle(m: &RepModule, e: &Plane) -> usize {
        let f = m.field();
        let [a, b] = e.basis();
        let mut ech = Echelon::new(f, m.dim());
        for s in f.elements() {
            for t in f.elements() {
                if s == 0 && t == 0 {
                    continue;
                }
                let mut x = m.algebra().scale(s, &a);
                f.axpy(&mut x, t, &b);
                for v in m.act(&x).kernel().basis_vectors() {
                    ech.insert(&v);
                }
            }
        }
        ech.dim()
    }

    #[test]
    fn endotriviality_examples() {
        let f = f3();
        let h = catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap();
        assert!(is_endotrivial(&RepModule::trivial(&h).unwrap()).unwrap());
        assert!(!is_endotrivial(&RepModule::regular(&h).unwrap()).unwrap());
        let b = catalog::two_dim_nonabelian(&f).unwrap();
        assert!(is_endotrivial(&RepModule::character_module(&b, &[1, 0]).unwrap()).unwrap());
        assert!(is_endotrivial(&catalog::rad_z0(&f).unwrap()).unwrap());
        let k = RepModule::trivial(&ea2()).unwrap();
        let two = k.direct_sum(&k).unwrap();
        assert!(!is_endotrivial(&two).unwrap());
    }

    #[test]
    fn constant_rank_examples() {
        let f = f3();
        let l = ea2();
        let k = RepModule::trivial(&l).unwrap();
        assert_eq!(constant_rank(&k, &f).unwrap().rank, Some(0));
        let reg = constant_rank(&RepModule::regular(&l).unwrap(), &f).unwrap();
        assert!(reg.is_constant);
        assert_eq!(reg.rank, Some(6));
        let o2 = k.heller(2);
        assert_eq!(o2.dim(), 10);
        assert_eq!(constant_rank(&o2, &f).unwrap().rank, Some(2 * 9 / 3));
        let bad = k.direct_sum(&RepModule::character_module(&catalog::elementary_abelian(&f, 2).unwrap(), &[0, 0]).unwrap());
        assert!(constant_rank(&bad.unwrap(), &f).unwrap().is_constant);
    }

    #[test]
    fn non_constant_rank_is_reported() {
        let f = f3();
        let l = ea2();
        let k = RepModule::trivial(&l).unwrap();
        let sub = Subspace::from_vectors(&f, 2, &[vec![1, 0]]);
        let n = RepModule::induce(&l, &sub, &RepModule::trivial(&l.subalgebra(&sub).unwrap()).unwrap()).unwrap();
        let report = constant_rank(&n, &f).unwrap();
        assert!(!report.is_constant);
        assert_eq!(report.witnesses.len(), 2);
        assert_eq!(generic_kernel(&n, &whole_plane(&l), &f).unwrap_err(), Error::NotConstantRankOnPlane);
        assert!(is_endotrivial(&k).unwrap());
    }

    #[test]
    fn generic_kernel_examples() {
        let f = f3();
        let l = ea2();
        let e = whole_plane(&l);
        let k = RepModule::trivial(&l).unwrap();
        assert_eq!(generic_kernel(&k, &e, &f).unwrap().dim(), 1);
        assert_eq!(degree(&k, &e, &f).unwrap(), 0);
        let reg = RepModule::regular(&l).unwrap();
        assert_eq!(generic_kernel(&reg, &e, &f).unwrap().dim(), 6);
        assert_eq!(degree(&reg, &e, &f).unwrap(), 3);
        let o2 = k.heller(2);
        assert_eq!(generic_kernel(&o2, &e, &f).unwrap().dim(), 9);
        assert_eq!(degree(&o2, &e, &f).unwrap(), 1);
        for m in [&k, &reg, &o2, &k.heller(-1), &k.heller(-2)] {
            assert_eq!(generic_kernel(m, &e, &f).unwrap().dim(), generic_kernel_oracle(m, &e));
            assert!(generic_kernel_stable(m, &e, &f).unwrap());
        }
        // Four rational lines miss part of the generic kernel of Omega^3(K).
        let o3 = k.heller(3);
        assert_eq!(generic_kernel(&o3, &e, &f).unwrap().dim(), generic_kernel_oracle(&o3, &e));
        assert!(!generic_kernel_stable(&o3, &e, &f).unwrap());
        let f9 = Field::new(3, 2, None).unwrap();
        let e9 = Plane::new(Subspace::full(&f9, 2)).unwrap();
        let deg9 = degree(&o3, &e9, &f9).unwrap() as i64;
        assert_eq!(Some(6 * deg9), syz3_rhs(3, 17, 3));
    }

    #[test]
    fn rad_z0_degrees_and_syzygies() {
        let f = f3();
        let m = catalog::rad_z0(&f).unwrap();
        let l = m.algebra().clone();
        let (ef, ee) = (plane(&l, "f", "c0"), plane(&l, "e", "c0"));
        assert_eq!(degree(&m, &ef, &f).unwrap(), 2);
        assert_eq!(degree(&m, &ee, &f).unwrap(), 3);
        assert_eq!(syzygy_value(&m, &ef, &f).unwrap(), 1);
        assert_eq!(syzygy_value(&m, &ee, &f).unwrap(), -1);
        let report = syzygy_function(&m, &f).unwrap();
        assert!(!report.constant);
        assert!(!report.contradiction_candidate);
        assert!(check_syz3(&m, &f).unwrap().iter().all(|c| c.holds));
        assert!(check_degree_duality(&m, &f).unwrap().iter().all(|c| c.holds));
        let res = classify_endotrivial(&m, &f, DEFAULT_DEPTH, true).unwrap();
        assert_eq!(res.status, ClassificationStatus::NoMatch);
        assert_eq!(classify_endotrivial(&m, &f, DEFAULT_DEPTH, false).unwrap_err(), Error::NotSupersolvable);
    }

    #[test]
    fn syzygy_values_of_heller_shifts() {
        let f = f3();
        let l = ea2();
        let e = whole_plane(&l);
        let k = RepModule::trivial(&l).unwrap();
        for s in -3..=3 {
            assert_eq!(syzygy_value(&k.heller(s), &e, &f).unwrap(), s);
        }
        let reg = RepModule::regular(&l).unwrap();
        let padded = k.heller(2).direct_sum(&reg).unwrap();
        assert_eq!(syzygy_value(&padded, &e, &f).unwrap(), 2);
        assert_eq!(syzygy_value(&reg, &e, &f).unwrap_err(), Error::NotEndotrivialOnPlane);
    }

    #[test]
    fn heisenberg_syzygy_function() {
        let f = f3();
        let h = catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap();
        let k = RepModule::trivial(&h).unwrap();
        let r = syzygy_function(&k, &f).unwrap();
        assert!(r.constant && r.entries.iter().all(|e| e.value == 0));
        let r = syzygy_function(&k.heller(2), &f).unwrap();
        assert_eq!(r.entries.len(), 4);
        assert!(r.constant && r.entries.iter().all(|e| e.value == 2));
        let b = catalog::two_dim_nonabelian(&f).unwrap();
        let kb = RepModule::trivial(&b).unwrap();
        assert_eq!(syzygy_function(&kb, &f).unwrap_err(), Error::EmptyE2);
    }

    #[test]
    fn syz3_formula_examples() {
        assert_eq!(syz3_rhs(3, 1, 0), Some(0));
        assert_eq!(syz3_rhs(3, 10, 2), Some(6));
        assert_eq!(syz3_rhs(3, 8, 1), Some(12));
        assert_eq!(syz3_rhs(3, 8, -1), Some(18));
        assert_eq!(syz3_rhs(5, 7, 0), None);
        let f = f3();
        let l = ea2();
        let reg = RepModule::regular(&l).unwrap();
        assert_eq!(check_syz3(&reg, &f).unwrap_err(), Error::DimensionDivisibleByP);
        let k = RepModule::trivial(&l).unwrap();
        for s in -2..=2 {
            assert!(check_syz3(&k.heller(s), &f).unwrap().iter().all(|c| c.holds));
        }
    }

    #[test]
    fn duality_examples() {
        let f = f3();
        let l = ea2();
        let reg = RepModule::regular(&l).unwrap();
        let c = check_degree_duality(&reg, &f).unwrap();
        assert_eq!((c[0].degree, c[0].dual_degree, c[0].rank), (3, 3, 6));
        let k = RepModule::trivial(&l).unwrap();
        assert!(check_degree_duality(&k, &f).unwrap().iter().all(|c| c.holds && c.rank == 0));
    }

    #[test]
    fn classifier_examples() {
        let f = f3();
        let b = catalog::two_dim_nonabelian(&f).unwrap();
        let k1 = RepModule::character_module(&b, &[1, 0]).unwrap();
        let r = classify_endotrivial(&k1, &f, DEFAULT_DEPTH, false).unwrap();
        assert_eq!((r.n, r.lambda.clone(), r.proj_mult), (Some(0), Some(vec![1, 0]), 0));
        let h = catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap();
        let m = RepModule::trivial(&h).unwrap().heller(2).direct_sum(&RepModule::regular(&h).unwrap()).unwrap();
        let r = classify_endotrivial(&m, &f, DEFAULT_DEPTH, false).unwrap();
        assert_eq!((r.n, r.lambda, r.proj_mult), (Some(2), Some(vec![0, 0, 0]), 1));
        assert_eq!(r.matches.len(), 1);
        let reg = RepModule::regular(&b).unwrap();
        assert_eq!(classify_endotrivial(&reg, &f, DEFAULT_DEPTH, false).unwrap_err(), Error::NotEndotrivial);
    }

    #[test]
    fn classifier_reports_periodic_matches() {
        let f = f3();
        let b = catalog::two_dim_nonabelian(&f).unwrap();
        let k = RepModule::trivial(&b).unwrap();
        let r = classify_endotrivial(&k.heller(2), &f, DEFAULT_DEPTH, false).unwrap();
        assert!(r.matches.contains(&HellerMatch { n: 2, lambda: vec![0, 0] }));
        assert!(r.matches.len() > 1);
        assert_eq!(r.n, Some(0));
    }

    #[test]
    fn non_split_modules_are_flagged() {
        let f = f3();
        let t = RestrictedLieAlgebra::from_sparse(&f, &["t1", "t2"], &[], &[(0, &[0, 1]), (1, &[1, 0])]).unwrap();
        let rot = crate::matrix::Matrix::from_rows(&f, 2, &[vec![0, 2], vec![1, 0]]);
        let m = RepModule::new(&t, vec![rot.clone(), rot.scale(2)]).unwrap();
        m.verify().unwrap();
        assert_eq!(
            classify_endotrivial(&m, &f, DEFAULT_DEPTH, false).unwrap_err(),
            Error::NotSplit { suggested_degree: 2 }
        );
    }
}
