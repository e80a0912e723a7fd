//! F_q-point enumeration of the nullcone, the Grassmannian of planes,
//! E(2, g) and Max_p(u), plus pencil incidence graphs on E(2, g).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::lie::{Element, PSubalgebra, RestrictedLieAlgebra};
use crate::matrix::Matrix;
use crate::subspace::Subspace;

pub const ENUMERATION_BUDGET: u128 = 10_000_000;

/// A 2-dimensional subspace in canonical RREF form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Plane {
    space: Subspace,
}

impl std::hash::Hash for Plane {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.space.basis().data().hash(state);
    }
}

impl Plane {
    pub fn new(space: Subspace) -> Result<Self> {
        if space.dim() != 2 {
            return Err(Error::DimensionMismatch(format!("a plane needs dimension 2, got {}", space.dim())));
        }
        Ok(Plane { space })
    }

    pub fn spanned_by(field: &Field, u: &[Fe], v: &[Fe]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch("plane generators differ in length".into()));
        }
        Plane::new(Subspace::from_vectors(field, u.len(), &[u.to_vec(), v.to_vec()]))
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// The two canonical basis rows.
    pub fn basis(&self) -> [Element; 2] {
        let b = self.space.basis();
        [b.row(0).to_vec(), b.row(1).to_vec()]
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.space.contains(v)
    }

    /// The `q + 1` lines of the plane, each as a normalized spanning vector.
    pub fn lines(&self) -> Vec<Element> {
        let f = self.space.field();
        let [a, b] = self.basis();
        let mut out = vec![b.clone()];
        for t in f.elements() {
            let mut w = a.clone();
            f.axpy(&mut w, t, &b);
            out.push(w);
        }
        out
    }

    /// `<u, v>` with basis vectors written in the algebra's basis names.
    pub fn label(&self, names: &[String]) -> String {
        let f = self.space.field();
        let [a, b] = self.basis();
        format!("<{}, {}>", format_element(f, names, &a), format_element(f, names, &b))
    }
}

impl PartialOrd for Plane {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Plane {
    fn cmp(&self, other: &Self) -> Ordering {
        self.space.basis().data().cmp(other.space.basis().data())
    }
}

/// Field elements print as integers in the prime field and as polynomials
/// in the generator `t` otherwise.
pub fn format_scalar(f: &Field, c: Fe) -> String {
    if f.is_prime_field() {
        return c.to_string();
    }
    let terms: Vec<String> = f
        .digits(c)
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &d)| d != 0)
        .map(|(k, &d)| match (k, d) {
            (0, d) => d.to_string(),
            (1, 1) => "t".into(),
            (1, d) => format!("{d}t"),
            (k, 1) => format!("t^{k}"),
            (k, d) => format!("{d}t^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub fn format_element(f: &Field, names: &[String], x: &[Fe]) -> String {
    let terms: Vec<String> = x
        .iter()
        .zip(names)
        .filter(|(&c, _)| c != 0)
        .map(|(&c, name)| {
            if c == 1 {
                name.clone()
            } else if f.is_prime_field() {
                format!("{c}{name}")
            } else {
                format!("({}){name}", format_scalar(f, c))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn check_budget(what: &'static str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded { what, needed, budget });
    }
    Ok(())
}

fn space_size(q: u32, n: usize) -> u128 {
    (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

/// Number of 2-planes in `F_q^n`.
pub fn gaussian_binomial_2(n: usize, q: u32) -> u128 {
    if n < 2 {
        return 0;
    }
    let (a, b) = (space_size(q, n), space_size(q, n - 1));
    let q = q as u128;
    (a - 1).saturating_mul(b - 1) / ((q * q - 1) * (q - 1))
}

fn vector_code(v: &[Fe], q: u32) -> usize {
    v.iter().rev().fold(0usize, |acc, &c| acc * q as usize + c as usize)
}

fn vector_from_code(mut code: usize, q: u32, n: usize) -> Element {
    (0..n)
        .map(|_| {
            let c = (code % q as usize) as Fe;
            code /= q as usize;
            c
        })
        .collect()
}

/// Calls `visit` on every assignment of field values to `free` positions of
/// `template`; stops early when `visit` returns false.
fn for_each_fill(q: u32, template: &mut [Fe], free: &[usize], visit: &mut dyn FnMut(&[Fe]) -> bool) -> bool {
    for &k in free {
        template[k] = 0;
    }
    loop {
        if !visit(template) {
            return false;
        }
        let mut carry = true;
        for &k in free {
            if template[k] + 1 < q as Fe {
                template[k] += 1;
                carry = false;
                break;
            }
            template[k] = 0;
        }
        if carry {
            return true;
        }
    }
}

/// Visits every RREF pair `(u, v)` spanning a 2-plane of `F^n`. `keep_u`
/// prunes first rows before their second rows are enumerated.
fn for_each_rref_plane(f: &Field, n: usize, keep_u: &dyn Fn(&[Fe]) -> bool, visit: &mut dyn FnMut(&[Fe], &[Fe])) {
    let q = f.order();
    for i in 0..n {
        for j in i + 1..n {
            let mut u = vec![0; n];
            u[i] = 1;
            let free_u: Vec<usize> = (i + 1..n).filter(|&k| k != j).collect();
            let free_v: Vec<usize> = (j + 1..n).collect();
            for_each_fill(q, &mut u, &free_u, &mut |u| {
                if keep_u(u) {
                    let mut v = vec![0; n];
                    v[j] = 1;
                    for_each_fill(q, &mut v, &free_v, &mut |v| {
                        visit(u, v);
                        true
                    });
                }
                true
            });
        }
    }
}

fn over(l: &RestrictedLieAlgebra, f: &Field) -> Result<RestrictedLieAlgebra> {
    l.extend_scalars(f)
}

fn is_zero(x: &[Fe]) -> bool {
    x.iter().all(|&c| c == 0)
}

/// Membership table of `V(l)(F)` indexed by vector code.
fn nullcone_table(l: &RestrictedLieAlgebra, budget: u128) -> Result<Vec<bool>> {
    let q = l.field().order();
    let n = l.dim();
    check_budget("nullcone enumeration", space_size(q, n), budget)?;
    let total = space_size(q, n) as usize;
    Ok((0..total).map(|code| is_zero(&l.pmap(&vector_from_code(code, q, n)))).collect())
}

/// All `x` in `L (x) F` with `x^[p] = 0`, in code order.
pub fn nullcone_points(l: &RestrictedLieAlgebra, f: &Field) -> Result<Vec<Element>> {
    nullcone_points_within(l, f, ENUMERATION_BUDGET)
}

pub fn nullcone_points_within(l: &RestrictedLieAlgebra, f: &Field, budget: u128) -> Result<Vec<Element>> {
    let lf = over(l, f)?;
    let table = nullcone_table(&lf, budget)?;
    let q = f.order();
    Ok(table
        .iter()
        .enumerate()
        .filter(|(_, &inside)| inside)
        .map(|(code, _)| vector_from_code(code, q, lf.dim()))
        .collect())
}

/// Every 2-plane of `F^n`, sorted.
pub fn grassmannian2_points(n: usize, f: &Field) -> Result<Vec<Plane>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall);
    }
    check_budget("Grassmannian enumeration", gaussian_binomial_2(n, f.order()), ENUMERATION_BUDGET)?;
    let mut out = vec![];
    for_each_rref_plane(f, n, &|_| true, &mut |u, v| {
        out.push(Plane::spanned_by(f, u, v).expect("independent rows"));
    });
    out.sort();
    Ok(out)
}

/// `E(2, L (x) F)`: planes spanned by commuting p-nilpotent vectors, sorted.
pub fn e2_points(l: &RestrictedLieAlgebra, f: &Field) -> Result<Vec<Plane>> {
    e2_points_within(l, f, ENUMERATION_BUDGET)
}

pub fn e2_points_within(l: &RestrictedLieAlgebra, f: &Field, budget: u128) -> Result<Vec<Plane>> {
    let lf = over(l, f)?;
    let n = lf.dim();
    if n < 2 {
        return Ok(vec![]);
    }
    check_budget("E(2) plane enumeration", gaussian_binomial_2(n, f.order()), budget)?;
    let table = nullcone_table(&lf, budget)?;
    let q = f.order();
    let member = |x: &[Fe]| table[vector_code(x, q)];
    let mut out = vec![];
    for_each_rref_plane(f, n, &member, &mut |u, v| {
        if member(v) && is_zero(&lf.bracket(u, v)) {
            out.push(Plane::spanned_by(f, u, v).expect("independent rows"));
        }
    });
    out.sort();
    Ok(out)
}

/// Planes of `E(2, L (x) F)` through `z0`, with a flag recording whether
/// `z0` is central.
#[derive(Clone, Debug)]
pub struct E2Through {
    pub planes: Vec<Plane>,
    pub z0_central: bool,
}

pub fn e2_through(l: &RestrictedLieAlgebra, z0: &[Fe], f: &Field) -> Result<E2Through> {
    let lf = over(l, f)?;
    if z0.len() != lf.dim() {
        return Err(Error::DimensionMismatch(format!("z0 has length {}, algebra has dimension {}", z0.len(), lf.dim())));
    }
    if is_zero(z0) {
        return Err(Error::ZeroVector);
    }
    if !is_zero(&lf.pmap(z0)) {
        return Err(Error::NotPNilpotent);
    }
    let z0_central = (0..lf.dim()).all(|j| is_zero(&lf.bracket(z0, &lf.basis_vector(j))));
    let planes = e2_points(&lf, f)?.into_iter().filter(|e| e.contains(z0)).collect();
    Ok(E2Through { planes, z0_central })
}

/// Max_p of a unipotent algebra: codimension-one p-ideals `m` with
/// `E(2, m)(F)` nonempty, sorted by their canonical bases.
pub fn maxp(l: &RestrictedLieAlgebra, f: &Field) -> Result<Vec<PSubalgebra>> {
    Ok(maxp_with_planes(l, f)?.into_iter().map(|(m, _)| m).collect())
}

fn maxp_with_planes(l: &RestrictedLieAlgebra, f: &Field) -> Result<Vec<(PSubalgebra, Vec<Plane>)>> {
    if !l.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    if l.dim() < 3 {
        return Err(Error::DimensionTooSmall);
    }
    let lf = over(l, f)?;
    let n = lf.dim();
    let planes = e2_points(&lf, f)?;
    let forms = lf.derived_algebra().basis().kernel();
    let mut out = vec![];
    for phi in projective_points(&forms) {
        let m = Matrix::from_rows(f, n, &[phi]).kernel();
        if !m.basis_vectors().iter().all(|x| m.contains(&lf.pmap(x))) {
            continue;
        }
        let inside: Vec<Plane> = planes.iter().filter(|e| m.contains_subspace(e.space())).cloned().collect();
        if !inside.is_empty() {
            out.push((lf.psubalgebra(&m)?, inside));
        }
    }
    out.sort_by(|a, b| a.0.space.basis().data().cmp(b.0.space.basis().data()));
    Ok(out)
}

/// One representative per line of `s`, normalized to leading coefficient 1.
fn projective_points(s: &Subspace) -> Vec<Element> {
    let f = s.field();
    let basis = s.basis_vectors();
    let mut out = vec![];
    for lead in 0..basis.len() {
        let free: Vec<usize> = (lead + 1..basis.len()).collect();
        let mut coeffs = vec![0; basis.len()];
        coeffs[lead] = 1;
        for_each_fill(f.order(), &mut coeffs, &free, &mut |c| {
            let mut x = vec![0; s.ambient_dim()];
            for (b, &a) in basis.iter().zip(c) {
                f.axpy(&mut x, a, b);
            }
            out.push(x);
            true
        });
    }
    out
}

/// Structural checks on a pair `m != n` of Max_p with disjoint E(2).
#[derive(Clone, Debug, Serialize)]
pub struct MaxpPairCheck {
    pub m: usize,
    pub n: usize,
    pub intersection_dim: usize,
    pub intersection_cyclic: bool,
    pub m_mod_center_dim: usize,
    pub u_mod_center_dim: usize,
}

impl MaxpPairCheck {
    pub fn holds(&self) -> bool {
        self.intersection_cyclic && self.m_mod_center_dim <= 2 && self.u_mod_center_dim <= 3
    }
}

pub fn maxp_pair_checks(l: &RestrictedLieAlgebra, f: &Field) -> Result<Vec<MaxpPairCheck>> {
    let found = maxp_with_planes(l, f)?;
    let lf = over(l, f)?;
    let center = lf.center();
    let mut out = vec![];
    for a in 0..found.len() {
        for b in a + 1..found.len() {
            let (m, em) = &found[a];
            let (n, en) = &found[b];
            if em.iter().any(|e| en.contains(e)) {
                continue;
            }
            let inter = m.space.intersect(&n.space)?;
            out.push(MaxpPairCheck {
                m: a,
                n: b,
                intersection_dim: inter.dim(),
                intersection_cyclic: is_cyclic(&lf, &inter),
                m_mod_center_dim: m.space.dim() - m.space.intersect(&center)?.dim(),
                u_mod_center_dim: lf.dim() - center.dim(),
            });
        }
    }
    Ok(out)
}

/// Whether the p-subalgebra `s` equals `(K x)_p` for some `x` in `s`.
pub fn is_cyclic(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    if s.is_zero() {
        return true;
    }
    projective_points(s).iter().any(|x| l.cyclic(x).space == *s)
}

/// Coefficients of `(u + T u')^[p]` as a polynomial in `T`, constant term
/// first: `u^[p]` at `T^0`, `s_i(u, u')` at `T^(p-i)` and `u'^[p]` at `T^p`.
pub fn pencil_polynomial(l: &RestrictedLieAlgebra, u: &[Fe], u2: &[Fe]) -> Vec<Element> {
    let p = l.p() as usize;
    let mut coeffs = vec![l.zero(); p + 1];
    coeffs[0] = l.pmap(u);
    coeffs[p] = l.pmap(u2);
    for (k, s) in l.jacobson_si(u, u2).into_iter().enumerate() {
        coeffs[p - (k + 1)] = s;
    }
    coeffs
}

/// `(v, u, u')` with `v` spanning `e ∩ e'`, `e = <v, u>`, `e' = <v, u'>`.
fn pencil_frame(e: &Plane, e2: &Plane) -> Option<(Element, Element, Element)> {
    let inter = e.space.intersect(&e2.space).ok()?;
    if inter.dim() != 1 {
        return None;
    }
    let v = inter.basis().row(0).to_vec();
    let off = |x: &Plane| x.basis().into_iter().find(|b| !inter.contains(b)).expect("plane exceeds line");
    Some((v, off(e), off(e2)))
}

/// Certifies that every plane `<v, u + t u'>`, for `t` in any extension
/// field, lies in E(2): `v` and the pencil polynomial vanish under the
/// p-map, and `v` commutes with `u` and `u'`.
pub fn pencil_edge(l: &RestrictedLieAlgebra, e: &Plane, e2: &Plane) -> bool {
    assert_ne!(e, e2, "pencil_edge needs distinct planes");
    let Some((v, u, u2)) = pencil_frame(e, e2) else {
        return false;
    };
    is_zero(&l.pmap(&v))
        && is_zero(&l.bracket(&v, &u))
        && is_zero(&l.bracket(&v, &u2))
        && pencil_polynomial(l, &u, &u2).iter().all(|c| is_zero(c))
}

pub fn meet_in_line(e: &Plane, e2: &Plane) -> bool {
    e != e2 && pencil_frame(e, e2).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgePredicate {
    /// Certifying: the whole pencil between the planes lies in E(2).
    Pencil,
    /// Exploratory: the planes share a line.
    MeetInLine,
}

impl EdgePredicate {
    pub fn tag(self) -> &'static str {
        match self {
            EdgePredicate::Pencil => "pencil",
            EdgePredicate::MeetInLine => "meet-in-line",
        }
    }

    pub fn holds(self, l: &RestrictedLieAlgebra, e: &Plane, e2: &Plane) -> bool {
        match self {
            EdgePredicate::Pencil => pencil_edge(l, e, e2),
            EdgePredicate::MeetInLine => meet_in_line(e, e2),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    pub nodes: Vec<Plane>,
    pub edges: Vec<(usize, usize)>,
    pub predicate: EdgePredicate,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Node groups sharing a line; only such pairs can satisfy either predicate.
fn line_groups(planes: &[Plane]) -> Vec<Vec<usize>> {
    let mut by_line: HashMap<Element, Vec<usize>> = HashMap::new();
    for (i, e) in planes.iter().enumerate() {
        for line in e.lines() {
            by_line.entry(line).or_default().push(i);
        }
    }
    let mut groups: Vec<Vec<usize>> = by_line.into_values().filter(|g| g.len() > 1).collect();
    groups.sort();
    groups
}

impl IncidenceGraph {
    /// All edges between the given planes under `predicate`.
    pub fn build(l: &RestrictedLieAlgebra, planes: Vec<Plane>, predicate: EdgePredicate) -> Self {
        let mut edges = vec![];
        for group in line_groups(&planes) {
            for (k, &a) in group.iter().enumerate() {
                for &b in &group[k + 1..] {
                    if predicate.holds(l, &planes[a], &planes[b]) {
                        edges.push((a.min(b), a.max(b)));
                    }
                }
            }
        }
        edges.sort_unstable();
        IncidenceGraph { nodes: planes, edges, predicate }
    }

    /// A spanning forest of the graph `build` would produce: same
    /// components, testing only pairs not yet known to be connected.
    pub fn spanning_forest(l: &RestrictedLieAlgebra, planes: Vec<Plane>, predicate: EdgePredicate) -> Self {
        let mut uf = UnionFind::new(planes.len());
        let mut edges = vec![];
        for group in line_groups(&planes) {
            for (k, &a) in group.iter().enumerate() {
                for &b in &group[k + 1..] {
                    if uf.find(a) != uf.find(b) && predicate.holds(l, &planes[a], &planes[b]) {
                        uf.union(a, b);
                        edges.push((a.min(b), a.max(b)));
                    }
                }
            }
        }
        edges.sort_unstable();
        IncidenceGraph { nodes: planes, edges, predicate }
    }

    /// Connected components as sorted node lists, ordered by least node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.nodes.len());
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.nodes.len() {
            let r = uf.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort();
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Re-checks every edge against the predicate.
    pub fn verify(&self, l: &RestrictedLieAlgebra) -> bool {
        self.edges.iter().all(|&(a, b)| a < b && self.predicate.holds(l, &self.nodes[a], &self.nodes[b]))
    }

    pub fn to_dot(&self, names: &[String]) -> String {
        let mut s = String::from("graph E2 {\n");
        for (i, e) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", e.label(names));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -- n{b} [predicate=\"{}\"];", self.predicate.tag());
        }
        s.push_str("}\n");
        s
    }
}

/// Samples `samples` members `<v, u + t u'>` of the pencil between `e` and
/// `e'` with `t` drawn from `big`, and checks that each is abelian and that
/// a random vector of it is p-nilpotent.
pub fn verify_pencil_over<R: Rng>(
    l: &RestrictedLieAlgebra,
    e: &Plane,
    e2: &Plane,
    big: &Field,
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    let Some((v, u, u2)) = pencil_frame(e, e2) else {
        return Ok(false);
    };
    let small = e.space.field();
    let embed = small.embedding_into(big)?;
    let lift = |x: &[Fe]| -> Element { x.iter().map(|&c| embed[c as usize]).collect() };
    let lb = l.extend_scalars(big)?;
    let (v, u, u2) = (lift(&v), lift(&u), lift(&u2));
    let q = big.order();
    for _ in 0..samples {
        let t = rng.gen_range(0..q) as Fe;
        let mut w = u.clone();
        big.axpy(&mut w, t, &u2);
        let (a, b) = (rng.gen_range(0..q) as Fe, rng.gen_range(1..q) as Fe);
        let mut x = lb.scale(b, &w);
        big.axpy(&mut x, a, &v);
        if !is_zero(&lb.bracket(&v, &w)) || !is_zero(&lb.pmap(&w)) || !is_zero(&lb.pmap(&x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, HeisenbergPmap};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn named(l: &RestrictedLieAlgebra, terms: &[&str]) -> Element {
        let mut x = l.zero();
        for t in terms {
            x[l.index_of(t).unwrap()] = 1;
        }
        x
    }

    /// Oracle: E(2) from all ordered pairs of vectors.
    fn e2_oracle(l: &RestrictedLieAlgebra) -> BTreeSet<Plane> {
        let f = l.field();
        let (q, n) = (f.order(), l.dim());
        let all: Vec<Element> = (0..space_size(q, n) as usize).map(|c| vector_from_code(c, q, n)).collect();
        let mut out = BTreeSet::new();
        for u in &all {
            for v in &all {
                if let Ok(e) = Plane::spanned_by(f, u, v) {
                    let members_nil = all.iter().filter(|w| e.contains(w)).all(|w| is_zero(&l.pmap(w)));
                    if members_nil && is_zero(&l.bracket(u, v)) {
                        out.insert(e);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn grassmannian_counts() {
        let f = f3();
        assert_eq!(grassmannian2_points(2, &f).unwrap().len(), 1);
        assert_eq!(grassmannian2_points(3, &f).unwrap().len(), 13);
        assert_eq!(grassmannian2_points(4, &f).unwrap().len(), 130);
        assert_eq!(gaussian_binomial_2(4, 3), 130);
        let planes = grassmannian2_points(4, &f).unwrap();
        assert_eq!(planes.iter().collect::<BTreeSet<_>>().len(), 130);
        assert!(grassmannian2_points(1, &f).is_err());
    }

    #[test]
    fn nullcone_examples() {
        let f = f3();
        assert_eq!(nullcone_points(&catalog::sl2_s(&f).unwrap(), &f).unwrap().len(), 15);
        assert_eq!(nullcone_points(&catalog::torus(&f, 1).unwrap(), &f).unwrap(), vec![vec![0]]);
        let h = catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap();
        assert_eq!(nullcone_points(&h, &f).unwrap().len(), 27);
        let err = nullcone_points_within(&h, &f, 26).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn thm_a_nullcone_matches_prediction() {
        let f = f3();
        for omega in 0..3 {
            let l = catalog::thm_a_case(&f, omega, 1).unwrap();
            let points: BTreeSet<Element> = nullcone_points(&l, &f).unwrap().into_iter().collect();
            for code in 0..space_size(3, l.dim()) as usize {
                let v = vector_from_code(code, 3, l.dim());
                assert_eq!(points.contains(&v), catalog::thm_a_predicted_nullcone(&f, omega, &v));
            }
        }
    }

    #[test]
    fn e2_examples() {
        let f = f3();
        let s = catalog::sl2_s(&f).unwrap();
        let expected: Vec<Plane> = {
            let mut v = vec![
                Plane::spanned_by(&f, &named(&s, &["e"]), &named(&s, &["c0"])).unwrap(),
                Plane::spanned_by(&f, &named(&s, &["f"]), &named(&s, &["c0"])).unwrap(),
            ];
            v.sort();
            v
        };
        assert_eq!(e2_points(&s, &f).unwrap(), expected);
        let h = catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap();
        let eh = e2_points(&h, &f).unwrap();
        assert_eq!(eh.len(), 4);
        assert!(eh.iter().all(|e| e.contains(&named(&h, &["z"]))));
        assert!(e2_points(&catalog::sl2(&f).unwrap(), &f).unwrap().is_empty());
    }

    #[test]
    fn e2_matches_oracle_and_members_are_nilpotent() {
        let f = f3();
        let mut algebras = vec![
            catalog::sl2_s(&f).unwrap(),
            catalog::heisenberg(&f, HeisenbergPmap::ToralCenter).unwrap(),
            catalog::thm_a_case_a(&f).unwrap(),
            catalog::two_dim_nonabelian(&f).unwrap(),
        ];
        algebras.extend((0..4).map(|s| catalog::random_unipotent(&f, s).unwrap()));
        for l in &algebras {
            if l.dim() > 4 {
                continue;
            }
            let found = e2_points(l, &f).unwrap();
            assert_eq!(found.iter().cloned().collect::<BTreeSet<_>>(), e2_oracle(l));
            for e in &found {
                let [a, b] = e.basis();
                for x in f.elements() {
                    for y in f.elements() {
                        let mut w = l.scale(x, &a);
                        f.axpy(&mut w, y, &b);
                        assert!(is_zero(&l.pmap(&w)));
                    }
                }
            }
        }
    }

    #[test]
    fn e2_through_examples() {
        let f = f3();
        let s = catalog::sl2_s(&f).unwrap();
        let r = e2_through(&s, &named(&s, &["c0"]), &f).unwrap();
        assert_eq!(r.planes.len(), 2);
        assert!(r.z0_central);
        let h = catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap();
        assert_eq!(e2_through(&h, &named(&h, &["z"]), &f).unwrap().planes.len(), 4);
        let x = e2_through(&h, &named(&h, &["x"]), &f).unwrap();
        assert!(!x.z0_central);
        assert_eq!(x.planes.len(), 1);
        let a = catalog::elementary_abelian(&f, 2).unwrap();
        assert_eq!(e2_through(&a, &[1, 2], &f).unwrap().planes.len(), 1);
        assert_eq!(e2_through(&a, &[0, 0], &f).unwrap_err(), Error::ZeroVector);
        assert_eq!(e2_through(&s, &named(&s, &["h"]), &f).unwrap_err(), Error::NotPNilpotent);
    }

    #[test]
    fn maxp_examples() {
        let f = f3();
        let h = catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap();
        let m = maxp(&h, &f).unwrap();
        assert_eq!(m.len(), 4);
        assert!(m.iter().all(|s| s.is_ideal && s.is_elementary_abelian && s.space.dim() == 2));
        assert_eq!(maxp(&catalog::elementary_abelian(&f, 3).unwrap(), &f).unwrap().len(), 13);
        assert_eq!(maxp(&catalog::sl2_s(&f).unwrap(), &f).unwrap_err(), Error::NotUnipotent);
        let a2 = catalog::elementary_abelian(&f, 2).unwrap();
        assert_eq!(maxp(&a2, &f).unwrap_err(), Error::DimensionTooSmall);
    }

    #[test]
    fn maxp_pair_checks_hold_on_unipotent_algebras() {
        let f = f3();
        let mut algebras = vec![
            catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap(),
            catalog::heisenberg(&f, HeisenbergPmap::ToralCenter).unwrap(),
            catalog::thm_a_case_a(&f).unwrap(),
        ];
        algebras.extend((0..3).map(|w| catalog::thm_a_case(&f, w, 1).unwrap()));
        algebras.extend((0..6).map(|s| catalog::random_unipotent(&f, s).unwrap()));
        for l in algebras.iter().filter(|l| l.is_unipotent() && l.dim() >= 3) {
            for c in maxp_pair_checks(l, &f).unwrap() {
                assert!(c.holds(), "{c:?}");
            }
        }
    }

    #[test]
    fn pencil_examples() {
        let f = f3();
        let h = catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap();
        let zx = Plane::spanned_by(&f, &named(&h, &["z"]), &named(&h, &["x"])).unwrap();
        let zy = Plane::spanned_by(&f, &named(&h, &["z"]), &named(&h, &["y"])).unwrap();
        assert!(pencil_edge(&h, &zx, &zy));
        let s = catalog::sl2_s(&f).unwrap();
        let ee = Plane::spanned_by(&f, &named(&s, &["e"]), &named(&s, &["c0"])).unwrap();
        let ef = Plane::spanned_by(&f, &named(&s, &["f"]), &named(&s, &["c0"])).unwrap();
        assert!(!pencil_edge(&s, &ee, &ef));
        assert!(meet_in_line(&ee, &ef));
        let poly = pencil_polynomial(&s, &named(&s, &["e"]), &named(&s, &["f"]));
        assert!(poly.iter().any(|c| !is_zero(c)));
    }

    #[test]
    #[should_panic]
    fn pencil_edge_rejects_equal_planes() {
        let f = f3();
        let a = catalog::elementary_abelian(&f, 2).unwrap();
        let e = Plane::spanned_by(&f, &[1, 0], &[0, 1]).unwrap();
        pencil_edge(&a, &e, &e);
    }

    /// Oracle: every member `<v, u + t u'>` with `t` in `F_{q^2}` is in E(2).
    fn pencil_oracle(l: &RestrictedLieAlgebra, e: &Plane, e2: &Plane) -> bool {
        let Some((v, u, u2)) = pencil_frame(e, e2) else { return false };
        let big = Field::new(l.p(), 2 * l.field().degree(), None).unwrap();
        let lb = l.extend_scalars(&big).unwrap();
        let emb = l.field().embedding_into(&big).unwrap();
        let lift = |x: &[Fe]| -> Element { x.iter().map(|&c| emb[c as usize]).collect() };
        let (v, u, u2) = (lift(&v), lift(&u), lift(&u2));
        let member_ok = |w: &Element| {
            is_zero(&lb.bracket(&v, w))
                && big.elements().all(|a| {
                    let mut x = w.clone();
                    big.axpy(&mut x, a, &v);
                    is_zero(&lb.pmap(&x))
                })
        };
        is_zero(&lb.pmap(&v))
            && member_ok(&u2)
            && big.elements().all(|t| {
                let mut w = u.clone();
                big.axpy(&mut w, t, &u2);
                member_ok(&w)
            })
    }

    #[test]
    fn pencil_edges_match_extension_oracle() {
        let f = f3();
        let mut algebras = vec![
            catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap(),
            catalog::sl2_s(&f).unwrap(),
            catalog::thm_a_case(&f, 1, 1).unwrap(),
        ];
        algebras.extend((0..3).map(|s| catalog::random_unipotent(&f, s).unwrap()));
        for l in &algebras {
            let planes = e2_points(l, &f).unwrap();
            for group in line_groups(&planes) {
                for (k, &a) in group.iter().enumerate() {
                    for &b in &group[k + 1..] {
                        assert_eq!(pencil_edge(l, &planes[a], &planes[b]), pencil_oracle(l, &planes[a], &planes[b]));
                    }
                }
            }
        }
    }

    #[test]
    fn graph_examples() {
        let f = f3();
        let h = catalog::heisenberg(&f, HeisenbergPmap::Zero).unwrap();
        let g = IncidenceGraph::build(&h, e2_points(&h, &f).unwrap(), EdgePredicate::Pencil);
        assert_eq!((g.nodes.len(), g.component_count()), (4, 1));
        assert_eq!(g.edges.len(), 6);
        assert!(g.verify(&h));
        let dot = g.to_dot(h.names());
        assert!(dot.contains("n0 -- n1 [predicate=\"pencil\"]"));
        let s = catalog::sl2_s(&f).unwrap();
        let g = IncidenceGraph::build(&s, e2_points(&s, &f).unwrap(), EdgePredicate::Pencil);
        assert_eq!((g.nodes.len(), g.component_count()), (2, 2));
        let m = IncidenceGraph::build(&s, e2_points(&s, &f).unwrap(), EdgePredicate::MeetInLine);
        assert_eq!(m.component_count(), 1);
        let a = catalog::elementary_abelian(&f, 3).unwrap();
        let g = IncidenceGraph::build(&a, e2_points(&a, &f).unwrap(), EdgePredicate::Pencil);
        assert_eq!((g.nodes.len(), g.component_count()), (13, 1));
    }

    #[test]
    fn forest_has_the_same_components() {
        let f = f3();
        let f9 = Field::new(3, 2, None).unwrap();
        for seed in 0..5 {
            let l = catalog::random_unipotent(&f, seed).unwrap();
            for field in [&f, &f9] {
                let planes = e2_points(&l, field).unwrap();
                let lf = l.extend_scalars(field).unwrap();
                let full = IncidenceGraph::build(&lf, planes.clone(), EdgePredicate::Pencil);
                let forest = IncidenceGraph::spanning_forest(&lf, planes, EdgePredicate::Pencil);
                assert_eq!(full.components(), forest.components());
                assert!(forest.edges.iter().all(|e| full.edges.contains(e)));
            }
        }
    }

    #[test]
    fn edges_reverify_over_extension() {
        let f9 = Field::new(3, 2, None).unwrap();
        let f81 = Field::new(3, 4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = catalog::heisenberg(&f3(), HeisenbergPmap::Zero).unwrap().extend_scalars(&f9).unwrap();
        let g = IncidenceGraph::spanning_forest(&h, e2_points(&h, &f9).unwrap(), EdgePredicate::Pencil);
        assert_eq!(g.component_count(), 1);
        for &(a, b) in &g.edges {
            assert!(verify_pencil_over(&h, &g.nodes[a], &g.nodes[b], &f81, 5, &mut rng).unwrap());
        }
    }

    #[test]
    fn cyclic_subalgebras() {
        let f = f3();
        let l = catalog::thm_a_case(&f, 0, 2).unwrap();
        let z = named(&l, &["z"]);
        let c = l.cyclic(&z).space;
        assert_eq!(c.dim(), 3);
        assert!(is_cyclic(&l, &c));
        let a = catalog::elementary_abelian(&f, 2).unwrap();
        assert!(!is_cyclic(&a, &Subspace::full(&f, 2)));
    }

    #[test]
    fn labels_use_names() {
        let f9 = Field::new(3, 2, None).unwrap();
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let e = Plane::spanned_by(&f9, &[1, 0, 0], &[0, 1, 3]).unwrap();
        assert_eq!(e.lines().len(), 10);
        assert_eq!(format_element(&f9, &names, &[1, 3]), "a + (t)b");
        assert_eq!(format_element(&f9, &names, &[0, 5]), "(t+2)b");
    }
}
