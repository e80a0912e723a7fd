use super::{Element, RestrictedLieAlgebra};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::matrix::Matrix;
use crate::subspace::{Echelon, Subspace};

/// A p-subalgebra together with cached structural flags.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PSubalgebra {
    pub space: Subspace,
    pub is_ideal: bool,
    pub is_abelian: bool,
    pub is_elementary_abelian: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Predicates {
    pub nilpotent: bool,
    pub unipotent: bool,
    pub supersolvable: bool,
    pub torus: bool,
}

impl RestrictedLieAlgebra {
    /// Span of all `[a, b]` with `a` in `x` and `b` in `y`.
    pub fn bracket_span(&self, x: &Subspace, y: &Subspace) -> Subspace {
        let mut ech = Echelon::new(self.field(), self.dim());
        for a in x.basis_vectors() {
            for b in y.basis_vectors() {
                ech.insert(&self.bracket(&a, &b));
            }
        }
        ech.into_subspace()
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.field(), self.dim());
        self.bracket_span(&full, &full)
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let rows: Vec<Element> = (0..n)
            .flat_map(|j| {
                let ad = self.ad_matrix(&self.basis_vector(j));
                (0..n).map(move |r| (0..n).map(|i| self.field().neg(ad[(r, i)])).collect::<Element>())
            })
            .collect();
        Matrix::from_rows(self.field(), n, &rows).kernel()
    }

    /// `D^0 = g, D^(k+1) = [D^k, D^k]`, stopping once stable.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.field(), self.dim())];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_span(last, last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    /// `C^0 = g, C^(k+1) = [g, C^k]`, stopping once stable.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.field(), self.dim());
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_span(&full, last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().flatten().flatten().all(|&c| c == 0)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    /// Nilpotent with every basis vector p-nilpotent. In a nilpotent
    /// restricted Lie algebra the p-nilpotent elements form a p-ideal, so the
    /// basis check suffices and no enumeration over the field is needed.
    pub fn is_unipotent(&self) -> bool {
        self.is_nilpotent() && (0..self.dim()).all(|i| self.is_p_nilpotent(&self.basis_vector(i)))
    }

    /// The derived algebra is nilpotent.
    pub fn is_supersolvable(&self) -> bool {
        let d = self.derived_algebra();
        let mut cur = d.clone();
        while !cur.is_zero() {
            let next = self.bracket_span(&d, &cur);
            if next == cur {
                return false;
            }
            cur = next;
        }
        true
    }

    /// Abelian with a bijective (semilinear) p-map.
    pub fn is_torus(&self) -> bool {
        self.is_abelian() && Matrix::from_cols(self.field(), self.dim(), &self.pmap).is_invertible()
    }

    pub fn predicates(&self) -> Predicates {
        Predicates {
            nilpotent: self.is_nilpotent(),
            unipotent: self.is_unipotent(),
            supersolvable: self.is_supersolvable(),
            torus: self.is_torus(),
        }
    }

    fn is_closed(&self, s: &Subspace) -> bool {
        let basis = s.basis_vectors();
        basis.iter().all(|v| s.contains(&self.pmap(v)))
            && basis.iter().enumerate().all(|(i, a)| basis[i + 1..].iter().all(|b| s.contains(&self.bracket(a, b))))
    }

    /// Smallest p-subalgebra containing `s`.
    pub fn p_closure(&self, s: &Subspace) -> PSubalgebra {
        let mut ech = Echelon::new(self.field(), self.dim());
        let mut span: Vec<Element> = vec![];
        for v in s.basis_vectors() {
            if ech.insert(&v) {
                span.push(v);
            }
        }
        let mut done = 0;
        while done < span.len() {
            let v = span[done].clone();
            let mut fresh = vec![self.pmap(&v)];
            fresh.extend(span[..done].iter().map(|w| self.bracket(w, &v)));
            for w in fresh {
                if ech.insert(&w) {
                    span.push(w);
                }
            }
            done += 1;
        }
        self.describe(ech.into_subspace())
    }

    /// `(K x)_p`, spanned by `x, x^[p], x^[p]^2, ...`.
    pub fn cyclic(&self, x: &[Fe]) -> PSubalgebra {
        let mut ech = Echelon::new(self.field(), self.dim());
        let mut y = x.to_vec();
        while ech.insert(&y) {
            y = self.pmap(&y);
        }
        self.describe(ech.into_subspace())
    }

    /// Wraps a p-closed subspace, or fails with `NotPClosed`.
    pub fn psubalgebra(&self, s: &Subspace) -> Result<PSubalgebra> {
        if !self.is_closed(s) {
            return Err(Error::NotPClosed);
        }
        Ok(self.describe(s.clone()))
    }

    fn describe(&self, space: Subspace) -> PSubalgebra {
        let basis = space.basis_vectors();
        let full = Subspace::full(self.field(), self.dim());
        let is_ideal = space.contains_subspace(&self.bracket_span(&full, &space));
        let is_abelian = self.bracket_span(&space, &space).is_zero();
        let is_elementary_abelian = is_abelian && basis.iter().all(|v| self.pmap(v).iter().all(|&c| c == 0));
        PSubalgebra { space, is_ideal, is_abelian, is_elementary_abelian }
    }

    pub fn normalizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        let comp = s.complement_indices();
        let mut rows: Vec<Element> = vec![];
        for b in s.basis_vectors() {
            let images: Vec<Element> = (0..n).map(|j| s.reduce(&self.bracket(&self.basis_vector(j), &b))).collect();
            for &c in &comp {
                rows.push(images.iter().map(|v| v[c]).collect());
            }
        }
        Matrix::from_rows(self.field(), n, &rows).kernel()
    }

    pub fn is_p_ideal(&self, s: &Subspace) -> bool {
        self.is_closed(s) && self.describe(s.clone()).is_ideal
    }

    /// The quotient `g / i` on the standard complement of `i`, together with
    /// the projection matrix.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(RestrictedLieAlgebra, Matrix)> {
        if !self.is_p_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let comp = ideal.complement_indices();
        let project = |v: &[Fe]| -> Element {
            let r = ideal.reduce(v);
            comp.iter().map(|&c| r[c]).collect()
        };
        let bracket = comp
            .iter()
            .map(|&a| comp.iter().map(|&b| project(&self.bracket[a][b])).collect())
            .collect();
        let pmap = comp.iter().map(|&a| project(&self.pmap[a])).collect();
        let names = comp.iter().map(|&a| self.names[a].clone()).collect();
        let proj_cols: Vec<Element> = (0..self.dim()).map(|j| project(&self.basis_vector(j))).collect();
        let q = RestrictedLieAlgebra::new(self.field(), names, bracket, pmap)?;
        Ok((q, Matrix::from_cols(self.field(), comp.len(), &proj_cols)))
    }

    /// The p-subalgebra `s` as a restricted Lie algebra in its canonical basis.
    pub fn subalgebra(&self, s: &Subspace) -> Result<RestrictedLieAlgebra> {
        if !self.is_closed(s) {
            return Err(Error::NotPClosed);
        }
        let basis = s.basis_vectors();
        let coords = |v: Element| s.coordinates(&v).expect("closed subspace");
        let bracket = basis.iter().map(|a| basis.iter().map(|b| coords(self.bracket(a, b))).collect()).collect();
        let pmap = basis.iter().map(|a| coords(self.pmap(a))).collect();
        let names = (0..basis.len()).map(|i| format!("b{i}")).collect();
        RestrictedLieAlgebra::new(self.field(), names, bracket, pmap)
    }
}
