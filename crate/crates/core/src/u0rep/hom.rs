//! Homomorphism spaces via a spin-up presentation of the source module.

use super::algebra::U0Algebra;
use super::module::RepModule;
use crate::field::Fe;
use crate::matrix::Matrix;
use crate::subspace::Echelon;

enum Origin {
    Generator,
    Image(usize, usize),
}

/// Basis of `Hom_{U_0}(m, n)` as `dim n x dim m` matrices.
///
/// `m` is spun up from lifts of a basis of its top; a homomorphism is fixed
/// by the images of those generators, and the relations met during the spin
/// generate all relations of `m`. Only relations outside the submodule
/// generated by earlier ones contribute equations.
pub fn hom(m: &RepModule, n: &RepModule) -> Vec<Matrix> {
    let f = m.field().clone();
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return vec![];
    }
    let u = m.u0();
    let pu = u.dim();
    let generators = m.radical().complement_indices();
    let g = generators.len();
    let unknowns = g * dn;

    let mut ech = Echelon::new(&f, dm);
    let mut basis: Vec<Vec<Fe>> = vec![];
    // Each spun vector is `word * generator`; `words[t]` lives in U_0.
    let mut source: Vec<usize> = vec![];
    let mut words: Vec<Vec<Fe>> = vec![];
    let mut origin: Vec<Origin> = vec![];
    for (k, &c) in generators.iter().enumerate() {
        let mut v = vec![0; dm];
        v[c] = 1;
        assert!(ech.insert(&v));
        basis.push(v);
        source.push(k);
        words.push(u.unit());
        origin.push(Origin::Generator);
    }
    let mut pending: Vec<(usize, usize, Vec<Fe>)> = vec![];
    let mut t = 0;
    while t < basis.len() {
        for i in 0..m.gens() {
            let w = m.action(i).mul_vec(&basis[t]);
            if ech.insert(&w) {
                basis.push(w);
                source.push(source[t]);
                words.push(u.left_mul_gen(i, &words[t]));
                origin.push(Origin::Image(i, t));
            } else {
                pending.push((i, t, w));
            }
        }
        t += 1;
    }
    debug_assert_eq!(basis.len(), dm);
    let b = Matrix::from_cols(&f, dm, &basis);
    let binv = b.inverse().expect("spun basis");

    // The image of basis[t] is images[t] applied to unknown block source[t].
    let mut images: Vec<Matrix> = Vec::with_capacity(dm);
    for o in &origin {
        let y = match *o {
            Origin::Generator => Matrix::identity(&f, dn),
            Origin::Image(i, s) => n.action(i).mul(&images[s]),
        };
        images.push(y);
    }

    // Relations as elements of the free module U_0^g, closed under U_0.
    let mut closure = Echelon::new(&f, g * pu);
    let mut eqs = Echelon::new(&f, unknowns);
    for (i, t, w) in pending {
        if eqs.dim() == unknowns {
            break;
        }
        let coords = binv.mul_vec(&w);
        let mut rel = vec![0; g * pu];
        let k = source[t];
        rel[k * pu..(k + 1) * pu].copy_from_slice(&u.left_mul_gen(i, &words[t]));
        for (s, &c) in coords.iter().enumerate() {
            if c != 0 {
                let k = source[s];
                f.axpy(&mut rel[k * pu..(k + 1) * pu], f.neg(c), &words[s]);
            }
        }
        if !close_under(u, g, &mut closure, rel) {
            continue;
        }
        let mut blocks = vec![Matrix::zeros(&f, dn, dn); g];
        blocks[source[t]] = n.action(i).mul(&images[t]);
        for (s, &c) in coords.iter().enumerate() {
            if c != 0 {
                blocks[source[s]].add_scaled(f.neg(c), &images[s]);
            }
        }
        for r in 0..dn {
            let row: Vec<Fe> = blocks.iter().flat_map(|blk| blk.row(r).iter().copied()).collect();
            eqs.insert(&row);
        }
    }
    let solutions = eqs.into_subspace().basis().kernel();
    solutions
        .basis_vectors()
        .iter()
        .map(|x| {
            let cols: Vec<Vec<Fe>> = images
                .iter()
                .zip(&source)
                .map(|(y, &k)| y.mul_vec(&x[k * dn..(k + 1) * dn]))
                .collect();
            Matrix::from_cols(&f, dn, &cols).mul(&binv)
        })
        .collect()
}

/// Adds the U_0-submodule of `U_0^g` generated by `rel` to `closure`;
/// false when `rel` was already inside.
fn close_under(u: &U0Algebra, g: usize, closure: &mut Echelon, rel: Vec<Fe>) -> bool {
    if !closure.insert(&rel) {
        return false;
    }
    let pu = u.dim();
    let mut queue = vec![rel];
    while let Some(v) = queue.pop() {
        for i in 0..u.gens() {
            let w: Vec<Fe> = (0..g).flat_map(|k| u.left_mul_gen(i, &v[k * pu..(k + 1) * pu])).collect();
            if closure.insert(&w) {
                queue.push(w);
            }
        }
    }
    true
}

pub fn end(m: &RepModule) -> Vec<Matrix> {
    hom(m, m)
}
