//! Jacobson radicals of matrix algebras over finite fields.
//!
//! The trace form alone only detects the radical in characteristic zero. Over
//! `F_p` we use the iterated trace conditions
//! `g_i(x) = Tr(x^(p^i)) / p^i (mod p)` evaluated on integer lifts: starting
//! from `I_{-1} = A`, each `I_i = { a in I_{i-1} : g_i(ab) = 0 for all b in A }`
//! and `I_l` is the radical once `p^(l+1) > n`. Every `g_i` is linear on
//! `I_{i-1}`, so the bilinear conditions reduce to one trace per basis pair.
//! Algebras over `F_{p^k}` are first rewritten over `F_p` through the regular
//! representation of the field.

use crate::field::{Fe, Field};
use crate::matrix::Matrix;
use crate::subspace::{Echelon, Subspace};

/// Basis of the unital algebra generated by square matrices of size `n`.
pub fn enveloped_algebra(field: &Field, n: usize, generators: &[Matrix]) -> Vec<Matrix> {
    let mut ech = Echelon::new(field, n * n);
    let mut basis = vec![];
    let id = Matrix::identity(field, n);
    ech.insert(id.data());
    basis.push(id);
    let mut next = 0;
    while next < basis.len() {
        let x = basis[next].clone();
        next += 1;
        for g in generators {
            let y = g.mul(&x);
            if ech.insert(y.data()) {
                basis.push(y);
            }
        }
    }
    basis
}

/// Radical of the unital algebra generated by `generators`, as a subspace of
/// the row-major flattened matrix space `F^(n*n)`.
pub fn algebra_radical(generators: &[Matrix]) -> Subspace {
    assert!(!generators.is_empty(), "need at least one generator");
    let field = generators[0].field().clone();
    let n = generators[0].rows();
    assert!(generators.iter().all(|g| g.rows() == n && g.cols() == n));
    let basis = enveloped_algebra(&field, n, generators);
    let rad = radical_of_algebra(&basis);
    let vecs: Vec<Vec<Fe>> = rad.iter().map(|m| m.data().to_vec()).collect();
    Subspace::from_vectors(&field, n * n, &vecs)
}

/// Radical of the algebra spanned by `basis`, which must be closed under
/// multiplication. Returns a basis of the radical.
pub fn radical_of_algebra(basis: &[Matrix]) -> Vec<Matrix> {
    let Some(first) = basis.first() else {
        return vec![];
    };
    let field = first.field().clone();
    let n = first.rows();
    let k = field.degree() as usize;
    let p = field.characteristic();
    let fp = if k == 1 { field.clone() } else { Field::prime(p).expect("p is an odd prime") };

    // F_p-basis of the algebra viewed over the prime field.
    let prime_basis: Vec<Matrix> = if k == 1 {
        basis.to_vec()
    } else {
        let omega = p as Fe;
        let mut out = vec![];
        for b in basis {
            let mut scalar: Fe = 1;
            for _ in 0..k {
                out.push(blow_up(&b.scale(scalar), &fp));
                scalar = field.mul(scalar, omega);
            }
        }
        out
    };
    let rad = prime_field_radical(&fp, &prime_basis);
    if k == 1 {
        return rad;
    }
    let shrunk: Vec<Vec<Fe>> = rad.iter().map(|m| shrink(m, &field, n).data().to_vec()).collect();
    let sub = Subspace::from_vectors(&field, n * n, &shrunk);
    sub.basis_vectors().into_iter().map(|v| Matrix::from_vec(&field, n, n, v)).collect()
}

/// Replace each entry by its `k x k` multiplication matrix over `F_p`.
fn blow_up(m: &Matrix, fp: &Field) -> Matrix {
    let f = m.field();
    let k = f.degree() as usize;
    let mut out = Matrix::zeros(fp, m.rows() * k, m.cols() * k);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let block = f.mult_matrix(m[(i, j)]);
            for (s, row) in block.iter().enumerate() {
                for (t, &x) in row.iter().enumerate() {
                    out[(i * k + s, j * k + t)] = x as Fe;
                }
            }
        }
    }
    out
}

/// Inverse of [`blow_up`] on matrices of the blown-up form.
fn shrink(m: &Matrix, field: &Field, n: usize) -> Matrix {
    let k = field.degree() as usize;
    Matrix::from_fn(field, n, n, |i, j| {
        let digits: Vec<u32> = (0..k).map(|s| m[(i * k + s, j * k)] as u32).collect();
        field.from_digits(&digits).expect("digits are reduced")
    })
}

fn prime_field_radical(fp: &Field, basis: &[Matrix]) -> Vec<Matrix> {
    let n = basis[0].rows();
    let p = fp.characteristic() as u64;
    let mut levels = 0u32;
    while p.pow(levels + 1) <= n as u64 {
        levels += 1;
    }
    let algebra = Subspace::from_vectors(fp, n * n, &basis.iter().map(|m| m.data().to_vec()).collect::<Vec<_>>());
    let alg_basis: Vec<Matrix> =
        algebra.basis_vectors().into_iter().map(|v| Matrix::from_vec(fp, n, n, v)).collect();
    let mut ideal = algebra;
    for level in 0..=levels {
        if ideal.is_zero() {
            break;
        }
        // Linear functional g_level on the current ideal, in its RREF basis.
        let weights: Vec<Fe> = ideal
            .basis_vectors()
            .iter()
            .map(|v| lifted_trace_power(v, n, p, level))
            .collect();
        let mut w = Matrix::zeros(fp, n, n);
        for (&pos, &phi) in ideal.pivots().iter().zip(&weights) {
            w[(pos % n, pos / n)] = phi;
        }
        let ideal_basis = ideal.basis_vectors();
        let gram = Matrix::from_fn(fp, ideal_basis.len(), alg_basis.len(), |_, _| 0);
        let mut gram = gram;
        for (r, a) in ideal_basis.iter().enumerate() {
            let wa = w.mul(&Matrix::from_vec(fp, n, n, a.clone()));
            for (c, b) in alg_basis.iter().enumerate() {
                gram[(r, c)] = trace_of_product(fp, &wa, b);
            }
        }
        // Left kernel of the Gram matrix picks out the next ideal.
        let combos = gram.transpose().kernel();
        let vecs: Vec<Vec<Fe>> = combos
            .basis_vectors()
            .iter()
            .map(|lambda| {
                let mut v = vec![0; n * n];
                for (c, a) in lambda.iter().zip(&ideal_basis) {
                    fp.axpy(&mut v, *c, a);
                }
                v
            })
            .collect();
        ideal = Subspace::from_vectors(fp, n * n, &vecs);
    }
    ideal.basis_vectors().into_iter().map(|v| Matrix::from_vec(fp, n, n, v)).collect()
}

fn trace_of_product(f: &Field, a: &Matrix, b: &Matrix) -> Fe {
    let n = a.rows();
    let p = f.characteristic() as u64;
    let mut s = 0u64;
    for i in 0..n {
        for j in 0..n {
            s += a[(i, j)] as u64 * b[(j, i)] as u64;
        }
    }
    (s % p) as Fe
}

/// `Tr(lift(x)^(p^level)) / p^level mod p`, where `x` is a flattened matrix
/// over `F_p` lifted to entries in `[0, p)`.
fn lifted_trace_power(x: &[Fe], n: usize, p: u64, level: u32) -> Fe {
    let modulus = p.pow(level + 1);
    let mut m: Vec<u64> = x.iter().map(|&e| e as u64).collect();
    for _ in 0..level {
        let base = m.clone();
        for _ in 1..p {
            m = mul_mod(&m, &base, n, modulus);
        }
    }
    let tr = (0..n).map(|i| m[i * n + i]).sum::<u64>() % modulus;
    let scale = p.pow(level);
    debug_assert_eq!(tr % scale, 0, "trace condition violated: not inside the previous ideal");
    ((tr / scale) % p) as Fe
}

fn mul_mod(a: &[u64], b: &[u64], n: usize, modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        let row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for (o, &y) in row.iter_mut().zip(&b[k * n..(k + 1) * n]) {
                *o += x * y;
            }
        }
        for o in row.iter_mut() {
            *o %= modulus;
        }
    }
    out
}
