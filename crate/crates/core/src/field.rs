//! Finite fields `F_{p^k}` for odd primes `p`.
//!
//! Elements are stored as `Fe` indices: the base-`p` digits of the index are
//! the coefficients (constant term first) of the residue polynomial modulo the
//! field's defining polynomial. The prime subfield is therefore `0..p`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, encoded as described in the module docs.
pub type Fe = u16;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// A finite field of odd characteristic. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic defining polynomial, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    exp: Vec<Fe>,
    log: Vec<u32>,
    add: Option<Vec<Fe>>,
    neg: Vec<Fe>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[off + i] = (r[off + i] + p - (lead * c) % p) % p;
            }
        }
    }
    r
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `code`, constant term first.
fn monic_from_code(code: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut c = code;
    let mut out = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        out.push(c % p);
        c /= p;
    }
    out.push(1);
    out
}

/// Exhaustive search for a monic factor of degree `1..=deg/2`.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() as u32 - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let f = monic_from_code(code, d, p);
            if trim(poly_rem(m, &f, p)).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds `F_{p^k}`. Without an explicit modulus the lexicographically
    /// least monic irreducible polynomial (compared from the highest
    /// non-leading coefficient down) is used.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharTwoUnsupported);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadParameters("extension degree must be at least 1".into()));
        }
        let q = (p as u64).pow(k);
        if q > MAX_ORDER as u64 {
            return Err(Error::BadParameters(format!("field order {q} exceeds {MAX_ORDER}")));
        }
        let q = q as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || *m.last().unwrap() != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::BadParameters(format!(
                        "modulus must be monic of degree {k} with coefficients below {p}"
                    )));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::NotIrreducible);
                }
                m
            }
            None => {
                // Codes enumerate lower coefficients with a_{k-1} most significant.
                (0..p.pow(k))
                    .map(|code| monic_from_code(code, k, p))
                    .find(|m| is_irreducible(m, p))
                    .expect("irreducible polynomials exist in every degree")
            }
        };
        Ok(Self::build(p, k, q, modulus))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Self {
        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut x = x;
            for _ in 0..k {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let slow_mul = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a), digits(b));
            let mut prod = vec![0u32; 2 * k as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(k as usize, 0);
            encode(&r)
        };
        let mut exp = vec![0 as Fe; q as usize - 1];
        let mut log = vec![0u32; q as usize];
        'search: for g in 2..q {
            let mut x = 1u32;
            for (i, slot) in exp.iter_mut().enumerate() {
                if x == 1 && i > 0 {
                    continue 'search;
                }
                *slot = x as Fe;
                log[x as usize] = i as u32;
                x = slow_mul(x, g);
            }
            if x == 1 {
                break;
            }
        }
        let neg = (0..q)
            .map(|x| encode(&digits(x).iter().map(|&d| (p - d) % p).collect::<Vec<_>>()) as Fe)
            .collect();
        let add = (k > 1 && q <= 1024).then(|| {
            let mut t = vec![0 as Fe; (q * q) as usize];
            for a in 0..q {
                let da = digits(a);
                for b in 0..q {
                    let s: Vec<u32> = da.iter().zip(digits(b)).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = encode(&s) as Fe;
                }
            }
            t
        });
        Field(Arc::new(Inner { p, k, q, modulus, exp, log, add, neg }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(|x| x as Fe)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        n.rem_euclid(self.0.p as i64) as Fe
    }

    pub fn in_prime_subfield(&self, a: Fe) -> bool {
        (a as u32) < self.0.p
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let f = &*self.0;
        if f.k == 1 {
            let s = a as u32 + b as u32;
            (if s >= f.p { s - f.p } else { s }) as Fe
        } else if let Some(t) = &f.add {
            t[a as usize * f.q as usize + b as usize]
        } else {
            let (mut a, mut b) = (a as u32, b as u32);
            let (mut out, mut place) = (0u32, 1u32);
            for _ in 0..f.k {
                out += ((a % f.p + b % f.p) % f.p) * place;
                a /= f.p;
                b /= f.p;
                place *= f.p;
            }
            out as Fe
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let f = &*self.0;
        if f.k == 1 {
            return ((a as u32 * b as u32) % f.p) as Fe;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let e = f.log[a as usize] + f.log[b as usize];
        let m = f.q - 1;
        f.exp[(if e >= m { e - m } else { e }) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "inverse of zero");
        let f = &*self.0;
        let m = f.q - 1;
        f.exp[((m - f.log[a as usize]) % m) as usize]
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.0;
        let m = (f.q - 1) as u64;
        f.exp[((f.log[a as usize] as u64 * (e % m)) % m) as usize]
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.0.p as u64)
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        if self.0.q == 2 {
            1
        } else {
            self.0.exp[1]
        }
    }

    /// Coefficients of the residue polynomial, constant term first.
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut a = a as u32;
        (0..self.0.k)
            .map(|_| {
                let d = a % self.0.p;
                a /= self.0.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Fe> {
        if digits.len() > self.0.k as usize || digits.iter().any(|&d| d >= self.0.p) {
            return Err(Error::Format(format!("invalid field element coefficients {digits:?}")));
        }
        Ok(digits.iter().rev().fold(0u32, |acc, &d| acc * self.0.p + d) as Fe)
    }

    /// A field embedding `self -> big`, as a table indexed by element.
    /// The generator `t` is sent to the least root of the modulus in `big`.
    pub fn embedding_into(&self, big: &Field) -> Result<Vec<Fe>> {
        if big.characteristic() != self.0.p || big.degree() % self.0.k != 0 {
            return Err(Error::BadParameters(format!("{self:?} does not embed into {big:?}")));
        }
        let eval = |x: Fe| {
            self.0.modulus.iter().rev().fold(0, |acc, &c| big.add(big.mul(acc, x), c as Fe))
        };
        let root = if self.0.k == 1 { 0 } else { big.elements().find(|&x| eval(x) == 0).expect("root exists") };
        Ok(self
            .elements()
            .map(|a| {
                self.digits(a).iter().rev().fold(0, |acc, &d| big.add(big.mul(acc, root), d as Fe))
            })
            .collect())
    }

    /// Multiplication-by-`a` as a `k x k` matrix over `F_p` acting on
    /// coefficient columns (column `j` holds the digits of `a * t^j`).
    pub(crate) fn mult_matrix(&self, a: Fe) -> Vec<Vec<u32>> {
        let k = self.0.k as usize;
        let mut cols = Vec::with_capacity(k);
        let t = if k > 1 { self.0.p as Fe } else { 1 };
        let mut basis = 1 as Fe;
        for _ in 0..k {
            cols.push(self.digits(self.mul(a, basis)));
            basis = self.mul(basis, t);
        }
        (0..k).map(|i| (0..k).map(|j| cols[j][i]).collect()).collect()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_of_order_three() {
        let f = Field::prime(3).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.inv(2), 2);
        assert_eq!(f.neg(1), 2);
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let small = Field::new(3, 2, None).unwrap();
        let big = Field::new(3, 4, None).unwrap();
        let e = small.embedding_into(&big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e[small.add(a, b) as usize], big.add(e[a as usize], e[b as usize]));
                assert_eq!(e[small.mul(a, b) as usize], big.mul(e[a as usize], e[b as usize]));
            }
        }
        assert!(small.embedding_into(&Field::new(3, 3, None).unwrap()).is_err());
    }

    #[test]
    fn nine_elements_with_default_modulus() {
        let f = Field::new(3, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.order(), 9);
        // t^2 + 1 has no root in F_3.
        assert!((0..3u32).all(|t| (t * t + 1) % 3 != 0));
        let t = 3 as Fe;
        assert_eq!(f.mul(t, t), f.neg(1));
    }

    #[test]
    fn explicit_modulus_checked() {
        assert!(Field::new(3, 2, Some(vec![1, 0, 1])).is_ok());
        // t^2 - 1 = (t - 1)(t + 1)
        assert!(matches!(Field::new(3, 2, Some(vec![2, 0, 1])), Err(Error::NotIrreducible)));
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(matches!(Field::prime(4), Err(Error::NotPrime(4))));
        assert!(matches!(Field::prime(2), Err(Error::CharTwoUnsupported)));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(3, 1), (3, 2), (5, 1), (5, 2), (3, 3), (7, 1)] {
            let f = Field::new(p, k, None).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    let c = f.primitive_element();
                    assert_eq!(f.mul(c, f.add(a, b)), f.add(f.mul(c, a), f.mul(c, b)));
                }
                // Frobenius is additive.
                assert_eq!(f.frobenius(f.add(a, 1)), f.add(f.frobenius(a), 1));
            }
        }
    }

    #[test]
    fn large_field_without_add_table() {
        let f = Field::new(3, 7, None).unwrap();
        let g = f.primitive_element();
        let x = f.pow(g, 1000);
        assert_eq!(f.mul(x, f.inv(x)), 1);
        assert_eq!(f.sub(f.add(x, g), g), x);
    }
}
