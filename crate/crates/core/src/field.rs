//! Table-driven arithmetic in small finite fields.
//!
//! An element of `F_q`, `q = p^e`, is encoded as an integer `0 <= i < q`
//! whose base-`p` digits are the coefficients (constant term first) of a
//! polynomial over `F_p` of degree below `e`. Multiplication reduces modulo
//! the smallest monic irreducible of degree `e` and is then tabulated through
//! discrete logarithms with respect to the smallest primitive element.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const FIELD_CAP: u32 = 64;

/// Encoded field element.
pub type Elem = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
    Pow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    q: u32,
    p: u32,
    ext: u32,
    /// Coefficients of the modulus, constant term first, including the leading 1.
    /// Empty for prime fields.
    modulus: Vec<u32>,
    generator: Elem,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
    /// `antilog[k] = generator^k` for `0 <= k < 2(q-1)`.
    antilog: Vec<Elem>,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn digits(mut value: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = value % p;
        value /= p;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p` (constant term first).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for k in 1..=deg / 2 {
        for low in 0..p.pow(k as u32) {
            let mut g = digits(low, p, k);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `e` over `F_p`, ordered by the integer
/// encoding of its non-leading coefficients.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    for low in 0..p.pow(e) {
        let mut f = digits(low, p, e as usize);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds `F_q`.
    pub fn new(q: u32) -> Result<Self> {
        let (p, ext) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > FIELD_CAP {
            return Err(Error::CapExceeded { q, cap: FIELD_CAP });
        }
        let n = q as usize;
        let e = ext as usize;
        let modulus = if ext == 1 {
            Vec::new()
        } else {
            smallest_irreducible(p, ext)
        };

        let mut add = vec![0; n * n];
        let mut neg = vec![0; n];
        for a in 0..q {
            let da = digits(a, p, e);
            let dn: Vec<u32> = da.iter().map(|&x| (p - x) % p).collect();
            neg[a as usize] = undigits(&dn, p) as Elem;
            for b in 0..q {
                let db = digits(b, p, e);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * n + b as usize] = undigits(&s, p) as Elem;
            }
        }

        let slow_mul = |a: u32, b: u32| -> u32 {
            if ext == 1 {
                return (a * b) % p;
            }
            let prod = poly_mul(&digits(a, p, e), &digits(b, p, e), p);
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(e, 0);
            undigits(&r, p)
        };

        let order = q - 1;
        let mut generator = 1;
        let mut antilog = Vec::new();
        for g in 1..q {
            let mut powers = Vec::with_capacity(order as usize);
            let mut x = 1;
            for _ in 0..order {
                powers.push(x as Elem);
                x = slow_mul(x, g);
            }
            let mut seen = vec![false; n];
            let distinct = powers.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true));
            if distinct {
                generator = g as Elem;
                antilog = powers;
                break;
            }
        }
        let mut log = vec![0; n];
        for (k, &v) in antilog.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        let doubled: Vec<Elem> = antilog.iter().chain(antilog.iter()).copied().collect();

        Ok(Self {
            q,
            p,
            ext,
            modulus,
            generator,
            add,
            neg,
            log,
            antilog: doubled,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.ext
    }

    /// Modulus coefficients, constant term first; empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// All elements in canonical order: `0, 1, 2, ..., q-1`.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(|x| x as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.antilog[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            let order = self.q - 1;
            Some(self.antilog[((order - self.log[a as usize]) % order) as usize])
        }
    }

    /// `a^k` with the convention `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        if k == 0 {
            1
        } else if a == 0 {
            0
        } else {
            let order = (self.q - 1) as u64;
            self.antilog[((self.log[a as usize] as u64 * (k % order)) % order) as usize]
        }
    }

    fn check(&self, value: u32) -> Result<Elem> {
        if value < self.q {
            Ok(value as Elem)
        } else {
            Err(Error::BadEncoding { value, q: self.q })
        }
    }

    /// Validated entry point; `b` is the exponent for [`FieldOp::Pow`] and is
    /// ignored for the unary operations.
    pub fn apply(&self, op: FieldOp, a: u32, b: u32) -> Result<Elem> {
        let a = self.check(a)?;
        match op {
            FieldOp::Add => Ok(self.add(a, self.check(b)?)),
            FieldOp::Sub => Ok(self.sub(a, self.check(b)?)),
            FieldOp::Mul => Ok(self.mul(a, self.check(b)?)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.inv(a).ok_or(Error::DivisionByZero),
            FieldOp::Pow => Ok(self.pow(a, b as u64)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: [u32; 20] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 49, 64];

    #[test]
    fn rejects_non_prime_powers_and_large_fields() {
        assert_eq!(FieldSpec::new(6), Err(Error::NotPrimePower(6)));
        assert_eq!(FieldSpec::new(1), Err(Error::NotPrimePower(1)));
        assert_eq!(FieldSpec::new(0), Err(Error::NotPrimePower(0)));
        assert_eq!(FieldSpec::new(12), Err(Error::NotPrimePower(12)));
        assert_eq!(
            FieldSpec::new(67),
            Err(Error::CapExceeded { q: 67, cap: 64 })
        );
        assert!(FieldSpec::new(64).is_ok());
        assert!(FieldSpec::new(49).is_ok());
    }

    #[test]
    fn prime_field_is_modular_arithmetic() {
        let f = FieldSpec::new(5).unwrap();
        assert!(f.modulus().is_empty());
        assert_eq!(f.apply(FieldOp::Add, 3, 4), Ok(2));
        assert_eq!(f.apply(FieldOp::Inv, 0, 0), Err(Error::DivisionByZero));
        assert_eq!(f.apply(FieldOp::Mul, 5, 1), Err(Error::BadEncoding { value: 5, q: 5 }));
        for a in 0..5u32 {
            for b in 0..5u32 {
                assert_eq!(f.mul(a as u8, b as u8) as u32, (a * b) % 5);
                assert_eq!(f.sub(a as u8, b as u8) as u32, (a + 5 - b) % 5);
            }
        }
    }

    #[test]
    fn f4_uses_x2_x_1() {
        let f = FieldSpec::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // 2 encodes the class of x, 3 encodes x + 1.
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(2, 3), 1);
        for a in 1..4 {
            assert_eq!(f.pow(a, 3), 1);
        }
    }

    #[test]
    fn chosen_moduli() {
        assert_eq!(FieldSpec::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldSpec::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldSpec::new(27).unwrap().modulus(), &[1, 2, 0, 1]);
        assert_eq!(FieldSpec::new(25).unwrap().modulus(), &[2, 0, 1]);
        assert_eq!(FieldSpec::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn enumeration_prefix() {
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(f3.elements().collect::<Vec<_>>(), vec![0, 1, 2]);
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![0, 1]);
        let f4 = FieldSpec::new(4).unwrap();
        let all: Vec<_> = f4.elements().collect();
        assert_eq!(all.len(), 4);
        assert_eq!(&all[..2], &[0, 1]);
    }

    #[test]
    fn field_axioms_hold_exhaustively() {
        for &q in &SUPPORTED {
            let f = FieldSpec::new(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                    assert_eq!(f.pow(a, (q - 1) as u64), 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // Frobenius
                    let p = f.characteristic() as u64;
                    assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
                }
            }
            // Triples exhaustively for small q, strided otherwise.
            let stride = if q <= 9 { 1 } else { 3 };
            for &a in els.iter().step_by(stride) {
                for &b in &els {
                    for &c in els.iter().step_by(stride) {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for &q in &SUPPORTED {
            let f = FieldSpec::new(q).unwrap();
            let g = f.generator();
            let mut seen = std::collections::HashSet::new();
            for k in 0..(q - 1) as u64 {
                seen.insert(f.pow(g, k));
            }
            assert_eq!(seen.len() as u32, q - 1);
        }
    }
}
