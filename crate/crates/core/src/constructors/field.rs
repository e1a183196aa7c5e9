//! Finite fields GF(p^e) with q ≤ 128, stored as full operation tables.
//!
//! An element is the integer `c_0 + c_1 p + ... + c_(e-1) p^(e-1)` where the
//! `c_i` are its coordinates in the polynomial basis `1, x, .., x^(e-1)`
//! modulo the built-in irreducible polynomial for `(p, e)`.

use crate::error::{Error, Result};

const IRREDUCIBLE: &str = include_str!("../../data/irreducible.txt");

pub const MAX_FIELD_SIZE: u32 = 128;

/// Non-leading coefficients `c_0 .. c_(e-1)` of the built-in monic
/// irreducible polynomial of degree `e` over GF(p).
pub fn irreducible_polynomial(p: u32, e: u32) -> Option<Vec<u32>> {
    IRREDUCIBLE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .find_map(|l| {
            let nums: Vec<u32> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            (nums[0] == p && nums[1] == e).then(|| nums[2..].to_vec())
        })
}

/// `(p, e)` with `q = p^e`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut e) = (q, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    poly: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    primitive: u32,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::UnsupportedField(q));
        }
        let poly = irreducible_polynomial(p, e).ok_or(Error::UnsupportedField(q))?;
        let n = q as usize;
        let digits = |x: u32| -> Vec<u32> { (0..e).map(|i| (x / p.pow(i)) % p).collect() };
        let pack = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = pack(&s) as u8;
                // schoolbook product then reduction by x^e = -(c_0 + .. + c_(e-1) x^(e-1))
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for top in (e as usize..prod.len()).rev() {
                    let t = prod[top];
                    if t == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (i, c) in poly.iter().enumerate() {
                        let idx = top - e as usize + i;
                        prod[idx] = (prod[idx] + (p - t) * c) % p;
                    }
                }
                mul[(a * q + b) as usize] = pack(&prod[..e as usize]) as u8;
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b as u8;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u8;
                }
            }
        }
        let mut field = Field {
            p,
            e,
            q,
            poly,
            add,
            mul,
            neg,
            inv,
            primitive: 0,
        };
        field.primitive = (1..q)
            .find(|&a| field.multiplicative_order(a) == q - 1)
            .expect("multiplicative group is cyclic");
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn polynomial(&self) -> &[u32] {
        &self.poly
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv[a as usize] as u32)
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn multiplicative_order(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no multiplicative order");
        let (mut x, mut n) = (a, 1);
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// The automorphism `a -> a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// Coordinates over the prime field.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        (0..self.e).map(|i| (a / self.p.pow(i)) % self.p).collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<u32> {
        if c.len() != self.e as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::Parse(format!(
                "coefficients {c:?} do not describe an element of GF({})",
                self.q
            )));
        }
        Ok(c.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_is_irreducible(p: u32, e: u32, c: &[u32]) -> bool {
        // a degree-e polynomial is irreducible iff the ring GF(p)[x]/(f) has
        // no zero divisors; check every product of nonzero residues
        let q = p.pow(e);
        let digits = |x: u32| -> Vec<u32> { (0..e).map(|i| (x / p.pow(i)) % p).collect() };
        // reduce via the same rule but independently coded: evaluate in u64 polys
        let mulmod = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let mut r = vec![0u32; a.len() + b.len()];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    r[i + j] = (r[i + j] + x * y) % p;
                }
            }
            while r.len() > e as usize {
                let t = r.pop().unwrap();
                let base = r.len() - e as usize;
                for (i, ci) in c.iter().enumerate() {
                    r[base + i] = (r[base + i] + (p - t) * ci) % p;
                }
            }
            r
        };
        for a in 1..q {
            for b in 1..q {
                if mulmod(&digits(a), &digits(b)).iter().all(|&x| x == 0) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn data_file_holds_least_irreducibles() {
        for q in 2..=MAX_FIELD_SIZE {
            let Some((p, e)) = prime_power(q) else { continue };
            let c = irreducible_polynomial(p, e).expect("entry for every q");
            assert!(poly_is_irreducible(p, e, &c), "q={q}");
            let key = |c: &[u32]| c.iter().rev().fold(0, |acc, &d| acc * p + d);
            if e <= 3 {
                for smaller in 0..key(&c) {
                    let cand: Vec<u32> = (0..e).map(|i| (smaller / p.pow(i)) % p).collect();
                    assert!(!poly_is_irreducible(p, e, &cand), "q={q}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            assert_eq!(f.multiplicative_order(f.primitive_element()), q - 1);
        }
    }

    #[test]
    fn frobenius_has_order_e() {
        for q in [4, 8, 9, 27, 32, 64, 81, 128] {
            let f = Field::new(q).unwrap();
            let orbit_len = (1..=f.e())
                .find(|&n| f.elements().all(|a| (0..n).fold(a, |x, _| f.frobenius(x)) == a))
                .unwrap();
            assert_eq!(orbit_len, f.e());
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn unsupported_sizes() {
        assert!(matches!(Field::new(6), Err(Error::UnsupportedField(6))));
        assert!(matches!(Field::new(256), Err(Error::UnsupportedField(256))));
        assert!(Field::new(1).is_err());
    }

    #[test]
    fn coefficient_round_trip() {
        let f = Field::new(27).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
        assert!(f.from_coeffs(&[3, 0, 0]).is_err());
    }
}
