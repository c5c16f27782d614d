//! Finite fields `F_{p^k}` with log/exp tables.
//!
//! Elements are `u32` indices: the element `Σ a_i α^i` (with `0 <= a_i < p`
//! and `α` a root of the defining polynomial) has index `Σ a_i p^i`. The
//! prime field therefore sits at indices `0..p`. The defining polynomial is
//! the least monic irreducible of degree `k` (coefficient vector read with
//! `a_{k-1}` most significant) and the generator is the least index of full
//! multiplicative order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    k: u32,
    size: u32,
    /// Monic defining polynomial, constant term first, length `k + 1`.
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    digits: Vec<Vec<u32>>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^e`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut e = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        e += 1;
    }
    Some((p as u32, e))
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for j in 0..k {
            let sub = c * modulus[j] as u64 % p as u64;
            prod[d - k + j] = (prod[d - k + j] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|x| x as u32).collect()
}

/// Remainder of `a` modulo the monic `b` over `F_p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let c = *r.last().expect("non-empty");
        let s = r.len() - 1 - db;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[s + j] = (r[s + j] + p - (c * bj) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut c = code;
            for gi in g.iter_mut().take(d) {
                *gi = (c % p as u64) as u32;
                c /= p as u64;
            }
            g[d] = 1;
            if poly_rem(f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Builds `F_{p^k}`. Requires `p` prime and `p^k <= 2^24`.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::domain("extension degree must be positive"));
        }
        let size = (p as u64).checked_pow(k).filter(|&s| s <= 1 << 24).ok_or_else(|| {
            Error::domain(format!("field of size {p}^{k} is beyond table scale"))
        })? as u32;
        let ku = k as usize;
        let modulus = (0..(size as u64))
            .map(|code| {
                let mut f = vec![0u32; ku + 1];
                let mut c = code;
                for fi in f.iter_mut().take(ku) {
                    *fi = (c % p as u64) as u32;
                    c /= p as u64;
                }
                f[ku] = 1;
                f
            })
            .find(|f| is_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists");

        let digits: Vec<Vec<u32>> = (0..size)
            .map(|mut x| {
                (0..ku)
                    .map(|_| {
                        let d = x % p;
                        x /= p;
                        d
                    })
                    .collect()
            })
            .collect();
        let index = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &d| acc * p + d);

        let order = size - 1;
        let factors = prime_factors(order as u64);
        let power = |x: u32, mut e: u64| {
            let mut base = digits[x as usize].clone();
            let mut acc = digits[1].clone();
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mulmod(&acc, &base, &modulus, p);
                }
                base = poly_mulmod(&base, &base, &modulus, p);
                e >>= 1;
            }
            index(&acc)
        };
        let generator = (1..size)
            .find(|&g| order == 0 || factors.iter().all(|&r| power(g, order as u64 / r) != 1))
            .expect("the multiplicative group is cyclic");

        let mut exp = vec![0u32; order.max(1) as usize];
        let mut log = vec![u32::MAX; size as usize];
        let mut cur = digits[1].clone();
        let gd = digits[generator as usize].clone();
        for (e, slot) in exp.iter_mut().enumerate() {
            let x = index(&cur);
            *slot = x;
            log[x as usize] = e as u32;
            cur = poly_mulmod(&cur, &gd, &modulus, p);
        }
        if index(&cur) != 1 || log.iter().skip(1).any(|&l| l == u32::MAX) {
            return Err(Error::internal("generator does not generate"));
        }
        Ok(GaloisField { p, k, size, modulus, generator, exp, log, digits })
    }

    /// `F_q` for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        Self::new(p, e)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn digits(&self, x: u32) -> &[u32] {
        &self.digits[x as usize]
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &x| acc * self.p + x % self.p)
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.size
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (&self.digits[a as usize], &self.digits[b as usize]);
        let mut acc = 0u32;
        for i in (0..self.k as usize).rev() {
            acc = acc * self.p + (da[i] + db[i]) % self.p;
        }
        acc
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits[a as usize].iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.size as u64 - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::domain("zero has no inverse"));
        }
        let n = self.size - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    /// `a^e` for any integer `e` (`0^0 = 1`; negative powers of zero fail).
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(Error::domain("negative power of zero")),
            };
        }
        let n = self.size as i64 - 1;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Ok(self.exp[l as usize])
    }

    /// `g^e` for the fixed generator.
    pub fn gen_pow(&self, e: i64) -> u32 {
        let n = self.size as i64 - 1;
        self.exp[e.rem_euclid(n) as usize]
    }

    /// Logarithm to the fixed generator.
    pub fn log(&self, x: u32) -> Result<u32> {
        if x == 0 {
            return Err(Error::domain("discrete log of zero"));
        }
        Ok(self.log[x as usize])
    }

    /// Frobenius `x ↦ x^p`.
    pub fn frobenius(&self, x: u32) -> u32 {
        self.pow(x, self.p as i64).expect("non-negative power")
    }

    /// Trace to the subfield of degree `base_degree` over the prime field,
    /// returned as an element of this field.
    pub fn trace(&self, x: u32, base_degree: u32) -> Result<u32> {
        if base_degree == 0 || !self.k.is_multiple_of(base_degree) {
            return Err(Error::domain(format!(
                "subfield degree {base_degree} does not divide {}",
                self.k
            )));
        }
        let qb = (self.p as i64).pow(base_degree);
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.k / base_degree {
            acc = self.add(acc, y);
            y = self.pow(y, qb).expect("non-negative power");
        }
        Ok(acc)
    }

    /// Absolute trace to `F_p` as an integer in `0..p`.
    pub fn absolute_trace(&self, x: u32) -> u32 {
        let t = self.trace(x, 1).expect("1 divides every degree");
        debug_assert!(t < self.p);
        t
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: u32) -> Result<u64> {
        let l = self.log(x)? as u64;
        let n = self.size as u64 - 1;
        Ok(n / num_integer::gcd(n, l))
    }
}

/// Process-wide cache of fields, so that equal fields share log tables.
pub fn shared_field(p: u32, k: u32) -> Result<Arc<GaloisField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<GaloisField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("field cache").get(&(p, k)) {
        return Ok(f.clone());
    }
    let f = Arc::new(GaloisField::new(p, k)?);
    Ok(cache.lock().expect("field cache").entry((p, k)).or_insert(f).clone())
}

/// `e` with `g^e = x`, for `g` any generator of `field`.
pub fn discrete_log(field: &GaloisField, x: u32, g: u32) -> Result<u64> {
    let n = field.size() as u64 - 1;
    let lx = field.log(x)? as u64;
    let lg = field.log(g)? as u64;
    let inv = mod_inverse(lg, n).ok_or_else(|| Error::domain("base is not a generator"))?;
    Ok(if n == 1 { 0 } else { (lx as u128 * inv as u128 % n as u128) as u64 })
}

pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    (r == 1).then(|| t.rem_euclid(n as i128) as u64)
}

/// Embedding table `small -> big` sending the defining root of `small` to
/// the least root of its defining polynomial in `big`.
pub fn embedding(small: &GaloisField, big: &GaloisField) -> Result<Vec<u32>> {
    if small.characteristic() != big.characteristic() || !big.degree().is_multiple_of(small.degree()) {
        return Err(Error::domain(format!(
            "no embedding of F_{}^{} into F_{}^{}",
            small.characteristic(),
            small.degree(),
            big.characteristic(),
            big.degree()
        )));
    }
    let eval = |y: u32| {
        let mut acc = 0u32;
        for &c in small.modulus().iter().rev() {
            acc = big.add(big.mul(acc, y), c);
        }
        acc
    };
    let root = big
        .elements()
        .find(|&y| eval(y) == 0)
        .ok_or_else(|| Error::internal("defining polynomial has no root in the extension"))?;
    Ok(small
        .elements()
        .map(|x| {
            let mut acc = 0u32;
            for &c in small.digits(x).iter().rev() {
                acc = big.add(big.mul(acc, root), c);
            }
            acc
        })
        .collect())
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?} gen {}", self.p, self.k, self.modulus, self.generator)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.k == o.k
    }
}

impl Eq for GaloisField {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = GaloisField::new(5, 1).unwrap();
        assert_eq!(f.generator(), 2);
        assert_eq!(discrete_log(&f, 4, 2).unwrap(), 2);
        assert_eq!(discrete_log(&f, 1, 2).unwrap(), 0);
        assert_eq!(discrete_log(&f, 2, 2).unwrap(), 1);
        assert!(discrete_log(&f, 0, 2).is_err());
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.inv(3).unwrap(), 2);
    }

    #[test]
    fn traces() {
        let f9 = GaloisField::new(3, 2).unwrap();
        assert_eq!(f9.trace(1, 1).unwrap(), 2);
        assert_eq!(f9.trace(5, 2).unwrap(), 5);
        assert!(f9.trace(1, 3).is_err());
        let f4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.trace(2, 1).unwrap(), 1);
    }

    #[test]
    fn defining_polynomials_are_least() {
        let f9 = GaloisField::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f8 = GaloisField::new(2, 3).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
        assert_eq!(GaloisField::of_order(9).unwrap(), f9);
        assert!(GaloisField::of_order(12).is_err());
    }

    #[test]
    fn field_axioms_small() {
        for (p, k) in [(2, 3), (3, 2), (5, 2), (3, 4)] {
            let f = GaloisField::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.pow(a, f.size() as i64).unwrap(), a);
            }
        }
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        let f3 = GaloisField::new(3, 1).unwrap();
        let f9 = GaloisField::new(3, 2).unwrap();
        let f81 = GaloisField::new(3, 4).unwrap();
        let e = embedding(&f9, &f81).unwrap();
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(e[f9.add(a, b) as usize], f81.add(e[a as usize], e[b as usize]));
                assert_eq!(e[f9.mul(a, b) as usize], f81.mul(e[a as usize], e[b as usize]));
            }
        }
        assert_eq!(embedding(&f3, &f9).unwrap(), vec![0, 1, 2]);
        assert!(embedding(&f9, &GaloisField::new(3, 3).unwrap()).is_err());
    }
}
