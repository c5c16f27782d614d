//! Exact elements of cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored as an integer coefficient vector over the power
//! basis `1, ζ_N, ..., ζ_N^{φ(N)-1}` together with a positive common
//! denominator. Binary operations lift both operands to the lcm of their
//! conductors; equality is decided there, so two representations of the
//! same number in different conductors compare equal. [`CyclotomicNumber::minimized`]
//! produces the canonical form with the least conductor.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::linalg;
use super::rational::{format_rational, parse_rational, to_f64, Rational};

#[derive(Clone)]
pub struct CyclotomicNumber {
    n: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

type C = CyclotomicNumber;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).take_while(|i| i * i <= n).filter(|i| n.is_multiple_of(*i)).collect();
    let big: Vec<u64> = d.iter().rev().map(|i| n / i).filter(|&j| j * j != n).collect();
    d.extend(big);
    d
}

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let f = cyclotomic_polynomial(d);
        p = div_monic(&p, &f);
    }
    let p = Arc::new(p);
    cache.lock().expect("cache lock").insert(n, p.clone());
    p
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] -= c * bj;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

/// Reduces a dense vector of powers of `ζ_n` to the power basis.
fn reduce(n: u64, dense: &[BigInt]) -> Vec<BigInt> {
    let n_us = n as usize;
    let mut v = vec![BigInt::zero(); n_us];
    for (j, c) in dense.iter().enumerate() {
        if !c.is_zero() {
            v[j % n_us] += c;
        }
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for d in (deg..n_us).rev() {
        if v[d].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[d]);
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                v[d - deg + j] -= &c * pj;
            }
        }
    }
    v.truncate(deg);
    v
}

impl CyclotomicNumber {
    fn build(n: u64, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = C { n, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() && !g.is_zero() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
        }
    }

    pub fn zero() -> Self {
        C { n: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(k: i64) -> Self {
        C { n: 1, num: vec![BigInt::from(k)], den: BigInt::one() }
    }

    pub fn from_rational(x: &Rational) -> Self {
        C { n: 1, num: vec![x.numer().clone()], den: x.denom().clone() }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let mut dense = vec![BigInt::zero(); n as usize];
        dense[k.rem_euclid(n as i64) as usize] = BigInt::one();
        Self::build(n, reduce(n, &dense), BigInt::one())
    }

    /// `Σ_j counts[j] ζ_n^j` for a vector of length `n`.
    pub fn from_exponent_counts(n: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, n, "one count per power of ζ_n");
        let dense: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        Self::build(n, reduce(n, &dense), BigInt::one())
    }

    /// `Σ_j coeffs[j] ζ_n^j` for rational coefficients (any length).
    pub fn from_dense(n: u64, coeffs: &[Rational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let dense: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Self::build(n, reduce(n, &dense), den)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Power-basis coefficients in the current conductor.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.num.iter().map(|c| Rational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    fn lifted(&self, m: u64) -> Vec<BigInt> {
        if m == self.n {
            return self.num.clone();
        }
        debug_assert_eq!(m % self.n, 0);
        let step = (m / self.n) as usize;
        let mut dense = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            dense[j * step] = c.clone();
        }
        reduce(m, &dense)
    }

    /// The same number written in conductor `m`, a multiple of the current one.
    pub fn in_conductor(&self, m: u64) -> Self {
        assert_eq!(m % self.n, 0, "target conductor must be a multiple");
        C { n: m, num: self.lifted(m), den: self.den.clone() }
    }

    /// The Galois automorphism `ζ ↦ ζ^a`, `gcd(a, N) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.n as i64;
        assert_eq!(a.gcd(&n), 1, "Galois exponent must be a unit");
        let mut dense = vec![BigInt::zero(); self.n as usize];
        for (j, c) in self.num.iter().enumerate() {
            dense[((j as i64) * a).rem_euclid(n) as usize] += c;
        }
        Self::build(self.n, reduce(self.n, &dense), self.den.clone())
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, x: &Rational) -> Self {
        Self::build(self.n, self.num.iter().map(|c| c * x.numer()).collect(), &self.den * x.denom())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The rational value, if the number is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        let m = self.minimized();
        (m.n == 1).then(|| Rational::new(m.num[0].clone(), m.den.clone()))
    }

    /// Floating point value under `ζ_N ↦ exp(2πi/N)`.
    pub fn to_complex(&self) -> Complex64 {
        let d = to_f64(&Rational::from_integer(self.den.clone()));
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = to_f64(&Rational::from_integer(c.clone())) / d;
            let angle = 2.0 * PI * (j as f64) / (self.n as f64);
            acc += Complex64::from_polar(x, angle);
        }
        acc
    }

    /// Embedding into C accurate to `10^{-digits}` for `digits <= 12`;
    /// requests beyond double precision are served at double precision.
    pub fn embed(&self, _digits: u32) -> Complex64 {
        self.to_complex()
    }

    /// Canonical form: the least conductor `m | N` whose field contains the
    /// number, with coefficients in the power basis of `Q(ζ_m)`.
    pub fn minimized(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.n;
        for m in divisors(n) {
            if m == n {
                return self.clone();
            }
            let fixed = (1..n as i64)
                .filter(|a| a.gcd(&(n as i64)) == 1 && (*a as u64) % m == 1 % m)
                .all(|a| self.galois(a) == *self);
            if !fixed {
                continue;
            }
            let phi_m = euler_phi(m) as usize;
            let phi_n = euler_phi(n) as usize;
            let cols: Vec<Vec<BigInt>> = (0..phi_m)
                .map(|j| C::root_of_unity(m, j as i64).lifted(n))
                .collect();
            let a: linalg::Matrix = (0..phi_n)
                .map(|i| cols.iter().map(|col| Rational::from_integer(col[i].clone())).collect())
                .collect();
            let b: Vec<Rational> = self.coefficients();
            let x = linalg::solve(&a, &b).expect("Galois-fixed element lies in the subfield");
            let mut den = BigInt::one();
            for c in &x {
                den = den.lcm(c.denom());
            }
            let num = x.iter().map(|c| c.numer() * (&den / c.denom())).collect();
            return Self::build(m, num, den);
        }
        self.clone()
    }
}

/// Dense accumulator for long sums `Σ w · ζ_N^s · x` over a fixed conductor
/// `N`. Terms are added without reduction; the result is reduced once.
pub struct Accumulator {
    n: u64,
    counts: Vec<i128>,
    rest: Vec<C>,
}

impl Accumulator {
    pub fn new(n: u64) -> Self {
        Accumulator { n, counts: vec![0; n as usize], rest: Vec::new() }
    }

    /// Adds `weight · ζ_N^shift`.
    pub fn add_root(&mut self, weight: i64, shift: u64) {
        self.counts[(shift % self.n) as usize] += weight as i128;
    }

    /// Adds `weight · ζ_N^shift · x`; the conductor of `x` must divide `N`.
    pub fn add_scaled(&mut self, weight: i64, shift: u64, x: &C) {
        assert_eq!(self.n % x.n, 0, "accumulator conductor must be a multiple");
        if !x.den.is_one() {
            let root = C::root_of_unity(self.n, shift as i64);
            self.rest.push(&(&root * x) * &C::from_integer(weight));
            return;
        }
        let step = self.n / x.n;
        for (j, c) in x.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match i64::try_from(c) {
                Ok(c) => {
                    let idx = ((j as u64 * step + shift) % self.n) as usize;
                    self.counts[idx] += weight as i128 * c as i128;
                }
                Err(_) => {
                    let root = C::root_of_unity(self.n, (j as u64 * step + shift) as i64);
                    self.rest.push(root.scale(&Rational::from_integer(c * weight)));
                }
            }
        }
    }

    pub fn finish(self) -> C {
        let dense: Vec<BigInt> = self.counts.iter().map(|&c| BigInt::from(c)).collect();
        let main = C::build(self.n, reduce(self.n, &dense), BigInt::one());
        self.rest.iter().fold(main, |a, b| &a + b)
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, o: &Self) -> bool {
        if self.n == o.n {
            return self.den == o.den && self.num == o.num;
        }
        let l = self.n.lcm(&o.n);
        self.den == o.den && self.lifted(l) == o.lifted(l)
    }
}

impl Eq for CyclotomicNumber {}

impl Add<&C> for &C {
    type Output = C;
    fn add(self, o: &C) -> C {
        let l = self.n.lcm(&o.n);
        let a = self.lifted(l);
        let b = o.lifted(l);
        let num = a.iter().zip(&b).map(|(x, y)| x * &o.den + y * &self.den).collect();
        C::build(l, num, &self.den * &o.den)
    }
}

impl Sub<&C> for &C {
    type Output = C;
    fn sub(self, o: &C) -> C {
        self + &(-o)
    }
}

impl Mul<&C> for &C {
    type Output = C;
    fn mul(self, o: &C) -> C {
        let l = self.n.lcm(&o.n);
        let a = self.lifted(l);
        let b = o.lifted(l);
        let mut dense = vec![BigInt::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    dense[i + j] += x * y;
                }
            }
        }
        C::build(l, reduce(l, &dense), &self.den * &o.den)
    }
}

impl Neg for &C {
    type Output = C;
    fn neg(self) -> C {
        C { n: self.n, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<C> for C {
            type Output = C;
            fn $m(self, o: C) -> C {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for C {
    type Output = C;
    fn neg(self) -> C {
        -&self
    }
}

impl std::iter::Sum for CyclotomicNumber {
    fn sum<I: Iterator<Item = C>>(iter: I) -> C {
        iter.fold(C::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.minimized();
        if m.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in m.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (j, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "z{}", m.n)?,
                (1, false) => write!(f, "{a}*z{}", m.n)?,
                (_, true) => write!(f, "z{}^{j}", m.n)?,
                (_, false) => write!(f, "{a}*z{}^{j}", m.n)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    #[serde(rename = "N")]
    n: u64,
    coeffs: Vec<String>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.minimized();
        Wire { n: m.n, coeffs: m.coefficients().iter().map(format_rational).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        if w.n == 0 || w.coeffs.len() as u64 != euler_phi(w.n) {
            return Err(D::Error::custom("coefficient count must equal φ(N)"));
        }
        let coeffs: Vec<Rational> = w
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(C::from_dense(w.n, &coeffs))
    }
}
