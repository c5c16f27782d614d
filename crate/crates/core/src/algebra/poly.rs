//! Sparse multivariate polynomials over Q.
//!
//! Terms are keyed by exponent vectors in a `BTreeMap`, so iteration is in
//! lexicographic order with the first variable most significant and the
//! leading term is the last entry.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::Rational;

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultivariatePolynomial {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponents, Rational>,
}

type P = MultivariatePolynomial;

/// Shared variable list, e.g. `variables(&["x", "y"])`.
pub fn variables(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect()
}

impl MultivariatePolynomial {
    pub fn zero(vars: &Arc<[String]>) -> Self {
        P { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<[String]>) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Arc<[String]>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    /// The `i`-th variable.
    pub fn var(vars: &Arc<[String]>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn monomial(vars: &Arc<[String]>, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms(vars: &Arc<[String]>, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lex-leading term. Panics on zero.
    pub fn leading(&self) -> (&Exponents, &Rational) {
        self.terms.iter().next_back().expect("leading term of zero polynomial")
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.terms.values().next_back().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        P {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &[u32]) -> Self {
        P {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Makes the lex-leading coefficient 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coefficient();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars(), "point length");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut f = e.clone();
                f[v] -= 1;
                p.add_term(f, c * Rational::from_integer(e[v].into()));
            }
        }
        p
    }

    /// Renames coordinates: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut f = vec![0; e.len()];
            for (i, &k) in e.iter().enumerate() {
                f[perm[i]] = k;
            }
            p.add_term(f, c.clone());
        }
        p
    }

    /// Coefficients with respect to variable `v`: entry `k` multiplies `x_v^k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Self> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(&self.vars); d + 1];
        if self.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut f = e.clone();
            f[v] = 0;
            out[k].terms.insert(f, c.clone());
        }
        out
    }

    fn lc_in(&self, v: usize) -> Self {
        self.coeffs_in(v).pop().unwrap_or_else(|| Self::zero(&self.vars))
    }

    fn var_power(&self, v: usize, k: u32) -> Self {
        let mut e = vec![0; self.nvars()];
        e[v] = k;
        Self::monomial(&self.vars, e, Rational::one())
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (ld, lcd) = d.leading();
        let (ld, lcd) = (ld.clone(), lcd.clone());
        let mut r = self.clone();
        let mut q = Self::zero(&self.vars);
        while !r.is_zero() {
            let (lr, lcr) = r.leading();
            if lr.iter().zip(&ld).any(|(a, b)| a < b) {
                return None;
            }
            let m: Exponents = lr.iter().zip(&ld).map(|(a, b)| a - b).collect();
            let c = lcr / &lcd;
            r = &r - &d.shift(&m).scale(&c);
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Pseudo-remainder of `self` by `b` in variable `v`.
    pub fn prem(&self, b: &Self, v: usize) -> Self {
        let db = b.degree_in(v);
        let lb = b.lc_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.lc_in(v);
            r = &(&lb * &r) - &(&(&lr * &r.var_power(v, dr - db)) * b);
        }
        r
    }

    /// Gcd of the coefficients in variable `v`, made monic.
    pub fn content_in(&self, v: usize) -> Self {
        let mut g = Self::zero(&self.vars);
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_constant() {
                return Self::one(&self.vars);
            }
        }
        g
    }

    pub fn primitive_part_in(&self, v: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides").monic()
    }
}

/// Monic gcd over Q, zero only when both inputs are zero.
pub fn gcd(a: &P, b: &P) -> P {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return P::one(&a.vars);
    }
    if a.div_exact(b).is_some() {
        return b.monic();
    }
    if b.div_exact(a).is_some() {
        return a.monic();
    }
    let n = a.nvars();
    let v = (0..n)
        .find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
        .expect("non-constant polynomial has a variable");
    if a.degree_in(v) == 0 {
        return gcd(a, &b.content_in(v));
    }
    if b.degree_in(v) == 0 {
        return gcd(&a.content_in(v), b);
    }
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let c = gcd(&ca, &cb);
    let mut r0 = a.div_exact(&ca).expect("content divides");
    let mut r1 = b.div_exact(&cb).expect("content divides");
    if r0.degree_in(v) < r1.degree_in(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let r = r0.prem(&r1, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            r1 = P::one(&a.vars);
            break;
        }
        r0 = r1;
        r1 = r.primitive_part_in(v);
    }
    (&c * &r1.primitive_part_in(v)).monic()
}

impl Add<&P> for &P {
    type Output = P;
    fn add(self, o: &P) -> P {
        debug_assert_eq!(self.vars, o.vars);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub<&P> for &P {
    type Output = P;
    fn sub(self, o: &P) -> P {
        debug_assert_eq!(self.vars, o.vars);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl Mul<&P> for &P {
    type Output = P;
    fn mul(self, o: &P) -> P {
        debug_assert_eq!(self.vars, o.vars);
        let mut p = P::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &P {
    type Output = P;
    fn neg(self) -> P {
        P {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<P> for P {
            type Output = P;
            fn $m(self, o: P) -> P {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for P {
    type Output = P;
    fn neg(self) -> P {
        -&self
    }
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| if k == 1 { self.vars[j].clone() } else { format!("{}^{}", self.vars[j], k) })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn xy() -> (Arc<[String]>, P, P) {
        let v = variables(&["x", "y"]);
        let x = P::var(&v, 0);
        let y = P::var(&v, 1);
        (v, x, y)
    }

    #[test]
    fn arithmetic_and_display() {
        let (v, x, y) = xy();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert_eq!(p.to_string(), "x^2 - y^2");
        let q = &x.scale(&rat(3, 2)) - &P::one(&v);
        assert_eq!(q.to_string(), "3/2*x - 1");
        assert_eq!(p.eval(&[int(3), int(2)]), int(5));
        assert_eq!(p.derivative(0), x.scale(&int(2)));
    }

    #[test]
    fn exact_division() {
        let (_, x, y) = xy();
        let p = &x.pow(2) - &y.pow(2);
        assert_eq!(p.div_exact(&(&x - &y)).unwrap(), &x + &y);
        assert!(p.div_exact(&(&x + &y.scale(&int(2)))).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let (v, x, y) = xy();
        let g = &(&x * &y) + &P::one(&v);
        let a = &g * &(&x + &y.pow(2));
        let b = &g * &(&x.pow(3) - &y);
        assert_eq!(gcd(&a, &b), g.monic());
        let c = &x.scale(&int(6)) + &y.scale(&int(4));
        assert_eq!(gcd(&c, &c.scale(&int(3))), c.monic());
        assert!(gcd(&x, &y).is_constant());
    }

    #[test]
    fn gcd_three_variables() {
        let v = variables(&["a", "b", "c"]);
        let a = P::var(&v, 0);
        let b = P::var(&v, 1);
        let c = P::var(&v, 2);
        let g = &(&a + &b) + &c;
        let p = &g * &(&(&a * &c) - &b);
        let q = &g.pow(2) * &(&b + &P::one(&v));
        assert_eq!(gcd(&p, &q), g.monic());
    }
}
