//! Exact values `c · q^{k/2}` with `c` cyclotomic.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::finite_field::prime_power;
use crate::algebra::rational::{pow_i, Rational};
use crate::algebra::CyclotomicNumber;
use crate::error::{Error, Result};

/// `cyc · q^{q_half_power / 2}`.
#[derive(Clone, Debug, Serialize)]
pub struct GammaValue {
    pub cyc: CyclotomicNumber,
    pub q_half_power: i32,
    #[serde(skip)]
    pub q: u64,
}

/// `√p` as an element of a cyclotomic field, via the quadratic Gauss sum.
fn sqrt_prime(p: u64) -> CyclotomicNumber {
    if p == 2 {
        return &CyclotomicNumber::root_of_unity(8, 1) + &CyclotomicNumber::root_of_unity(8, 7);
    }
    let mut counts = vec![0i64; p as usize];
    for t in 0..p {
        counts[(t * t % p) as usize] += 1;
    }
    let g = CyclotomicNumber::from_exponent_counts(p, &counts);
    if p % 4 == 1 {
        g
    } else {
        -&(&CyclotomicNumber::root_of_unity(4, 1) * &g)
    }
}

/// `√q` exactly, for a prime power `q`.
pub fn sqrt_q(q: u64) -> Result<CyclotomicNumber> {
    let (p, e) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
    let p = p as u64;
    let r = CyclotomicNumber::from_rational(&pow_i(&Rational::from_integer(p.into()), (e / 2) as i64));
    Ok(if e % 2 == 0 { r } else { &r * &sqrt_prime(p) })
}

impl GammaValue {
    pub fn new(cyc: CyclotomicNumber, q_half_power: i32, q: u64) -> Self {
        GammaValue { cyc, q_half_power, q }
    }

    /// The value as a single cyclotomic number.
    pub fn exact(&self) -> CyclotomicNumber {
        let k = self.q_half_power as i64;
        let q = Rational::from_integer(self.q.into());
        let whole = CyclotomicNumber::from_rational(&pow_i(&q, k.div_euclid(2)));
        let v = &self.cyc * &whole;
        if k.rem_euclid(2) == 1 {
            &v * &sqrt_q(self.q).expect("q is a prime power")
        } else {
            v
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.cyc.to_complex() * (self.q as f64).powf(self.q_half_power as f64 / 2.0)
    }

    pub fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn neg(&self) -> Self {
        GammaValue { cyc: -&self.cyc, q_half_power: self.q_half_power, q: self.q }
    }

    pub fn mul(&self, o: &GammaValue) -> Self {
        assert_eq!(self.q, o.q, "gamma values over different fields");
        GammaValue { cyc: &self.cyc * &o.cyc, q_half_power: self.q_half_power + o.q_half_power, q: self.q }
    }

    /// The rational value, when there is one.
    pub fn to_rational(&self) -> Option<Rational> {
        self.exact().to_rational()
    }

    /// Human-readable rendering: the rational value when rational,
    /// otherwise `(c)·q^(k/2)`.
    pub fn render(&self) -> String {
        match self.to_rational() {
            Some(r) if r.is_integer() => r.numer().to_string(),
            Some(r) => format!("{}/{}", r.numer(), r.denom()),
            None => format!("({})*{}^({}/2)", self.cyc, self.q, self.q_half_power),
        }
    }
}

impl PartialEq for GammaValue {
    fn eq(&self, o: &Self) -> bool {
        if self.q != o.q {
            return false;
        }
        if self.q_half_power == o.q_half_power {
            return self.cyc == o.cyc;
        }
        self.exact() == o.exact()
    }
}

impl fmt::Display for GammaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
