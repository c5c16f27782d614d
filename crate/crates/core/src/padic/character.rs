//! Quasi-characters of `Q_p^*` of conductor at most 1.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::finite_field::shared_field;
use crate::error::{Error, Result};

/// `χ(p^v u) = z^v χ_0(u)` where `χ_0` factors through `(Z/p)^*` and is
/// given by `χ_0(g^j) = ζ_{p−1}^{exponent·j}` for the least primitive root
/// `g`. Conductor 0 exactly when `χ_0` is trivial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PAdicCharacter {
    pub p: u64,
    pub z: Complex64,
    pub conductor: u32,
    pub exponent: u64,
}

impl PAdicCharacter {
    pub fn unramified(p: u64, z: Complex64) -> Result<Self> {
        Self::new(p, z, 0)
    }

    /// Conductor is 1 when `exponent ≢ 0 (mod p−1)`, else 0.
    pub fn new(p: u64, z: Complex64, exponent: i64) -> Result<Self> {
        if p < 2 || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if z.norm() == 0.0 || !z.norm().is_finite() {
            return Err(Error::domain("unramified value must be a nonzero finite number"));
        }
        let exponent = exponent.rem_euclid(p as i64 - 1) as u64;
        Ok(PAdicCharacter { p, z, conductor: (exponent != 0) as u32, exponent })
    }

    pub fn trivial(p: u64) -> Self {
        PAdicCharacter { p, z: Complex64::new(1.0, 0.0), conductor: 0, exponent: 0 }
    }

    pub fn is_ramified(&self) -> bool {
        self.conductor > 0
    }

    pub fn modulus(&self) -> f64 {
        self.z.norm()
    }

    pub fn inverse(&self) -> Self {
        let e = (self.p - 1 - self.exponent) % (self.p - 1);
        PAdicCharacter { p: self.p, z: self.z.inv(), conductor: self.conductor, exponent: e }
    }

    /// `χ_0(u)` for a unit `u` (any integer prime to `p`).
    pub fn unit_value(&self, u: u64) -> Result<Complex64> {
        if self.exponent == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let f = shared_field(self.p as u32, 1)?;
        let l = f.log((u % self.p) as u32)? as u64;
        let n = self.p - 1;
        Ok(Complex64::from_polar(1.0, 2.0 * PI * ((self.exponent * l) % n) as f64 / n as f64))
    }

    /// `θ ∘ λ` for a character `θ = (χ_1, ..., χ_r)` of the split torus and a
    /// cocharacter `λ ∈ Z^r`: `z = ∏ z_j^{λ_j}`, exponent `Σ λ_j e_j`.
    pub fn compose(theta: &[PAdicCharacter], lambda: &[i64]) -> Result<Self> {
        let first = theta.first().ok_or_else(|| Error::domain("empty character tuple"))?;
        if theta.len() != lambda.len() {
            return Err(Error::domain(format!("character of rank {} paired with λ of length {}", theta.len(), lambda.len())));
        }
        let p = first.p;
        if theta.iter().any(|c| c.p != p) {
            return Err(Error::domain("characters of different fields"));
        }
        let mut z = Complex64::new(1.0, 0.0);
        let mut e: i64 = 0;
        for (c, &l) in theta.iter().zip(lambda) {
            z *= c.z.powi(l as i32);
            e += l * c.exponent as i64;
        }
        Self::new(p, z, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_inverse() {
        let a = PAdicCharacter::new(5, Complex64::new(0.5, 0.0), 1).unwrap();
        let b = PAdicCharacter::new(5, Complex64::new(2.0, 0.0), 3).unwrap();
        let c = PAdicCharacter::compose(&[a.clone(), b], &[1, 1]).unwrap();
        assert!(!c.is_ramified());
        assert!((c.z - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let d = PAdicCharacter::compose(std::slice::from_ref(&a), &[2]).unwrap();
        assert_eq!(d.exponent, 2);
        assert_eq!(a.inverse().exponent, 3);
        for u in 1..5 {
            let v = a.unit_value(u).unwrap() * a.inverse().unit_value(u).unwrap();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }
}
