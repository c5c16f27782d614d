//! Volumes of the fibers of `x ↦ ∏ x_i^{n_i}` on `m^k`.
//!
//! `x_1` is the dependent coordinate and carries counting measure on its
//! solutions; `x_2, ..., x_k` carry `|∏ x_i^{m_i}| dx_2 ⋯ dx_k`. For a
//! valuation tuple `a` with `Σ n_i a_i = v` the units `w_2, ..., w_k` sweep
//! a coset of `H = ⟨w^{n_2}, ..., w^{n_k}⟩` in the cyclic group
//! `(Z/p^L)^*`; the fraction of that coset made of `n_1`-th powers is
//! `h/g_1` when `u ∈ H·P` and 0 otherwise.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::rational::{pow_i, Rational};
use crate::error::{Error, Result};

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128 % m as u128;
    let mut b128 = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m as u128;
        }
        b128 = b128 * b128 % m as u128;
        e >>= 1;
    }
    b = r as u64;
    b
}

fn volume_at_level(n: &[u32], m: &[u32], p: u64, v: u32, unit: u64, level: u32) -> Result<Rational> {
    let modulus = p.checked_pow(level).ok_or_else(|| Error::domain("level too large"))?;
    let phi = (p - 1) * p.pow(level - 1);
    let g1 = (n[0] as u64).gcd(&phi);
    let h2 = n[1..].iter().fold(phi, |acc, &x| acc.gcd(&(x as u64)));
    let h = h2.gcd(&g1);
    if pow_mod(unit, phi / h, modulus) != 1 {
        return Ok(Rational::zero());
    }
    let roots = Rational::from_integer(((n[0] as u64).gcd(&(p - 1))).into());
    let frac = Rational::new(h.into(), g1.into());
    let q = Rational::from_integer(p.into());
    let unit_mass = Rational::one() - Rational::new(1.into(), p.into());
    let k = n.len();
    let mut total = Rational::zero();
    // enumerate a_2..a_k >= 1, a_1 = (v - Σ_{i≥2} n_i a_i) / n_1 >= 1
    let mut a = vec![1u32; k - 1];
    loop {
        let rest: u64 = a.iter().zip(&n[1..]).map(|(&x, &y)| x as u64 * y as u64).sum();
        if rest + n[0] as u64 <= v as u64 {
            let r = v as u64 - rest;
            if r.is_multiple_of(n[0] as u64) {
                let mut w = Rational::one();
                for (&ai, &mi) in a.iter().zip(m) {
                    w *= pow_i(&q, -(ai as i64) * (mi as i64 + 1));
                    w *= &unit_mass;
                }
                total += w;
            }
        }
        // odometer bounded by the valuation budget
        let mut pos = 0;
        loop {
            if pos == a.len() {
                return Ok(total * frac * roots);
            }
            a[pos] += 1;
            let used: u64 = a.iter().zip(&n[1..]).map(|(&x, &y)| x as u64 * y as u64).sum();
            if used + n[0] as u64 <= v as u64 {
                break;
            }
            a[pos] = 1;
            pos += 1;
        }
    }
}

/// `V(t)` for `val(t) = v` and unit part `unit`, computed at `level` and
/// at `level + 2`; the two must agree.
pub fn monomial_fiber_volume(n: &[u32], m: &[u32], p: u64, v: u32, unit: u64, level: u32) -> Result<Rational> {
    if n.is_empty() || n.contains(&0) {
        return Err(Error::domain("exponents must be positive"));
    }
    if m.len() + 1 != n.len() {
        return Err(Error::domain(format!("{} form exponents for {} coordinates", m.len(), n.len())));
    }
    if p == 2 || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) || p < 2 {
        return Err(Error::domain(format!("p = {p} must be an odd prime")));
    }
    if unit.is_multiple_of(p) {
        return Err(Error::domain("unit part divisible by p"));
    }
    if level == 0 {
        return Err(Error::domain("level must be positive"));
    }
    let a = volume_at_level(n, m, p, v, unit, level)?;
    let b = volume_at_level(n, m, p, v, unit, level + 2)?;
    if a != b {
        return Err(Error::internal(format!("volume changes between level {level} and {}", level + 2)));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn two_coordinates() {
        for v in 2..8 {
            let got = monomial_fiber_volume(&[1, 1], &[0], 3, v, 1, 4).unwrap();
            assert_eq!(got, rat(1, 3) - pow_i(&rat(3, 1), -(v as i64)));
        }
        assert_eq!(monomial_fiber_volume(&[1, 1], &[0], 3, 1, 1, 4).unwrap(), rat(0, 1));
    }

    #[test]
    fn squares() {
        // 2 is not a square mod 5, 4 is
        assert_eq!(monomial_fiber_volume(&[2], &[], 5, 4, 2, 3).unwrap(), rat(0, 1));
        assert_eq!(monomial_fiber_volume(&[2], &[], 5, 4, 4, 3).unwrap(), rat(2, 1));
        assert_eq!(monomial_fiber_volume(&[2], &[], 5, 3, 4, 3).unwrap(), rat(0, 1));
        for u in 1..25u64 {
            if u % 5 == 0 {
                continue;
            }
            let a = monomial_fiber_volume(&[2], &[], 5, 6, u, 3).unwrap();
            let b = monomial_fiber_volume(&[2], &[], 5, 6, u * 9 % 125, 3).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn unit_invariance_for_n1_one() {
        for u in [1, 2, 4, 7] {
            assert_eq!(
                monomial_fiber_volume(&[1, 3], &[1], 3, 7, u, 3).unwrap(),
                monomial_fiber_volume(&[1, 3], &[1], 3, 7, 1, 3).unwrap()
            );
        }
    }

    #[test]
    fn rejects_two() {
        assert!(monomial_fiber_volume(&[1], &[], 2, 3, 1, 3).is_err());
    }
}
