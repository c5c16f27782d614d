//! Tate L- and gamma factors and their products along a weight list.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::character::PAdicCharacter;
use crate::error::{Error, Result};
use crate::weights::WeightList;

/// Normalization constants pinned down by the oscillatory oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalization {
    /// `k` in `γ(χ, s) = G(χ_0) z^{-1} q^{s} q^{k}` for conductor-1 `χ`.
    pub tate_eps_q_power: i32,
    /// `a` in `ι̂(z) = q^{aσ} z^{-1}`.
    pub fourier_shift_exponent: i32,
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization { tate_eps_q_power: -1, fourier_shift_exponent: -1 }
    }
}

/// One factor `1/(1 − c·X)`, `X = q^{-s}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LFactorTerm {
    /// Exponent of `z` when the factor is `1/(1 − z^λ X)`.
    pub monomial: Option<Vec<i64>>,
    pub value: Complex64,
}

/// `∏ 1/(1 − c_i X)`: numerator 1, denominator constant term 1. Ramified
/// factors are 1 and do not appear.
#[derive(Clone, Debug, Default, Serialize)]
pub struct LocalLFactor {
    pub factors: Vec<LFactorTerm>,
}

impl LocalLFactor {
    pub fn one() -> Self {
        LocalLFactor { factors: Vec::new() }
    }

    pub fn mul(&self, o: &LocalLFactor) -> LocalLFactor {
        LocalLFactor { factors: self.factors.iter().chain(&o.factors).cloned().collect() }
    }

    /// Coefficients of the denominator `∏(1 − c_i X)`, constant term first.
    pub fn denominator(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(1.0, 0.0)];
        for f in &self.factors {
            let mut next = vec![Complex64::new(0.0, 0.0); out.len() + 1];
            for (i, &a) in out.iter().enumerate() {
                next[i] += a;
                next[i + 1] -= a * f.value;
            }
            out = next;
        }
        out
    }

    pub fn numerator(&self) -> Vec<Complex64> {
        vec![Complex64::new(1.0, 0.0)]
    }

    pub fn eval(&self, x: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(1.0, 0.0);
        for (i, f) in self.factors.iter().enumerate() {
            let d = Complex64::new(1.0, 0.0) - f.value * x;
            if d.norm() < 1e-300 {
                return Err(Error::pole_at("L-factor", i));
            }
            acc /= d;
        }
        Ok(acc)
    }

    pub fn at_s(&self, q: u64, s: Complex64) -> Result<Complex64> {
        self.eval((-s * (q as f64).ln()).exp())
    }

    fn sorted(&self) -> Vec<&LFactorTerm> {
        let mut v: Vec<&LFactorTerm> = self.factors.iter().collect();
        v.sort_by(|a, b| {
            a.monomial
                .cmp(&b.monomial)
                .then(a.value.re.total_cmp(&b.value.re))
                .then(a.value.im.total_cmp(&b.value.im))
        });
        v
    }
}

/// Equality as rational functions: the same multiset of factors.
impl PartialEq for LocalLFactor {
    fn eq(&self, o: &Self) -> bool {
        self.sorted() == o.sorted()
    }
}

fn render_monomial(m: &[i64]) -> String {
    let mut s = String::new();
    for (j, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => s.push_str(&format!("z{}", j + 1)),
            _ => s.push_str(&format!("z{}^{}", j + 1, e)),
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

impl fmt::Display for LocalLFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|t| match &t.monomial {
                Some(m) => format!("(1-{}·X)", render_monomial(m)),
                None => format!("(1-({:.6}{:+.6}i)·X)", t.value.re, t.value.im),
            })
            .collect();
        match parts.len() {
            0 => write!(f, "1"),
            1 => write!(f, "1/{}", parts[0]),
            _ => write!(f, "1/({})", parts.concat()),
        }
    }
}

/// `L(χ, s) = 1/(1 − zX)` for unramified `χ`, 1 otherwise.
pub fn tate_l(chi: &PAdicCharacter) -> LocalLFactor {
    if chi.is_ramified() {
        return LocalLFactor::one();
    }
    LocalLFactor { factors: vec![LFactorTerm { monomial: None, value: chi.z }] }
}

/// `L_ρ(θ, s) = ∏ L(θ ∘ λ_i, s)`, with factors labelled by `z^{λ_i}`.
pub fn l_rho(rho: &WeightList, theta: &[PAdicCharacter]) -> Result<LocalLFactor> {
    let mut factors = Vec::new();
    for l in rho.weights() {
        let c = PAdicCharacter::compose(theta, l)?;
        if !c.is_ramified() {
            factors.push(LFactorTerm { monomial: Some(l.clone()), value: c.z });
        }
    }
    Ok(LocalLFactor { factors })
}

/// `G(χ_0) = Σ_{u ∈ (Z/p)^*} χ_0(u) exp(2πi u/p)`.
pub fn gauss_sum(chi: &PAdicCharacter) -> Result<Complex64> {
    let p = chi.p;
    let mut acc = Complex64::new(0.0, 0.0);
    for u in 1..p {
        acc += chi.unit_value(u)? * Complex64::from_polar(1.0, 2.0 * PI * u as f64 / p as f64);
    }
    Ok(acc)
}

fn q_pow(q: u64, s: Complex64) -> Complex64 {
    (s * (q as f64).ln()).exp()
}

/// `γ(χ, s)` for `ψ` of conductor 0:
/// unramified `(1 − z^{-1}q^{s−1})/(1 − z q^{−s})`, conductor 1
/// `G(χ_0) z^{-1} q^{s} q^{k}` with `k` from the normalization.
pub fn tate_gamma(chi: &PAdicCharacter, s: Complex64, norm: &Normalization) -> Result<Complex64> {
    let q = chi.p;
    if chi.is_ramified() {
        let g = gauss_sum(chi)?;
        return Ok(g / chi.z * q_pow(q, s) * (q as f64).powi(norm.tate_eps_q_power));
    }
    let one = Complex64::new(1.0, 0.0);
    let num = one - q_pow(q, s - one) / chi.z;
    let den = one - chi.z * q_pow(q, -s);
    if den.norm() < 1e-12 {
        return Err(Error::pole(format!("L(χ, s) has a pole at s = {s}")));
    }
    Ok(num / den)
}

/// `γ_ρ(θ, s) = ∏ γ(θ ∘ λ_i, s)`. A pole carries the index of its factor.
pub fn gamma_rho_torus(rho: &WeightList, theta: &[PAdicCharacter], s: Complex64, norm: &Normalization) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (i, l) in rho.weights().iter().enumerate() {
        let c = PAdicCharacter::compose(theta, l)?;
        acc *= tate_gamma(&c, s, norm).map_err(|e| match e {
            Error::Pole { context, .. } => Error::pole_at(context, i),
            other => other,
        })?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn l_factor_products() {
        let triv = PAdicCharacter::trivial(3);
        assert_eq!(tate_l(&triv).to_string(), "1/(1-(1.000000+0.000000i)·X)");
        let ram = PAdicCharacter::new(3, c(1.0, 0.0), 1).unwrap();
        assert_eq!(tate_l(&ram), LocalLFactor::one());
        let rho = WeightList::parse("1,0;0,1;1,1").unwrap();
        let th = [PAdicCharacter::unramified(3, c(0.5, 0.0)).unwrap(), PAdicCharacter::unramified(3, c(0.25, 0.0)).unwrap()];
        let l = l_rho(&rho, &th).unwrap();
        assert_eq!(l.to_string(), "1/((1-z1·X)(1-z2·X)(1-z1z2·X))");
        let d = l.denominator();
        assert_eq!(d.len(), 4);
        assert!((d[1] + c(0.5 + 0.25 + 0.125, 0.0)).norm() < 1e-15);
        let mixed = [th[0].clone(), ram];
        let l = l_rho(&WeightList::standard(2), &mixed).unwrap();
        assert_eq!(l.to_string(), "1/(1-z1·X)");
    }

    #[test]
    fn unramified_gamma_closed_form() {
        let n = Normalization::default();
        let g = tate_gamma(&PAdicCharacter::trivial(3), c(1.3, 0.0), &n).unwrap();
        let want = (1.0 - 3f64.powf(0.3)) / (1.0 - 3f64.powf(-1.3));
        assert!((g - c(want, 0.0)).norm() < 1e-14);
        assert!(tate_gamma(&PAdicCharacter::trivial(3), c(0.0, 0.0), &n).unwrap_err().is_pole());
    }

    #[test]
    fn ramified_gamma_has_unit_modulus_on_the_critical_line() {
        let n = Normalization::default();
        for p in [3, 5, 7] {
            for e in 1..p as i64 - 1 {
                let chi = PAdicCharacter::new(p, c(0.6, 0.8), e).unwrap();
                assert!((tate_gamma(&chi, c(0.5, 0.0), &n).unwrap().norm() - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn functional_equation() {
        let n = Normalization::default();
        for s in [c(0.3, 0.1), c(0.8, 0.0), c(1.3, -0.4), c(2.0, 1.0), c(-0.5, 0.2)] {
            let chi = PAdicCharacter::unramified(5, c(0.7, 0.2)).unwrap();
            let one = c(1.0, 0.0);
            let v = tate_gamma(&chi, s, &n).unwrap() * tate_gamma(&chi.inverse(), one - s, &n).unwrap();
            assert!((v - one).norm() < 1e-8);
            let chi = PAdicCharacter::new(5, c(0.7, 0.2), 1).unwrap();
            let sign = chi.unit_value(4).unwrap();
            let v = tate_gamma(&chi, s, &n).unwrap() * tate_gamma(&chi.inverse(), one - s, &n).unwrap();
            assert!((v - sign).norm() < 1e-8);
        }
    }

    #[test]
    fn pole_carries_factor_index() {
        let rho = WeightList::parse("1;2").unwrap();
        let th = [PAdicCharacter::unramified(3, c(3f64.sqrt(), 0.0)).unwrap()];
        let e = gamma_rho_torus(&rho, &th, c(1.0, 0.0), &Normalization::default()).unwrap_err();
        assert_eq!(e, Error::Pole { context: "L(χ, s) has a pole at s = 1+0i".into(), index: Some(1) });
    }
}
