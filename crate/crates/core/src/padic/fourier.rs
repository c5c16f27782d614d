//! `F_ρ φ = |σ|^{-1} Φ_ρ * ιφ` in the multiplier model
//! `M(F_ρ φ)(z) = Γ_ρ(z) M(φ)(ι̂z)`, `Γ_ρ(z) = ∏ (1 − q^{-1} z^{-λ_i})/(1 − z^{λ_i})`,
//! `ι̂: z^μ ↦ q^{a⟨μ,σ⟩} z^{-μ}`.

use num_complex::Complex64;

use super::character::PAdicCharacter;
use super::lattice::LatticeFunction;
use super::local_factor::{tate_gamma, Normalization};
use super::mellin::{mellin, schwartz_membership, Laurent, MellinImage};
use super::oracle::{oscillatory_oracle, shell_integral};
use crate::algebra::rational::{pow_i, to_f64, Rational};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::weights::WeightList;

fn integral_sigma(rho: &WeightList, mu: &[i64]) -> Result<i64> {
    let h = rho.pair_sigma(mu)?;
    if !h.is_integer() {
        return Err(Error::domain(format!("⟨{mu:?}, σ⟩ = {h} is not an integer")));
    }
    h.to_integer().try_into().map_err(|_| Error::domain("⟨μ, σ⟩ out of range"))
}

/// `M ∘ ι̂`.
pub fn iota_hat(m: &MellinImage, rho: &WeightList, q: u64, a: i32) -> Result<MellinImage> {
    let qr = Rational::from_integer(q.into());
    let numerator = m.numerator.map_terms(|mu, c| {
        let h = integral_sigma(rho, mu)?;
        Ok((mu.iter().map(|x| -x).collect(), c * pow_i(&qr, a as i64 * h)))
    })?;
    let mut out = MellinImage::laurent(numerator);
    for f in &m.factors {
        let h = integral_sigma(rho, &f.lambda)?;
        out.push_factor(&f.coeff * pow_i(&qr, a as i64 * h), f.lambda.iter().map(|x| -x).collect(), f.mult);
    }
    Ok(out)
}

/// `Γ_ρ(z)`.
pub fn gamma_multiplier(rho: &WeightList, q: u64) -> MellinImage {
    let qinv = Rational::new(1.into(), q.into());
    let mut n = Laurent::one(rho.rank());
    for l in rho.weights() {
        n = n.mul(&Laurent::one_minus(&qinv, &l.iter().map(|x| -x).collect::<Vec<_>>()));
    }
    MellinImage::over_weights(n, rho.weights())
}

/// `Γ_ρ(z) M(ι̂z)`, normalized.
pub fn fourier_mellin(m: &MellinImage, rho: &WeightList, q: u64, norm: &Normalization) -> Result<MellinImage> {
    let t = iota_hat(m, rho, q, norm.fourier_shift_exponent)?;
    Ok(gamma_multiplier(rho, q).mul(&t).normalized())
}

/// Writes `M` as `N / ∏_i (1 − z^{λ_i})` over the weights of `ρ`.
fn to_tail(m: &MellinImage, rho: &WeightList) -> Result<LatticeFunction> {
    let m = m.normalized();
    let full = MellinImage::over_weights(Laurent::one(rho.rank()), rho.weights()).denominator();
    let cofactor = full
        .div_exact(&m.denominator())
        .ok_or_else(|| Error::internal(format!("{m} has a denominator outside ∏(1 − z^λ_i)")))?;
    let n = m.numerator.mul(&cofactor);
    LatticeFunction::with_tail(rho, n.terms)
}

/// `F_ρ φ` for `φ` in the Schwartz space of `ρ`; the result is in tail mode.
pub fn fourier_rho(phi: &LatticeFunction, rho: &WeightList, q: u64, norm: &Normalization) -> Result<LatticeFunction> {
    let m = mellin(phi);
    if !schwartz_membership(&m, rho) {
        return Err(Error::domain("φ is not in the Schwartz space of ρ"));
    }
    to_tail(&fourier_mellin(&m, rho, q, norm)?, rho)
}

/// `(F_ρ φ)(μ) ≈ q^{⟨μ,σ⟩} Σ_v W(v) φ(Σ v_i λ_i − μ)` with `W(v) = ∏ w(v_i)`,
/// `w(v) = ∫_{v(t) = v} ψ(t) dt` from the oracle's shell integrals and
/// `v_i ∈ [−1, depth]`.
pub fn fourier_rho_numeric(phi: &LatticeFunction, rho: &WeightList, q: u64, mu: &[i64], depth: u32) -> Result<f64> {
    let h = rho.pair_sigma(mu)?;
    let triv = PAdicCharacter::trivial(q);
    let w: Vec<f64> = (-1..=depth as i64)
        .map(|v| shell_integral(&triv, Complex64::new(1.0, 0.0), v, 1).map(|c| c.re))
        .collect::<Result<_>>()?;
    let n = rho.len();
    let mut idx = vec![0usize; n];
    let mut acc = 0.0;
    let mut cache = std::collections::HashMap::new();
    loop {
        let mut pt: Vec<i64> = mu.iter().map(|x| -x).collect();
        let mut weight = 1.0;
        for (k, l) in idx.iter().zip(rho.weights()) {
            let v = *k as i64 - 1;
            weight *= w[*k];
            for (p, x) in pt.iter_mut().zip(l) {
                *p += v * x;
            }
        }
        let val = match cache.get(&pt) {
            Some(&v) => v,
            None => {
                let v = to_f64(&phi.value_at(&pt)?);
                cache.insert(pt, v);
                v
            }
        };
        acc += weight * val;
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(acc * (q as f64).powf(to_f64(&h)));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < w.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Re-derives both normalization constants: the ramified `q`-power from
/// the oracle at `p`, the shift exponent from `F_ρ(C_ρ) = C_ρ` on `ρ`.
pub fn calibrate(p: u64, rho: &WeightList, exec: Exec) -> Result<Normalization> {
    let s = Complex64::new(0.8, 0.0);
    let chi = PAdicCharacter::new(p, Complex64::new(1.0, 0.0), 1)?;
    let o = oscillatory_oracle(&WeightList::standard(1), std::slice::from_ref(&chi), s, 8, 8, exec)?;
    let base = tate_gamma(&chi, s, &Normalization { tate_eps_q_power: 0, ..Default::default() })?;
    let k = ((o / base).norm().ln() / (p as f64).ln()).round() as i32;
    let c = LatticeFunction::c_rho(rho);
    let target = mellin(&c);
    for a in [0, -1, 1, -2, 2] {
        let norm = Normalization { tate_eps_q_power: k, fourier_shift_exponent: a };
        if fourier_mellin(&target, rho, p, &norm)? == target {
            return Ok(norm);
        }
    }
    Err(Error::internal("no shift exponent fixes C_ρ"))
}

/// `F_ρ ∘ F_ρ` as a check of the multiplier algebra.
pub fn fourier_square(phi: &LatticeFunction, rho: &WeightList, q: u64, norm: &Normalization) -> Result<LatticeFunction> {
    fourier_rho(&fourier_rho(phi, rho, q, norm)?, rho, q, norm)
}

/// Same function after bringing both to tail mode over `ρ`.
pub fn same_lattice_function(a: &LatticeFunction, b: &LatticeFunction) -> bool {
    mellin(a) == mellin(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn norm() -> Normalization {
        Normalization::default()
    }

    #[test]
    fn c_rho_is_fixed() {
        for w in ["1", "1;1", "1,0;0,1", "1,0;0,1;2,-1;0,1", "1,1;1,0;1,2"] {
            let rho = WeightList::parse(w).unwrap();
            let c = LatticeFunction::c_rho(&rho);
            let f = fourier_rho(&c, &rho, 3, &norm()).unwrap();
            assert!(same_lattice_function(&f, &c), "{w}");
        }
    }

    #[test]
    fn involution() {
        let rho = WeightList::parse("1,0;0,1;2,-1;0,1").unwrap();
        let phi = LatticeFunction::with_tail(&rho, [(vec![1, 0], int(2)), (vec![0, -1], int(-3)), (vec![2, 1], int(1))]).unwrap();
        let back = fourier_square(&phi, &rho, 5, &norm()).unwrap();
        assert!(same_lattice_function(&back, &phi));
        let wrong = Normalization { fourier_shift_exponent: 0, ..norm() };
        assert!(fourier_square(&phi, &rho, 5, &wrong).map_or(true, |f| !same_lattice_function(&f, &phi)));
    }

    #[test]
    fn numeric_convolution_agrees() {
        let rho = WeightList::parse("1;1").unwrap();
        let c = LatticeFunction::c_rho(&rho);
        let f = fourier_rho(&c, &rho, 3, &norm()).unwrap();
        for mu in [0i64, 1, 3] {
            let exact = to_f64(&f.value_at(&[mu]).unwrap());
            let num = fourier_rho_numeric(&c, &rho, 3, &[mu], 40).unwrap();
            assert!((exact - num).abs() < 1e-6, "{mu}: {exact} vs {num}");
        }
    }

    #[test]
    fn calibration_reproduces_defaults() {
        let rho = WeightList::parse("1;1").unwrap();
        assert_eq!(calibrate(3, &rho, Exec::Sequential).unwrap(), Normalization::default());
    }

    #[test]
    fn non_schwartz_input_is_rejected() {
        let rho = WeightList::parse("1").unwrap();
        let sq = LatticeFunction::c_rho(&WeightList::parse("1;1").unwrap());
        assert!(fourier_rho(&sq, &rho, 3, &norm()).is_err());
    }
}
