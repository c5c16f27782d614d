//! Truncated p-adic sums for `(Φ_ρ * θ|σ|^s)(1)`.
//!
//! With `ω_ρ = dt_1 ⋯ dt_n` and `⟨λ_i, σ⟩ = 1` the integrand on the shell
//! `v(t_i) = v_i` is `∏ ψ(t_i) χ_i(t_i) |t_i|^{s−1}`, `χ_i = θ ∘ λ_i`.
//! Valuations run over `[−r, 8r]`; unit parts are enumerated modulo
//! `p^{min(max(−v, 1), m)}`.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_2;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use super::character::PAdicCharacter;
use crate::algebra::finite_field::shared_field;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::weights::WeightList;

/// Largest number of coordinates summed jointly.
pub const MAX_ORACLE_COORDINATES: usize = 4;

/// Compensated summation; deep shells cancel to zero over `p^L` terms.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `exp(2πi k/n)`, reduced to a quadrant so that the evaluated angle is
/// small and rotations by `i` are exact.
fn root_of_unity(k: u64, n: u64) -> Complex64 {
    let k4 = 4 * (k % n) as u128;
    let quadrant = (k4 / n as u128) as u8;
    let r = (k4 % n as u128) as f64 / n as f64;
    let (s, c) = (FRAC_PI_2 * r).sin_cos();
    match quadrant {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    }
}

/// `∫_{Z_p^*} ψ(p^v u) χ_0(u) du` by a sum over `(Z/p^L)^*`.
fn unit_sum(p: u64, exponent: u64, v: i64, level: u32) -> Result<Complex64> {
    type Key = (u64, u64, i64, u32);
    static CACHE: OnceLock<Mutex<HashMap<Key, Complex64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (p, exponent, v, level);
    if let Some(&x) = cache.lock().expect("unit sum cache").get(&key) {
        return Ok(x);
    }
    let f = shared_field(p as u32, 1)?;
    let n = p - 1;
    let chi0: Vec<Complex64> = (0..p)
        .map(|u| {
            if u == 0 {
                Ok(Complex64::new(0.0, 0.0))
            } else {
                let l = f.log(u as u32)? as u64;
                Ok(root_of_unity(exponent * l, n))
            }
        })
        .collect::<Result<_>>()?;
    let modulus = p.pow(level);
    // ψ(p^v u) = exp(2πi u / p^{-v}) for v < 0, else 1.
    let denom = if v < 0 { p.checked_pow((-v) as u32).ok_or_else(|| Error::domain("valuation too deep"))? } else { 1 };
    let (mut re, mut im) = (Neumaier::default(), Neumaier::default());
    for u in 0..modulus {
        let c = chi0[(u % p) as usize];
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        let t = c * root_of_unity(u, denom);
        re.add(t.re);
        im.add(t.im);
    }
    let out = Complex64::new(re.total(), im.total()) / modulus as f64;
    cache.lock().expect("unit sum cache").insert(key, out);
    Ok(out)
}

/// `∫_{v(t) = v} ψ(t) χ(t) |t|^{s−1} dt` with unit parts at level `m`.
pub fn shell_integral(chi: &PAdicCharacter, s: Complex64, v: i64, m: u32) -> Result<Complex64> {
    let level = (v.max(-(m as i64)).min(-1).unsigned_abs() as u32).clamp(1, m.max(1));
    let j = unit_sum(chi.p, chi.exponent, v, level)?;
    let q = chi.p as f64;
    // q^{-v} q^{-v(s-1)} z^v = (z q^{-s})^v
    let x = chi.z * (-s * q.ln()).exp();
    Ok(x.powi(v as i32) * j)
}

/// Shell integrals for `v ∈ [−r, 8r]`.
pub fn shell_profile(chi: &PAdicCharacter, s: Complex64, r: u32, m: u32) -> Result<Vec<Complex64>> {
    let r = r as i64;
    (-r..=8 * r).map(|v| shell_integral(chi, s, v, m)).collect()
}

/// Truncated sum approximating `(Φ_ρ * θ|σ|^s)(1)`. The twist is taken as
/// `∏ |t_i|^{s−1}`, which is `|σ(p(t))|^{s−1}` whenever `σ` exists.
/// Valuation tuples are summed in lexicographic order whatever `exec` is.
pub fn oscillatory_oracle(
    rho: &WeightList,
    theta: &[PAdicCharacter],
    s: Complex64,
    r: u32,
    m: u32,
    exec: Exec,
) -> Result<Complex64> {
    if r == 0 || m == 0 {
        return Err(Error::domain("radius and level must be positive"));
    }
    let n = rho.len();
    if n > MAX_ORACLE_COORDINATES {
        return Err(Error::domain(format!("oracle supports at most {MAX_ORACLE_COORDINATES} coordinates, got {n}")));
    }
    let chis: Vec<PAdicCharacter> =
        rho.weights().iter().map(|l| PAdicCharacter::compose(theta, l)).collect::<Result<_>>()?;
    for (i, c) in chis.iter().enumerate() {
        let ratio = c.z.norm() * (c.p as f64).powf(-s.re);
        if !c.is_ramified() && ratio >= 1.0 {
            return Err(Error::NonConvergence(format!(
                "shell sums of factor {} grow like {ratio:.4}^v; increase Re(s)",
                i + 1
            )));
        }
    }
    let profiles: Vec<Vec<Complex64>> = chis.iter().map(|c| shell_profile(c, s, r, m)).collect::<Result<_>>()?;
    let len = profiles[0].len();
    let rest = &profiles[1..];
    let partial = par::map_range(exec, len, |v0| {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut idx = vec![0usize; rest.len()];
        loop {
            let mut term = profiles[0][v0];
            for (p, &k) in rest.iter().zip(&idx) {
                term *= p[k];
            }
            acc += term;
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    return acc;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < len {
                    break;
                }
                idx[pos] = 0;
            }
        }
    });
    Ok(partial.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::local_factor::{tate_gamma, Normalization};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn defining_run_matches_closed_form() {
        let rho = WeightList::standard(1);
        let th = [PAdicCharacter::trivial(3)];
        let o = oscillatory_oracle(&rho, &th, c(1.3, 0.0), 8, 8, Exec::Sequential).unwrap();
        let want = (1.0 - 3f64.powf(0.3)) / (1.0 - 3f64.powf(-1.3));
        assert!((o - c(want, 0.0)).norm() < 1e-6);
        let o6 = oscillatory_oracle(&rho, &th, c(1.3, 0.0), 6, 6, Exec::Sequential).unwrap();
        assert!((o - o6).norm() < 1e-8);
    }

    #[test]
    fn ramified_run_fixes_normalization() {
        let n = Normalization::default();
        for p in [3u64, 5] {
            let th = [PAdicCharacter::new(p, c(0.9, 0.1), 1).unwrap()];
            let o = oscillatory_oracle(&WeightList::standard(1), &th, c(0.8, 0.0), 8, 8, Exec::Sequential).unwrap();
            assert!((o - tate_gamma(&th[0], c(0.8, 0.0), &n).unwrap()).norm() < 1e-9);
        }
    }

    #[test]
    fn direct_sum_is_square() {
        let rho = WeightList::parse("1;1").unwrap();
        let th = [PAdicCharacter::unramified(3, c(0.7, 0.2)).unwrap()];
        let s = c(1.3, 0.0);
        let o = oscillatory_oracle(&rho, &th, s, 6, 6, Exec::Parallel).unwrap();
        let g = tate_gamma(&th[0], s, &Normalization::default()).unwrap();
        assert!((o - g * g).norm() < 1e-6);
    }

    #[test]
    fn divergence_is_reported() {
        let th = [PAdicCharacter::trivial(3)];
        let e = oscillatory_oracle(&WeightList::standard(1), &th, c(-0.2, 0.0), 4, 4, Exec::Sequential).unwrap_err();
        assert!(matches!(e, Error::NonConvergence(_)));
    }

    #[test]
    fn sequential_and_parallel_agree_bitwise() {
        let rho = WeightList::parse("1,0;0,1;1,1").unwrap();
        let th = [PAdicCharacter::unramified(3, c(0.7, 0.2)).unwrap(), PAdicCharacter::new(3, c(1.0, 0.0), 1).unwrap()];
        let a = oscillatory_oracle(&rho, &th, c(1.5, 0.0), 3, 3, Exec::Sequential).unwrap();
        let b = oscillatory_oracle(&rho, &th, c(1.5, 0.0), 3, 3, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
