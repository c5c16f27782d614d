//! Unramified lifting on Satake parameters and the ordered character data
//! of the lifted representation.

use num_complex::Complex64;

use super::character::PAdicCharacter;
use crate::error::{Error, Result};
use crate::weights::WeightList;

/// `s ↦ {s^{λ_i}}`.
pub fn unramified_satake_lift(satake: &[Complex64], rho: &WeightList) -> Result<Vec<Complex64>> {
    if satake.len() != rho.rank() {
        return Err(Error::domain(format!("{} Satake entries for rank {}", satake.len(), rho.rank())));
    }
    if let Some(i) = satake.iter().position(|s| s.norm() == 0.0) {
        return Err(Error::domain(format!("Satake entry {} is zero", i + 1)));
    }
    Ok(rho
        .weights()
        .iter()
        .map(|l| satake.iter().zip(l).map(|(s, &e)| s.powi(e as i32)).product())
        .collect())
}

/// `χ_i = θ ∘ λ_i`, stably sorted by `|z_i|` ascending.
pub fn torus_lifting_data(theta: &[PAdicCharacter], rho: &WeightList) -> Result<Vec<PAdicCharacter>> {
    let mut chis: Vec<PAdicCharacter> =
        rho.weights().iter().map(|l| PAdicCharacter::compose(theta, l)).collect::<Result<_>>()?;
    chis.sort_by(|a, b| a.modulus().total_cmp(&b.modulus()));
    Ok(chis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn monomial_application() {
        let rho = WeightList::parse("1,0;0,1;1,1").unwrap();
        let l = unramified_satake_lift(&[c(2.0, 0.0), c(0.0, 1.0)], &rho).unwrap();
        assert_eq!(l, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, 2.0)]);
        let sq = unramified_satake_lift(&[c(3.0, 0.0)], &WeightList::parse("2").unwrap()).unwrap();
        assert_eq!(sq, vec![c(9.0, 0.0)]);
        assert!(unramified_satake_lift(&[c(0.0, 0.0)], &WeightList::standard(1)).is_err());
    }

    #[test]
    fn ordering_by_modulus() {
        let th = [PAdicCharacter::unramified(5, c(0.5, 0.0)).unwrap()];
        let d = torus_lifting_data(&th, &WeightList::parse("1;2").unwrap()).unwrap();
        assert!((d[0].z - c(0.25, 0.0)).norm() < 1e-15);
        assert!((d[1].z - c(0.5, 0.0)).norm() < 1e-15);
    }
}
