//! Central functions with prescribed gamma values.

use super::chartable::CharacterTable;
use super::gamma::GammaValue;
use crate::algebra::rational::Rational;
use crate::algebra::CyclotomicNumber;
use crate::error::{Error, Result};

/// Brings a list of values to a common power of `q^{1/2}`.
fn common_scale(values: &[GammaValue]) -> Result<(Vec<CyclotomicNumber>, i32, u64)> {
    let first = values.first().ok_or_else(|| Error::domain("no values"))?;
    let q = first.q;
    if values.iter().any(|v| v.q != q) {
        return Err(Error::domain("values over different fields"));
    }
    let k0 = values.iter().map(|v| v.q_half_power).min().expect("non-empty");
    if values.iter().all(|v| (v.q_half_power - k0) % 2 == 0) {
        let qr = Rational::from_integer(q.into());
        let cyc = values
            .iter()
            .map(|v| v.cyc.scale(&crate::algebra::rational::pow_i(&qr, ((v.q_half_power - k0) / 2) as i64)))
            .collect();
        Ok((cyc, k0, q))
    } else {
        Ok((values.iter().map(GammaValue::exact).collect(), 0, q))
    }
}

/// `Φ(C) = (1/|G|) Σ_π dim(π) γ(π) χ_π(C^{-1})`, one value per class.
pub fn central_function_from_gamma(table: &CharacterTable, gamma: &[GammaValue]) -> Result<Vec<GammaValue>> {
    if gamma.len() != table.rows.len() {
        return Err(Error::domain(format!("{} gamma values for {} irreducibles", gamma.len(), table.rows.len())));
    }
    let (cyc, k, q) = common_scale(gamma)?;
    let inv_order = Rational::new(1.into(), table.order.into());
    let out = (0..table.classes.len())
        .map(|c| {
            let s: CyclotomicNumber = table
                .rows
                .iter()
                .zip(&cyc)
                .map(|(r, g)| &(g * &r.values[c].conj()) * &CyclotomicNumber::from_integer(r.dim as i64))
                .sum();
            GammaValue::new(s.scale(&inv_order), k, q)
        })
        .collect();
    Ok(out)
}

/// `γ(π) = (1/dim) Σ_C |C| Φ(C) χ_π(C)`.
pub fn gamma_from_central_function(table: &CharacterTable, phi: &[GammaValue], row: usize) -> Result<GammaValue> {
    let r = table.rows.get(row).ok_or_else(|| Error::domain(format!("no row {row}")))?;
    if phi.len() != table.classes.len() {
        return Err(Error::domain("one value per class expected"));
    }
    let (cyc, k, q) = common_scale(phi)?;
    let s: CyclotomicNumber = table
        .classes
        .iter()
        .zip(&cyc)
        .zip(&r.values)
        .map(|((c, f), x)| &(f * x) * &CyclotomicNumber::from_integer(c.size as i64))
        .sum();
    Ok(GammaValue::new(s.scale(&Rational::new(1.into(), r.dim.into())), k, q))
}
