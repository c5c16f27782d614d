//! Virtual characters `R_{θ,w}` of `GL(2, F_q)`, their decomposition into
//! irreducibles, and the sweep comparing `γ(π)` with `γ_w(θ)`.

use serde::Serialize;

use super::chartable::{group_gamma, Gl2Class, Gl2Table};
use super::gamma::GammaValue;
use super::torus::{character_orbits, torus_gamma, AdditiveCharacter, FiniteTorus, FiniteTorusCharacter};
use crate::algebra::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

#[derive(Clone, Debug, Serialize)]
pub struct Constituent {
    /// Row index in the table.
    pub row: usize,
    pub label: String,
    pub dim: u64,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DLLabel {
    pub w_cycle_type: Vec<usize>,
    pub theta_exponents: Vec<u64>,
    pub regular: bool,
    pub constituents: Vec<Constituent>,
}

/// Values of `R_{θ,w}` on the classes of `table`.
pub fn dl_character(table: &Gl2Table, theta: &FiniteTorusCharacter) -> Result<Vec<CyclotomicNumber>> {
    let q = table.q;
    if theta.torus().q() != q {
        return Err(Error::domain("torus and table are over different fields"));
    }
    let n1 = q - 1;
    let n2 = q * q - 1;
    let int = CyclotomicNumber::from_integer;
    let root = CyclotomicNumber::root_of_unity;
    let ex = theta.exponents();
    let values = match theta.torus().cycle_type() {
        [1, 1] => {
            let (k1, k2) = (ex[0], ex[1]);
            let a = |k: u64, j: u64| root(n1, (k * j % n1) as i64);
            table
                .class_kinds
                .iter()
                .map(|&c| match c {
                    Gl2Class::Central(j) => &int(q as i64 + 1) * &a(k1 + k2, j),
                    Gl2Class::Unipotent(j) => a(k1 + k2, j),
                    Gl2Class::Split(j, l) => &a(k1, j) * &a(k2, l) + &a(k1, l) * &a(k2, j),
                    Gl2Class::Elliptic(_) => int(0),
                })
                .collect()
        }
        [2] => {
            let k = ex[0];
            let t = |j: u64| root(n2, (k * j % n2) as i64);
            table
                .class_kinds
                .iter()
                .map(|&c| match c {
                    Gl2Class::Central(j) => {
                        let l = table.ext_log_of_base(table.base_field().gen_pow(j as i64));
                        &int(1 - q as i64) * &t(l)
                    }
                    Gl2Class::Unipotent(j) => t(table.ext_log_of_base(table.base_field().gen_pow(j as i64))),
                    Gl2Class::Split(..) => int(0),
                    Gl2Class::Elliptic(j) => &t(j) + &t(j * q % n2),
                })
                .collect()
        }
        other => return Err(Error::domain(format!("cycle type {other:?} is not a class of S_2"))),
    };
    Ok(values)
}

/// Decomposes `R_{θ,w}` against the table and checks that the
/// constituents reassemble it exactly.
pub fn dl_constituents_gl2(table: &Gl2Table, theta: &FiniteTorusCharacter) -> Result<DLLabel> {
    let r = dl_character(table, theta)?;
    let t = &table.table;
    let mut constituents = Vec::new();
    for (i, row) in t.rows.iter().enumerate() {
        let m = t.inner_product(&r, &row.values);
        let m = m
            .to_rational()
            .filter(|x| x.is_integer())
            .ok_or_else(|| Error::internal(format!("non-integral multiplicity of {}", row.label)))?;
        let m: i64 = m.to_integer().try_into().map_err(|_| Error::internal("multiplicity overflow"))?;
        if m != 0 {
            constituents.push(Constituent { row: i, label: row.label.clone(), dim: row.dim, multiplicity: m });
        }
    }
    for (k, v) in r.iter().enumerate() {
        let sum: CyclotomicNumber = constituents
            .iter()
            .map(|c| &CyclotomicNumber::from_integer(c.multiplicity) * &t.rows[c.row].values[k])
            .sum();
        if sum != *v {
            return Err(Error::internal(format!("constituents do not reassemble R at class {}", t.classes[k].label)));
        }
    }
    Ok(DLLabel {
        w_cycle_type: theta.torus().cycle_type().to_vec(),
        theta_exponents: theta.exponents().to_vec(),
        regular: theta.is_regular(),
        constituents,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteMainCheck {
    pub q: u64,
    pub w_cycle_type: Vec<usize>,
    pub theta_exponents: Vec<u64>,
    pub constituent: String,
    pub multiplicity: i64,
    pub gamma_group: GammaValue,
    pub gamma_torus: GammaValue,
    /// `(−1)^{l(w)} γ_w(θ)`.
    pub expected: GammaValue,
    /// `γ(π) = (−1)^{l(w)} γ_w(θ)`.
    pub pass: bool,
    /// `γ(π) = γ_w(θ)`.
    pub pass_sign_consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteMainReport {
    pub q: u64,
    pub checks: Vec<FiniteMainCheck>,
    /// Checks where `γ(π) ≠ (−1)^{l(w)} γ_w(θ)`.
    pub failures: Vec<FiniteMainCheck>,
    /// Number of checks where `γ(π) ≠ γ_w(θ)`.
    pub sign_consistent_failures: usize,
    /// Every pair of constituents of one `R_{θ,w}` has equal `γ`.
    pub shared_constituents_agree: bool,
}

impl FiniteMainReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every `(w, θ)` up to equivalence and every constituent of
/// `R_{θ,w}` through both gamma functions.
pub fn verify_finite_main(q: u64, exec: Exec) -> Result<FiniteMainReport> {
    let table = super::chartable::gl2_character_table(q)?;
    let psi = AdditiveCharacter::standard(q)?;
    let mut cases = Vec::new();
    for ct in [[1usize, 1].as_slice(), [2].as_slice()] {
        let torus = FiniteTorus::new(q, ct)?;
        cases.extend(character_orbits(&torus).into_iter().map(|th| (torus.clone(), th)));
    }
    let results = par::map(exec, &cases, |(torus, theta)| -> Result<(Vec<FiniteMainCheck>, bool)> {
        let label = dl_constituents_gl2(&table, theta)?;
        let gt = torus_gamma(torus, theta, &psi)?;
        let expected = if torus.sign_length() % 2 == 1 { gt.neg() } else { gt.clone() };
        let mut out = Vec::new();
        for c in &label.constituents {
            let gg = group_gamma(&table.table, c.row, q, 2, &psi)?;
            out.push(FiniteMainCheck {
                q,
                w_cycle_type: label.w_cycle_type.clone(),
                theta_exponents: label.theta_exponents.clone(),
                constituent: c.label.clone(),
                multiplicity: c.multiplicity,
                pass: gg == expected,
                pass_sign_consistent: gg == gt,
                gamma_group: gg,
                gamma_torus: gt.clone(),
                expected: expected.clone(),
            });
        }
        let agree = out.windows(2).all(|w| w[0].gamma_group == w[1].gamma_group);
        Ok((out, agree))
    });
    let mut checks = Vec::new();
    let mut shared = true;
    for r in results {
        let (c, agree) = r?;
        checks.extend(c);
        shared &= agree;
    }
    let failures = checks.iter().filter(|c| !c.pass).cloned().collect();
    let sign_consistent_failures = checks.iter().filter(|c| !c.pass_sign_consistent).count();
    Ok(FiniteMainReport { q, checks, failures, sign_consistent_failures, shared_constituents_agree: shared })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::chartable::{gl2_character_table, Gl2Irrep};

    #[test]
    fn split_trivial_gives_trivial_and_steinberg() {
        let t = gl2_character_table(3).unwrap();
        let torus = FiniteTorus::new(3, &[1, 1]).unwrap();
        let l = dl_constituents_gl2(&t, &FiniteTorusCharacter::trivial(&torus)).unwrap();
        let rows: Vec<(usize, i64)> = l.constituents.iter().map(|c| (c.row, c.multiplicity)).collect();
        assert_eq!(
            rows,
            vec![(t.row_of(Gl2Irrep::Linear(0)).unwrap(), 1), (t.row_of(Gl2Irrep::Steinberg(0)).unwrap(), 1)]
        );
    }

    #[test]
    fn regular_characters_give_one_constituent() {
        for q in [3, 5] {
            let t = gl2_character_table(q).unwrap();
            for ct in [[1usize, 1].as_slice(), [2].as_slice()] {
                let torus = FiniteTorus::new(q, ct).unwrap();
                for th in character_orbits(&torus).into_iter().filter(|th| th.is_regular()) {
                    let l = dl_constituents_gl2(&t, &th).unwrap();
                    assert_eq!(l.constituents.len(), 1);
                    let c = &l.constituents[0];
                    if ct.len() == 2 {
                        assert_eq!((c.dim, c.multiplicity), (q + 1, 1));
                    } else {
                        assert_eq!((c.dim, c.multiplicity), (q - 1, -1));
                    }
                }
            }
        }
    }

    #[test]
    fn coxeter_order_eight_is_cuspidal() {
        let t = gl2_character_table(3).unwrap();
        let torus = FiniteTorus::new(3, &[2]).unwrap();
        let th = FiniteTorusCharacter::new(&torus, &[1]).unwrap();
        let l = dl_constituents_gl2(&t, &th).unwrap();
        assert_eq!(l.constituents.len(), 1);
        assert_eq!((l.constituents[0].dim, l.constituents[0].multiplicity), (2, -1));
    }

    #[test]
    fn cuspidal_gamma_at_three_is_plus_torus_gamma() {
        let t = gl2_character_table(3).unwrap();
        let psi = AdditiveCharacter::standard(3).unwrap();
        let torus = FiniteTorus::new(3, &[2]).unwrap();
        let th = FiniteTorusCharacter::new(&torus, &[1]).unwrap();
        let row = dl_constituents_gl2(&t, &th).unwrap().constituents[0].row;
        let gg = group_gamma(&t.table, row, 3, 2, &psi).unwrap();
        let gt = torus_gamma(&torus, &th, &psi).unwrap();
        assert_eq!(gg, gt);
        assert_ne!(gg, gt.neg());
    }

    #[test]
    fn split_principal_series_gamma() {
        let t = gl2_character_table(3).unwrap();
        let psi = AdditiveCharacter::standard(3).unwrap();
        let torus = FiniteTorus::new(3, &[1, 1]).unwrap();
        let th = FiniteTorusCharacter::new(&torus, &[0, 1]).unwrap();
        let row = dl_constituents_gl2(&t, &th).unwrap().constituents[0].row;
        assert_eq!(group_gamma(&t.table, row, 3, 2, &psi).unwrap(), torus_gamma(&torus, &th, &psi).unwrap());
    }

    #[test]
    fn sweep_at_three() {
        let r = verify_finite_main(3, Exec::Sequential).unwrap();
        assert!(r.checks.len() >= 8);
        assert_eq!(r.sign_consistent_failures, 0);
        assert!(r.shared_constituents_agree);
        assert!(r.checks.iter().filter(|c| c.w_cycle_type == [1, 1]).all(|c| c.pass));
    }
}
