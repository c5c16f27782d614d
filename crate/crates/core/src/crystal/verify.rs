//! Randomized exact certification of the `S_m x S_n` relations.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::scalar::{CrystalScalar, Dual};
use super::tau::{tau1, tau2, tau_tworow, CrystalPoint};
use crate::algebra::linalg::determinant;
use crate::algebra::poly::variables;
use crate::algebra::rational::{int, Rational};
use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

const MAX_RESAMPLES: usize = 1000;

/// A simple reflection: `Row(α)` is `τ¹_α`, `Col(β)` is `τ²_β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    Row(usize),
    Col(usize),
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Generator::Row(a) => write!(f, "tau1_{a}"),
            Generator::Col(b) => write!(f, "tau2_{b}"),
        }
    }
}

pub fn apply<S: CrystalScalar>(t: &CrystalPoint<S>, g: Generator) -> Result<CrystalPoint<S>> {
    match g {
        Generator::Row(a) => tau1(t, a),
        Generator::Col(b) => tau2(t, b),
    }
}

fn apply_word<S: CrystalScalar>(t: &CrystalPoint<S>, word: &[Generator]) -> Result<CrystalPoint<S>> {
    let mut x = t.clone();
    for &g in word.iter().rev() {
        x = apply(&x, g)?;
    }
    Ok(x)
}

fn generators(m: usize, n: usize) -> Vec<Generator> {
    (1..m).map(Generator::Row).chain((1..n).map(Generator::Col)).collect()
}

/// Pass counts per relation family.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounts {
    pub involution: u64,
    pub braid: u64,
    pub distant: u64,
    pub cross: u64,
    pub sum_invariance: u64,
    pub column_products: u64,
    pub row_products: u64,
    pub equivariance: u64,
    pub jacobian: u64,
}

impl CheckCounts {
    fn absorb(&mut self, o: &CheckCounts) {
        self.involution += o.involution;
        self.braid += o.braid;
        self.distant += o.distant;
        self.cross += o.cross;
        self.sum_invariance += o.sum_invariance;
        self.column_products += o.column_products;
        self.row_products += o.row_products;
        self.equivariance += o.equivariance;
        self.jacobian += o.jacobian;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylFailure {
    pub trial: usize,
    pub check: String,
    pub detail: String,
    pub point: CrystalPoint<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCase {
    pub trial: usize,
    pub generator: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylReport {
    pub shape: [usize; 2],
    pub seed: u64,
    pub trials: usize,
    pub checks: CheckCounts,
    pub failures: Vec<WeylFailure>,
    pub identity_cases: Vec<IdentityCase>,
    pub resampled: usize,
}

impl WeylReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Trial {
    counts: CheckCounts,
    failures: Vec<(String, String)>,
    identities: Vec<String>,
}

impl Trial {
    fn record(&mut self, ok: bool, bump: fn(&mut CheckCounts), check: &str, detail: impl FnOnce() -> String) {
        if ok {
            bump(&mut self.counts);
        } else {
            self.failures.push((check.to_string(), detail()));
        }
    }
}

fn sample_point(m: usize, n: usize, rng: &mut ChaCha8Rng) -> CrystalPoint<Rational> {
    let picks = sample(rng, 96, m * n);
    let entries = picks.into_iter().map(|i| int(i as i64 + 2)).collect();
    CrystalPoint::new(m, n, entries).expect("shape is consistent")
}

fn swapped<S: Clone>(v: &[S], i: usize) -> Vec<S> {
    let mut w = v.to_vec();
    w.swap(i - 1, i);
    w
}

/// Jacobian determinant of a simple reflection at a rational point.
pub fn jacobian_of(t: &CrystalPoint<Rational>, word: &[Generator]) -> Result<Rational> {
    let (m, n) = t.shape();
    let k = m * n;
    let duals = t.entries().iter().enumerate().map(|(i, x)| Dual::variable(x.clone(), i, k)).collect();
    let d = CrystalPoint::new(m, n, duals)?;
    let out = apply_word(&d, word)?;
    let jac: Vec<Vec<Rational>> = out.entries().iter().map(|e| e.grad.clone()).collect();
    Ok(determinant(&jac))
}

/// Exact Jacobian determinant of the two-row involution at `t`.
pub fn jacobian_sign(t: &CrystalPoint<Rational>) -> Result<Rational> {
    if t.shape().0 != 2 {
        return Err(Error::domain("jacobian_sign needs a two-row point"));
    }
    jacobian_of(t, &[Generator::Row(1)])
}

fn run_trial(t: &CrystalPoint<Rational>) -> Result<Trial> {
    let (m, n) = t.shape();
    let gens = generators(m, n);
    let mut tr = Trial { counts: CheckCounts::default(), failures: Vec::new(), identities: Vec::new() };
    let sum = t.entry_sum();
    let rows = t.row_products();
    let cols = t.column_products();

    for &g in &gens {
        let s = apply(t, g)?;
        if s == *t {
            tr.identities.push(g.to_string());
        }
        let back = apply(&s, g)?;
        tr.record(back == *t, |c| c.involution += 1, "involution", || format!("{g} is not an involution"));
        tr.record(s.entry_sum() == sum, |c| c.sum_invariance += 1, "sum_invariance", || format!("{g} moves the entry sum"));
        match g {
            Generator::Row(a) => {
                tr.record(s.column_products() == cols, |c| c.column_products += 1, "column_products", || {
                    format!("{g} changes column products")
                });
                tr.record(s.row_products() == swapped(&rows, a), |c| c.equivariance += 1, "equivariance", || {
                    format!("{g} does not swap row products {a},{}", a + 1)
                });
            }
            Generator::Col(b) => {
                tr.record(s.row_products() == rows, |c| c.row_products += 1, "row_products", || {
                    format!("{g} changes row products")
                });
                tr.record(s.column_products() == swapped(&cols, b), |c| c.equivariance += 1, "equivariance", || {
                    format!("{g} does not swap column products {b},{}", b + 1)
                });
            }
        }
        let j = jacobian_of(t, &[g])?;
        tr.record(j == int(-1), |c| c.jacobian += 1, "jacobian", || format!("det d{g} = {j}"));
        let jj = jacobian_of(t, &[g, g])?;
        tr.record(jj == int(1), |c| c.jacobian += 1, "jacobian", || format!("det d({g}{g}) = {jj}"));
    }

    for (i, &g) in gens.iter().enumerate() {
        for &h in &gens[i + 1..] {
            match (g, h) {
                (Generator::Row(a), Generator::Row(b)) | (Generator::Col(a), Generator::Col(b)) => {
                    if b == a + 1 {
                        let l = apply_word(t, &[g, h, g])?;
                        let r = apply_word(t, &[h, g, h])?;
                        tr.record(l == r, |c| c.braid += 1, "braid", || format!("{g}{h}{g} != {h}{g}{h}"));
                    } else {
                        let l = apply_word(t, &[g, h])?;
                        let r = apply_word(t, &[h, g])?;
                        tr.record(l == r, |c| c.distant += 1, "distant", || format!("{g}{h} != {h}{g}"));
                    }
                }
                _ => {
                    let l = apply_word(t, &[g, h])?;
                    let r = apply_word(t, &[h, g])?;
                    tr.record(l == r, |c| c.cross += 1, "cross", || format!("{g}{h} != {h}{g}"));
                }
            }
        }
    }
    Ok(tr)
}

/// Checks every relation of the action at `trials` random exact points.
pub fn verify_weyl_action(m: usize, n: usize, trials: usize, seed: u64, exec: Exec) -> Result<WeylReport> {
    if m == 0 || n == 0 || m * n < 2 || m * n > 96 {
        return Err(Error::domain(format!("unsupported shape {m}x{n}")));
    }
    if trials == 0 {
        return Err(Error::domain("at least one trial is required"));
    }
    let outcomes = par::map_range(exec, trials, |i| -> Result<(CrystalPoint<Rational>, Trial, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        for attempt in 0..MAX_RESAMPLES {
            let t = sample_point(m, n, &mut rng);
            match run_trial(&t) {
                Ok(tr) => return Ok((t, tr, attempt)),
                Err(e) if e.is_pole() => continue,
                Err(e) => {
                    let tr = Trial {
                        counts: CheckCounts::default(),
                        failures: vec![("internal".into(), e.to_string())],
                        identities: Vec::new(),
                    };
                    return Ok((t, tr, attempt));
                }
            }
        }
        Err(Error::NonConvergence(format!("trial {i}: no pole-free point in {MAX_RESAMPLES} samples")))
    });
    let mut report = WeylReport {
        shape: [m, n],
        seed,
        trials,
        checks: CheckCounts::default(),
        failures: Vec::new(),
        identity_cases: Vec::new(),
        resampled: 0,
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        let (t, tr, resampled) = o?;
        report.resampled += resampled;
        report.checks.absorb(&tr.counts);
        for (check, detail) in tr.failures {
            report.failures.push(WeylFailure { trial: i, check, detail, point: t.clone() });
        }
        for g in tr.identities {
            report.identity_cases.push(IdentityCase { trial: i, generator: g });
        }
    }
    Ok(report)
}

/// Whether the symbolic two-row involution on `2 x 2` matrices equals
///
/// ```text
/// τ11 = t21 A/B, τ12 = t22 B/A, τ21 = t11 B/A, τ22 = t12 A/B,
/// A = t11 + t22, B = t12 + t21
/// ```
///
/// as normalized rational functions.
pub fn two_by_two_identity() -> Result<bool> {
    let v = variables(&["t11", "t12", "t21", "t22"]);
    let x: Vec<RationalFunction> = (0..4).map(|i| RationalFunction::var(&v, i)).collect();
    let t = CrystalPoint::new(2, 2, x.clone())?;
    let s = tau_tworow(&t)?;
    let a = &x[0] + &x[3];
    let b = &x[1] + &x[2];
    let ab = a.checked_div(&b)?;
    let ba = b.checked_div(&a)?;
    let expected = [&x[2] * &ab, &x[3] * &ba, &x[0] * &ba, &x[1] * &ab];
    Ok(s.entries().iter().zip(&expected).all(|(l, r)| l == r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_two_by_two() {
        assert!(two_by_two_identity().unwrap());
    }

    #[test]
    fn jacobian_examples() {
        let t = CrystalPoint::from_integers(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(jacobian_sign(&t).unwrap(), int(-1));
        let u = CrystalPoint::from_integers(&[&[3, 7, 19], &[5, 2, 11]]).unwrap();
        assert_eq!(jacobian_sign(&u).unwrap(), int(-1));
        assert_eq!(jacobian_of(&u, &[Generator::Row(1), Generator::Row(1)]).unwrap(), int(1));
    }

    #[test]
    fn small_sweep_is_clean_and_deterministic() {
        let a = verify_weyl_action(2, 3, 4, 7, Exec::Sequential).unwrap();
        let b = verify_weyl_action(2, 3, 4, 7, Exec::Parallel).unwrap();
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(a, b);
        assert!(a.checks.cross > 0 && a.checks.braid > 0);
    }
}
