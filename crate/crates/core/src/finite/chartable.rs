//! Character tables, the classical table of `GL(2, F_q)` and the group
//! gamma function `γ(π)`.

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::gamma::GammaValue;
use super::torus::AdditiveCharacter;
use crate::algebra::cyclotomic::Accumulator;
use crate::algebra::finite_field::{embedding, prime_power, shared_field};
use crate::algebra::rational::Rational;
use crate::algebra::{CyclotomicNumber, GaloisField};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyClass {
    pub label: String,
    pub size: u64,
    /// Trace of a representative, as an element of `F_q`.
    pub trace: Option<u32>,
    /// A conjugation invariant that separates classes, used to match
    /// classes between tables of the same group.
    pub key: Option<String>,
    /// Row-major entries of a representative matrix, when there is one.
    pub representative: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterRow {
    pub label: String,
    pub dim: u64,
    pub values: Vec<CyclotomicNumber>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub group: String,
    pub order: u64,
    pub classes: Vec<ConjugacyClass>,
    pub rows: Vec<CharacterRow>,
}

/// Least common conductor of a list of cyclotomic numbers.
fn common_conductor<'a>(xs: impl Iterator<Item = &'a CyclotomicNumber>) -> u64 {
    xs.fold(1u64, |l, x| l.lcm(&x.conductor()))
}

impl CharacterTable {
    pub fn conductor(&self) -> u64 {
        common_conductor(self.rows.iter().flat_map(|r| r.values.iter()))
    }

    /// `Σ_C |C| a(C) conj(b(C))`.
    pub fn inner_product_raw(&self, a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> CyclotomicNumber {
        let n = common_conductor(a.iter().chain(b.iter()));
        let mut acc = Accumulator::new(n);
        for (k, c) in self.classes.iter().enumerate() {
            let prod = &a[k] * &b[k].conj();
            acc.add_scaled(c.size as i64, 0, &prod);
        }
        acc.finish()
    }

    /// `⟨a, b⟩ = (1/|G|) Σ_C |C| a(C) conj(b(C))`.
    pub fn inner_product(&self, a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> CyclotomicNumber {
        self.inner_product_raw(a, b).scale(&Rational::new(1.into(), self.order.into()))
    }

    /// Checks `Σ dim² = |G|`, row orthogonality and column orthogonality
    /// exactly. Returns a description of the first violation.
    pub fn check_orthogonality(&self) -> Result<()> {
        let dims: u64 = self.rows.iter().map(|r| r.dim * r.dim).sum();
        if dims != self.order {
            return Err(Error::internal(format!("Σ dim² = {dims}, |G| = {}", self.order)));
        }
        if self.rows.len() != self.classes.len() {
            return Err(Error::internal("table is not square"));
        }
        let conj: Vec<Vec<CyclotomicNumber>> =
            self.rows.iter().map(|r| r.values.iter().map(CyclotomicNumber::conj).collect()).collect();
        let n = self.conductor();
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in conj.iter().enumerate() {
                let mut acc = Accumulator::new(n);
                for (k, c) in self.classes.iter().enumerate() {
                    acc.add_scaled(c.size as i64, 0, &(&a.values[k] * &b[k]));
                }
                let expect = if i == j { self.order as i64 } else { 0 };
                if acc.finish() != CyclotomicNumber::from_integer(expect) {
                    return Err(Error::internal(format!("rows {} and {} are not orthogonal", a.label, self.rows[j].label)));
                }
            }
        }
        for k in 0..self.classes.len() {
            for l in 0..self.classes.len() {
                let mut acc = Accumulator::new(n);
                for (r, c) in self.rows.iter().zip(&conj) {
                    acc.add_scaled(1, 0, &(&r.values[k] * &c[l]));
                }
                let expect = if k == l { (self.order / self.classes[k].size) as i64 } else { 0 };
                if acc.finish() != CyclotomicNumber::from_integer(expect) {
                    return Err(Error::internal(format!(
                        "columns {} and {} are not orthogonal",
                        self.classes[k].label, self.classes[l].label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Matches `self` against `other` up to permutations of rows and
    /// columns, pairing classes by their keys. Returns the row permutation
    /// (`self` row `i` equals `other` row `perm[i]`) when the tables agree.
    pub fn equivalent_to(&self, other: &CharacterTable) -> Option<Vec<usize>> {
        if self.order != other.order || self.classes.len() != other.classes.len() || self.rows.len() != other.rows.len() {
            return None;
        }
        let index: HashMap<&str, usize> = other
            .classes
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.key.as_deref().map(|k| (k, i)))
            .collect();
        let mut col = Vec::with_capacity(self.classes.len());
        for c in &self.classes {
            let j = *index.get(c.key.as_deref()?)?;
            if other.classes[j].size != c.size {
                return None;
            }
            col.push(j);
        }
        let mut used = vec![false; other.rows.len()];
        let mut perm = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let j = (0..other.rows.len()).find(|&j| {
                !used[j]
                    && other.rows[j].dim == r.dim
                    && col.iter().enumerate().all(|(k, &l)| r.values[k] == other.rows[j].values[l])
            })?;
            used[j] = true;
            perm.push(j);
        }
        Some(perm)
    }
}

/// The character table of `GL(1, F_q) = F_q^*`.
pub fn gl1_character_table(q: u64) -> Result<CharacterTable> {
    let (p, e) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
    let f = shared_field(p, e)?;
    let n = q - 1;
    let classes = (0..n)
        .map(|j| {
            let a = f.gen_pow(j as i64);
            ConjugacyClass {
                label: format!("g^{j}"),
                size: 1,
                trace: Some(a),
                key: Some(format!("tr={a}")),
                representative: Some(vec![a]),
            }
        })
        .collect();
    let rows = (0..n)
        .map(|k| CharacterRow {
            label: format!("theta[{k}]"),
            dim: 1,
            values: (0..n).map(|j| CyclotomicNumber::root_of_unity(n, (k * j % n) as i64)).collect(),
        })
        .collect();
    Ok(CharacterTable { group: format!("GL(1,{q})"), order: n, classes, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gl2Class {
    /// `aI`, by `log a`.
    Central(u64),
    /// `a` times a nontrivial unipotent.
    Unipotent(u64),
    /// `diag(a, b)`, `log a < log b`.
    Split(u64, u64),
    /// Multiplication by `ζ ∈ F_{q^2} \ F_q`, by the least `log ζ` in
    /// its Frobenius orbit.
    Elliptic(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Gl2Irrep {
    /// `α ∘ det`.
    Linear(u64),
    /// `St ⊗ (α ∘ det)`.
    Steinberg(u64),
    /// Principal series `Ind(α ⊗ β)`, `α ≠ β`.
    Principal(u64, u64),
    /// Cuspidal `π(ϕ)`, `ϕ ≠ ϕ^q`, by the least exponent in its orbit.
    Cuspidal(u64),
}

/// The character table of `GL(2, F_q)` together with labels for its
/// classes and irreducibles. Characters of `F_q^*` are indexed by `k` with
/// `α_k(g^j) = ζ_{q−1}^{kj}`, characters of `F_{q^2}^*` likewise with the
/// generator of `F_{q^2}`.
#[derive(Clone, Debug)]
pub struct Gl2Table {
    pub q: u64,
    pub table: CharacterTable,
    pub class_kinds: Vec<Gl2Class>,
    pub irreps: Vec<Gl2Irrep>,
    base: Arc<GaloisField>,
    ext: Arc<GaloisField>,
    base_in_ext: Vec<u32>,
}

impl Gl2Table {
    pub fn base_field(&self) -> &GaloisField {
        &self.base
    }

    pub fn ext_field(&self) -> &GaloisField {
        &self.ext
    }

    /// `log_G ι(a)` for `a ∈ F_q^*`, `G` the generator of `F_{q^2}`.
    pub fn ext_log_of_base(&self, a: u32) -> u64 {
        self.ext.log(self.base_in_ext[a as usize]).expect("nonzero") as u64
    }

    pub fn row_of(&self, irrep: Gl2Irrep) -> Option<usize> {
        self.irreps.iter().position(|&r| r == irrep)
    }
}

/// Builds the table from the four families of irreducibles.
pub fn gl2_character_table(q: u64) -> Result<Gl2Table> {
    let (p, e) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
    if p == 2 || q > 9 {
        return Err(Error::domain(format!("GL(2, F_{q}) tables are built for odd q <= 9")));
    }
    let f = shared_field(p, e)?;
    let ext = shared_field(p, 2 * e)?;
    let base_in_ext = embedding(&f, &ext)?;
    let back: HashMap<u32, u32> = base_in_ext.iter().enumerate().map(|(a, &b)| (b, a as u32)).collect();
    let n1 = q - 1;
    let n2 = q * q - 1;
    let qq = q as i64;

    let g = |j: u64| f.gen_pow(j as i64);
    let mut kinds = Vec::new();
    let mut classes = Vec::new();
    let key = |tr: u32, det: u32, scalar: bool| Some(format!("tr={tr} det={det} {}", if scalar { "scalar" } else { "nonscalar" }));
    for j in 0..n1 {
        let a = g(j);
        let (tr, det) = (f.add(a, a), f.mul(a, a));
        kinds.push(Gl2Class::Central(j));
        classes.push(ConjugacyClass {
            label: format!("central[{j}]"),
            size: 1,
            trace: Some(tr),
            key: key(tr, det, true),
            representative: Some(vec![a, 0, 0, a]),
        });
    }
    for j in 0..n1 {
        let a = g(j);
        let (tr, det) = (f.add(a, a), f.mul(a, a));
        kinds.push(Gl2Class::Unipotent(j));
        classes.push(ConjugacyClass {
            label: format!("unipotent[{j}]"),
            size: n2,
            trace: Some(tr),
            key: key(tr, det, false),
            representative: Some(vec![a, 1, 0, a]),
        });
    }
    for j in 0..n1 {
        for k in j + 1..n1 {
            let (a, b) = (g(j), g(k));
            let (tr, det) = (f.add(a, b), f.mul(a, b));
            kinds.push(Gl2Class::Split(j, k));
            classes.push(ConjugacyClass {
                label: format!("split[{j},{k}]"),
                size: q * (q + 1),
                trace: Some(tr),
                key: key(tr, det, false),
                representative: Some(vec![a, 0, 0, b]),
            });
        }
    }
    let frob_min = |j: u64| j.min(j * q % n2);
    for j in 0..n2 {
        if j % (q + 1) == 0 || frob_min(j) != j {
            continue;
        }
        let z = ext.gen_pow(j as i64);
        let zq = ext.gen_pow((j * q % n2) as i64);
        let tr = back[&ext.add(z, zq)];
        let det = back[&ext.mul(z, zq)];
        kinds.push(Gl2Class::Elliptic(j));
        classes.push(ConjugacyClass {
            label: format!("elliptic[{j}]"),
            size: q * (q - 1),
            trace: Some(tr),
            key: key(tr, det, false),
            representative: Some(vec![0, f.neg(det), 1, tr]),
        });
    }

    // Logs of determinants in F_q^* and of elliptic elements in F_{q^2}^*.
    let alpha = |k: u64, j: u64| CyclotomicNumber::root_of_unity(n1, (k * j % n1) as i64);
    let phi = |k: u64, j: u64| CyclotomicNumber::root_of_unity(n2, (k * j % n2) as i64);
    let norm_log = |j: u64| f.log(back[&ext.gen_pow((j * (q + 1) % n2) as i64)]).expect("nonzero") as u64;
    let int = CyclotomicNumber::from_integer;

    let mut irreps = Vec::new();
    let mut rows = Vec::new();
    let row = |label: String, dim: u64, value: &dyn Fn(Gl2Class) -> CyclotomicNumber| CharacterRow {
        label,
        dim,
        values: kinds.iter().map(|&c| value(c)).collect(),
    };
    for k in 0..n1 {
        irreps.push(Gl2Irrep::Linear(k));
        rows.push(row(format!("U[{k}]"), 1, &|c| match c {
            Gl2Class::Central(j) | Gl2Class::Unipotent(j) => alpha(k, 2 * j),
            Gl2Class::Split(j, l) => alpha(k, j + l),
            Gl2Class::Elliptic(j) => alpha(k, norm_log(j)),
        }));
    }
    for k in 0..n1 {
        irreps.push(Gl2Irrep::Steinberg(k));
        rows.push(row(format!("V[{k}]"), q, &|c| match c {
            Gl2Class::Central(j) => &int(qq) * &alpha(k, 2 * j),
            Gl2Class::Unipotent(_) => int(0),
            Gl2Class::Split(j, l) => alpha(k, j + l),
            Gl2Class::Elliptic(j) => -alpha(k, norm_log(j)),
        }));
    }
    for k in 0..n1 {
        for l in k + 1..n1 {
            irreps.push(Gl2Irrep::Principal(k, l));
            rows.push(row(format!("W[{k},{l}]"), q + 1, &|c| match c {
                Gl2Class::Central(j) => &int(qq + 1) * &alpha(k + l, j),
                Gl2Class::Unipotent(j) => alpha(k + l, j),
                Gl2Class::Split(a, b) => &alpha(k, a) * &alpha(l, b) + &alpha(k, b) * &alpha(l, a),
                Gl2Class::Elliptic(_) => int(0),
            }));
        }
    }
    let ext_base_log = |j: u64| ext.log(base_in_ext[g(j) as usize]).expect("nonzero") as u64;
    for k in 0..n2 {
        if k % (q + 1) == 0 || frob_min(k) != k {
            continue;
        }
        irreps.push(Gl2Irrep::Cuspidal(k));
        rows.push(row(format!("X[{k}]"), q - 1, &|c| match c {
            Gl2Class::Central(j) => &int(qq - 1) * &phi(k, ext_base_log(j)),
            Gl2Class::Unipotent(j) => -phi(k, ext_base_log(j)),
            Gl2Class::Split(..) => int(0),
            Gl2Class::Elliptic(j) => -(&phi(k, j) + &phi(k, j * q % n2)),
        }));
    }
    let table = CharacterTable { group: format!("GL(2,{q})"), order: q * (q - 1) * (q * q - 1), classes, rows };
    Ok(Gl2Table { q, table, class_kinds: kinds, irreps, base: f, ext, base_in_ext })
}

/// `γ(π) = (−1)^n q^{−n²/2} (1/dim) Σ_C |C| ψ(tr C) χ(C)` for the row
/// `row` of a table of `GL(n, F_q)`.
pub fn group_gamma(table: &CharacterTable, row: usize, q: u64, n: u32, psi: &AdditiveCharacter) -> Result<GammaValue> {
    let r = table.rows.get(row).ok_or_else(|| Error::domain(format!("no row {row}")))?;
    if r.dim == 0 {
        return Err(Error::domain("dimension 0"));
    }
    if psi.q != q {
        return Err(Error::domain(format!("additive character over F_{} used on F_{q}", psi.q)));
    }
    let (p, e) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
    let f = shared_field(p, e)?;
    let p = p as u64;
    let cond = p * common_conductor(r.values.iter());
    let mut acc = Accumulator::new(cond);
    for (c, v) in table.classes.iter().zip(&r.values) {
        let tr = c.trace.ok_or_else(|| Error::domain(format!("class {} carries no trace", c.label)))?;
        let a = psi.exponent(&f, tr) as u64;
        acc.add_scaled(c.size as i64, a * (cond / p), v);
    }
    let sign = if n % 2 == 1 { -1 } else { 1 };
    let cyc = acc.finish().scale(&Rational::new(sign.into(), r.dim.into()));
    Ok(GammaValue::new(cyc, -((n * n) as i32), q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_family_counts() {
        for (q, count, order) in [(3, 8, 48), (5, 24, 480)] {
            let t = gl2_character_table(q).unwrap();
            assert_eq!(t.table.rows.len(), count);
            assert_eq!(t.table.order, order);
            let s: u64 = t.table.rows.iter().map(|r| r.dim * r.dim).sum();
            assert_eq!(s, order);
            let sizes: u64 = t.table.classes.iter().map(|c| c.size).sum();
            assert_eq!(sizes, order);
        }
        assert!(gl2_character_table(4).is_err());
        assert!(gl2_character_table(11).is_err());
    }

    #[test]
    fn gl2_orthogonality() {
        for q in [3, 5, 7] {
            gl2_character_table(q).unwrap().table.check_orthogonality().unwrap();
        }
    }

    #[test]
    fn gl1_group_gamma_is_torus_gamma() {
        use crate::finite::torus::{torus_gamma, FiniteTorus, FiniteTorusCharacter};
        for q in [3, 5, 9] {
            let t = gl1_character_table(q).unwrap();
            t.check_orthogonality().unwrap();
            let torus = FiniteTorus::new(q, &[1]).unwrap();
            let psi = AdditiveCharacter::standard(q).unwrap();
            for k in 0..q - 1 {
                let th = FiniteTorusCharacter::new(&torus, &[k as i64]).unwrap();
                assert_eq!(group_gamma(&t, k as usize, q, 1, &psi).unwrap(), torus_gamma(&torus, &th, &psi).unwrap());
            }
        }
    }
}
