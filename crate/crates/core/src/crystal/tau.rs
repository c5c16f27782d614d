//! `Δ_k`, `η`, the two-row involution and the row/column operators.
//!
//! Indices in the public API are 1-based, as in the usual matrix notation
//! `t_{ij}`; storage is row-major.

use serde::Serialize;

use super::scalar::CrystalScalar;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub struct CrystalPoint<S> {
    m: usize,
    n: usize,
    entries: Vec<S>,
}

impl<S: CrystalScalar> CrystalPoint<S> {
    pub fn new(m: usize, n: usize, entries: Vec<S>) -> Result<Self> {
        if m == 0 || n == 0 || entries.len() != m * n {
            return Err(Error::domain(format!("{} entries do not fill a {m}x{n} matrix", entries.len())));
        }
        Ok(CrystalPoint { m, n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("ragged rows"));
        }
        Self::new(m, n, rows.into_iter().flatten().collect())
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    /// Entry `t_{ij}`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    pub fn transpose(&self) -> Self {
        let mut e = Vec::with_capacity(self.entries.len());
        for j in 1..=self.n {
            for i in 1..=self.m {
                e.push(self.get(i, j).clone());
            }
        }
        CrystalPoint { m: self.n, n: self.m, entries: e }
    }

    pub fn row_products(&self) -> Vec<S> {
        (1..=self.m).map(|i| product(self.row(i))).collect()
    }

    pub fn column_products(&self) -> Vec<S> {
        self.transpose().row_products()
    }

    pub fn entry_sum(&self) -> S {
        let mut acc = self.entries[0].zero_like();
        for x in &self.entries {
            acc = acc.add(x);
        }
        acc
    }
}

impl CrystalPoint<Rational> {
    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }
}

impl Serialize for CrystalPoint<Rational> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let rows: Vec<Vec<String>> = (1..=self.m)
            .map(|i| self.row(i).iter().map(crate::algebra::rational::format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

fn product<S: CrystalScalar>(xs: &[S]) -> S {
    let mut acc = xs[0].one_like();
    for x in xs {
        acc = acc.mul(x);
    }
    acc
}

/// `Δ_k = Σ_{j=0}^{k-1} (t_{11}…t_{1j})(t_{2,j+2}…t_{2k})`.
pub fn delta_k<S: CrystalScalar>(row1: &[S], row2: &[S], k: usize) -> Result<S> {
    if k == 0 || k > row1.len() || row1.len() != row2.len() {
        return Err(Error::domain(format!("Δ_k needs 1 <= k <= {}, got {k}", row1.len())));
    }
    let mut acc = row1[0].zero_like();
    for j in 0..k {
        let head = if j == 0 { row1[0].one_like() } else { product(&row1[..j]) };
        let tail = if j + 1 >= k { row1[0].one_like() } else { product(&row2[j + 1..k]) };
        acc = acc.add(&head.mul(&tail));
    }
    Ok(acc)
}

/// `η = (t_{11}…t_{1n} − t_{21}…t_{2n}) / Δ_n`.
pub fn eta<S: CrystalScalar>(row1: &[S], row2: &[S]) -> Result<S> {
    let n = row1.len();
    let d = delta_k(row1, row2, n)?;
    product(row1).sub(&product(row2)).div(&d).map_err(|_| Error::pole("Δ_n vanishes"))
}

/// The two-row involution applied to a pair of rows.
pub fn tau_rows<S: CrystalScalar>(row1: &[S], row2: &[S]) -> Result<(Vec<S>, Vec<S>)> {
    let n = row1.len();
    let e = eta(row1, row2)?;
    let one = row1[0].one_like();
    let mut prev = one.clone();
    let mut pi2 = one;
    let mut new1 = Vec::with_capacity(n);
    let mut new2 = Vec::with_capacity(n);
    for k in 1..=n {
        pi2 = pi2.mul(&row2[k - 1]);
        let cur = pi2.add(&delta_k(row1, row2, k)?.mul(&e));
        let t2 = cur.div(&prev).map_err(|_| Error::pole(format!("partial product P_{} vanishes", k - 1)))?;
        let t1 = row1[k - 1]
            .mul(&row2[k - 1])
            .div(&t2)
            .map_err(|_| Error::pole(format!("new entry in column {k} vanishes")))?;
        new1.push(t1);
        new2.push(t2);
        prev = cur;
    }
    check_postconditions(row1, row2, &new1, &new2)?;
    Ok((new1, new2))
}

fn check_postconditions<S: CrystalScalar>(r1: &[S], r2: &[S], n1: &[S], n2: &[S]) -> Result<()> {
    for k in 0..r1.len() {
        if r1[k].mul(&r2[k]) != n1[k].mul(&n2[k]) {
            return Err(Error::internal(format!("column {} product not preserved", k + 1)));
        }
    }
    if product(n1) != product(r2) || product(n2) != product(r1) {
        return Err(Error::internal("row products not swapped"));
    }
    let sum = |a: &[S], b: &[S]| {
        let mut acc = a[0].zero_like();
        for x in a.iter().chain(b) {
            acc = acc.add(x);
        }
        acc
    };
    if sum(r1, r2) != sum(n1, n2) {
        return Err(Error::internal("entry sum not preserved"));
    }
    Ok(())
}

pub fn tau_tworow<S: CrystalScalar>(t: &CrystalPoint<S>) -> Result<CrystalPoint<S>> {
    if t.m != 2 {
        return Err(Error::domain(format!("two-row involution needs 2 rows, got {}", t.m)));
    }
    tau1(t, 1)
}

/// Applies the two-row involution to rows `α, α+1`.
pub fn tau1<S: CrystalScalar>(t: &CrystalPoint<S>, alpha: usize) -> Result<CrystalPoint<S>> {
    if alpha == 0 || alpha >= t.m {
        return Err(Error::domain(format!("row index {alpha} outside 1..{}", t.m)));
    }
    let (a, b) = tau_rows(t.row(alpha), t.row(alpha + 1))?;
    let mut out = t.clone();
    let n = t.n;
    out.entries[(alpha - 1) * n..alpha * n].clone_from_slice(&a);
    out.entries[alpha * n..(alpha + 1) * n].clone_from_slice(&b);
    Ok(out)
}

/// `τ²_β = transpose ∘ τ¹_β ∘ transpose`.
pub fn tau2<S: CrystalScalar>(t: &CrystalPoint<S>, beta: usize) -> Result<CrystalPoint<S>> {
    Ok(tau1(&t.transpose(), beta)?.transpose())
}
