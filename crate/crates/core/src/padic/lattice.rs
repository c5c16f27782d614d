//! Functions on the cocharacter lattice `Λ = Z^r` and the vector partition
//! function `C_ρ`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::weights::WeightList;

fn count(weights: &[Vec<i64>], g: &[i64], i: usize, rem: Vec<i64>, memo: &mut HashMap<(usize, Vec<i64>), u64>) -> u64 {
    if i == weights.len() {
        return u64::from(rem.iter().all(|&x| x == 0));
    }
    if let Some(&c) = memo.get(&(i, rem.clone())) {
        return c;
    }
    let h = WeightList::pair(&rem, g);
    let step = WeightList::pair(&weights[i], g);
    let mut total = 0u64;
    let mut cur = rem.clone();
    let mut a = 0;
    while a * step <= h {
        total += count(weights, g, i + 1, cur.clone(), memo);
        for (c, l) in cur.iter_mut().zip(&weights[i]) {
            *c -= l;
        }
        a += 1;
    }
    memo.insert((i, rem), total);
    total
}

/// `C_ρ(μ) = #{a ∈ Z_{≥0}^n : Σ a_i λ_i = μ}`. Zero when `⟨μ, σ⟩` is
/// negative or not an integer.
pub fn partition_c_rho(rho: &WeightList, mu: &[i64]) -> Result<u64> {
    if mu.len() != rho.rank() {
        return Err(Error::domain(format!("point of length {} on a rank-{} lattice", mu.len(), rho.rank())));
    }
    if let Some(_s) = rho.sigma() {
        let h = rho.pair_sigma(mu)?;
        if h.is_negative() || !h.is_integer() {
            return Ok(0);
        }
    }
    let g = rho.grading()?;
    if WeightList::pair(mu, &g) < 0 {
        return Ok(0);
    }
    Ok(count(rho.weights(), &g, 0, mu.to_vec(), &mut HashMap::new()))
}

/// A `T_0`-invariant function on the torus, viewed on `Λ`. In plain mode
/// it is `Σ c_j δ_{μ_j}`; with a tail it is `(Σ c_j δ_{μ_j}) * C_ρ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeFunction {
    pub rank: usize,
    #[serde(serialize_with = "serialize_points")]
    pub points: BTreeMap<Vec<i64>, Rational>,
    #[serde(skip)]
    pub tail: Option<WeightList>,
}

fn serialize_points<S: serde::Serializer>(p: &BTreeMap<Vec<i64>, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(p.len()))?;
    for (k, v) in p {
        seq.serialize_element(&(k, crate::algebra::rational::format_rational(v)))?;
    }
    seq.end()
}

impl LatticeFunction {
    pub fn plain(rank: usize, points: impl IntoIterator<Item = (Vec<i64>, Rational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in points {
            if k.len() != rank {
                return Err(Error::domain(format!("point {k:?} not of rank {rank}")));
            }
            *map.entry(k).or_insert_with(Rational::zero) += v;
        }
        map.retain(|_, v| !v.is_zero());
        Ok(LatticeFunction { rank, points: map, tail: None })
    }

    pub fn delta(mu: &[i64]) -> Self {
        Self::plain(mu.len(), [(mu.to_vec(), Rational::from_integer(1.into()))]).expect("rank matches")
    }

    /// `(Σ c_j δ_{μ_j}) * C_ρ`.
    pub fn with_tail(rho: &WeightList, points: impl IntoIterator<Item = (Vec<i64>, Rational)>) -> Result<Self> {
        let mut f = Self::plain(rho.rank(), points)?;
        f.tail = Some(rho.clone());
        Ok(f)
    }

    /// `C_ρ` itself.
    pub fn c_rho(rho: &WeightList) -> Self {
        Self::with_tail(rho, [(vec![0; rho.rank()], Rational::from_integer(1.into()))]).expect("rank matches")
    }

    pub fn is_plain(&self) -> bool {
        self.tail.is_none()
    }

    pub fn value_at(&self, mu: &[i64]) -> Result<Rational> {
        match &self.tail {
            None => Ok(self.points.get(mu).cloned().unwrap_or_else(Rational::zero)),
            Some(rho) => {
                let mut acc = Rational::zero();
                for (m, c) in &self.points {
                    let d: Vec<i64> = mu.iter().zip(m).map(|(a, b)| a - b).collect();
                    let k = partition_c_rho(rho, &d)?;
                    if k > 0 {
                        acc += c * Rational::from_integer(k.into());
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Sum of two functions in the same mode.
    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.rank != o.rank || self.tail != o.tail {
            return Err(Error::domain("sum of lattice functions in different modes"));
        }
        let mut f = Self::plain(self.rank, self.points.iter().chain(&o.points).map(|(k, v)| (k.clone(), v.clone())))?;
        f.tail = self.tail.clone();
        Ok(f)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut f = self.clone();
        f.points.values_mut().for_each(|v| *v *= c);
        f.points.retain(|_, v| !v.is_zero());
        f
    }
}
