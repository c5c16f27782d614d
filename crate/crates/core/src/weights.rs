//! Weight lists: a representation of a dual torus given by its weights.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::algebra::linalg;
use crate::algebra::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// `n` integer weights `λ_i ∈ Z^r` and, when it exists, a rational `σ`
/// with `⟨λ_i, σ⟩ = 1` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightList {
    rank: usize,
    weights: Vec<Vec<i64>>,
    sigma: Option<Vec<Rational>>,
}

impl WeightList {
    /// Any list of weights; `sigma` is filled in when solvable.
    pub fn new(rank: usize, weights: Vec<Vec<i64>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::domain("rank must be positive"));
        }
        if weights.is_empty() {
            return Err(Error::domain("at least one weight is required"));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| w.len() != rank) {
            return Err(Error::domain(format!("weight {} has length {}, expected {rank}", i + 1, w.len())));
        }
        let sigma = solve_sigma(rank, &weights).ok();
        Ok(WeightList { rank, weights, sigma })
    }

    /// Weights that admit `σ`; otherwise names the first weight that makes
    /// `⟨λ_i, σ⟩ = 1` inconsistent.
    pub fn admissible(rank: usize, weights: Vec<Vec<i64>>) -> Result<Self> {
        let w = Self::new(rank, weights)?;
        solve_sigma(rank, &w.weights)?;
        Ok(w)
    }

    /// Parses `"1,0;0,1;1,1"`: weights separated by `;`, coordinates by `,`.
    pub fn parse(s: &str) -> Result<Self> {
        let weights: Vec<Vec<i64>> = s
            .split(';')
            .map(|w| {
                w.split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|_| Error::domain(format!("bad weight entry {x:?}"))))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let rank = weights.first().map_or(0, |w| w.len());
        Self::new(rank, weights)
    }

    /// The standard representation of `GL(r)`: the unit vectors.
    pub fn standard(rank: usize) -> Self {
        let weights = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(rank, weights).expect("unit vectors are admissible")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn sigma(&self) -> Option<&[Rational]> {
        self.sigma.as_deref()
    }

    pub fn require_sigma(&self) -> Result<&[Rational]> {
        match &self.sigma {
            Some(s) => Ok(s),
            None => Err(solve_sigma(self.rank, &self.weights).expect_err("sigma absent")),
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.sigma.is_some()
    }

    /// The weights span a finite-index sublattice of `Z^r`.
    pub fn is_faithful(&self) -> bool {
        let m: linalg::Matrix = self
            .weights
            .iter()
            .map(|w| w.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        linalg::rank(&m) == self.rank
    }

    /// `⟨μ, σ⟩`.
    pub fn pair_sigma(&self, mu: &[i64]) -> Result<Rational> {
        let s = self.require_sigma()?;
        Ok(mu.iter().zip(s).map(|(&m, x)| x * Rational::from_integer(m.into())).sum())
    }

    /// An integer vector `g` with `⟨λ_i, g⟩ >= 1` for every weight, i.e. a
    /// witness that the weights lie in an open half-space. Prefers `σ`
    /// scaled to be integral; otherwise the least such `g` by sup-norm then
    /// lexicographic order. Names the first weight that breaks the search.
    pub fn grading(&self) -> Result<Vec<i64>> {
        if let Some(s) = &self.sigma {
            let den = s.iter().fold(num_bigint::BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
            let g: Option<Vec<i64>> = s
                .iter()
                .map(|x| num_traits::ToPrimitive::to_i64(&(x.numer() * (&den / x.denom()))))
                .collect();
            if let Some(g) = g {
                return Ok(g);
            }
        }
        match find_grading(self.rank, &self.weights) {
            Some(g) => Ok(g),
            None => {
                let bad = (1..=self.weights.len())
                    .find(|&i| find_grading(self.rank, &self.weights[..i]).is_none())
                    .unwrap_or(self.weights.len());
                Err(Error::domain(format!(
                    "weights do not lie in an open half-space once λ_{bad} = {:?} is included",
                    self.weights[bad - 1]
                )))
            }
        }
    }

    /// `⟨μ, g⟩` for the grading of [`WeightList::grading`].
    pub fn pair(v: &[i64], g: &[i64]) -> i64 {
        v.iter().zip(g).map(|(a, b)| a * b).sum()
    }

    pub fn direct_sum(&self, other: &WeightList) -> Result<WeightList> {
        if self.rank != other.rank {
            return Err(Error::domain("direct sum of weight lists of different rank"));
        }
        let mut w = self.weights.clone();
        w.extend(other.weights.iter().cloned());
        WeightList::new(self.rank, w)
    }
}

const GRADING_BOX: i64 = 6;

fn find_grading(rank: usize, weights: &[Vec<i64>]) -> Option<Vec<i64>> {
    for bound in 1..=GRADING_BOX {
        let side = (2 * bound + 1) as usize;
        let total = side.pow(rank as u32);
        let mut best: Option<Vec<i64>> = None;
        for code in 0..total {
            let mut c = code;
            let g: Vec<i64> = (0..rank)
                .map(|_| {
                    let d = (c % side) as i64 - bound;
                    c /= side;
                    d
                })
                .collect();
            if g.iter().map(|x| x.abs()).max() != Some(bound) {
                continue;
            }
            if weights.iter().all(|w| WeightList::pair(w, &g) >= 1) && best.as_ref().is_none_or(|b| g < *b) {
                best = Some(g);
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

fn solve_sigma(rank: usize, weights: &[Vec<i64>]) -> Result<Vec<Rational>> {
    let row = |w: &Vec<i64>| w.iter().map(|&x| Rational::from_integer(x.into())).collect::<Vec<_>>();
    let a: linalg::Matrix = weights.iter().map(row).collect();
    let b = vec![Rational::one(); weights.len()];
    if let Some(s) = linalg::solve(&a, &b) {
        return Ok(s);
    }
    for i in 1..=weights.len() {
        if linalg::solve(&a[..i].to_vec(), &b[..i]).is_none() {
            return Err(Error::domain(format!(
                "inadmissible weights: no σ with ⟨λ_i, σ⟩ = 1 once λ_{i} = {:?} is included",
                weights[i - 1]
            )));
        }
    }
    debug_assert!(rank > 0);
    Err(Error::internal("inconsistent system with consistent prefixes"))
}

impl fmt::Display for WeightList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .weights
            .iter()
            .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl Serialize for WeightList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            rank: usize,
            weights: &'a [Vec<i64>],
            sigma: Option<Vec<String>>,
        }
        Wire {
            rank: self.rank,
            weights: &self.weights,
            sigma: self.sigma.as_ref().map(|s| s.iter().map(format_rational).collect()),
        }
        .serialize(s)
    }
}
