//! The basic function `C_ρ = Σ_i S^{-1}(f_{i,ρ})` for `GL(r)`, `r ≤ 3`,
//! with `f_{i,ρ}(z) = tr(z · 2δ^∨(q^{-1/2}), Sym^i ρ)` expanded in the
//! basis `q^{⟨λ,δ⟩} P_λ(z; q^{-1})`.
//!
//! Writing `y_k = q^{Σ_j j λ_{k,j}} z^{λ_k}` and `g_i = h_i(y)`, every
//! monomial `z^μ` of `f_i` equals that of `g_i` times `q^{-|μ|(r+1)/2}`, and
//! `q^{⟨λ,δ⟩} = q^{|λ|(r+1)/2 − Σ_j j λ_j}`. Hence
//! `g_i^{sym} = Σ c'_λ q^{-Σ j λ_j} P_λ` with `c_λ = c'_λ q^{-|λ|(r+1)}`, and
//! all arithmetic stays in `Q`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::mellin::Laurent;
use crate::algebra::linalg;
use crate::algebra::rational::{pow_i, Rational};
use crate::error::{Error, Result};
use crate::weights::WeightList;

pub const MAX_RANK: usize = 3;
pub const MAX_DEGREE: u32 = 12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasicFunction {
    pub rank: usize,
    pub q: u64,
    pub degree_bound: u32,
    /// Nonzero `c_λ` on dominant `λ`.
    #[serde(serialize_with = "serialize_coefficients")]
    pub coefficients: BTreeMap<Vec<i64>, Rational>,
    /// Degrees `i` where `f_{i,ρ}` differs from its symmetrization.
    pub asymmetric_degrees: Vec<u32>,
}

fn serialize_coefficients<S: serde::Serializer>(c: &BTreeMap<Vec<i64>, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(c.len()))?;
    for (k, v) in c {
        seq.serialize_element(&(k, crate::algebra::rational::format_rational(v)))?;
    }
    seq.end()
}

impl BasicFunction {
    pub fn coefficient(&self, lambda: &[i64]) -> Rational {
        self.coefficients.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Checks the input and returns the common degree `d = |λ_k|`.
fn check_input(rho: &WeightList, degree: u32) -> Result<i64> {
    let r = rho.rank();
    if r > MAX_RANK {
        return Err(Error::domain(format!("rank {r} exceeds {MAX_RANK}")));
    }
    if degree > MAX_DEGREE {
        return Err(Error::domain(format!("degree bound {degree} exceeds {MAX_DEGREE}")));
    }
    if rho.weights().iter().flatten().any(|&x| x < 0) {
        return Err(Error::domain("weights must be nonnegative (polynomial representations)"));
    }
    let mut sorted: Vec<Vec<i64>> = rho.weights().to_vec();
    sorted.sort();
    for perm in permutations(r) {
        let mut moved: Vec<Vec<i64>> = sorted.iter().map(|l| permute(l, &perm)).collect();
        moved.sort();
        if moved != sorted {
            return Err(Error::domain("weights are not stable under S_r"));
        }
    }
    let d = rho.weights()[0].iter().sum::<i64>();
    if d <= 0 || rho.weights().iter().any(|l| l.iter().sum::<i64>() != d) {
        return Err(Error::domain("weights must share one positive degree |λ|"));
    }
    Ok(d)
}

pub(crate) fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for pos in 0..r {
            let mut q = p.clone();
            q.insert(pos, r - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn sign(perm: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                s = -s;
            }
        }
    }
    s
}

/// `(wμ)_{w(k)} = μ_k`.
fn permute(mu: &[i64], w: &[usize]) -> Vec<i64> {
    let mut out = vec![0; mu.len()];
    for (k, &x) in mu.iter().enumerate() {
        out[w[k]] = x;
    }
    out
}

fn permute_laurent(f: &Laurent, w: &[usize]) -> Laurent {
    Laurent { rank: f.rank, terms: f.terms.iter().map(|(k, v)| (permute(k, w), v.clone())).collect() }
}

fn symmetrize(f: &Laurent) -> Laurent {
    let perms = permutations(f.rank);
    let mut acc = Laurent::zero(f.rank);
    for w in &perms {
        acc = acc.add(&permute_laurent(f, w));
    }
    acc.scale(&Rational::new(1.into(), (perms.len() as i64).into()))
}

fn weighted_height(mu: &[i64]) -> i64 {
    mu.iter().enumerate().map(|(j, &x)| (j as i64 + 1) * x).sum()
}

/// `g_i = h_i(y_1, ..., y_n)` for `i ≤ degree`.
fn complete_homogeneous(rho: &WeightList, q: u64, degree: u32) -> Vec<Laurent> {
    let r = rho.rank();
    let qr = Rational::from_integer(q.into());
    let ys: Vec<Laurent> =
        rho.weights().iter().map(|l| Laurent::monomial(l.clone(), pow_i(&qr, weighted_height(l)))).collect();
    let mut h: Vec<Laurent> = (0..=degree).map(|i| if i == 0 { Laurent::one(r) } else { Laurent::zero(r) }).collect();
    for y in &ys {
        for i in 1..=degree as usize {
            let t = y.mul(&h[i - 1]);
            h[i] = h[i].add(&t);
        }
    }
    h
}

fn v_factor(m: usize, t: &Rational) -> Rational {
    let mut acc = Rational::one();
    for j in 1..=m {
        acc *= (Rational::one() - pow_i(t, j as i64)) / (Rational::one() - t);
    }
    acc
}

/// Hall-Littlewood `P_λ(x; t)` in `r = λ.len()` variables, `λ` nonnegative.
pub fn hall_littlewood(lambda: &[i64], t: &Rational) -> Result<Laurent> {
    let r = lambda.len();
    let mut kernel = Laurent::monomial(lambda.to_vec(), Rational::one());
    let mut vandermonde = Laurent::one(r);
    for i in 0..r {
        for j in i + 1..r {
            let mut ei = vec![0; r];
            ei[i] = 1;
            let mut ej = vec![0; r];
            ej[j] = 1;
            let xi = Laurent::monomial(ei, Rational::one());
            kernel = kernel.mul(&xi.add(&Laurent::monomial(ej.clone(), -t.clone())));
            vandermonde = vandermonde.mul(&xi.add(&Laurent::monomial(ej, -Rational::one())));
        }
    }
    let mut alt = Laurent::zero(r);
    for w in permutations(r) {
        alt = alt.add(&permute_laurent(&kernel, &w).scale(&Rational::from_integer(sign(&w).into())));
    }
    let sym = alt.div_exact(&vandermonde).ok_or_else(|| Error::internal("alternant not divisible by the Vandermonde"))?;
    let mut counts: HashMap<i64, usize> = HashMap::new();
    for &x in lambda {
        *counts.entry(x).or_default() += 1;
    }
    let v: Rational = counts.values().map(|&m| v_factor(m, t)).product();
    Ok(sym.scale(&v.recip()))
}

fn is_dominant(mu: &[i64]) -> bool {
    mu.windows(2).all(|w| w[0] >= w[1])
}

/// `c_λ` for every dominant `λ` with `⟨λ, σ⟩ ≤ degree`, at residue field size `q`.
pub fn basic_function_satake(rho: &WeightList, q: u64, degree: u32) -> Result<BasicFunction> {
    let d = check_input(rho, degree)?;
    let r = rho.rank();
    let qr = Rational::from_integer(q.into());
    let t = Rational::new(1.into(), q.into());
    let mut coefficients = BTreeMap::new();
    let mut asymmetric_degrees = Vec::new();
    for (i, g) in complete_homogeneous(rho, q, degree).into_iter().enumerate() {
        let mut rest = symmetrize(&g);
        if rest != g {
            asymmetric_degrees.push(i as u32);
        }
        while let Some((lambda, a)) = rest.terms.iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
            if !is_dominant(&lambda) {
                return Err(Error::internal(format!("symmetrized remainder {rest} leads with non-dominant {lambda:?}")));
            }
            let p = hall_littlewood(&lambda, &t)?;
            rest = rest.add(&p.scale(&-a.clone()));
            let c_prime = &a * pow_i(&qr, weighted_height(&lambda));
            let size = i as i64 * d;
            let c = c_prime * pow_i(&qr, -size * (r as i64 + 1));
            coefficients.insert(lambda, c);
        }
    }
    Ok(BasicFunction { rank: r, q, degree_bound: degree, coefficients, asymmetric_degrees })
}

/// Elementary-divisor exponents of an upper-triangular integer matrix,
/// descending.
fn elementary_divisors(m: &[Vec<i128>], p: i128) -> Vec<i64> {
    let r = m.len();
    let val = |mut x: i128| -> Option<i64> {
        if x == 0 {
            return None;
        }
        let mut v = 0;
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        Some(v)
    };
    let subsets = |k: usize| -> Vec<Vec<usize>> {
        (0..1usize << r).filter(|s| s.count_ones() as usize == k).map(|s| (0..r).filter(|i| s >> i & 1 == 1).collect()).collect()
    };
    let minor = |rows: &[usize], cols: &[usize]| -> i128 {
        match rows.len() {
            1 => m[rows[0]][cols[0]],
            2 => m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]],
            _ => {
                let g = |i: usize, j: usize| m[rows[i]][cols[j]];
                g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                    + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
            }
        }
    };
    let mut prefix = vec![0i64];
    for k in 1..=r {
        let s = subsets(k);
        let v = s.iter().flat_map(|a| s.iter().filter_map(|b| val(minor(a, b)))).min().expect("nonsingular");
        prefix.push(v);
    }
    let mut asc: Vec<i64> = prefix.windows(2).map(|w| w[1] - w[0]).collect();
    asc.reverse();
    asc
}

/// `B_λ = Σ_μ N_{λμ} q^{Σ j μ_j} z^μ`, counting Hermite normal forms with
/// diagonal `p^μ` by their elementary divisors, for every `|λ| = size`.
fn lattice_transforms(r: usize, p: u64, size: i64) -> Result<BTreeMap<Vec<i64>, Laurent>> {
    let qr = Rational::from_integer(p.into());
    let mut out: BTreeMap<Vec<i64>, Laurent> = BTreeMap::new();
    let mut mus = Vec::new();
    compositions(r, size, &mut Vec::new(), &mut mus);
    let pi = p as i128;
    for mu in mus {
        // free entries: row i, column j > i, reduced mod p^{μ_i}
        let slots: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
        let bounds: Vec<i128> = slots.iter().map(|&(i, _)| pi.pow(mu[i] as u32)).collect();
        let total: i128 = bounds.iter().product();
        if total > 20_000_000 {
            return Err(Error::domain("lattice enumeration too large"));
        }
        let mono = pow_i(&qr, weighted_height(&mu));
        let mut counts: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for code in 0..total {
            let mut m = vec![vec![0i128; r]; r];
            for i in 0..r {
                m[i][i] = pi.pow(mu[i] as u32);
            }
            let mut c = code;
            for (&(i, j), &b) in slots.iter().zip(&bounds) {
                m[i][j] = c % b;
                c /= b;
            }
            *counts.entry(elementary_divisors(&m, pi)).or_default() += 1;
        }
        for (lambda, n) in counts {
            let e = out.entry(lambda).or_insert_with(|| Laurent::zero(r));
            *e = e.add(&Laurent::monomial(mu.clone(), &mono * Rational::from_integer(n.into())));
        }
    }
    Ok(out)
}

fn compositions(r: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() + 1 == r {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for x in 0..=total {
        prefix.push(x);
        compositions(r, total - x, prefix, out);
        prefix.pop();
    }
}

/// `Sym^i ρ` by enumerating multisets of weights, each monomial weighted
/// by `∏ q^{Σ_j j λ_j}`.
fn sym_power(rho: &WeightList, q: u64, i: u32) -> Laurent {
    let r = rho.rank();
    let qr = Rational::from_integer(q.into());
    let n = rho.len();
    let mut out = Laurent::zero(r);
    let mut idx = vec![0usize; i as usize];
    loop {
        let mut mu = vec![0i64; r];
        for &k in &idx {
            for (m, x) in mu.iter_mut().zip(&rho.weights()[k]) {
                *m += x;
            }
        }
        let c = pow_i(&qr, weighted_height(&mu));
        out = out.add(&Laurent::monomial(mu, c));
        // next nondecreasing index tuple
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] + 1 < n {
                let v = idx[pos] + 1;
                for x in &mut idx[pos..] {
                    *x = v;
                }
                break;
            }
        }
    }
}

/// Independent computation of the `c_λ`: lattice-counting Satake transforms
/// `B_λ`, then `g_i^{sym} = Σ c_λ B_λ` solved by Gaussian elimination.
pub fn basic_function_oracle(rho: &WeightList, q: u64, degree: u32) -> Result<BTreeMap<Vec<i64>, Rational>> {
    let d = check_input(rho, degree)?;
    let r = rho.rank();
    let mut out = BTreeMap::new();
    for i in 0..=degree {
        let g = symmetrize(&sym_power(rho, q, i));
        let basis = lattice_transforms(r, q, i as i64 * d)?;
        let lambdas: Vec<&Vec<i64>> = basis.keys().collect();
        let mut rows: Vec<Vec<i64>> = basis.values().flat_map(|b| b.terms.keys().cloned()).chain(g.terms.keys().cloned()).collect();
        rows.sort();
        rows.dedup();
        let a: linalg::Matrix = rows.iter().map(|mu| lambdas.iter().map(|l| basis[*l].terms.get(mu).cloned().unwrap_or_else(Rational::zero)).collect()).collect();
        let b: Vec<Rational> = rows.iter().map(|mu| g.terms.get(mu).cloned().unwrap_or_else(Rational::zero)).collect();
        let x = linalg::solve(&a, &b).ok_or_else(|| Error::internal(format!("Sym^{i} is not in the span of the Satake transforms")))?;
        for (l, c) in lambdas.into_iter().zip(x) {
            if !c.is_zero() {
                out.insert(l.clone(), c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use crate::padic::lattice::partition_c_rho;

    #[test]
    fn rank_one_is_partition_count() {
        for w in ["1", "1;1", "2", "1;1;1"] {
            let rho = WeightList::parse(w).unwrap();
            let b = basic_function_satake(&rho, 5, 8).unwrap();
            let d = rho.weights()[0][0];
            for m in 0..=8 * d {
                assert_eq!(b.coefficient(&[m]), int(partition_c_rho(&rho, &[m]).unwrap() as i64), "{w} at {m}");
            }
        }
    }

    #[test]
    fn hall_littlewood_small_cases() {
        let t = rat(1, 3);
        let p = hall_littlewood(&[1, 0], &t).unwrap();
        assert_eq!(p, Laurent::monomial(vec![1, 0], int(1)).add(&Laurent::monomial(vec![0, 1], int(1))));
        // P_{(1,1)} = x1 x2, P_{(2,0)} = x1^2 + x2^2 + (1 - t) x1 x2
        assert_eq!(hall_littlewood(&[1, 1], &t).unwrap(), Laurent::monomial(vec![1, 1], int(1)));
        let p = hall_littlewood(&[2, 0], &t).unwrap();
        assert_eq!(p.terms.get(&vec![1, 1]), Some(&rat(2, 3)));
        // t = 0 gives Schur polynomials: s_{(2,1,0)} has 7 monomials, coefficient 2 on x1x2x3
        let s = hall_littlewood(&[2, 1, 0], &rat(0, 1)).unwrap();
        assert_eq!(s.terms.len(), 7);
        assert_eq!(s.terms.get(&vec![1, 1, 1]), Some(&int(2)));
    }

    #[test]
    fn standard_rank_two_first_coefficient() {
        for q in [3u64, 5] {
            let b = basic_function_satake(&WeightList::standard(2), q, 4).unwrap();
            assert_eq!(b.coefficient(&[1, 0]), (int(1) + rat(1, q as i64)) / int(2));
            assert_eq!(b.coefficient(&[0, 0]), int(1));
            assert!(b.asymmetric_degrees.contains(&1));
        }
    }

    #[test]
    fn oracle_agrees() {
        for q in [3u64, 5] {
            let rho = WeightList::standard(2);
            assert_eq!(basic_function_satake(&rho, q, 4).unwrap().coefficients, basic_function_oracle(&rho, q, 4).unwrap());
        }
        let rho = WeightList::standard(3);
        assert_eq!(basic_function_satake(&rho, 3, 2).unwrap().coefficients, basic_function_oracle(&rho, 3, 2).unwrap());
        let rho = WeightList::parse("2,0;1,1;0,2").unwrap();
        assert_eq!(basic_function_satake(&rho, 3, 2).unwrap().coefficients, basic_function_oracle(&rho, 3, 2).unwrap());
    }

    #[test]
    fn hecke_operator_count() {
        let b = lattice_transforms(2, 3, 1).unwrap();
        assert_eq!(b[&vec![1, 0]].terms.values().map(|_| 1).sum::<i32>(), 2);
        let e = elementary_divisors(&[vec![3, 1], vec![0, 1]], 3);
        assert_eq!(e, vec![1, 0]);
    }

    #[test]
    fn input_checks() {
        assert!(basic_function_satake(&WeightList::parse("1,0").unwrap(), 3, 2).is_err());
        assert!(basic_function_satake(&WeightList::parse("-1").unwrap(), 3, 2).is_err());
        assert!(basic_function_satake(&WeightList::standard(2), 3, 13).is_err());
    }
}
