//! Lifts of Weyl group elements through a weight map and the pulled-back
//! gamma function `γ_ρ`.
//!
//! Permutations are 0-based: `w[i]` is the image of `i`. A permutation `w`
//! of the coordinates acts on `λ ∈ Z^r` by `(wλ)_{w(k)} = λ_k`.

use num_integer::Integer;

use super::gamma::GammaValue;
use super::torus::{cycles, torus_gamma, AdditiveCharacter, FiniteTorus, FiniteTorusCharacter};
use crate::algebra::finite_field::{embedding, mod_inverse, shared_field};
use crate::error::{Error, Result};
use crate::weights::WeightList;

fn act(w: &[usize], lambda: &[i64]) -> Vec<i64> {
    let mut out = vec![0; lambda.len()];
    for (k, &x) in lambda.iter().enumerate() {
        out[w[k]] = x;
    }
    out
}

fn check_permutation(w: &[usize], r: usize) -> Result<()> {
    if w.len() != r {
        return Err(Error::domain(format!("permutation of length {} on a rank {r} torus", w.len())));
    }
    cycles(w).map(|_| ())
}

/// The lexicographically least `w′` with `λ_{w′(i)} = w(λ_i)` for all `i`.
pub fn lift_weyl_image(rho: &WeightList, w: &[usize]) -> Result<Vec<usize>> {
    check_permutation(w, rho.rank())?;
    let lambdas = rho.weights();
    let mut used = vec![false; lambdas.len()];
    let mut out = Vec::with_capacity(lambdas.len());
    for (i, l) in lambdas.iter().enumerate() {
        let target = act(w, l);
        let j = (0..lambdas.len())
            .find(|&j| !used[j] && lambdas[j] == target)
            .ok_or_else(|| Error::domain(format!("w does not preserve the weight multiset (image of λ_{} missing)", i + 1)))?;
        used[j] = true;
        out.push(j);
    }
    Ok(out)
}

/// Every lift of `w`, in lexicographic order, at most `limit` of them.
pub fn weyl_lifts(rho: &WeightList, w: &[usize], limit: usize) -> Result<Vec<Vec<usize>>> {
    let first = lift_weyl_image(rho, w)?;
    let lambdas = rho.weights();
    let targets: Vec<Vec<i64>> = lambdas.iter().map(|l| act(w, l)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(lambdas.len());
    let mut used = vec![false; lambdas.len()];
    fn rec(
        i: usize,
        lambdas: &[Vec<i64>],
        targets: &[Vec<i64>],
        cur: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if i == lambdas.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..lambdas.len() {
            if !used[j] && lambdas[j] == targets[i] {
                used[j] = true;
                cur.push(j);
                rec(i + 1, lambdas, targets, cur, used, out, limit);
                cur.pop();
                used[j] = false;
            }
        }
    }
    rec(0, lambdas, &targets, &mut cur, &mut used, &mut out, limit);
    debug_assert_eq!(out.first(), Some(&first));
    Ok(out)
}

/// `γ_ρ(θ)` for `θ` on `T_w`, computed with the least lift of `w`.
pub fn gamma_rho_finite(rho: &WeightList, w: &[usize], theta: &FiniteTorusCharacter, psi: &AdditiveCharacter) -> Result<GammaValue> {
    let lift = lift_weyl_image(rho, w)?;
    gamma_rho_finite_with_lift(rho, w, &lift, theta, psi)
}

/// `γ_ρ(θ) = γ_{T_{w′}}(p^*θ)` for an explicit lift `w′`, where
/// `p(x_1, ..., x_n) = ∏ λ_i(x_i)` maps `T_{ρ,w′}` to `T_w`.
pub fn gamma_rho_finite_with_lift(
    rho: &WeightList,
    w: &[usize],
    lift: &[usize],
    theta: &FiniteTorusCharacter,
    psi: &AdditiveCharacter,
) -> Result<GammaValue> {
    let (torus, pulled) = pullback(rho, w, lift, theta)?;
    torus_gamma(&torus, &pulled, psi)
}

/// The torus `T_{ρ,w′}` and the character `θ ∘ p` on it.
pub fn pullback(
    rho: &WeightList,
    w: &[usize],
    lift: &[usize],
    theta: &FiniteTorusCharacter,
) -> Result<(FiniteTorus, FiniteTorusCharacter)> {
    check_permutation(w, rho.rank())?;
    check_permutation(lift, rho.len())?;
    let lambdas = rho.weights();
    for (i, l) in lambdas.iter().enumerate() {
        if lambdas[lift[i]] != act(w, l) {
            return Err(Error::domain(format!("not a lift: λ_{{w′({})}} ≠ w(λ_{})", i + 1, i + 1)));
        }
    }
    let q = theta.torus().q();
    let w_cycles = cycles(w)?;
    let w_lengths: Vec<usize> = w_cycles.iter().map(Vec::len).collect();
    if theta.torus().cycle_type() != w_lengths.as_slice() {
        return Err(Error::domain(format!(
            "character lives on a torus of cycle type {:?}, w has {:?}",
            theta.torus().cycle_type(),
            w_lengths
        )));
    }
    let l_cycles = cycles(lift)?;
    let l_lengths: Vec<usize> = l_cycles.iter().map(Vec::len).collect();
    let target = FiniteTorus::new(q, &l_lengths)?;

    let big_len = w_lengths.iter().chain(&l_lengths).fold(1usize, |a, &b| a.lcm(&b));
    let p = target.characteristic();
    let e = target.base_field().degree();
    let big = shared_field(p, e * big_len as u32)?;
    let n_l = big.size() as u64 - 1;
    let mulm = |a: u64, b: u64, m: u64| (a as u128 * b as u128 % m as u128) as u64;

    // u with ι(g_c) = G^{m_c u}, m_c = N_L / N_c.
    let unit = |field: &crate::algebra::GaloisField| -> Result<(u64, u64, u64)> {
        let n_c = field.size() as u64 - 1;
        let emb = embedding(field, &big)?;
        let log = big.log(emb[field.generator() as usize])? as u64;
        let m_c = n_l / n_c;
        if !log.is_multiple_of(m_c) {
            return Err(Error::internal("embedded generator outside its subgroup"));
        }
        Ok((n_c, m_c, (log / m_c) % n_c))
    };

    // E_C = e_C u_c^{-1} (mod N_C), the exponent of θ_C against log_G.
    let mut big_exps = Vec::with_capacity(w_cycles.len());
    for (ci, &ec) in theta.exponents().iter().enumerate() {
        let (n_c, _, u_c) = unit(theta.torus().component(ci))?;
        let inv = mod_inverse(u_c, n_c).ok_or_else(|| Error::internal("embedded generator is not a generator"))?;
        big_exps.push(mulm(ec, inv, n_c));
    }

    // Position of each weight slot inside its cycle of w′: x_i = x_d^{q^{k_i}}.
    let q_pow = |k: usize| (0..k).fold(1u64, |acc, _| mulm(acc, q, n_l));
    let mut f = Vec::with_capacity(l_cycles.len());
    let mut log_x = vec![0u64; lambdas.len()];
    for (di, d) in l_cycles.iter().enumerate() {
        let (n_d, m_d, u_d) = unit(target.component(di))?;
        let mut big_f = 0u64;
        for (k, &i) in d.iter().enumerate() {
            let qk = q_pow(k);
            let mut s = 0i128;
            for (ci, c) in w_cycles.iter().enumerate() {
                s += big_exps[ci] as i128 * lambdas[i][c[0]] as i128;
            }
            let s = s.rem_euclid(n_l as i128) as u64;
            big_f = (big_f + mulm(qk, s, n_l)) % n_l;
            log_x[i] = mulm(qk, mulm(m_d, u_d, n_l), n_l);
        }
        f.push(mulm(big_f % n_d, u_d, n_d) as i64);
    }

    // Frobenius equivariance of p at the point x_d = g_d: y_{w^{-1}(j)} = y_j^q.
    let r = rho.rank();
    let log_y: Vec<u64> = (0..r)
        .map(|j| {
            let s: i128 = (0..lambdas.len()).map(|i| lambdas[i][j] as i128 * log_x[i] as i128).sum();
            s.rem_euclid(n_l as i128) as u64
        })
        .collect();
    let mut w_inv = vec![0; r];
    for (i, &j) in w.iter().enumerate() {
        w_inv[j] = i;
    }
    for j in 0..r {
        if log_y[w_inv[j]] != mulm(log_y[j], q, n_l) {
            return Err(Error::internal(format!("weight map is not Frobenius equivariant at coordinate {}", j + 1)));
        }
    }
    let pulled = FiniteTorusCharacter::new(&target, &f)?;
    Ok((target, pulled))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_weights_lift_to_themselves() {
        let rho = WeightList::standard(3);
        for w in [[0, 1, 2], [1, 0, 2], [1, 2, 0]] {
            assert_eq!(lift_weyl_image(&rho, &w).unwrap(), w.to_vec());
        }
    }

    #[test]
    fn repeated_weight_identity_lift() {
        let rho = WeightList::parse("1;1").unwrap();
        assert_eq!(lift_weyl_image(&rho, &[0]).unwrap(), vec![0, 1]);
        assert_eq!(weyl_lifts(&rho, &[0], 10).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn tensor_square_swap() {
        // std ⊗ std of GL(2) × GL(2): weights e_a + f_b on Z^4.
        let rho = WeightList::parse("1,0,1,0;1,0,0,1;0,1,1,0;0,1,0,1").unwrap();
        let lift = lift_weyl_image(&rho, &[1, 0, 2, 3]).unwrap();
        assert_eq!(lift, vec![2, 3, 0, 1]);
    }

    #[test]
    fn non_preserving_w_is_rejected() {
        let rho = WeightList::parse("1,0;1,1").unwrap();
        assert!(matches!(lift_weyl_image(&rho, &[1, 0]), Err(Error::Domain(_))));
    }

    #[test]
    fn split_standard_weights_factorize() {
        let q = 5;
        let psi = AdditiveCharacter::standard(q).unwrap();
        let rho = WeightList::standard(2);
        let torus = FiniteTorus::new(q, &[1, 1]).unwrap();
        let one = FiniteTorus::new(q, &[1]).unwrap();
        let th = FiniteTorusCharacter::new(&torus, &[1, 3]).unwrap();
        let g = gamma_rho_finite(&rho, &[0, 1], &th, &psi).unwrap();
        let a = torus_gamma(&one, &FiniteTorusCharacter::new(&one, &[1]).unwrap(), &psi).unwrap();
        let b = torus_gamma(&one, &FiniteTorusCharacter::new(&one, &[3]).unwrap(), &psi).unwrap();
        assert_eq!(g, a.mul(&b));
    }

    #[test]
    fn repeated_weight_squares() {
        let q = 7;
        let psi = AdditiveCharacter::standard(q).unwrap();
        let rho = WeightList::parse("1;1").unwrap();
        let one = FiniteTorus::new(q, &[1]).unwrap();
        for e in 0..6 {
            let th = FiniteTorusCharacter::new(&one, &[e]).unwrap();
            let g = torus_gamma(&one, &th, &psi).unwrap();
            let values: Vec<GammaValue> = weyl_lifts(&rho, &[0], 10)
                .unwrap()
                .iter()
                .map(|l| gamma_rho_finite_with_lift(&rho, &[0], l, &th, &psi).unwrap())
                .collect();
            assert_eq!(values[0], g.mul(&g));
            assert_eq!(values[0], values[1]);
        }
    }

    #[test]
    fn coxeter_pullback_is_equivariant() {
        let q = 3;
        let psi = AdditiveCharacter::standard(q).unwrap();
        let rho = WeightList::standard(2);
        let cox = FiniteTorus::new(q, &[2]).unwrap();
        for e in 0..8 {
            let th = FiniteTorusCharacter::new(&cox, &[e]).unwrap();
            let g = gamma_rho_finite(&rho, &[1, 0], &th, &psi).unwrap();
            assert_eq!(g, torus_gamma(&cox, &th, &psi).unwrap());
        }
    }
}
