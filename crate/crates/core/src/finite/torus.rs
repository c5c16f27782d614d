//! Twisted tori `T_w = ∏ F_{q^{n_i}}^*`, their characters and the torus
//! gamma sums `γ_w(θ)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::gamma::GammaValue;
use crate::algebra::cyclotomic::Accumulator;
use crate::algebra::finite_field::{embedding, prime_power, shared_field};
use crate::algebra::{CyclotomicNumber, GaloisField};
use crate::error::{Error, Result};

/// The torus attached to a conjugacy class of `S_n` with the given cycle
/// type. Component `i` is `F_{q^{n_i}}^*` with its fixed generator.
#[derive(Clone, Debug)]
pub struct FiniteTorus {
    q: u64,
    p: u32,
    e: u32,
    cycle_type: Vec<usize>,
    base: Arc<GaloisField>,
    components: Vec<Arc<GaloisField>>,
    /// Image of each element of `F_q` in component `i`.
    base_embeds: Vec<Arc<Vec<u32>>>,
    /// Inverse of `base_embeds[i]` on its image.
    base_preimages: Vec<Arc<HashMap<u32, u32>>>,
}

impl FiniteTorus {
    pub fn new(q: u64, cycle_type: &[usize]) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        if cycle_type.is_empty() || cycle_type.contains(&0) {
            return Err(Error::domain(format!("invalid cycle type {cycle_type:?}")));
        }
        let base = shared_field(p, e)?;
        let mut components: Vec<Arc<GaloisField>> = Vec::new();
        let mut base_embeds: Vec<Arc<Vec<u32>>> = Vec::new();
        let mut base_preimages: Vec<Arc<HashMap<u32, u32>>> = Vec::new();
        let mut cache: BTreeMap<usize, usize> = BTreeMap::new();
        for &n in cycle_type {
            if let Some(&j) = cache.get(&n) {
                components.push(components[j].clone());
                base_embeds.push(base_embeds[j].clone());
                base_preimages.push(base_preimages[j].clone());
                continue;
            }
            let field = shared_field(p, e * n as u32)?;
            let emb = embedding(&base, &field)?;
            let pre: HashMap<u32, u32> = emb.iter().enumerate().map(|(a, &b)| (b, a as u32)).collect();
            cache.insert(n, components.len());
            components.push(field);
            base_embeds.push(Arc::new(emb));
            base_preimages.push(Arc::new(pre));
        }
        Ok(FiniteTorus { q, p, e, cycle_type: cycle_type.to_vec(), base, components, base_embeds, base_preimages })
    }

    /// The torus of a permutation of `{0..n-1}`, components ordered by the
    /// least element of each cycle.
    pub fn for_permutation(q: u64, w: &[usize]) -> Result<Self> {
        let lengths: Vec<usize> = cycles(w)?.iter().map(Vec::len).collect();
        Self::new(q, &lengths)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn cycle_type(&self) -> &[usize] {
        &self.cycle_type
    }

    /// Rank `n = Σ n_i`.
    pub fn rank(&self) -> usize {
        self.cycle_type.iter().sum()
    }

    /// `Σ (n_i − 1)`, whose parity is the sign of `w`.
    pub fn sign_length(&self) -> usize {
        self.cycle_type.iter().map(|n| n - 1).sum()
    }

    pub fn base_field(&self) -> &GaloisField {
        &self.base
    }

    pub fn component(&self, i: usize) -> &GaloisField {
        &self.components[i]
    }

    /// `q^{n_i} − 1`.
    pub fn component_order(&self, i: usize) -> u64 {
        self.components[i].size() as u64 - 1
    }

    pub fn order(&self) -> u64 {
        (0..self.cycle_type.len()).map(|i| self.component_order(i)).product()
    }

    /// Embeds an element of `F_q` into component `i`.
    pub fn embed_base(&self, i: usize, x: u32) -> u32 {
        self.base_embeds[i][x as usize]
    }

    /// `Tr_{F_{q^{n_i}}/F_q}(x)` as an element of `F_q`.
    pub fn component_trace(&self, i: usize, x: u32) -> u32 {
        let t = self.components[i].trace(x, self.e).expect("e divides the component degree");
        self.base_preimages[i][&t]
    }

    /// `Σ_i Tr(t_i)`, the trace of `t` in its regular embedding into `GL(n, F_q)`.
    pub fn trace(&self, t: &[u32]) -> u32 {
        t.iter()
            .enumerate()
            .fold(0, |acc, (i, &x)| self.base.add(acc, self.component_trace(i, x)))
    }
}

impl PartialEq for FiniteTorus {
    fn eq(&self, o: &Self) -> bool {
        self.q == o.q && self.cycle_type == o.cycle_type
    }
}

/// Cycles of a permutation of `{0..n-1}` ordered by least element. Each
/// cycle starts at its least element `c` and lists `c, w^{-1}(c), w^{-2}(c), ...`.
pub fn cycles(w: &[usize]) -> Result<Vec<Vec<usize>>> {
    let n = w.len();
    let mut inv = vec![usize::MAX; n];
    for (i, &j) in w.iter().enumerate() {
        if j >= n || inv[j] != usize::MAX {
            return Err(Error::domain(format!("{w:?} is not a permutation")));
        }
        inv[j] = i;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for c in 0..n {
        if seen[c] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = c;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i);
            i = inv[i];
        }
        out.push(cyc);
    }
    Ok(out)
}

/// `ψ(x) = ζ_p^{Tr_{F_q/F_p}(c·x)}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdditiveCharacter {
    pub q: u64,
    pub c: u32,
}

impl AdditiveCharacter {
    pub fn new(q: u64, c: u32) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::domain(format!("{q} is not a prime power")));
        }
        if c == 0 || c as u64 >= q {
            return Err(Error::domain(format!("additive character shift {c} is not a unit of F_{q}")));
        }
        Ok(AdditiveCharacter { q, c })
    }

    /// `c = 1`.
    pub fn standard(q: u64) -> Result<Self> {
        Self::new(q, 1)
    }

    /// The exponent `a` with `ψ(x) = ζ_p^a`.
    pub fn exponent(&self, field: &GaloisField, x: u32) -> u32 {
        field.absolute_trace(field.mul(self.c, x))
    }

    pub fn value(&self, field: &GaloisField, x: u32) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(field.characteristic() as u64, self.exponent(field, x) as i64)
    }
}

/// `θ(t) = ∏ ζ_{q^{n_i}−1}^{e_i · log_{g_i}(t_i)}`.
#[derive(Clone, Debug)]
pub struct FiniteTorusCharacter {
    torus: FiniteTorus,
    exponents: Vec<u64>,
}

impl FiniteTorusCharacter {
    pub fn new(torus: &FiniteTorus, exponents: &[i64]) -> Result<Self> {
        if exponents.len() != torus.cycle_type.len() {
            return Err(Error::domain(format!(
                "{} exponents for a torus with {} components",
                exponents.len(),
                torus.cycle_type.len()
            )));
        }
        let exponents = exponents
            .iter()
            .enumerate()
            .map(|(i, &x)| x.rem_euclid(torus.component_order(i) as i64) as u64)
            .collect();
        Ok(FiniteTorusCharacter { torus: torus.clone(), exponents })
    }

    pub fn trivial(torus: &FiniteTorus) -> Self {
        FiniteTorusCharacter { torus: torus.clone(), exponents: vec![0; torus.cycle_type.len()] }
    }

    pub fn torus(&self) -> &FiniteTorus {
        &self.torus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn value(&self, t: &[u32]) -> Result<CyclotomicNumber> {
        let mut acc = CyclotomicNumber::one();
        for (i, &x) in t.iter().enumerate() {
            let n = self.torus.component_order(i);
            let l = self.torus.components[i].log(x)? as u64;
            acc = &acc * &CyclotomicNumber::root_of_unity(n, ((self.exponents[i] as u128 * l as u128) % n as u128) as i64);
        }
        Ok(acc)
    }

    /// `θ ∘ Frob`.
    pub fn frobenius(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .enumerate()
            .map(|(i, &x)| mul_mod(x, self.torus.q, self.torus.component_order(i)))
            .collect();
        FiniteTorusCharacter { torus: self.torus.clone(), exponents }
    }

    /// Representative of the orbit under the relative Weyl group: each
    /// exponent replaced by the least element of its Frobenius orbit, then
    /// sorted within blocks of equal cycle length.
    pub fn canonical(&self) -> Self {
        let mut ex: Vec<u64> = (0..self.exponents.len()).map(|i| self.orbit_min(i, self.exponents[i])).collect();
        for positions in self.blocks().values() {
            let mut vals: Vec<u64> = positions.iter().map(|&i| ex[i]).collect();
            vals.sort_unstable();
            for (&i, v) in positions.iter().zip(vals) {
                ex[i] = v;
            }
        }
        FiniteTorusCharacter { torus: self.torus.clone(), exponents: ex }
    }

    /// In general position: no nontrivial element of the relative Weyl
    /// group fixes `θ`.
    pub fn is_regular(&self) -> bool {
        for (i, &n) in self.torus.cycle_type.iter().enumerate() {
            let orbit = self.orbit(i, self.exponents[i]);
            if orbit[1..].contains(&self.exponents[i]) {
                return false;
            }
            for k in i + 1..self.exponents.len() {
                if self.torus.cycle_type[k] == n && orbit.contains(&self.exponents[k]) {
                    return false;
                }
            }
        }
        true
    }

    fn orbit(&self, i: usize, e: u64) -> Vec<u64> {
        let n = self.torus.component_order(i);
        let mut out = vec![e];
        for _ in 1..self.torus.cycle_type[i] {
            out.push(mul_mod(*out.last().expect("non-empty"), self.torus.q, n));
        }
        out
    }

    fn orbit_min(&self, i: usize, e: u64) -> u64 {
        *self.orbit(i, e).iter().min().expect("non-empty")
    }

    fn blocks(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut b: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &n) in self.torus.cycle_type.iter().enumerate() {
            b.entry(n).or_default().push(i);
        }
        b
    }
}

impl PartialEq for FiniteTorusCharacter {
    fn eq(&self, o: &Self) -> bool {
        self.torus == o.torus && self.exponents == o.exponents
    }
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    (a as u128 * b as u128 % n as u128) as u64
}

/// One representative per orbit of characters of `torus` under Frobenius
/// and permutations of equal-length components, in canonical form and
/// lexicographic order.
pub fn character_orbits(torus: &FiniteTorus) -> Vec<FiniteTorusCharacter> {
    let probe = FiniteTorusCharacter::trivial(torus);
    let blocks = probe.blocks();
    let mut reps: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for (&n, positions) in &blocks {
        let i = positions[0];
        let order = torus.component_order(i);
        let mut mins: Vec<u64> = (0..order).filter(|&e| probe.orbit_min(i, e) == e).collect();
        mins.sort_unstable();
        reps.insert(n, mins);
    }
    let mut out = vec![vec![0u64; torus.cycle_type.len()]];
    for (n, positions) in &blocks {
        let mut next = Vec::new();
        for partial in &out {
            for choice in multisets(&reps[n], positions.len()) {
                let mut ex = partial.clone();
                for (&i, v) in positions.iter().zip(choice) {
                    ex[i] = v;
                }
                next.push(ex);
            }
        }
        out = next;
    }
    out.sort();
    out.into_iter().map(|exponents| FiniteTorusCharacter { torus: torus.clone(), exponents }).collect()
}

/// Non-decreasing sequences of length `k` drawn from `vals`.
fn multisets(vals: &[u64], k: usize) -> Vec<Vec<u64>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (j, &v) in vals.iter().enumerate() {
        for mut rest in multisets(&vals[j..], k - 1) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

/// `Σ_{t ∈ F_{q^{n_i}}^*} ψ(Tr t) θ_i(t)` for one component.
fn component_sum(torus: &FiniteTorus, i: usize, e: u64, psi: &AdditiveCharacter) -> CyclotomicNumber {
    let field = &torus.components[i];
    let p = torus.p as u64;
    let m = torus.component_order(i);
    let c = torus.embed_base(i, psi.c);
    let mut acc = Accumulator::new(p * m);
    for j in 0..m {
        let t = field.gen_pow(j as i64);
        let a = field.absolute_trace(field.mul(c, t)) as u64;
        acc.add_root(1, a * m + mul_mod(e, j, m) * p);
    }
    acc.finish()
}

/// `γ_w(θ) = (−1)^{n+l(w)} q^{−n/2} Σ_{t ∈ T_w} ψ(tr t) θ(t)`.
///
/// The sum is evaluated as the product of its component sums.
pub fn torus_gamma(torus: &FiniteTorus, theta: &FiniteTorusCharacter, psi: &AdditiveCharacter) -> Result<GammaValue> {
    if theta.torus != *torus {
        return Err(Error::domain("character is defined on a different torus"));
    }
    if psi.q != torus.q {
        return Err(Error::domain(format!("additive character over F_{} used on F_{}", psi.q, torus.q)));
    }
    let mut prod = CyclotomicNumber::one();
    for (i, &e) in theta.exponents.iter().enumerate() {
        prod = &prod * &component_sum(torus, i, e, psi);
    }
    let n = torus.rank();
    if (n + torus.sign_length()) % 2 == 1 {
        prod = -prod;
    }
    Ok(GammaValue::new(prod, -(n as i32), torus.q))
}

/// `Σ_{t ∈ T_w} ψ(tr t) θ(t)` by direct enumeration of the product, without
/// factorizing. Used to cross-check [`torus_gamma`] on small tori.
pub fn torus_sum_direct(torus: &FiniteTorus, theta: &FiniteTorusCharacter, psi: &AdditiveCharacter) -> Result<CyclotomicNumber> {
    let k = torus.cycle_type.len();
    let orders: Vec<u64> = (0..k).map(|i| torus.component_order(i)).collect();
    let total: u64 = orders.iter().product();
    let mut sum = CyclotomicNumber::zero();
    for code in 0..total {
        let mut c = code;
        let t: Vec<u32> = (0..k)
            .map(|i| {
                let j = c % orders[i];
                c /= orders[i];
                torus.components[i].gen_pow(j as i64)
            })
            .collect();
        let tr = torus.trace(&t);
        sum = &sum + &(&psi.value(&torus.base, tr) * &theta.value(&t)?);
    }
    Ok(sum)
}
