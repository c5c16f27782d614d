//! Explicit finite groups and their character tables by the class-sum
//! eigenvector method, computed modulo a prime and lifted to cyclotomic
//! values.

use std::collections::HashMap;
use std::hash::Hash;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chartable::{CharacterRow, CharacterTable, ConjugacyClass};
use crate::algebra::finite_field::{prime_power, shared_field};
use crate::algebra::CyclotomicNumber;
use crate::error::{Error, Result};

/// A group given by its multiplication table on `0..order`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    label: String,
    mul: Vec<u32>,
    order: usize,
    identity: usize,
    inverse: Vec<usize>,
    traces: Option<Vec<u32>>,
    keys: Option<Vec<String>>,
}

pub const MAX_GROUP_ORDER: usize = 500;

impl FiniteGroup {
    /// Builds the group from an explicit element list and product. Fails
    /// when a product leaves the list or the list is not a group.
    pub fn from_elements<T, F>(elements: &[T], mul: F, label: impl Into<String>) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let n = elements.len();
        if n == 0 || n > MAX_GROUP_ORDER {
            return Err(Error::domain(format!("group order {n} outside 1..={MAX_GROUP_ORDER}")));
        }
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if index.len() != n {
            return Err(Error::domain("repeated elements"));
        }
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c = mul(a, b);
                let k = *index
                    .get(&c)
                    .ok_or_else(|| Error::domain(format!("product of elements {i} and {j} is not in the set")))?;
                table[i * n + j] = k as u32;
            }
        }
        Self::from_table(table, n, label.into())
    }

    fn from_table(mul: Vec<u32>, n: usize, label: String) -> Result<Self> {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x))
            .ok_or_else(|| Error::domain("no identity element"))?;
        let mut inverse = vec![usize::MAX; n];
        for (x, slot) in inverse.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&y| mul[x * n + y] as usize == identity)
                .ok_or_else(|| Error::domain(format!("element {x} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b] as usize;
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c] as usize] {
                        return Err(Error::domain("product is not associative"));
                    }
                }
            }
        }
        Ok(FiniteGroup { label, mul, order: n, identity, inverse, traces: None, keys: None })
    }

    /// Attaches the trace of each element (an element of `F_q`).
    pub fn with_traces(mut self, traces: Vec<u32>) -> Self {
        assert_eq!(traces.len(), self.order);
        self.traces = Some(traces);
        self
    }

    /// Attaches a conjugation invariant of each element, copied to the
    /// classes of the table.
    pub fn with_class_keys(mut self, keys: Vec<String>) -> Self {
        assert_eq!(keys.len(), self.order);
        self.keys = Some(keys);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The cyclic group `Z/n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let elements: Vec<usize> = (0..n).collect();
        Self::from_elements(&elements, |a, b| (a + b) % n, format!("C{n}"))
    }

    /// The symmetric group on `k` letters.
    pub fn symmetric(k: usize) -> Result<Self> {
        let mut perms = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::new();
            for p in &perms {
                for x in 0..k {
                    if !p.contains(&x) {
                        let mut q = p.clone();
                        q.push(x);
                        next.push(q);
                    }
                }
            }
            perms = next;
        }
        Self::from_elements(&perms, |a: &Vec<usize>, b: &Vec<usize>| b.iter().map(|&i| a[i]).collect(), format!("S{k}"))
    }

    /// `GL(2, F_q)` as explicit matrices, with traces and the class
    /// invariant `(trace, determinant, scalar or not)` attached.
    pub fn gl2(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        let f = shared_field(p, e)?;
        let mut elements = Vec::new();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    for d in f.elements() {
                        if f.sub(f.mul(a, d), f.mul(b, c)) != 0 {
                            elements.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        if elements.len() > MAX_GROUP_ORDER {
            return Err(Error::domain(format!("GL(2,{q}) has order {} > {MAX_GROUP_ORDER}", elements.len())));
        }
        let mm = |x: &[u32; 4], y: &[u32; 4]| {
            [
                f.add(f.mul(x[0], y[0]), f.mul(x[1], y[2])),
                f.add(f.mul(x[0], y[1]), f.mul(x[1], y[3])),
                f.add(f.mul(x[2], y[0]), f.mul(x[3], y[2])),
                f.add(f.mul(x[2], y[1]), f.mul(x[3], y[3])),
            ]
        };
        let g = Self::from_elements(&elements, mm, format!("GL(2,{q})"))?;
        let traces: Vec<u32> = elements.iter().map(|m| f.add(m[0], m[3])).collect();
        let keys = elements
            .iter()
            .map(|m| {
                let tr = f.add(m[0], m[3]);
                let det = f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]));
                let scalar = m[1] == 0 && m[2] == 0 && m[0] == m[3];
                format!("tr={tr} det={det} {}", if scalar { "scalar" } else { "nonscalar" })
            })
            .collect();
        Ok(g.with_traces(traces).with_class_keys(keys))
    }

    /// Conjugacy classes ordered by element order, then size, then least
    /// element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|g| self.mul(self.mul(g, x), self.inverse[g])).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        classes.sort_by_key(|c| (self.element_order(c[0]), c.len(), c[0]));
        classes
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, m: u64) -> u64 {
    pow_mod(a, m - 2, m)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Determinant modulo a prime by elimination.
fn det_mod(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if r != c {
            a.swap(r, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = inv_mod(a[c][c], p);
        for r in c + 1..n {
            let f = a[r][c] * inv % p;
            if f == 0 {
                continue;
            }
            for k in c..n {
                a[r][k] = (a[r][k] + p - f * a[c][k] % p) % p;
            }
        }
    }
    det
}

/// Basis of the kernel of `a` modulo `p`.
fn kernel_mod(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(pr, r);
        let inv = inv_mod(a[r][c], p);
        for k in 0..cols {
            a[r][k] = a[r][k] * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..cols {
                    a[i][k] = (a[i][k] + p - f * a[r][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][fc]) % p;
            }
            v
        })
        .collect()
}

/// The character table of `group` by simultaneous diagonalization of the
/// class matrices modulo a prime `P ≡ 1 (mod exponent)`, `P > |G|`.
pub fn dixon_character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    let n = group.order;
    let classes = group.conjugacy_classes();
    let r = classes.len();
    let mut class_of = vec![0usize; n];
    for (k, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = k;
        }
    }
    let exponent = (0..n).fold(1usize, |l, x| l.lcm(&group.element_order(x))) as u64;
    let mut prime = exponent + 1;
    while !(is_prime(prime) && prime > n as u64) {
        prime += exponent;
    }
    let p = prime;

    // c[i][j][k] = #{x ∈ C_i : x^{-1} z_k ∈ C_j}, z_k the first element of C_k.
    let mut consts = vec![vec![vec![0u64; r]; r]; r];
    for (k, ck) in classes.iter().enumerate() {
        let z = ck[0];
        for x in 0..n {
            let j = class_of[group.mul(group.inverse[x], z)];
            consts[class_of[x]][j][k] += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut vectors = None;
    for _ in 0..64 {
        let coeffs: Vec<u64> = (0..r).map(|_| rng.random_range(0..p)).collect();
        let mut a = vec![vec![0u64; r]; r];
        for (i, &ci) in coeffs.iter().enumerate() {
            for j in 0..r {
                for k in 0..r {
                    a[j][k] = (a[j][k] + ci * (consts[i][j][k] % p)) % p;
                }
            }
        }
        let mut found = Vec::new();
        for lambda in 0..p {
            let mut m = a.clone();
            for (d, row) in m.iter_mut().enumerate() {
                row[d] = (row[d] + p - lambda) % p;
            }
            if det_mod(m.clone(), p) != 0 {
                continue;
            }
            found.push(kernel_mod(m, p));
        }
        if found.len() == r && found.iter().all(|k| k.len() == 1) {
            vectors = Some(found.into_iter().map(|mut k| k.remove(0)).collect::<Vec<_>>());
            break;
        }
    }
    let vectors = vectors.ok_or_else(|| Error::internal("class matrices did not split"))?;

    let inverse_class: Vec<usize> = classes.iter().map(|c| class_of[group.inverse[c[0]]]).collect();
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    // Power maps: class of z_k^l.
    let powers: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut out = Vec::with_capacity(exponent as usize);
            let mut x = group.identity;
            for _ in 0..exponent {
                out.push(class_of[x]);
                x = group.mul(x, c[0]);
            }
            out
        })
        .collect();
    let z = (2..p)
        .find(|&g| {
            crate::algebra::finite_field::prime_factors(p - 1).iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1)
        })
        .map(|g| pow_mod(g, (p - 1) / exponent, p))
        .expect("the units mod a prime are cyclic");
    let e_inv = inv_mod(exponent % p, p);

    let mut rows: Vec<(u64, Vec<Vec<i64>>, Vec<CyclotomicNumber>)> = Vec::new();
    for w in vectors {
        let w0 = inv_mod(w[0], p);
        let w: Vec<u64> = w.iter().map(|x| x * w0 % p).collect();
        let s = (0..r).fold(0u64, |acc, k| (acc + w[k] * w[inverse_class[k]] % p * inv_mod(sizes[k] % p, p)) % p);
        let d2 = (n as u64 % p) * inv_mod(s, p) % p;
        let d = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % p == d2)
            .ok_or_else(|| Error::internal("no degree matches the eigenvector"))?;
        let chi_mod: Vec<u64> = (0..r).map(|k| w[k] * d % p * inv_mod(sizes[k] % p, p) % p).collect();
        let mut mults = Vec::with_capacity(r);
        let mut values = Vec::with_capacity(r);
        for pk in &powers {
            let counts: Vec<i64> = (0..exponent)
                .map(|j| {
                    let mut acc = 0u64;
                    for l in 0..exponent {
                        let zl = pow_mod(z, (exponent - (j * l) % exponent) % exponent, p);
                        acc = (acc + chi_mod[pk[l as usize]] * zl) % p;
                    }
                    let m = acc * e_inv % p;
                    if m > d {
                        -1
                    } else {
                        m as i64
                    }
                })
                .collect();
            if counts.contains(&-1) {
                return Err(Error::internal("eigenvalue multiplicities do not lift"));
            }
            values.push(CyclotomicNumber::from_exponent_counts(exponent, &counts));
            mults.push(counts);
        }
        rows.push((d, mults, values));
    }
    rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let class_data = classes
        .iter()
        .enumerate()
        .map(|(k, c)| ConjugacyClass {
            label: format!("C{k}"),
            size: c.len() as u64,
            trace: group.traces.as_ref().map(|t| t[c[0]]),
            key: group.keys.as_ref().map(|t| t[c[0]].clone()),
            representative: None,
        })
        .collect();
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(i, (dim, _, values))| CharacterRow { label: format!("chi{i}"), dim, values })
        .collect();
    Ok(CharacterTable { group: group.label.clone(), order: n as u64, classes: class_data, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::chartable::gl2_character_table;

    #[test]
    fn cyclic_five() {
        let t = dixon_character_table(&FiniteGroup::cyclic(5).unwrap()).unwrap();
        assert_eq!(t.rows.len(), 5);
        assert!(t.rows.iter().all(|r| r.dim == 1));
        t.check_orthogonality().unwrap();
        let z = CyclotomicNumber::root_of_unity(5, 1);
        assert!(t.rows.iter().any(|r| r.values.contains(&z)));
    }

    #[test]
    fn symmetric_three() {
        let t = dixon_character_table(&FiniteGroup::symmetric(3).unwrap()).unwrap();
        let dims: Vec<u64> = t.rows.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![1, 1, 2]);
        t.check_orthogonality().unwrap();
    }

    #[test]
    fn non_closed_input_is_rejected() {
        let e = FiniteGroup::from_elements(&[0u32, 1, 2], |a, b| (a + b) % 4, "bad");
        assert!(matches!(e, Err(Error::Domain(_))));
    }

    #[test]
    fn gl2_three_matches_classical_table() {
        let g = FiniteGroup::gl2(3).unwrap();
        assert_eq!(g.order(), 48);
        let d = dixon_character_table(&g).unwrap();
        d.check_orthogonality().unwrap();
        let c = gl2_character_table(3).unwrap();
        assert!(d.equivalent_to(&c.table).is_some());
    }
}
