//! Mellin images of lattice functions and the Schwartz-space test.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use super::lattice::LatticeFunction;
use crate::algebra::poly::{variables, MultivariatePolynomial};
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::weights::WeightList;

/// A Laurent polynomial in `z_1, ..., z_r` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub rank: usize,
    pub terms: BTreeMap<Vec<i64>, Rational>,
}

impl Laurent {
    pub fn zero(rank: usize) -> Self {
        Laurent { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], Rational::one())
    }

    pub fn monomial(mu: Vec<i64>, c: Rational) -> Self {
        let rank = mu.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mu, c);
        }
        Laurent { rank, terms }
    }

    /// `1 − c z^λ`.
    pub fn one_minus(c: &Rational, lambda: &[i64]) -> Self {
        Self::one(lambda.len()).add(&Self::monomial(lambda.to_vec(), -c.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, v) in &o.terms {
            *terms.entry(k.clone()).or_insert_with(Rational::zero) += v;
        }
        terms.retain(|_, v| !v.is_zero());
        Laurent { rank: self.rank, terms }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut terms: BTreeMap<_, _> = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        terms.retain(|_, v: &mut Rational| !v.is_zero());
        Laurent { rank: self.rank, terms }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let k: Vec<i64> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                *terms.entry(k).or_insert_with(Rational::zero) += x * y;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Laurent { rank: self.rank, terms }
    }

    /// Applies `z^μ ↦ f(μ) z^{g(μ)}` termwise.
    pub fn map_terms(&self, f: impl Fn(&[i64], &Rational) -> Result<(Vec<i64>, Rational)>) -> Result<Self> {
        let mut out = Self::zero(self.rank);
        for (k, v) in &self.terms {
            let (m, c) = f(k, v)?;
            out = out.add(&Self::monomial(m, c));
        }
        Ok(out)
    }

    fn min_exponents(&self) -> Vec<i64> {
        (0..self.rank).map(|j| self.terms.keys().map(|k| k[j]).min().unwrap_or(0)).collect()
    }

    /// Shifted to a polynomial with no monomial content.
    fn to_poly(&self) -> (MultivariatePolynomial, Vec<i64>) {
        let names: Vec<String> = (1..=self.rank).map(|j| format!("z{j}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let vars = variables(&refs);
        let m = self.min_exponents();
        let p = MultivariatePolynomial::from_terms(
            &vars,
            self.terms.iter().map(|(k, v)| (k.iter().zip(&m).map(|(a, b)| (a - b) as u32).collect(), v.clone())),
        );
        (p, m)
    }

    fn from_poly(rank: usize, p: &MultivariatePolynomial, shift: &[i64]) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(k, v)| (k.iter().zip(shift).map(|(&a, b)| a as i64 + b).collect(), v.clone()))
            .collect();
        Laurent { rank, terms }
    }

    /// Exact quotient in the Laurent ring, if it exists.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.rank));
        }
        let (pn, sn) = self.to_poly();
        let (pd, sd) = d.to_poly();
        let q = pn.div_exact(&pd)?;
        let shift: Vec<i64> = sn.iter().zip(&sd).map(|(a, b)| a - b).collect();
        Some(Self::from_poly(self.rank, &q, &shift))
    }

    /// `⟨μ, g⟩` over the support: `(min, max)`.
    fn height_range(&self, g: &[i64]) -> Option<(i64, i64)> {
        let h = self.terms.keys().map(|k| WeightList::pair(k, g));
        Some((h.clone().min()?, h.max()?))
    }
}

fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        crate::algebra::rational::format_rational(x)
    }
}

fn render_monomial(mu: &[i64]) -> String {
    let s: String = mu
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(j, &e)| if e == 1 { format!("z{}", j + 1) } else { format!("z{}^{}", j + 1, e) })
        .collect();
    s
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            let m = render_monomial(k);
            let c = format_rational(v);
            let body = match (m.is_empty(), c.as_str()) {
                (true, _) => c.clone(),
                (false, "1") => m,
                (false, "-1") => format!("-{m}"),
                (false, _) => format!("{c}*{m}"),
            };
            if i > 0 && !body.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

/// `(1 − c z^λ)^{mult}` in a denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenominatorFactor {
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub coeff: Rational,
    pub lambda: Vec<i64>,
    pub mult: u32,
}

/// `numerator / ∏ (1 − c_k z^{λ_k})^{m_k}`.
#[derive(Clone, Debug)]
pub struct MellinImage {
    pub rank: usize,
    pub numerator: Laurent,
    pub factors: Vec<DenominatorFactor>,
}

impl MellinImage {
    pub fn laurent(numerator: Laurent) -> Self {
        MellinImage { rank: numerator.rank, numerator, factors: Vec::new() }
    }

    /// `numerator / ∏_i (1 − z^{λ_i})`, one factor per listed weight.
    pub fn over_weights(numerator: Laurent, lambdas: &[Vec<i64>]) -> Self {
        let mut m = Self::laurent(numerator);
        for l in lambdas {
            m.push_factor(Rational::one(), l.clone(), 1);
        }
        m
    }

    pub fn push_factor(&mut self, coeff: Rational, lambda: Vec<i64>, mult: u32) {
        if mult == 0 {
            return;
        }
        match self.factors.iter_mut().find(|f| f.coeff == coeff && f.lambda == lambda) {
            Some(f) => f.mult += mult,
            None => self.factors.push(DenominatorFactor { coeff, lambda, mult }),
        }
    }

    pub fn denominator(&self) -> Laurent {
        let mut d = Laurent::one(self.rank);
        for f in &self.factors {
            let b = Laurent::one_minus(&f.coeff, &f.lambda);
            for _ in 0..f.mult {
                d = d.mul(&b);
            }
        }
        d
    }

    /// Cancels every recorded factor that divides the numerator.
    pub fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.factors.clear();
            return;
        }
        for f in &mut self.factors {
            let b = Laurent::one_minus(&f.coeff, &f.lambda);
            while f.mult > 0 {
                match self.numerator.div_exact(&b) {
                    Some(q) => {
                        self.numerator = q;
                        f.mult -= 1;
                    }
                    None => break,
                }
            }
        }
        self.factors.retain(|f| f.mult > 0);
        self.factors.sort_by(|a, b| a.lambda.cmp(&b.lambda).then(a.coeff.cmp(&b.coeff)));
    }

    pub fn normalized(&self) -> Self {
        let mut m = self.clone();
        m.normalize();
        m
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = Self::laurent(self.numerator.mul(&o.numerator));
        for f in self.factors.iter().chain(&o.factors) {
            m.push_factor(f.coeff.clone(), f.lambda.clone(), f.mult);
        }
        m
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.numerator.mul(&o.denominator()).add(&o.numerator.mul(&self.denominator()));
        let mut m = Self::laurent(n);
        for f in self.factors.iter().chain(&o.factors) {
            m.push_factor(f.coeff.clone(), f.lambda.clone(), f.mult);
        }
        m
    }

    /// Equality as rational functions.
    pub fn same_function(&self, o: &Self) -> bool {
        self.numerator.mul(&o.denominator()) == o.numerator.mul(&self.denominator())
    }

    /// Power-series coefficients at every `μ` with `⟨μ, g⟩ ≤ height`,
    /// expanding each `1/(1 − c z^λ)` geometrically; needs `⟨λ, g⟩ ≥ 1`.
    pub fn series(&self, g: &[i64], height: i64) -> Result<BTreeMap<Vec<i64>, Rational>> {
        let mut acc = self.numerator.clone();
        let Some((lo, _)) = acc.height_range(g) else {
            return Ok(BTreeMap::new());
        };
        for f in &self.factors {
            let step = WeightList::pair(&f.lambda, g);
            if step < 1 {
                return Err(Error::domain(format!("factor with λ = {:?} is not expandable along the grading", f.lambda)));
            }
            let mut geo = Laurent::zero(self.rank);
            let mut k = 0i64;
            let mut ck = Rational::one();
            while lo + k * step <= height {
                geo = geo.add(&Laurent::monomial(f.lambda.iter().map(|x| x * k).collect(), ck.clone()));
                ck *= &f.coeff;
                k += 1;
            }
            for _ in 0..f.mult {
                acc = acc.mul(&geo);
                acc.terms.retain(|m, _| WeightList::pair(m, g) <= height);
            }
        }
        acc.terms.retain(|m, _| WeightList::pair(m, g) <= height);
        Ok(acc.terms)
    }
}

impl PartialEq for MellinImage {
    fn eq(&self, o: &Self) -> bool {
        self.same_function(o)
    }
}

impl fmt::Display for MellinImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({})/(", self.numerator)?;
        for d in &self.factors {
            let c = format_rational(&d.coeff);
            let m = render_monomial(&d.lambda);
            let m = if m.is_empty() { "1".to_string() } else { m };
            let inner = if c == "1" { format!("(1-{m})") } else { format!("(1-{c}*{m})") };
            if d.mult == 1 {
                write!(f, "{inner}")?;
            } else {
                write!(f, "{inner}^{}", d.mult)?;
            }
        }
        write!(f, ")")
    }
}

/// `M(φ) = Σ φ(μ) z^μ`; a tail contributes `∏ 1/(1 − z^{λ_i})`.
pub fn mellin(phi: &LatticeFunction) -> MellinImage {
    let mut n = Laurent::zero(phi.rank);
    for (k, v) in &phi.points {
        n = n.add(&Laurent::monomial(k.clone(), v.clone()));
    }
    let m = match &phi.tail {
        None => MellinImage::laurent(n),
        Some(rho) => MellinImage::over_weights(n, rho.weights()),
    };
    m.normalized()
}

/// Inverse of [`mellin`] on Laurent polynomials.
pub fn inverse_mellin_plain(m: &MellinImage) -> Result<LatticeFunction> {
    let m = m.normalized();
    if !m.factors.is_empty() {
        return Err(Error::domain(format!("{m} is not a Laurent polynomial")));
    }
    LatticeFunction::plain(m.rank, m.numerator.terms.clone())
}

/// Whether `∏ (z^{λ_i} − 1) · M` is a Laurent polynomial.
pub fn schwartz_membership(m: &MellinImage, rho: &WeightList) -> bool {
    if m.rank != rho.rank() {
        return false;
    }
    let mut n = m.numerator.clone();
    for l in rho.weights() {
        n = n.mul(&Laurent::one_minus(&Rational::one(), l).neg());
    }
    n.div_exact(&m.denominator()).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use crate::padic::lattice::partition_c_rho;

    #[test]
    fn delta_and_c_rho() {
        let m = mellin(&LatticeFunction::delta(&[2, -1]));
        assert_eq!(m.to_string(), "z1^2z2^-1");
        let rho = WeightList::parse("1,0;0,1;1,1").unwrap();
        let m = mellin(&LatticeFunction::c_rho(&rho));
        assert_eq!(m.to_string(), "(1)/((1-z2)(1-z1)(1-z1z2))");
        assert!(schwartz_membership(&m, &rho));
    }

    #[test]
    fn series_matches_partition_counts() {
        for w in ["1;1", "1,0;0,1;1,1", "1,0;1,1;1,2", "2;3"] {
            let rho = WeightList::parse(w).unwrap();
            let g = rho.grading().unwrap();
            let s = mellin(&LatticeFunction::c_rho(&rho)).series(&g, 10).unwrap();
            for (mu, c) in &s {
                assert_eq!(*c, int(partition_c_rho(&rho, mu).unwrap() as i64), "{w} at {mu:?}");
            }
            assert!(!s.is_empty());
        }
    }

    #[test]
    fn membership_rejects_missing_factors() {
        let rho = WeightList::parse("1").unwrap();
        let sq = MellinImage::over_weights(Laurent::one(1), &[vec![1], vec![1]]);
        assert!(!schwartz_membership(&sq, &rho));
        let double = MellinImage::over_weights(Laurent::one(1), &[vec![2]]);
        assert!(!schwartz_membership(&double, &rho));
        let rho2 = WeightList::parse("1;1").unwrap();
        assert!(schwartz_membership(&sq, &rho2));
        let plain = mellin(&LatticeFunction::plain(1, [(vec![3], int(2)), (vec![-1], int(1))]).unwrap());
        assert!(schwartz_membership(&plain, &rho));
    }

    #[test]
    fn normalization_cancels() {
        let n = Laurent::one_minus(&int(1), &[1]).mul(&Laurent::monomial(vec![4], int(3)));
        let m = MellinImage::over_weights(n, &[vec![1], vec![2]]).normalized();
        assert_eq!(m.factors.len(), 1);
        assert_eq!(m.to_string(), "(3*z1^4)/((1-z1^2))");
    }

    #[test]
    fn round_trip() {
        let f = LatticeFunction::plain(2, [(vec![0, 1], int(3)), (vec![-2, 5], int(-1))]).unwrap();
        assert_eq!(inverse_mellin_plain(&mellin(&f)).unwrap(), f);
    }
}
