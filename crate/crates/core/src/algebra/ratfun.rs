//! Rational functions over Q in canonical form.
//!
//! The numerator and denominator are coprime and the denominator has
//! lex-leading coefficient 1, so structural equality is equality of
//! functions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{gcd, MultivariatePolynomial as P};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: P,
    den: P,
}

type R = RationalFunction;

impl RationalFunction {
    /// Normalizes `num / den`. Fails if `den` is zero.
    pub fn new(num: P, den: P) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::pole("zero denominator"));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: P, den: P) -> Self {
        if num.is_zero() {
            return R { den: P::one(num.vars()), num };
        }
        let g = gcd(&num, &den);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = d.leading_coefficient();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        R { num: n, den: d }
    }

    pub fn from_poly(p: P) -> Self {
        let den = P::one(p.vars());
        R { num: p, den }
    }

    pub fn constant(vars: &Arc<[String]>, c: Rational) -> Self {
        Self::from_poly(P::constant(vars, c))
    }

    pub fn var(vars: &Arc<[String]>, i: usize) -> Self {
        Self::from_poly(P::var(vars, i))
    }

    pub fn numerator(&self) -> &P {
        &self.num
    }

    pub fn denominator(&self) -> &P {
        &self.den
    }

    pub fn vars(&self) -> &Arc<[String]> {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Exact value at `point`, failing if the reduced denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.num.nvars() {
            return Err(Error::domain(format!(
                "point has {} coordinates, function has {} variables",
                point.len(),
                self.num.nvars()
            )));
        }
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::pole(format!("denominator {} vanishes", self.den)));
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::pole("division by the zero rational function"));
        }
        Ok(Self::normalized(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn derivative(&self, v: usize) -> Self {
        let n = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        Self::normalized(n, &self.den * &self.den)
    }
}

impl Add<&R> for &R {
    type Output = R;
    fn add(self, o: &R) -> R {
        if self.den == o.den {
            return R::normalized(&self.num + &o.num, self.den.clone());
        }
        R::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub<&R> for &R {
    type Output = R;
    fn sub(self, o: &R) -> R {
        self + &(-o)
    }
}

impl Mul<&R> for &R {
    type Output = R;
    fn mul(self, o: &R) -> R {
        R::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div<&R> for &R {
    type Output = R;
    /// Panics on division by zero; use [`RationalFunction::checked_div`].
    fn div(self, o: &R) -> R {
        self.checked_div(o).expect("division by zero rational function")
    }
}

impl Neg for &R {
    type Output = R;
    fn neg(self) -> R {
        R { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl Add for RationalFunction {
    type Output = R;
    fn add(self, o: R) -> R {
        &self + &o
    }
}
