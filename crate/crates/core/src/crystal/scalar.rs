//! Entry types the involutions can run over.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::algebra::{Rational, RationalFunction};
use crate::error::{Error, Result};

/// A field element with a context-dependent zero (rational functions need
/// their variable list, dual numbers their gradient length).
pub trait CrystalScalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Fails with a pole error when `o` is zero.
    fn div(&self, o: &Self) -> Result<Self>;
}

impl CrystalScalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::pole("division by zero"));
        }
        Ok(self / o)
    }
}

impl CrystalScalar for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::constant(self.vars(), Rational::zero())
    }
    fn one_like(&self) -> Self {
        RationalFunction::constant(self.vars(), Rational::one())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.checked_div(o)
    }
}

/// Forward-mode dual number over Q: a value with its exact gradient.
#[derive(Clone, PartialEq, Debug)]
pub struct Dual {
    pub value: Rational,
    pub grad: Vec<Rational>,
}

impl Dual {
    pub fn constant(value: Rational, nvars: usize) -> Self {
        Dual { value, grad: vec![Rational::zero(); nvars] }
    }

    /// The `i`-th coordinate function evaluated at `value`.
    pub fn variable(value: Rational, i: usize, nvars: usize) -> Self {
        let mut grad = vec![Rational::zero(); nvars];
        grad[i] = Rational::one();
        Dual { value, grad }
    }
}

impl CrystalScalar for Dual {
    fn zero_like(&self) -> Self {
        Dual::constant(Rational::zero(), self.grad.len())
    }
    fn one_like(&self) -> Self {
        Dual::constant(Rational::one(), self.grad.len())
    }
    fn is_zero_value(&self) -> bool {
        self.value.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Dual { value: &self.value + &o.value, grad: self.grad.iter().zip(&o.grad).map(|(a, b)| a + b).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        Dual { value: &self.value - &o.value, grad: self.grad.iter().zip(&o.grad).map(|(a, b)| a - b).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        Dual {
            value: &self.value * &o.value,
            grad: self.grad.iter().zip(&o.grad).map(|(a, b)| a * &o.value + &self.value * b).collect(),
        }
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.value.is_zero() {
            return Err(Error::pole("division by zero"));
        }
        let inv = o.value.recip();
        let inv2 = &inv * &inv;
        Ok(Dual {
            value: &self.value * &inv,
            grad: self
                .grad
                .iter()
                .zip(&o.grad)
                .map(|(a, b)| (a * &o.value - &self.value * b) * &inv2)
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn dual_quotient_rule() {
        let x = Dual::variable(int(3), 0, 2);
        let y = Dual::variable(int(2), 1, 2);
        let q = x.div(&y).unwrap();
        assert_eq!(q.value, crate::algebra::rational::rat(3, 2));
        assert_eq!(q.grad, vec![crate::algebra::rational::rat(1, 2), crate::algebra::rational::rat(-3, 4)]);
        assert!(x.div(&x.zero_like()).unwrap_err().is_pole());
    }
}
