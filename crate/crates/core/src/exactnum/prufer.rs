use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{is_prime, pow_u64};
use crate::error::{Error, Result};

/// An element `num / p^expo mod 1` of the Prüfer group `Z(p^∞)`.
///
/// Always stored reduced: `0 <= num < p^expo` and `p ∤ num`, with the zero
/// element normalised to `num = 0, expo = 0`. Equality is therefore field-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PruferElt {
    p: u64,
    num: BigInt,
    expo: u32,
}

impl PruferElt {
    pub fn new(p: u64, num: impl Into<BigInt>, expo: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::reduced(p, num.into(), expo))
    }

    pub fn zero(p: u64) -> Self {
        PruferElt { p, num: BigInt::zero(), expo: 0 }
    }

    /// `1/p^k`, the standard generator of the order-`p^k` subgroup.
    pub fn unit_fraction(p: u64, k: u32) -> Self {
        Self::reduced(p, BigInt::one(), k)
    }

    fn reduced(p: u64, num: BigInt, mut expo: u32) -> Self {
        let bp = BigInt::from(p);
        let mut num = num.mod_floor(&pow_u64(p, expo));
        while expo > 0 && !num.is_zero() && (&num % &bp).is_zero() {
            num /= &bp;
            expo -= 1;
        }
        if num.is_zero() {
            expo = 0;
        }
        PruferElt { p, num, expo }
    }

    /// Class of a rational number whose reduced denominator is a power of `p`.
    pub fn from_rational(p: u64, q: &BigRational) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut den = q.denom().clone();
        let bp = BigInt::from(p);
        let mut expo = 0u32;
        while (&den % &bp).is_zero() {
            den /= &bp;
            expo += 1;
        }
        if !den.is_one() {
            return Err(Error::NotPrimePowerDenominator(q.to_string(), p));
        }
        Ok(Self::reduced(p, q.numer().clone(), expo))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn expo(&self) -> u32 {
        self.expo
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Representative in `[0, 1)`.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), pow_u64(self.p, self.expo))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let e = self.expo.max(other.expo);
        let a = &self.num * pow_u64(self.p, e - self.expo);
        let b = &other.num * pow_u64(self.p, e - other.expo);
        Ok(Self::reduced(self.p, a + b, e))
    }

    pub fn neg(&self) -> Self {
        Self::reduced(self.p, -self.num.clone(), self.expo)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// The Z-action `n · a`.
    pub fn scale(&self, n: &BigInt) -> Self {
        Self::reduced(self.p, &self.num * n, self.expo)
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        self.scale(&BigInt::from(n))
    }

    /// Additive order, always `p^expo` (1 for zero).
    pub fn additive_order(&self) -> BigInt {
        pow_u64(self.p, self.expo)
    }
}

impl fmt::Display for PruferElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, pow_u64(self.p, self.expo))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pe(p: u64, n: i64, e: u32) -> PruferElt {
        PruferElt::new(p, n, e).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(pe(2, 1, 1).add(&pe(2, 1, 2)).unwrap(), pe(2, 3, 2));
        assert!(pe(3, 1, 1).add(&pe(3, 2, 1)).unwrap().is_zero());
        assert_eq!(pe(2, 3, 3).add(&pe(2, 1, 3)).unwrap(), pe(2, 1, 1));
        assert_eq!(
            pe(2, 1, 1).add(&pe(3, 1, 1)),
            Err(Error::PrimeMismatch(2, 3))
        );
    }

    #[test]
    fn scale_examples() {
        assert_eq!(pe(2, 1, 2).scale_i64(2), pe(2, 1, 1));
        assert!(pe(2, 1, 1).scale_i64(2).is_zero());
        assert_eq!(pe(2, 1, 2).scale_i64(3), pe(2, 3, 4 - 2));
    }

    #[test]
    fn order_examples() {
        assert_eq!(pe(2, 3, 3).additive_order(), BigInt::from(8));
        assert_eq!(PruferElt::zero(5).additive_order(), BigInt::from(1));
        assert_eq!(pe(3, 1, 2).additive_order(), BigInt::from(9));
    }

    #[test]
    fn canonical_form() {
        // 6/8 = 3/4, -1/4 = 3/4, 8/8 = 0
        assert_eq!(pe(2, 6, 3), pe(2, 3, 2));
        assert_eq!(pe(2, -1, 2), pe(2, 3, 2));
        assert_eq!(pe(2, 8, 3), PruferElt::zero(2));
        assert_eq!(pe(2, 8, 3).expo(), 0);
        let q = BigRational::new(5.into(), 12.into());
        assert!(PruferElt::from_rational(2, &q).is_err());
        let q = BigRational::new((-7).into(), 9.into());
        assert_eq!(PruferElt::from_rational(3, &q).unwrap(), pe(3, 2, 2));
        assert_eq!(PruferElt::new(4, 1, 1), Err(Error::NotPrime(4)));
    }
}
