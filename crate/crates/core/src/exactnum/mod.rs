//! Exact arithmetic: Prüfer-group elements, dense integer matrices, Hermite and
//! Smith normal forms, and integer lattices built on top of them.

mod lattice;
mod matrix;
mod normal_form;
mod prufer;

pub use lattice::Lattice;
pub use matrix::IntMatrix;
pub use lattice::kernel;
pub use normal_form::{hermite_normal_form, invariant_factors, smith_normal_form};
pub use prufer::PruferElt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Trial-division primality test; all primes in this crate are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rational primes `q <= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&q| is_prime(q)).collect()
}

/// Extended gcd with a non-negative gcd: returns `(g, s, t)` with `g = s*a + t*b`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// `p`-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    Some(v)
}

/// Distinct prime divisors of a nonzero integer, ascending.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while n > BigInt::one() {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            // remaining cofactor is prime; all primes used here fit in u64
            out.push(u64::try_from(&n).expect("prime divisor exceeds u64"));
            break;
        }
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 1;
    }
    out
}

pub fn pow_u64(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_identity() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, s, t) = ext_gcd(&a.into(), &b.into());
                assert_eq!(g, BigInt::from(a.gcd(&b)));
                assert_eq!(&s * a + &t * b, g);
            }
        }
    }

    #[test]
    fn primes_and_divisors() {
        assert_eq!(primes_up_to(11), vec![2, 3, 5, 7, 11]);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(prime_divisors(&BigInt::from(360)), vec![2, 3, 5]);
        assert_eq!(prime_divisors(&BigInt::from(-49)), vec![7]);
        assert_eq!(valuation(&BigInt::from(48), 2), Some(4));
        assert_eq!(valuation(&BigInt::from(0), 2), None);
    }
}
