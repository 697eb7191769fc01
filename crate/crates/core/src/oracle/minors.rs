//! Invariant factors from determinantal divisors, for checking the normal forms.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::IntMatrix;

/// Fraction-free Gaussian elimination (Bareiss).
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols(), "square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i)).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `d_k` = gcd of all `k × k` minors, for `k = 1 ..` while nonzero.
pub fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rows in (0..m.rows()).combinations(k) {
            let sub = m.select_rows(&rows);
            for cols in (0..m.cols()).combinations(k) {
                g = g.gcd(&determinant(&sub.select_cols(&cols)));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

/// Nonzero invariant factors `d_k / d_{k-1}`.
pub fn invariant_factors_by_minors(m: &IntMatrix) -> Vec<BigInt> {
    let d = determinantal_divisors(m);
    let mut prev = BigInt::one();
    d.into_iter()
        .map(|dk| {
            let s = &dk / &prev;
            prev = dk;
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(determinant(&m), BigInt::from(-144));
        let f: Vec<i64> = invariant_factors_by_minors(&m).iter().map(|d| i64::try_from(d).unwrap()).collect();
        assert_eq!(f, vec![2, 6, 12]);
        assert!(invariant_factors_by_minors(&IntMatrix::zeros(2, 3)).is_empty());
    }
}
