use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{ext_gcd, IntMatrix};

/// Column-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `H = m · U`: column operations only,
/// so the column lattice of `H` equals that of `m`. `H` is in column echelon
/// form with strictly increasing pivot rows, positive pivots, zeros to the
/// right of each pivot, entries to the left of each pivot reduced into
/// `[0, pivot)`, and all zero columns last. This form is unique per lattice.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pc = 0;
    for r in 0..rows {
        if pc == cols {
            break;
        }
        for j in pc + 1..cols {
            if h[(r, j)].is_zero() {
                continue;
            }
            let a = h[(r, pc)].clone();
            let b = h[(r, j)].clone();
            let (g, s, t) = ext_gcd(&a, &b);
            let (bg, ag) = (&b / &g, &a / &g);
            // det [[s, -b/g], [t, a/g]] = 1
            h.combine_cols(pc, j, &s, &t, &-bg.clone(), &ag);
            u.combine_cols(pc, j, &s, &t, &-bg, &ag);
        }
        if h[(r, pc)].is_zero() {
            continue;
        }
        if h[(r, pc)].is_negative() {
            h.negate_col(pc);
            u.negate_col(pc);
        }
        let piv = h[(r, pc)].clone();
        for j in 0..pc {
            let q = h[(r, j)].div_floor(&piv);
            if !q.is_zero() {
                let nq = -q;
                h.add_col_multiple(j, pc, &nq);
                u.add_col_multiple(j, pc, &nq);
            }
        }
        pc += 1;
    }
    (h, u)
}

fn is_monomial(m: &IntMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).filter(|&j| !m[(i, j)].is_zero()).count() <= 1)
        && (0..m.cols()).all(|j| (0..m.rows()).filter(|&i| !m[(i, j)].is_zero()).count() <= 1)
}

/// Smith normal form by alternating column- and row-Hermite reduction.
///
/// Returns `(S, U, V)` with `U`, `V` unimodular and `U · m · V = S`, where `S`
/// is diagonal with non-negative entries `d₁ | d₂ | …` (zeros last).
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut rounds = 0usize;
    loop {
        let (h, cu) = hermite_normal_form(&s);
        s = h;
        v = v.mul(&cu).expect("shape");
        if is_monomial(&s) {
            break;
        }
        let (ht, ru) = hermite_normal_form(&s.transpose());
        s = ht.transpose();
        u = ru.transpose().mul(&u).expect("shape");
        if is_monomial(&s) {
            break;
        }
        rounds += 1;
        assert!(rounds < 10_000, "smith normal form failed to converge");
    }

    // move the nonzero entries onto the diagonal
    let mut k = 0;
    for j in 0..cols {
        if let Some(i) = (0..rows).find(|&i| !s[(i, j)].is_zero()) {
            s.swap_cols(k, j);
            v.swap_cols(k, j);
            s.swap_rows(k, i);
            u.swap_rows(k, i);
            k += 1;
        }
    }
    for i in 0..k {
        if s[(i, i)].is_negative() {
            s.negate_row(i);
            u.negate_row(i);
        }
    }

    // enforce the divisibility chain with the diag(a, b) -> diag(gcd, lcm) move
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in i + 1..k {
                let a = s[(i, i)].clone();
                let b = s[(j, j)].clone();
                if (&b % &a).is_zero() {
                    continue;
                }
                changed = true;
                let (g, x, y) = ext_gcd(&a, &b);
                // row_i += row_j
                s.add_row_multiple(i, j, &BigInt::from(1));
                u.add_row_multiple(i, j, &BigInt::from(1));
                // columns (i, j) <- (x·c_i + y·c_j, -(b/g)·c_i + (a/g)·c_j)
                let (bg, ag) = (&b / &g, &a / &g);
                s.combine_cols(i, j, &x, &y, &-bg.clone(), &ag);
                v.combine_cols(i, j, &x, &y, &-bg, &ag);
                // row_j -= (s_ji / g) row_i
                let f = -(&s[(j, i)] / &g);
                s.add_row_multiple(j, i, &f);
                u.add_row_multiple(j, i, &f);
                if s[(j, j)].is_negative() {
                    s.negate_row(j);
                    u.negate_row(j);
                }
                debug_assert!(s[(i, j)].is_zero() && s[(j, i)].is_zero());
            }
        }
        if !changed {
            break;
        }
    }
    (s, u, v)
}

/// Nonzero invariant factors `d₁ | d₂ | …` of the Smith form.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (s, _, _) = smith_normal_form(m);
    (0..s.rows().min(s.cols())).map(|i| s[(i, i)].clone()).filter(|d| !d.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hermite_normal_form(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(h, m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(u, IntMatrix::identity(2));
        let (h, _) = hermite_normal_form(&m(&[vec![0]]));
        assert_eq!(h, m(&[vec![0]]));
        let a = m(&[vec![4, 6]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, m(&[vec![2, 0]]));
        assert_eq!(a.mul(&u).unwrap(), h);
        assert!(u.inverse_unimodular().is_ok());
    }

    #[test]
    fn snf_examples() {
        let (s, u, v) = smith_normal_form(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s, m(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(u.mul(&m(&[vec![2, 0], vec![0, 3]])).unwrap().mul(&v).unwrap(), s);
        let (s, _, _) = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s, IntMatrix::identity(3));
        let (s, _, _) = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert_eq!(s, IntMatrix::zeros(2, 2));
    }

    #[test]
    fn snf_rectangular_and_zero_interleaved() {
        let a = m(&[vec![0, 0, 4], vec![0, 6, 0]]);
        let (s, u, v) = smith_normal_form(&a);
        assert_eq!(u.mul(&a).unwrap().mul(&v).unwrap(), s);
        assert_eq!(s, m(&[vec![2, 0, 0], vec![0, 12, 0]]));
        assert_eq!(invariant_factors(&a), vec![BigInt::from(2), BigInt::from(12)]);
    }
}
