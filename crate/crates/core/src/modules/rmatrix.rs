use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::IntMatrix;
use crate::ring::RingElt;

/// A matrix `A + xB` over `Z[x]/(x²)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix {
    a: IntMatrix,
    b: IntMatrix,
}

impl RMatrix {
    pub fn new(a: IntMatrix, b: IntMatrix) -> Result<Self> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(Error::Shape("constant and x parts differ in shape".into()));
        }
        Ok(RMatrix { a, b })
    }

    pub fn constant(a: IntMatrix) -> Self {
        let b = IntMatrix::zeros(a.rows(), a.cols());
        RMatrix { a, b }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::constant(IntMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(IntMatrix::identity(n))
    }

    /// `x · I_n`.
    pub fn x_times_identity(n: usize) -> Self {
        RMatrix { a: IntMatrix::zeros(n, n), b: IntMatrix::identity(n) }
    }

    /// From ring elements; every entry must lie in `Z[x]/(x²)`.
    pub fn from_elements(rows: &[Vec<RingElt>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut a = IntMatrix::zeros(r, c);
        let mut b = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Shape("ragged ring matrix".into()));
            }
            for (j, e) in row.iter().enumerate() {
                let (ea, eb) = e
                    .int_coords()
                    .ok_or_else(|| Error::UnsupportedDifferential(format!("entry {e} is not in Z[x]/(x^2)")))?;
                a[(i, j)] = ea;
                b[(i, j)] = eb;
            }
        }
        Ok(RMatrix { a, b })
    }

    /// Entries given as `(a, b)` pairs meaning `a + bx`.
    pub fn from_pairs(rows: &[Vec<(i64, i64)>]) -> Self {
        let a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|e| e.0).collect()).collect();
        let b: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|e| e.1).collect()).collect();
        RMatrix { a: IntMatrix::from_rows(&a), b: IntMatrix::from_rows(&b) }
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn constant_part(&self) -> &IntMatrix {
        &self.a
    }

    pub fn x_part(&self) -> &IntMatrix {
        &self.b
    }

    pub fn entry(&self, i: usize, j: usize) -> RingElt {
        RingElt::int_big(self.a[(i, j)].clone(), self.b[(i, j)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn transpose(&self) -> Self {
        RMatrix { a: self.a.transpose(), b: self.b.transpose() }
    }

    pub fn neg(&self) -> Self {
        RMatrix { a: self.a.neg(), b: self.b.neg() }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        RMatrix { a: self.a.scaled(c), b: self.b.scaled(c) }
    }

    /// `(A + xB)(C + xD) = AC + x(AD + BC)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let a = self.a.mul(&other.a)?;
        let b = self.a.mul(&other.b)?.add(&self.b.mul(&other.a)?)?;
        Ok(RMatrix { a, b })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(RMatrix { a: self.a.add(&other.a)?, b: self.b.add(&other.b)? })
    }

    /// The induced integer matrix `N^cols → N^rows` on Z-generators of a
    /// module `N` whose x-action on generators is `x_action`: block `(i, j)`
    /// is `a_ij·I + b_ij·X`.
    pub fn act_on(&self, x_action: &IntMatrix) -> IntMatrix {
        let n = x_action.rows();
        let id = IntMatrix::identity(n);
        let mut out = IntMatrix::zeros(self.rows() * n, self.cols() * n);
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let (ea, eb) = (&self.a[(i, j)], &self.b[(i, j)]);
                if ea.is_zero() && eb.is_zero() {
                    continue;
                }
                let block = id.scaled(ea).add(&x_action.scaled(eb)).expect("square");
                for k in 0..n {
                    for l in 0..n {
                        out[(i * n + k, j * n + l)] = block[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    /// Integer form on the Z-basis `(e₀, x·e₀, e₁, x·e₁, …)` of free modules.
    pub fn z_form(&self) -> IntMatrix {
        self.act_on(&free_x_action(1))
    }

    /// Reduction of the constant part modulo `q`: the map induced on
    /// `k^cols → k^rows` for `k = R/(q, x)`.
    pub fn residue_mod(&self, q: u64) -> IntMatrix {
        let bq = BigInt::from(q);
        let mut m = self.a.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] = m[(i, j)].mod_floor(&bq);
            }
        }
        m
    }
}

/// x-action on the Z-basis `(e₀, x·e₀, …)` of `R^n`.
pub fn free_x_action(n: usize) -> IntMatrix {
    let mut x = IntMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        x[(2 * j + 1, 2 * j)] = BigInt::from(1);
    }
    x
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows() {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "]")
    }
}
