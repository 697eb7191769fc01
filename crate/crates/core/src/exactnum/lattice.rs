use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{hermite_normal_form, IntMatrix};

/// A sublattice of `Z^n`, stored as the nonzero columns of its column HNF.
///
/// The stored basis is canonical, so two lattices are equal iff their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: IntMatrix::zeros(ambient, 0), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_matrix(&IntMatrix::identity(ambient))
    }

    /// Lattice spanned by the columns of `m`.
    pub fn from_matrix(m: &IntMatrix) -> Self {
        let ambient = m.rows();
        let (h, _) = hermite_normal_form(m);
        let mut cols = Vec::new();
        let mut pivots = Vec::new();
        for j in 0..h.cols() {
            let c = h.col(j);
            if let Some(r) = c.iter().position(|x| !x.is_zero()) {
                pivots.push(r);
                cols.push(c);
            }
        }
        Lattice { ambient, basis: IntMatrix::from_cols(ambient, &cols), pivots }
    }

    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Self {
        Self::from_matrix(&IntMatrix::from_cols(ambient, gens))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient && self.pivots.iter().enumerate().all(|(k, &r)| self.basis[(r, k)].is_one())
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut res = v.to_vec();
        let mut out = Vec::with_capacity(self.rank());
        let mut row = 0;
        for (k, &r) in self.pivots.iter().enumerate() {
            if res[row..r].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let piv = &self.basis[(r, k)];
            if !(&res[r] % piv).is_zero() {
                return None;
            }
            let c = &res[r] / piv;
            if !c.is_zero() {
                for i in r..self.ambient {
                    let d = &self.basis[(i, k)] * &c;
                    res[i] -= d;
                }
            }
            out.push(c);
            row = r + 1;
        }
        if res.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(out)
    }

    /// Coordinates over Q: solves `basis · c = v` when `v` is in the Q-span.
    pub fn rational_coords(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut res = v.to_vec();
        let mut out = Vec::with_capacity(self.rank());
        let mut row = 0;
        for (k, &r) in self.pivots.iter().enumerate() {
            if res[row..r].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let piv = BigRational::from_integer(self.basis[(r, k)].clone());
            let c = &res[r] / &piv;
            if !c.is_zero() {
                for i in r..self.ambient {
                    let d = BigRational::from_integer(self.basis[(i, k)].clone()) * &c;
                    res[i] -= d;
                }
            }
            out.push(c);
            row = r + 1;
        }
        if res.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(out)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut g = self.basis_vectors();
        g.extend(other.basis_vectors());
        Lattice::from_generators(self.ambient, &g)
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if self.is_zero() || other.is_zero() {
            return Lattice::zero(self.ambient);
        }
        let stacked = self.basis.hstack(&other.basis.neg()).expect("rows agree");
        let k = kernel(&stacked);
        let r = self.rank();
        let gens: Vec<Vec<BigInt>> = k
            .basis_vectors()
            .iter()
            .map(|c| self.basis.apply(&c[..r]))
            .collect();
        Lattice::from_generators(self.ambient, &gens)
    }

    /// `{ v : a·v ∈ self }` for a matrix `a` with `a.rows() == self.ambient`.
    pub fn preimage(&self, a: &IntMatrix) -> Lattice {
        assert_eq!(a.rows(), self.ambient, "preimage shape");
        let n = a.cols();
        let stacked = a.hstack(&self.basis.neg()).expect("rows agree");
        let k = kernel(&stacked);
        let gens: Vec<Vec<BigInt>> = k.basis_vectors().iter().map(|c| c[..n].to_vec()).collect();
        Lattice::from_generators(n, &gens)
    }

    /// Image `a · self`.
    pub fn image(&self, a: &IntMatrix) -> Lattice {
        let gens: Vec<Vec<BigInt>> = self.basis_vectors().iter().map(|c| a.apply(c)).collect();
        Lattice::from_generators(a.rows(), &gens)
    }

    /// Index `[Z^n : self]` when finite.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() < self.ambient {
            return None;
        }
        let mut d = BigInt::one();
        for (k, &r) in self.pivots.iter().enumerate() {
            d *= &self.basis[(r, k)];
        }
        Some(d)
    }
}

/// Integer kernel `{ v : m·v = 0 }`.
pub fn kernel(m: &IntMatrix) -> Lattice {
    let (h, u) = hermite_normal_form(m);
    let gens: Vec<Vec<BigInt>> = (0..h.cols())
        .filter(|&j| h.col(j).iter().all(Zero::is_zero))
        .map(|j| u.col(j))
        .collect();
    Lattice::from_generators(m.cols(), &gens)
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (k, v) in self.basis_vectors().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "⟩")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn membership_and_coords() {
        let l = Lattice::from_generators(2, &[v(&[2, 1]), v(&[0, 2])]);
        assert!(l.contains(&v(&[2, 3])));
        assert!(!l.contains(&v(&[1, 0])));
        assert!(l.contains(&v(&[0, 0])));
        assert_eq!(l.index(), Some(BigInt::from(4)));
        let c = l.coords(&v(&[4, 6])).unwrap();
        assert_eq!(l.basis().apply(&c), v(&[4, 6]));
    }

    #[test]
    fn intersection_and_preimage() {
        let a = Lattice::from_generators(2, &[v(&[2, 0]), v(&[0, 1])]);
        let b = Lattice::from_generators(2, &[v(&[3, 0]), v(&[0, 2])]);
        let c = a.intersect(&b);
        assert_eq!(c, Lattice::from_generators(2, &[v(&[6, 0]), v(&[0, 2])]));
        // preimage of 6Z under multiplication by 4 is 3Z/… : {v : 4v ∈ 6Z} = 3Z
        let six = Lattice::from_generators(1, &[v(&[6])]);
        let pre = six.preimage(&IntMatrix::from_rows(&[vec![4]]));
        assert_eq!(pre, Lattice::from_generators(1, &[v(&[3])]));
        let k = kernel(&IntMatrix::from_rows(&[vec![1, 1, 1]]));
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&v(&[1, -1, 0])));
        assert!(Lattice::full(3).is_full());
        assert!(!Lattice::from_generators(1, &[v(&[2])]).is_full());
    }

    #[test]
    fn canonical_equality() {
        let a = Lattice::from_generators(2, &[v(&[1, 1]), v(&[1, -1])]);
        let b = Lattice::from_generators(2, &[v(&[2, 0]), v(&[1, 1]), v(&[0, 2])]);
        assert_eq!(a, b);
    }
}
