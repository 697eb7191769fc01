//! The dual-number rings `A[x]/(x²)` for `A ∈ {Z, Q, Z_(p), F_p}`, their
//! ideals (as integer lattices in the `(a, b)` coordinates of `a + bx`), the
//! prime spectrum of `Z[x]/(x²)`, residue fields and localizations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{is_prime, primes_up_to, IntMatrix, Lattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRing {
    Integers,
    Rationals,
    IntegersLocalizedAt(u64),
    FiniteField(u64),
}

impl BaseRing {
    fn validate(self) -> Result<Self> {
        match self {
            BaseRing::IntegersLocalizedAt(p) | BaseRing::FiniteField(p) if !is_prime(p) => {
                Err(Error::NotPrime(p))
            }
            b => Ok(b),
        }
    }

    /// Normalises a scalar into this base ring, or rejects it.
    pub fn scalar(self, q: BigRational) -> Result<BigRational> {
        let outside = || Error::ScalarOutsideRing(q.to_string(), self.to_string());
        match self {
            BaseRing::Integers => q.is_integer().then_some(q.clone()).ok_or_else(outside),
            BaseRing::Rationals => Ok(q),
            BaseRing::IntegersLocalizedAt(p) => {
                if (q.denom() % BigInt::from(p)).is_zero() {
                    Err(outside())
                } else {
                    Ok(q)
                }
            }
            BaseRing::FiniteField(p) => {
                let bp = BigInt::from(p);
                if (q.denom() % &bp).is_zero() {
                    return Err(outside());
                }
                // a/d ↦ a·d⁻¹ mod p
                let d = q.denom().mod_floor(&bp);
                let inv = d.modpow(&(&bp - 2u32), &bp);
                Ok(BigRational::from_integer((q.numer() * inv).mod_floor(&bp)))
            }
        }
    }

    pub fn is_unit_scalar(self, q: &BigRational) -> bool {
        match self {
            BaseRing::Integers => q.abs().is_one(),
            BaseRing::Rationals => !q.is_zero(),
            BaseRing::IntegersLocalizedAt(p) | BaseRing::FiniteField(p) => {
                !q.is_zero() && !(q.numer() % BigInt::from(p)).is_zero()
            }
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::Rationals => write!(f, "Q"),
            BaseRing::IntegersLocalizedAt(p) => write!(f, "Z_({p})"),
            BaseRing::FiniteField(p) => write!(f, "F_{p}"),
        }
    }
}

/// `a + bx` in `A[x]/(x²)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElt {
    base: BaseRing,
    a: BigRational,
    b: BigRational,
}

impl RingElt {
    pub fn new(base: BaseRing, a: BigRational, b: BigRational) -> Result<Self> {
        let base = base.validate()?;
        Ok(RingElt { base, a: base.scalar(a)?, b: base.scalar(b)? })
    }

    /// `a + bx` over `Z`.
    pub fn int(a: i64, b: i64) -> Self {
        Self::int_big(a.into(), b.into())
    }

    pub fn int_big(a: BigInt, b: BigInt) -> Self {
        RingElt { base: BaseRing::Integers, a: BigRational::from_integer(a), b: BigRational::from_integer(b) }
    }

    pub fn in_base(base: BaseRing, a: i64, b: i64) -> Result<Self> {
        Self::new(base, BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn x() -> Self {
        Self::int(0, 1)
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    /// Integer coordinates, when both scalars are integers.
    pub fn int_coords(&self) -> Option<(BigInt, BigInt)> {
        (self.a.is_integer() && self.b.is_integer()).then(|| (self.a.to_integer(), self.b.to_integer()))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Units are exactly the elements whose constant term is a unit.
    pub fn is_unit(&self) -> bool {
        self.base.is_unit_scalar(&self.a)
    }

    pub fn is_zero_divisor(&self) -> bool {
        self.a.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseRingMismatch(self.base.to_string(), other.base.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Self::new(self.base, &self.a + &other.a, &self.b + &other.b)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.base, -self.a.clone(), -self.b.clone()).expect("negation stays in ring")
    }

    /// `(a + bx)(c + dx) = ac + (ad + bc)x`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Self::new(self.base, &self.a * &other.a, &self.a * &other.b + &self.b * &other.a)
    }

    /// Coordinates with denominators cleared by a unit of the base ring.
    fn lattice_vector(&self) -> Vec<BigInt> {
        let d = self.a.denom().lcm(self.b.denom());
        vec![(&self.a * BigRational::from_integer(d.clone())).to_integer(), (&self.b * BigRational::from_integer(d)).to_integer()]
    }
}

impl fmt::Display for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}x", self.b),
            (false, false) => write!(f, "{}+{}x", self.a, self.b),
        }
    }
}

/// An ideal of `A[x]/(x²)`, stored as the integer lattice spanned by the
/// coordinates of `g` and `x·g` for each generator `g`. Over `Z_(p)` and `Q`
/// the lattice is read after tensoring with the base ring; over `F_p` it
/// always contains `pZ²`.
#[derive(Clone, Debug)]
pub struct Ideal {
    base: BaseRing,
    generators: Vec<RingElt>,
    lattice: Lattice,
}

impl Ideal {
    pub fn generated(base: BaseRing, generators: Vec<RingElt>) -> Result<Self> {
        let base = base.validate()?;
        let mut gens = Vec::new();
        for g in &generators {
            if g.base != base {
                return Err(Error::BaseRingMismatch(g.base.to_string(), base.to_string()));
            }
            let v = g.lattice_vector();
            gens.push(vec![BigInt::zero(), v[0].clone()]);
            gens.push(v);
        }
        if let BaseRing::FiniteField(p) = base {
            gens.push(vec![BigInt::from(p), BigInt::zero()]);
            gens.push(vec![BigInt::zero(), BigInt::from(p)]);
        }
        let lattice = Lattice::from_generators(2, &gens);
        Ok(Ideal { base, generators, lattice })
    }

    /// An ideal of `Z[x]/(x²)` from an `x`-stable lattice.
    pub fn from_lattice(lattice: Lattice) -> Result<Self> {
        if lattice.ambient() != 2 {
            return Err(Error::Shape("ideal lattice must live in Z²".into()));
        }
        let generators: Vec<RingElt> =
            lattice.basis_vectors().into_iter().map(|v| RingElt::int_big(v[0].clone(), v[1].clone())).collect();
        for g in &generators {
            let xg = RingElt::x().mul(g)?;
            let (a, b) = xg.int_coords().expect("integral");
            if !lattice.contains(&[a, b]) {
                return Err(Error::InvalidModule(format!("lattice {lattice} is not x-stable")));
            }
        }
        Ok(Ideal { base: BaseRing::Integers, generators, lattice })
    }

    pub fn int(generators: &[(i64, i64)]) -> Self {
        Self::generated(BaseRing::Integers, generators.iter().map(|&(a, b)| RingElt::int(a, b)).collect())
            .expect("integer generators")
    }

    pub fn zero(base: BaseRing) -> Self {
        Self::generated(base, vec![]).expect("valid base")
    }

    pub fn unit(base: BaseRing) -> Self {
        Self::generated(base, vec![RingElt::in_base(base, 1, 0).expect("one")]).expect("valid base")
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn generators(&self) -> &[RingElt] {
        &self.generators
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn contains(&self, r: &RingElt) -> bool {
        if r.base != self.base {
            return false;
        }
        let v = r.lattice_vector();
        match self.base {
            BaseRing::Integers | BaseRing::FiniteField(_) => self.lattice.contains(&v),
            BaseRing::Rationals => {
                let q: Vec<BigRational> = v.into_iter().map(BigRational::from_integer).collect();
                self.lattice.rational_coords(&q).is_some()
            }
            BaseRing::IntegersLocalizedAt(p) => {
                let q: Vec<BigRational> = v.into_iter().map(BigRational::from_integer).collect();
                match self.lattice.rational_coords(&q) {
                    Some(c) => c.iter().all(|c| !(c.denom() % BigInt::from(p)).is_zero()),
                    None => false,
                }
            }
        }
    }

    fn lattice_elements(&self) -> Vec<RingElt> {
        self.lattice
            .basis_vectors()
            .into_iter()
            .map(|v| {
                RingElt::new(self.base, BigRational::from_integer(v[0].clone()), BigRational::from_integer(v[1].clone()))
                    .expect("lattice vectors are integral")
            })
            .collect()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        self.base == other.base && other.lattice_elements().iter().all(|g| self.contains(g))
    }

    pub fn is_unit_ideal(&self) -> bool {
        RingElt::in_base(self.base, 1, 0).map(|one| self.contains(&one)).unwrap_or(false)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.lattice_elements().iter().all(RingElt::is_zero)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut g = self.lattice_elements();
        g.extend(other.lattice_elements());
        Ideal::generated(self.base, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut g = Vec::new();
        for a in self.lattice_elements() {
            for b in other.lattice_elements() {
                g.push(a.mul(&b)?);
            }
        }
        Ideal::generated(self.base, g)
    }

    pub fn pow(&self, k: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(self.base);
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Intersection of ideals of `Z[x]/(x²)`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.base != BaseRing::Integers || other.base != BaseRing::Integers {
            return Err(Error::Precondition("intersection implemented over Z only".into()));
        }
        Ideal::from_lattice(self.lattice.intersect(&other.lattice))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        match (self.base, other.base) {
            (BaseRing::Integers, BaseRing::Integers) => self.lattice == other.lattice,
            _ => self.contains_ideal(other) && other.contains_ideal(self),
        }
    }
}

impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero_ideal() {
            return write!(f, "(0)");
        }
        if self.is_unit_ideal() {
            return write!(f, "(1)");
        }
        let gens: Vec<String> = self.lattice_elements().iter().map(ToString::to_string).collect();
        write!(f, "({})", gens.join(","))
    }
}

/// `{ s : s·r = 0 }`, computed as the kernel of `s ↦ s·r` on coordinates.
pub fn annihilator_of_element(r: &RingElt) -> Ideal {
    let v = r.lattice_vector();
    // (c, d) ↦ (c·a, c·b + d·a)
    let m = IntMatrix::from_cols(2, &[vec![v[0].clone(), v[1].clone()], vec![BigInt::zero(), v[0].clone()]]);
    let ker = match r.base {
        BaseRing::FiniteField(p) => {
            let bp = BigInt::from(p);
            Lattice::from_generators(2, &[vec![bp.clone(), BigInt::zero()], vec![BigInt::zero(), bp]]).preimage(&m)
        }
        _ => crate::exactnum::kernel(&m),
    };
    let gens = ker
        .basis_vectors()
        .into_iter()
        .map(|g| RingElt::new(r.base, BigRational::from_integer(g[0].clone()), BigRational::from_integer(g[1].clone())))
        .collect::<Result<Vec<_>>>()
        .expect("kernel vectors are integral");
    Ideal::generated(r.base, gens).expect("same base")
}

pub fn ideal_membership(r: &RingElt, i: &Ideal) -> bool {
    i.contains(r)
}

/// A prime of `Z[x]/(x²)`: every prime contains the nilpotent `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeIdeal {
    /// `(x)`, the unique minimal prime.
    MinimalX,
    /// `(q, x)` for a rational prime `q`.
    MaximalAt(u64),
}

impl PrimeIdeal {
    pub fn maximal(q: u64) -> Result<Self> {
        if is_prime(q) {
            Ok(PrimeIdeal::MaximalAt(q))
        } else {
            Err(Error::NotPrime(q))
        }
    }

    pub fn to_ideal(self) -> Ideal {
        match self {
            PrimeIdeal::MinimalX => Ideal::int(&[(0, 1)]),
            PrimeIdeal::MaximalAt(q) => Ideal::int(&[(q as i64, 0), (0, 1)]),
        }
    }

    pub fn is_maximal(self) -> bool {
        matches!(self, PrimeIdeal::MaximalAt(_))
    }

    /// `self ⊆ other`.
    pub fn is_contained_in(self, other: PrimeIdeal) -> bool {
        match (self, other) {
            (PrimeIdeal::MinimalX, _) => true,
            (PrimeIdeal::MaximalAt(q), PrimeIdeal::MaximalAt(r)) => q == r,
            (PrimeIdeal::MaximalAt(_), PrimeIdeal::MinimalX) => false,
        }
    }

    /// Membership of an integer element.
    pub fn contains_int(self, a: &BigInt) -> bool {
        match self {
            PrimeIdeal::MinimalX => a.is_zero(),
            PrimeIdeal::MaximalAt(q) => (a % BigInt::from(q)).is_zero(),
        }
    }

    /// `i ⊆ self` for an ideal of `Z[x]/(x²)`; equivalently `R_𝔭 ⊗ R/i ≠ 0`.
    pub fn contains_ideal(self, i: &Ideal) -> bool {
        // every prime contains x, so membership only sees the constant term
        i.lattice().basis_vectors().iter().all(|v| self.contains_int(&v[0]))
    }

    /// Recognises a prime among ideals of `Z[x]/(x²)`.
    pub fn from_ideal(i: &Ideal) -> Option<PrimeIdeal> {
        if *i == PrimeIdeal::MinimalX.to_ideal() {
            return Some(PrimeIdeal::MinimalX);
        }
        let x = RingElt::x();
        if i.base() != BaseRing::Integers || !i.contains(&x) || i.is_unit_ideal() {
            return None;
        }
        // i = (n, x) for the positive generator n of i ∩ Z
        let basis = i.lattice().basis_vectors();
        let n = basis.iter().map(|v| v[0].abs()).find(|a| !a.is_zero())?;
        let q = u64::try_from(&n).ok()?;
        (is_prime(q) && *i == PrimeIdeal::MaximalAt(q).to_ideal()).then_some(PrimeIdeal::MaximalAt(q))
    }

    pub fn residue_field(self) -> BaseRing {
        residue_field(self)
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeIdeal::MinimalX => write!(f, "(x)"),
            PrimeIdeal::MaximalAt(q) => write!(f, "({q},x)"),
        }
    }
}

/// `(x)` together with `(q, x)` for every rational prime `q <= bound`, after an
/// independent certification pass: each ideal contains `x`, is proper, and its
/// quotient has no zero divisors on a sample box of elements.
pub fn spec_enumerate(bound: u64) -> Result<Vec<PrimeIdeal>> {
    let mut out = vec![PrimeIdeal::MinimalX];
    out.extend(primes_up_to(bound).into_iter().map(PrimeIdeal::MaximalAt));
    for p in &out {
        certify_prime(&p.to_ideal()).map_err(|e| Error::Precondition(format!("{p}: {e}")))?;
    }
    Ok(out)
}

fn certify_prime(i: &Ideal) -> std::result::Result<(), String> {
    if !i.contains(&RingElt::x()) {
        return Err("does not contain the nilpotent x".into());
    }
    if i.is_unit_ideal() {
        return Err("not proper".into());
    }
    let sample: Vec<RingElt> =
        (-4..=4).flat_map(|a| (-4..=4).map(move |b| RingElt::int(a, b))).collect();
    for r in &sample {
        for s in &sample {
            let rs = r.mul(s).expect("same base");
            if i.contains(&rs) && !i.contains(r) && !i.contains(s) {
                return Err(format!("zero divisor pair {r}, {s}"));
            }
        }
    }
    Ok(())
}

/// `k(𝔭) = R_𝔭/𝔭R_𝔭`.
pub fn residue_field(p: PrimeIdeal) -> BaseRing {
    match p {
        PrimeIdeal::MinimalX => BaseRing::Rationals,
        PrimeIdeal::MaximalAt(q) => BaseRing::FiniteField(q),
    }
}

/// The localization `Z[x]/(x²) → R_𝔭 = A[x]/(x²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Localization {
    pub at: PrimeIdeal,
    pub target: BaseRing,
}

impl Localization {
    pub fn map(&self, r: &RingElt) -> Result<RingElt> {
        if r.base() != BaseRing::Integers {
            return Err(Error::BaseRingMismatch(r.base().to_string(), "Z".into()));
        }
        RingElt::new(self.target, r.a.clone(), r.b.clone())
    }

    /// Whether `r` becomes invertible, i.e. `r ∉ 𝔭`.
    pub fn inverts(&self, r: &RingElt) -> bool {
        !self.at.contains_int(&r.a.to_integer())
    }
}

pub fn localize_ring(p: PrimeIdeal) -> Localization {
    let target = match p {
        PrimeIdeal::MinimalX => BaseRing::Rationals,
        PrimeIdeal::MaximalAt(q) => BaseRing::IntegersLocalizedAt(q),
    };
    Localization { at: p, target }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_examples() {
        assert_eq!(RingElt::int(1, 2).mul(&RingElt::int(3, 1)).unwrap(), RingElt::int(3, 7));
        assert!(RingElt::x().mul(&RingElt::x()).unwrap().is_zero());
        assert_eq!(RingElt::int(2, 0).mul(&RingElt::int(0, 3)).unwrap(), RingElt::int(0, 6));
        let q = RingElt::in_base(BaseRing::Rationals, 1, 0).unwrap();
        assert!(matches!(RingElt::int(1, 0).mul(&q), Err(Error::BaseRingMismatch(..))));
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(annihilator_of_element(&RingElt::x()), Ideal::int(&[(0, 1)]));
        assert!(annihilator_of_element(&RingElt::int(1, 0)).is_zero_ideal());
        assert!(annihilator_of_element(&RingElt::int(0, 0)).is_unit_ideal());
        let loc = RingElt::in_base(BaseRing::IntegersLocalizedAt(3), 0, 5).unwrap();
        let ann = annihilator_of_element(&loc);
        assert!(ann.contains(&RingElt::in_base(BaseRing::IntegersLocalizedAt(3), 0, 1).unwrap()));
        assert!(!ann.contains(&RingElt::in_base(BaseRing::IntegersLocalizedAt(3), 2, 0).unwrap()));
    }

    #[test]
    fn membership_examples() {
        let n = Ideal::int(&[(5, 0), (0, 1)]);
        assert!(ideal_membership(&RingElt::int(5, 1), &n));
        assert!(!ideal_membership(&RingElt::int(1, 0), &n));
        let p = Ideal::int(&[(5, 0)]);
        assert!(!ideal_membership(&RingElt::x(), &p));
    }

    #[test]
    fn spec_examples() {
        use PrimeIdeal::*;
        assert_eq!(spec_enumerate(5).unwrap(), vec![MinimalX, MaximalAt(2), MaximalAt(3), MaximalAt(5)]);
        assert_eq!(spec_enumerate(2).unwrap(), vec![MinimalX, MaximalAt(2)]);
        assert_eq!(spec_enumerate(1).unwrap(), vec![MinimalX]);
    }

    #[test]
    fn residue_and_localization() {
        assert_eq!(residue_field(PrimeIdeal::MaximalAt(2)), BaseRing::FiniteField(2));
        assert_eq!(residue_field(PrimeIdeal::MinimalX), BaseRing::Rationals);
        assert_eq!(residue_field(PrimeIdeal::MaximalAt(7)), BaseRing::FiniteField(7));

        let at_x = localize_ring(PrimeIdeal::MinimalX);
        let img = at_x.map(&RingElt::int(2, 1)).unwrap();
        assert!(img.is_unit());
        assert_eq!(img.to_string(), "2+1x");

        let at_2 = localize_ring(PrimeIdeal::MaximalAt(2));
        assert!(at_2.map(&RingElt::int(3, 0)).unwrap().is_unit());
        let two = at_2.map(&RingElt::int(2, 0)).unwrap();
        assert!(!two.is_unit() && !two.is_zero_divisor());
    }

    #[test]
    fn finite_field_ideals() {
        let b = BaseRing::FiniteField(2);
        let x = RingElt::in_base(b, 0, 1).unwrap();
        let i = Ideal::generated(b, vec![x.clone()]).unwrap();
        assert!(i.contains(&RingElt::in_base(b, 0, 3).unwrap()));
        assert!(!i.contains(&RingElt::in_base(b, 1, 0).unwrap()));
        assert_eq!(annihilator_of_element(&x), i);
        assert_eq!(RingElt::in_base(b, 3, 5).unwrap(), RingElt::in_base(b, 1, 1).unwrap());
    }

    #[test]
    fn prime_recognition() {
        assert_eq!(PrimeIdeal::from_ideal(&Ideal::int(&[(0, 1)])), Some(PrimeIdeal::MinimalX));
        assert_eq!(PrimeIdeal::from_ideal(&Ideal::int(&[(3, 1), (0, 1)])), Some(PrimeIdeal::MaximalAt(3)));
        assert_eq!(PrimeIdeal::from_ideal(&Ideal::int(&[(4, 0), (0, 1)])), None);
        assert_eq!(PrimeIdeal::from_ideal(&Ideal::int(&[(2, 0)])), None);
        assert!(PrimeIdeal::MinimalX.is_contained_in(PrimeIdeal::MaximalAt(11)));
        assert!(!PrimeIdeal::MaximalAt(3).is_contained_in(PrimeIdeal::MaximalAt(2)));
    }
}
