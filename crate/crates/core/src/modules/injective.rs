use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{pow_u64, IntMatrix, Lattice, PruferElt};
use crate::ring::{BaseRing, Ideal, PrimeIdeal, RingElt};

/// The standard injective hulls `E(R/𝔭)` of `R = Z[x]/(x²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StdInjective {
    /// `E(R/(p,x)) = Hom_Z(R, Z(p^∞))`, elements `(f0, f1) = (φ(1), φ(x))`.
    EMax(u64),
    /// `E(R/(x)) = Q[x]/(x²)`, elements `a + bx` stored as `(a, b)`.
    EMin,
}

impl StdInjective {
    pub fn hull_of(p: PrimeIdeal) -> Self {
        match p {
            PrimeIdeal::MinimalX => StdInjective::EMin,
            PrimeIdeal::MaximalAt(q) => StdInjective::EMax(q),
        }
    }

    pub fn prime(self) -> PrimeIdeal {
        match self {
            StdInjective::EMin => PrimeIdeal::MinimalX,
            StdInjective::EMax(p) => PrimeIdeal::MaximalAt(p),
        }
    }

    /// Socle `Hom_{R_𝔮}(k(𝔮), E_𝔮)`.
    pub fn socle(self, q: PrimeIdeal) -> Socle {
        let generators = match (self, q) {
            (StdInjective::EMax(p), PrimeIdeal::MaximalAt(r)) if p == r => {
                vec![Element::Max(EElt::socle_generator(p))]
            }
            (StdInjective::EMin, PrimeIdeal::MinimalX) => vec![Element::Min(MinElt::socle_generator())],
            _ => Vec::new(),
        };
        Socle { prime: q, generators }
    }

    pub fn length_over_localization(self) -> LengthVerdict {
        match self {
            StdInjective::EMin => LengthVerdict::Finite(2),
            StdInjective::EMax(p) => {
                let chain: Vec<EElt> = (1..=3).map(|k| EElt::new(PruferElt::unit_fraction(p, k), PruferElt::zero(p))).collect();
                LengthVerdict::Infinite { chain }
            }
        }
    }
}

impl fmt::Display for StdInjective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StdInjective::EMax(p) => write!(f, "E(R/({p},x))"),
            StdInjective::EMin => write!(f, "E(R/(x))"),
        }
    }
}

/// Length of `E` as a module over its own localization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthVerdict {
    Finite(usize),
    /// Generators of a strictly increasing chain of cyclic submodules.
    Infinite { chain: Vec<EElt> },
}

impl LengthVerdict {
    /// Checks that the recorded chain is strictly increasing: each generator
    /// is a multiple of the next and the orders grow.
    pub fn chain_is_strict(&self) -> bool {
        match self {
            LengthVerdict::Finite(_) => true,
            LengthVerdict::Infinite { chain } => chain.windows(2).all(|w| {
                let p = w[0].p();
                w[1].order() > w[0].order() && w[1].scale(&BigInt::from(p)) == w[0]
            }),
        }
    }
}

/// Element of `E(R/(p,x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EElt {
    f0: PruferElt,
    f1: PruferElt,
}

impl EElt {
    pub fn new(f0: PruferElt, f1: PruferElt) -> Self {
        assert_eq!(f0.p(), f1.p(), "components over different primes");
        EElt { f0, f1 }
    }

    pub fn try_new(f0: PruferElt, f1: PruferElt) -> Result<Self> {
        if f0.p() != f1.p() {
            return Err(Error::PrimeMismatch(f0.p(), f1.p()));
        }
        Ok(EElt { f0, f1 })
    }

    pub fn zero(p: u64) -> Self {
        EElt { f0: PruferElt::zero(p), f1: PruferElt::zero(p) }
    }

    /// `(1/p, 0)`.
    pub fn socle_generator(p: u64) -> Self {
        EElt { f0: PruferElt::unit_fraction(p, 1), f1: PruferElt::zero(p) }
    }

    /// From rationals with `p`-power denominators.
    pub fn from_rationals(p: u64, f0: &BigRational, f1: &BigRational) -> Result<Self> {
        Ok(EElt { f0: PruferElt::from_rational(p, f0)?, f1: PruferElt::from_rational(p, f1)? })
    }

    /// `(n0/p^e0, n1/p^e1)` from small integers.
    pub fn frac(p: u64, n0: i64, e0: u32, n1: i64, e1: u32) -> Self {
        EElt::new(
            PruferElt::new(p, n0, e0).expect("prime"),
            PruferElt::new(p, n1, e1).expect("prime"),
        )
    }

    pub fn p(&self) -> u64 {
        self.f0.p()
    }

    pub fn f0(&self) -> &PruferElt {
        &self.f0
    }

    pub fn f1(&self) -> &PruferElt {
        &self.f1
    }

    pub fn is_zero(&self) -> bool {
        self.f0.is_zero() && self.f1.is_zero()
    }

    pub fn x_act(&self) -> Self {
        EElt { f0: self.f1.clone(), f1: PruferElt::zero(self.p()) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(EElt { f0: self.f0.add(&other.f0)?, f1: self.f1.add(&other.f1)? })
    }

    pub fn neg(&self) -> Self {
        EElt { f0: self.f0.neg(), f1: self.f1.neg() }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        EElt { f0: self.f0.scale(n), f1: self.f1.scale(n) }
    }

    /// `(a + bx)·(f0, f1) = (a·f0 + b·f1, a·f1)`. Scalars may have
    /// denominators prime to `p`, which act through their inverses.
    pub fn scalar_act(&self, r: &RingElt) -> Result<Self> {
        let p = self.p();
        check_acts_on_p_torsion(r, p)?;
        let a = |f: &PruferElt| scale_rational(f, r.a());
        let b = |f: &PruferElt| scale_rational(f, r.b());
        Ok(EElt { f0: a(&self.f0).add(&b(&self.f1))?, f1: a(&self.f1) })
    }

    /// Additive order, `p^max(e0, e1)`.
    pub fn order(&self) -> BigInt {
        pow_u64(self.p(), self.expo())
    }

    pub fn expo(&self) -> u32 {
        self.f0.expo().max(self.f1.expo())
    }

    /// `{(c, d) : c·f1 = 0 and c·f0 + d·f1 = 0}`.
    pub fn annihilator(&self) -> Ideal {
        let e = self.expo();
        let n = pow_u64(self.p(), e);
        let u0 = lift(&self.f0, e);
        let u1 = lift(&self.f1, e);
        let a = IntMatrix::from_cols(2, &[vec![u0, u1.clone()], vec![u1, BigInt::zero()]]);
        let target = Lattice::from_matrix(&IntMatrix::scalar(2, &n));
        Ideal::from_lattice(target.preimage(&a)).expect("annihilators are ideals")
    }
}

impl fmt::Display for EElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f0, self.f1)
    }
}

/// `f·p^e` as an integer, for `f` of order dividing `p^e`.
pub(crate) fn lift(f: &PruferElt, e: u32) -> BigInt {
    f.numerator() * pow_u64(f.p(), e - f.expo())
}

/// Multiplication of a `p`-torsion element by a rational whose denominator
/// is prime to `p`.
pub(crate) fn scale_rational(f: &PruferElt, q: &BigRational) -> PruferElt {
    if f.is_zero() {
        return f.clone();
    }
    let n = f.additive_order();
    let inv = mod_inverse_big(q.denom(), &n).expect("denominator prime to p");
    f.scale(&(q.numer() * inv))
}

fn mod_inverse_big(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let (g, s, _) = crate::exactnum::ext_gcd(a, n);
    g.is_one().then(|| s.mod_floor(n))
}

fn check_acts_on_p_torsion(r: &RingElt, p: u64) -> Result<()> {
    let bp = BigInt::from(p);
    let ok = match r.base() {
        BaseRing::Integers => true,
        BaseRing::IntegersLocalizedAt(q) => q == p || [r.a(), r.b()].iter().all(|c| !(c.denom() % &bp).is_zero()),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::ScalarOutsideRing(r.to_string(), format!("E(R/({p},x))")))
    }
}

/// Element `a + bx` of `E(R/(x)) = Q[x]/(x²)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinElt {
    a: BigRational,
    b: BigRational,
}

impl MinElt {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        MinElt { a, b }
    }

    pub fn int(a: i64, b: i64) -> Self {
        MinElt { a: BigRational::from_integer(a.into()), b: BigRational::from_integer(b.into()) }
    }

    pub fn zero() -> Self {
        Self::int(0, 0)
    }

    /// `x`, spanning the socle.
    pub fn socle_generator() -> Self {
        Self::int(0, 1)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn x_act(&self) -> Self {
        MinElt { a: BigRational::zero(), b: self.a.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        MinElt { a: &self.a + &other.a, b: &self.b + &other.b }
    }

    pub fn neg(&self) -> Self {
        MinElt { a: -self.a.clone(), b: -self.b.clone() }
    }

    pub fn scalar_act(&self, r: &RingElt) -> Self {
        MinElt { a: r.a() * &self.a, b: r.a() * &self.b + r.b() * &self.a }
    }

    /// `(0)` for `a ≠ 0`, `(x)` for `a = 0 ≠ b`, `(1)` for zero.
    pub fn annihilator(&self) -> Ideal {
        if !self.a.is_zero() {
            Ideal::zero(BaseRing::Integers)
        } else if !self.b.is_zero() {
            PrimeIdeal::MinimalX.to_ideal()
        } else {
            Ideal::unit(BaseRing::Integers)
        }
    }
}

impl fmt::Display for MinElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `M = H⁰(J) ≅ Z(p^∞)` with `x` acting as zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MModule {
    pub p: u64,
}

impl MModule {
    pub fn new(p: u64) -> Result<Self> {
        if crate::exactnum::is_prime(p) {
            Ok(MModule { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn x_act(&self, m: &PruferElt) -> PruferElt {
        PruferElt::zero(m.p())
    }

    pub fn scalar_act(&self, r: &RingElt, m: &PruferElt) -> Result<PruferElt> {
        check_acts_on_p_torsion(r, self.p)?;
        Ok(scale_rational(m, r.a()))
    }

    /// Inclusion `ι: M → J⁰ = E`, `f ↦ (f, 0)`.
    pub fn include(&self, m: &PruferElt) -> EElt {
        EElt::new(m.clone(), PruferElt::zero(self.p))
    }

    pub fn socle(&self, q: PrimeIdeal) -> Socle {
        let generators = match q {
            PrimeIdeal::MaximalAt(r) if r == self.p => vec![Element::Prufer(PruferElt::unit_fraction(self.p, 1))],
            _ => Vec::new(),
        };
        Socle { prime: q, generators }
    }
}

/// Annihilator of `f` viewed in `M`: `(p^e, x)`.
pub fn prufer_annihilator(f: &PruferElt) -> Ideal {
    let n = f.additive_order();
    Ideal::generated(
        BaseRing::Integers,
        vec![RingElt::int_big(n, BigInt::zero()), RingElt::x()],
    )
    .expect("integer ideal")
}

/// An element of one of the module species.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Max(EElt),
    Min(MinElt),
    /// An element of `M`.
    Prufer(PruferElt),
    Seq(super::product::SeqElt),
    /// A vector in a power of `E(R/(p,x))`.
    Tuple(Vec<EElt>),
    /// Coordinates on the generators of a finitely presented module.
    Vector(Vec<BigInt>),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Max(e) => write!(f, "{e}"),
            Element::Min(e) => write!(f, "{e}"),
            Element::Prufer(e) => write!(f, "{e}"),
            Element::Seq(e) => write!(f, "{e}"),
            Element::Tuple(v) => {
                let s: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "<{}>", s.join(", "))
            }
            Element::Vector(v) => {
                let s: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", s.join(","))
            }
        }
    }
}

/// Socle at a prime: a vector space over `k(𝔮)` with an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Socle {
    pub prime: PrimeIdeal,
    pub generators: Vec<Element>,
}

impl Socle {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Number of elements, when the residue field is finite.
    pub fn size(&self) -> Option<BigInt> {
        match self.prime {
            PrimeIdeal::MaximalAt(q) => Some(pow_u64(q, self.dim() as u32)),
            PrimeIdeal::MinimalX => self.is_zero().then(BigInt::one),
        }
    }
}

/// Elements `f` of order dividing `p^k` in `Z(p^∞)`, i.e. `a/p^k` for `0 <= a < p^k`.
pub fn prufer_elements(p: u64, k: u32) -> impl Iterator<Item = PruferElt> {
    let n = pow_u64(p, k);
    num_iter(n).map(move |a| PruferElt::new(p, a, k).expect("prime"))
}

fn num_iter(n: BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = BigInt::zero();
    std::iter::from_fn(move || {
        if cur < n {
            let out = cur.clone();
            cur += 1;
            Some(out)
        } else {
            None
        }
    })
}

/// Whether `s ∉ (p,x)` acts bijectively on the subgroup of `E(R/(p,x))` of
/// elements of order dividing `p^k`, by enumerating it. Feasible for
/// `p^(2k)` up to a few million.
pub fn unit_action_bijective(p: u64, k: u32, s: &RingElt) -> Result<bool> {
    let n = pow_u64(p, k);
    let size = &n * &n;
    if size > BigInt::from(20_000_000u64) {
        return Err(Error::SizeLimit(format!("subgroup of order {size}")));
    }
    let nu = usize::try_from(&n).expect("small");
    let mut seen = vec![false; nu * nu];
    for a in prufer_elements(p, k) {
        for b in prufer_elements(p, k) {
            let img = EElt::new(a.clone(), b.clone()).scalar_act(s)?;
            if img.expo() > k {
                return Ok(false);
            }
            let i = usize::try_from(&lift(&img.f0, k)).expect("small");
            let j = usize::try_from(&lift(&img.f1, k)).expect("small");
            if std::mem::replace(&mut seen[i * nu + j], true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Certificate that `s` acts injectively, hence bijectively, on every finite
/// subgroup `{e : p^k·e = 0}` of `E(R/(p,x))`: such a subgroup is an essential
/// extension of the one-dimensional socle, so `ker s` is zero as soon as `s`
/// does not kill the socle generator.
pub fn unit_action_socle_certificate(p: u64, s: &RingElt) -> Result<bool> {
    Ok(!EElt::socle_generator(p).scalar_act(s)?.is_zero())
}
