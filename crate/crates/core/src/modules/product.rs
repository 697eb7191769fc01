use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::injective::EElt;
use crate::error::{Error, Result};
use crate::exactnum::{is_prime, pow_u64, PruferElt};
use crate::ring::{BaseRing, Ideal, PrimeIdeal, RingElt};

/// One summand `coeff / p^(rate·i + offset)` of a tail component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailTerm {
    pub coeff: BigInt,
    pub offset: i64,
    pub rate: u32,
}

impl TailTerm {
    pub fn new(coeff: impl Into<BigInt>, offset: i64, rate: u32) -> Self {
        TailTerm { coeff: coeff.into(), offset, rate }
    }

    /// `coeff / p^(i + offset)`.
    pub fn geometric(coeff: impl Into<BigInt>, offset: i64) -> Self {
        Self::new(coeff, offset, 1)
    }
}

/// A formulaic sequence `i ↦ (f0(i), f1(i))` in `E(R/(p,x))` with
/// `f_c(i) = Σ_k R_{c,k} / p^(k·i) mod 1`.
///
/// Stored canonically as one coefficient `R_{c,k} ∈ Z[1/p]` per component and
/// rate, with `R_{c,0}` reduced into `[0, 1)`; two tails agree for all large
/// `i` iff they are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeoTail {
    p: u64,
    comps: [BTreeMap<u32, BigRational>; 2],
}

fn frac_part(q: &BigRational) -> BigRational {
    q - BigRational::from_integer(q.floor().to_integer())
}

fn p_power(p: u64, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow_u64(p, e as u32))
    } else {
        BigRational::new(BigInt::one(), pow_u64(p, (-e) as u32))
    }
}

impl GeoTail {
    pub fn zero(p: u64) -> Self {
        GeoTail { p, comps: [BTreeMap::new(), BTreeMap::new()] }
    }

    pub fn from_terms(p: u64, c0: &[TailTerm], c1: &[TailTerm]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut t = Self::zero(p);
        for (c, terms) in [c0, c1].into_iter().enumerate() {
            for term in terms {
                let r = BigRational::from_integer(term.coeff.clone()) * p_power(p, -term.offset);
                t.insert(c, term.rate, r);
            }
        }
        Ok(t)
    }

    /// `(1/p^(i + offset), 0)`.
    pub fn geometric(p: u64, offset: i64) -> Self {
        Self::from_terms(p, &[TailTerm::geometric(1, offset)], &[]).expect("prime")
    }

    /// The constant sequence with value `(f0, f1)`.
    pub fn constant(value: &EElt) -> Self {
        let mut t = Self::zero(value.p());
        t.insert(0, 0, value.f0().to_rational());
        t.insert(1, 0, value.f1().to_rational());
        t
    }

    fn insert(&mut self, c: usize, rate: u32, r: BigRational) {
        let m = &mut self.comps[c];
        let cur = m.remove(&rate).unwrap_or_else(BigRational::zero) + r;
        let cur = if rate == 0 { frac_part(&cur) } else { cur };
        if !cur.is_zero() {
            m.insert(rate, cur);
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.comps[0].is_empty() && self.comps[1].is_empty()
    }

    /// Component `c` takes finitely many values (no rate ≥ 1 part).
    pub fn is_bounded(&self, c: usize) -> bool {
        self.comps[c].keys().all(|&k| k == 0)
    }

    pub fn component_is_zero(&self, c: usize) -> bool {
        self.comps[c].is_empty()
    }

    /// Highest rate present in component `c`.
    pub fn max_rate(&self, c: usize) -> u32 {
        self.comps[c].keys().copied().max().unwrap_or(0)
    }

    fn constant_part(&self, c: usize) -> PruferElt {
        let r = self.comps[c].get(&0).cloned().unwrap_or_else(BigRational::zero);
        PruferElt::from_rational(self.p, &r).expect("p-power denominator")
    }

    /// Value of a bounded tail, which is constant.
    pub fn constant_value(&self) -> Option<EElt> {
        (self.is_bounded(0) && self.is_bounded(1)).then(|| EElt::new(self.constant_part(0), self.constant_part(1)))
    }

    pub fn entry(&self, i: i64) -> EElt {
        let comp = |c: usize| {
            let mut s = BigRational::zero();
            for (&k, r) in &self.comps[c] {
                s += r * p_power(self.p, -(k as i64) * i);
            }
            PruferElt::from_rational(self.p, &s).expect("p-power denominator")
        };
        EElt::new(comp(0), comp(1))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        let mut t = self.clone();
        for c in 0..2 {
            for (&k, r) in &other.comps[c] {
                t.insert(c, k, r.clone());
            }
        }
        Ok(t)
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        let mut t = Self::zero(self.p);
        let q = BigRational::from_integer(n.clone());
        for c in 0..2 {
            for (&k, r) in &self.comps[c] {
                t.insert(c, k, r * &q);
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    /// Entrywise `x`: `(f0, f1) ↦ (f1, 0)`.
    pub fn x_act(&self) -> Self {
        GeoTail { p: self.p, comps: [self.comps[1].clone(), BTreeMap::new()] }
    }

    /// Canonical terms `(component, rate, R)`.
    pub fn terms(&self) -> Vec<(usize, u32, BigRational)> {
        let mut out = Vec::new();
        for c in 0..2 {
            for (&k, r) in &self.comps[c] {
                out.push((c, k, r.clone()));
            }
        }
        out
    }
}

impl fmt::Display for GeoTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comp = |c: usize| -> String {
            if self.comps[c].is_empty() {
                return "0".into();
            }
            let parts: Vec<String> = self.comps[c]
                .iter()
                .map(|(&k, r)| match k {
                    0 => format!("{r}"),
                    1 => format!("{r}/{}^i", self.p),
                    _ => format!("{r}/{}^({k}i)", self.p),
                })
                .collect();
            parts.join(" + ")
        };
        write!(f, "({}, {})", comp(0), comp(1))
    }
}

/// The factor of a countable product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProductFactor {
    /// `E(R/(p,x))`.
    EMax(u64),
    /// `M = H⁰(J)`, stored inside `E` as the elements `(f, 0)`.
    M(u64),
}

impl ProductFactor {
    pub fn p(self) -> u64 {
        match self {
            ProductFactor::EMax(p) | ProductFactor::M(p) => p,
        }
    }

    pub fn admits(self, e: &EElt) -> bool {
        e.p() == self.p() && (matches!(self, ProductFactor::EMax(_)) || e.f1().is_zero())
    }
}

impl fmt::Display for ProductFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductFactor::EMax(p) => write!(f, "E(R/({p},x))"),
            ProductFactor::M(p) => write!(f, "Z({p}^inf)"),
        }
    }
}

/// An element of `∏_{i ≥ start}` of a factor: finitely many exceptional
/// entries below or inside the tail region, and a [`GeoTail`] from `tail_from`.
///
/// Canonical: `tail_from` is as small as possible and no exception agrees
/// with the value it overrides, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeqElt {
    factor: ProductFactor,
    start: i64,
    tail_from: i64,
    exceptions: BTreeMap<i64, EElt>,
    tail: GeoTail,
}

impl SeqElt {
    pub fn new(
        factor: ProductFactor,
        start: i64,
        exceptions: BTreeMap<i64, EElt>,
        tail: GeoTail,
        tail_from: i64,
    ) -> Result<Self> {
        let p = factor.p();
        if tail.p() != p {
            return Err(Error::PrimeMismatch(tail.p(), p));
        }
        if matches!(factor, ProductFactor::M(_)) && !tail.component_is_zero(1) {
            return Err(Error::InvalidModule("tail leaves M: second component must vanish".into()));
        }
        for (&i, e) in &exceptions {
            if i < start {
                return Err(Error::InvalidModule(format!("index {i} below start {start}")));
            }
            if !factor.admits(e) {
                return Err(Error::InvalidModule(format!("entry {e} is not in {factor}")));
            }
        }
        let mut s = SeqElt { factor, start, tail_from: tail_from.max(start), exceptions, tail };
        s.canonicalize();
        Ok(s)
    }

    pub fn zero(factor: ProductFactor, start: i64) -> Self {
        SeqElt { factor, start, tail_from: start, exceptions: BTreeMap::new(), tail: GeoTail::zero(factor.p()) }
    }

    /// The element with `value` in slot `i` and zeros elsewhere.
    pub fn single(factor: ProductFactor, start: i64, i: i64, value: EElt) -> Result<Self> {
        Self::new(factor, start, BTreeMap::from([(i, value)]), GeoTail::zero(factor.p()), start)
    }

    pub fn from_tail(factor: ProductFactor, start: i64, tail: GeoTail) -> Result<Self> {
        Self::new(factor, start, BTreeMap::new(), tail, start)
    }

    fn canonicalize(&mut self) {
        let t = self.tail_from;
        let tail = &self.tail;
        self.exceptions.retain(|&i, e| if i >= t { *e != tail.entry(i) } else { !e.is_zero() });
        while self.tail_from > self.start {
            let i = self.tail_from - 1;
            let cur = self.exceptions.get(&i).cloned().unwrap_or_else(|| EElt::zero(self.factor.p()));
            if cur != self.tail.entry(i) {
                break;
            }
            self.exceptions.remove(&i);
            self.tail_from = i;
        }
    }

    pub fn factor(&self) -> ProductFactor {
        self.factor
    }

    pub fn p(&self) -> u64 {
        self.factor.p()
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn tail_from(&self) -> i64 {
        self.tail_from
    }

    pub fn tail(&self) -> &GeoTail {
        &self.tail
    }

    pub fn exceptions(&self) -> &BTreeMap<i64, EElt> {
        &self.exceptions
    }

    pub fn entry(&self, i: i64) -> EElt {
        if i < self.start {
            return EElt::zero(self.p());
        }
        if let Some(e) = self.exceptions.get(&i) {
            return e.clone();
        }
        if i >= self.tail_from {
            self.tail.entry(i)
        } else {
            EElt::zero(self.p())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.exceptions.is_empty() && self.tail.is_zero()
    }

    /// Indices where `self` may differ from its tail formula or from zero.
    fn finite_part(&self) -> BTreeSet<i64> {
        let mut s: BTreeSet<i64> = self.exceptions.keys().copied().collect();
        s.extend(self.start..self.tail_from);
        s
    }

    fn combine(&self, other: &Self, tail: GeoTail, f: impl Fn(&EElt, &EElt) -> EElt) -> Result<Self> {
        if self.factor != other.factor || self.start != other.start {
            return Err(Error::IncompatibleShapes(format!(
                "{} from {} vs {} from {}",
                self.factor, self.start, other.factor, other.start
            )));
        }
        let t = self.tail_from.max(other.tail_from);
        let mut idx = self.finite_part();
        idx.extend(other.finite_part());
        let exceptions = idx.into_iter().map(|i| (i, f(&self.entry(i), &other.entry(i)))).collect();
        Self::new(self.factor, self.start, exceptions, tail, t)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let tail = self.tail.add(&other.tail)?;
        self.combine(other, tail, |a, b| a.add(b).expect("same prime"))
    }

    pub fn map_entries(&self, tail: GeoTail, f: impl Fn(&EElt) -> EElt) -> Self {
        let exceptions = self.exceptions.iter().map(|(&i, e)| (i, f(e))).collect();
        Self::new(self.factor, self.start, exceptions, tail, self.tail_from).expect("closed operation")
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        self.map_entries(self.tail.scale(n), |e| e.scale(n))
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn x_act(&self) -> Self {
        self.map_entries(self.tail.x_act(), EElt::x_act)
    }

    /// `(a + bx)·e` for integral `a + bx`.
    pub fn scalar_act(&self, r: &RingElt) -> Result<Self> {
        let (a, b) = r
            .int_coords()
            .filter(|_| r.base() == BaseRing::Integers)
            .ok_or_else(|| Error::ScalarOutsideRing(r.to_string(), "product module".into()))?;
        Ok(self.scale(&a).add(&self.x_act().scale(&b))?)
    }

    /// The same sequence inside a product over a different factor.
    pub fn with_factor(&self, factor: ProductFactor) -> Result<Self> {
        Self::new(factor, self.start, self.exceptions.clone(), self.tail.clone(), self.tail_from)
    }

    /// The same entries viewed in `∏_{i ≥ start}` for a smaller `start`.
    pub fn extend_start(&self, start: i64) -> Result<Self> {
        if start > self.start {
            return Err(Error::Precondition("can only lower the start index".into()));
        }
        let mut s = self.clone();
        s.start = start;
        s.canonicalize();
        Ok(s)
    }

    /// Every entry has order dividing a fixed `p^k`.
    pub fn is_bounded(&self) -> bool {
        self.tail.is_bounded(0) && self.tail.is_bounded(1)
    }

    /// `∩_i ann(e_i)`, exact.
    pub fn annihilator(&self) -> Ideal {
        let mut acc = tail_annihilator(&self.tail);
        for e in self.exceptions.values() {
            acc = acc.intersect(&e.annihilator()).expect("integer ideals");
        }
        acc
    }
}

/// `∩_{i ≥ t} ann(tail(i))`, independent of `t`.
fn tail_annihilator(t: &GeoTail) -> Ideal {
    if !t.is_bounded(1) {
        // c·f1(i) = 0 for all large i forces c = 0, then d·f1(i) = 0 forces d = 0
        return Ideal::zero(BaseRing::Integers);
    }
    let f1 = t.constant_part(1);
    if !t.is_bounded(0) {
        // unbounded f0: c = 0, and d·f1 = 0
        let o1 = f1.additive_order();
        return Ideal::generated(BaseRing::Integers, vec![RingElt::int_big(BigInt::zero(), o1)]).expect("integer ideal");
    }
    EElt::new(t.constant_part(0), f1).annihilator()
}

impl fmt::Display for SeqElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seq[i>={}", self.start)?;
        for (i, e) in &self.exceptions {
            write!(f, "; e_{i}={e}")?;
        }
        if !self.tail.is_zero() {
            write!(f, "; i>={}: {}", self.tail_from, self.tail)?;
        }
        write!(f, "]")
    }
}

/// `∏_{i ≥ start}` of a factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductModule {
    pub factor: ProductFactor,
    pub start: i64,
}

impl ProductModule {
    pub fn new(factor: ProductFactor, start: i64) -> Self {
        ProductModule { factor, start }
    }

    pub fn p(&self) -> u64 {
        self.factor.p()
    }

    pub fn contains(&self, e: &SeqElt) -> bool {
        e.factor() == self.factor && e.start() == self.start
    }

    pub fn zero(&self) -> SeqElt {
        SeqElt::zero(self.factor, self.start)
    }

    pub fn single(&self, i: i64, value: EElt) -> Result<SeqElt> {
        SeqElt::single(self.factor, self.start, i, value)
    }

    /// The constant sequence `(1/p, 0)` in every slot.
    pub fn socle_constant(&self) -> SeqElt {
        let g = EElt::socle_generator(self.p());
        SeqElt::from_tail(self.factor, self.start, GeoTail::constant(&g)).expect("socle entries lie in M")
    }

    /// `(1/p^(i - start + 1), 0)` in slot `i`: orders grow without bound.
    pub fn geometric_witness(&self) -> SeqElt {
        SeqElt::from_tail(self.factor, self.start, GeoTail::geometric(self.p(), 1 - self.start)).expect("lies in M")
    }

    /// Primes containing some associated prime of the factor: `(x)` and `(p,x)`.
    pub fn ass_upper_bound(&self) -> Vec<PrimeIdeal> {
        vec![PrimeIdeal::MinimalX, PrimeIdeal::MaximalAt(self.p())]
    }

    /// Random element with up to `exceptions` exceptional entries in the first
    /// `span` slots, entries of order at most `p^max_expo`, and a random tail.
    pub fn sample<R: Rng>(&self, rng: &mut R, max_expo: u32, exceptions: usize, span: i64) -> SeqElt {
        let p = self.p();
        let is_e = matches!(self.factor, ProductFactor::EMax(_));
        let rand_prufer = |rng: &mut R| {
            let e = rng.gen_range(0..=max_expo);
            let n = pow_u64(p, e);
            let a = rng.gen_range(0..u64::try_from(&n).unwrap_or(u64::MAX).max(1));
            PruferElt::new(p, a, e).expect("prime")
        };
        let mut exc = BTreeMap::new();
        for _ in 0..exceptions {
            let i = self.start + rng.gen_range(0..span.max(1));
            let f0 = rand_prufer(rng);
            let f1 = if is_e { rand_prufer(rng) } else { PruferElt::zero(p) };
            exc.insert(i, EElt::new(f0, f1));
        }
        let mut c0 = Vec::new();
        let mut c1 = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            let term = TailTerm::new(rng.gen_range(-(p as i64)..=(p as i64)), rng.gen_range(-2..=3), rng.gen_range(0..=2));
            if is_e && rng.gen_bool(0.5) {
                c1.push(term);
            } else {
                c0.push(term);
            }
        }
        let tail = GeoTail::from_terms(p, &c0, &c1).expect("prime");
        let from = self.start + rng.gen_range(0..span.max(1));
        SeqElt::new(self.factor, self.start, exc, tail, from).expect("sampled entries lie in the factor")
    }
}

impl fmt::Display for ProductModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "prod_{{i>={}}} {}", self.start, self.factor)
    }
}

/// Per-slot constraint describing a submodule of a product of `E(R/(p,x))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SlotConstraint {
    Zero,
    /// Killed by `(p, x)`.
    Socle,
    /// Killed by `x`: the copy of `M`.
    MPart,
    Full,
}

impl SlotConstraint {
    pub fn admits(self, e: &EElt) -> bool {
        match self {
            SlotConstraint::Zero => e.is_zero(),
            SlotConstraint::Socle => e.f1().is_zero() && e.f0().expo() <= 1,
            SlotConstraint::MPart => e.f1().is_zero(),
            SlotConstraint::Full => true,
        }
    }

    /// Whether a tail satisfies the constraint at every large index.
    pub fn admits_tail(self, t: &GeoTail) -> bool {
        match self {
            SlotConstraint::Zero => t.is_zero(),
            SlotConstraint::Socle => t.component_is_zero(1) && t.scale(&BigInt::from(t.p())).is_zero(),
            SlotConstraint::MPart => t.component_is_zero(1),
            SlotConstraint::Full => true,
        }
    }

    /// The described subsets are nested in the order `Zero ⊆ Socle ⊆ MPart ⊆ Full`.
    pub fn is_within(self, other: SlotConstraint) -> bool {
        self <= other
    }
}

/// A submodule of `∏_{i ≥ start}` given by finitely many slot constraints
/// and one constraint for all remaining slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubProductConstraint {
    pub slots: BTreeMap<i64, SlotConstraint>,
    pub cofinal: SlotConstraint,
}

impl SubProductConstraint {
    pub fn uniform(c: SlotConstraint) -> Self {
        SubProductConstraint { slots: BTreeMap::new(), cofinal: c }
    }

    pub fn with_slot(mut self, i: i64, c: SlotConstraint) -> Self {
        self.slots.insert(i, c);
        self
    }

    pub fn at(&self, i: i64) -> SlotConstraint {
        self.slots.get(&i).copied().unwrap_or(self.cofinal)
    }

    /// Exact membership: explicit slots and exceptions entrywise, the tail by formula.
    pub fn contains(&self, e: &SeqElt) -> bool {
        let mut idx: BTreeSet<i64> = self.slots.keys().copied().filter(|&i| i >= e.start()).collect();
        idx.extend(e.exceptions().keys().copied());
        if !idx.iter().all(|&i| self.at(i).admits(&e.entry(i))) {
            return false;
        }
        // remaining slots hold zero or the tail formula; a formula violating
        // a constraint does so at every large index, so slot overrides cannot rescue it
        self.cofinal.admits_tail(e.tail())
    }

    /// `self ⊆ other` as described subsets.
    pub fn is_within(&self, other: &Self) -> bool {
        let mut idx: BTreeSet<i64> = self.slots.keys().copied().collect();
        idx.extend(other.slots.keys().copied());
        self.cofinal.is_within(other.cofinal) && idx.iter().all(|&i| self.at(i).is_within(other.at(i)))
    }
}

/// The one-slot element with value `m` has the same annihilator as `m`.
pub fn single_slot_annihilator_matches(factor: ProductFactor, start: i64, i: i64, m: &EElt) -> Result<bool> {
    let s = SeqElt::single(factor, start, i, m.clone())?;
    Ok(s.annihilator() == m.annihilator())
}

/// Random element of `E(R/(p,x))` with entries of order at most `p^max_expo`.
pub fn sample_eelt<R: Rng>(rng: &mut R, p: u64, max_expo: u32) -> EElt {
    let one = |rng: &mut R| {
        let e = rng.gen_range(0..=max_expo);
        let n = u64::try_from(&pow_u64(p, e)).unwrap_or(u64::MAX);
        PruferElt::new(p, rng.gen_range(0..n.max(1)), e).expect("prime")
    };
    let f0 = one(rng);
    let f1 = one(rng);
    EElt::new(f0, f1)
}

/// Largest `k` with `p^k | n` for a nonzero integer.
pub(crate) fn p_adic_valuation(n: &BigInt, p: u64) -> u32 {
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(&bp) {
        n /= &bp;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(p: u64, n0: i64, e0: u32, n1: i64, e1: u32) -> EElt {
        EElt::frac(p, n0, e0, n1, e1)
    }

    #[test]
    fn tail_canonical_form() {
        // 1/p^(i+1) + (p-1)/p^(i+1) = 1/p^i
        let a = GeoTail::from_terms(3, &[TailTerm::geometric(1, 1), TailTerm::geometric(2, 1)], &[]).unwrap();
        let b = GeoTail::from_terms(3, &[TailTerm::geometric(1, 0)], &[]).unwrap();
        assert_eq!(a, b);
        let c = GeoTail::from_terms(2, &[TailTerm::new(3, 0, 0)], &[]).unwrap();
        assert!(c.is_zero());
        assert_eq!(b.entry(2), e(3, 1, 2, 0, 0));
        assert_eq!(b.x_act(), GeoTail::zero(3));
    }

    #[test]
    fn seq_canonical_merges_exceptions() {
        let f = ProductFactor::EMax(2);
        let t = GeoTail::geometric(2, 1);
        let exc = (0..5).map(|i| (i, t.entry(i))).collect();
        let s = SeqElt::new(f, 0, exc, t.clone(), 5).unwrap();
        assert_eq!(s, SeqElt::from_tail(f, 0, t.clone()).unwrap());
        assert!(s.exceptions().is_empty());
        assert_eq!(s.tail_from(), 0);
        // a lone agreeing exception below the tail start is a genuine exception
        let lone = SeqElt::new(f, 0, BTreeMap::from([(3, t.entry(3))]), t.clone(), 5).unwrap();
        assert_eq!(lone.tail_from(), 5);
        assert_eq!(lone.entry(4), EElt::zero(2));
        assert_eq!(lone.entry(3), t.entry(3));
    }

    #[test]
    fn annihilator_examples() {
        let m = ProductModule::new(ProductFactor::EMax(5), 0);
        assert_eq!(m.geometric_witness().annihilator(), PrimeIdeal::MinimalX.to_ideal());
        assert_eq!(m.socle_constant().annihilator(), PrimeIdeal::MaximalAt(5).to_ideal());
        assert!(m.zero().annihilator().is_unit_ideal());
        let one = m.single(2, e(5, 1, 1, 0, 0)).unwrap();
        assert_eq!(one.annihilator(), PrimeIdeal::MaximalAt(5).to_ideal());
        // unbounded second component: nothing kills it
        let t = GeoTail::from_terms(5, &[], &[TailTerm::geometric(1, 0)]).unwrap();
        assert!(SeqElt::from_tail(ProductFactor::EMax(5), 0, t).unwrap().annihilator().is_zero_ideal());
        // constant f1 = 1/5 with unbounded f0: annihilator (5x)
        let t = GeoTail::from_terms(5, &[TailTerm::geometric(1, 0)], &[TailTerm::new(1, 1, 0)]).unwrap();
        let s = SeqElt::from_tail(ProductFactor::EMax(5), 0, t).unwrap();
        assert_eq!(s.annihilator(), Ideal::int(&[(0, 5)]));
    }

    #[test]
    fn arithmetic_and_constraints() {
        let m = ProductModule::new(ProductFactor::EMax(3), -2);
        let a = m.geometric_witness();
        let b = m.single(-2, e(3, 1, 2, 1, 1)).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s.add(&b.neg()).unwrap(), a);
        assert!(s.x_act().x_act().is_zero());
        let ker = SubProductConstraint::uniform(SlotConstraint::MPart);
        assert!(ker.contains(&a));
        assert!(!ker.contains(&b));
        assert!(ker.contains(&b.x_act()));
        let im = ker.clone().with_slot(-2, SlotConstraint::Zero);
        assert!(!im.contains(&a));
        assert!(im.is_within(&ker));
        assert!(!ker.is_within(&im));
        assert!(SubProductConstraint::uniform(SlotConstraint::Socle).contains(&m.socle_constant()));
        assert!(!SubProductConstraint::uniform(SlotConstraint::Socle).contains(&a));
    }

    #[test]
    fn product_over_m_rejects_second_component() {
        let f = ProductFactor::M(2);
        assert!(SeqElt::single(f, 0, 1, e(2, 0, 0, 1, 1)).is_err());
        let t = GeoTail::from_terms(2, &[], &[TailTerm::geometric(1, 0)]).unwrap();
        assert!(SeqElt::from_tail(f, 0, t).is_err());
        assert_eq!(p_adic_valuation(&BigInt::from(24), 2), 3);
    }
}
