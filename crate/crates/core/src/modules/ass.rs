use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::injective::{prufer_annihilator, EElt, Element};
use super::product::{ProductFactor, ProductModule, SeqElt};
use crate::error::{Error, Result};
use crate::exactnum::{prime_divisors, Lattice, PruferElt};
use crate::ring::{BaseRing, Ideal, PrimeIdeal, RingElt};

/// Exact annihilator of an element of any species except bare vectors,
/// which need their module (see [`super::FgModule::elem_annihilator`]).
pub fn ann_element(e: &Element) -> Result<Ideal> {
    Ok(match e {
        Element::Max(m) => m.annihilator(),
        Element::Min(m) => m.annihilator(),
        Element::Prufer(f) => prufer_annihilator(f),
        Element::Seq(s) => s.annihilator(),
        Element::Tuple(v) => {
            let mut acc = Ideal::unit(BaseRing::Integers);
            for e in v {
                acc = acc.intersect(&e.annihilator())?;
            }
            acc
        }
        Element::Vector(_) => {
            return Err(Error::Precondition("vector elements need their module to compute annihilators".into()))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionVerdict {
    /// `a^k·e = 0` with `k` minimal.
    Torsion(u32),
    /// `a^power · e(index) ≠ 0`, and no power of `a` kills `e`.
    NotTorsion { index: i64, power: u32, proof: String },
    /// Some power beyond the bound kills `e`.
    Unknown,
}

impl fmt::Display for TorsionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionVerdict::Torsion(k) => write!(f, "torsion (k={k})"),
            TorsionVerdict::NotTorsion { index, power, proof } => {
                write!(f, "not torsion: a^{power} does not kill entry {index}; {proof}")
            }
            TorsionVerdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Positive generator of `L ∩ Z·e_axis` (0 if trivial).
fn axis_generator(l: &Lattice, axis: usize) -> BigInt {
    let mut unit = vec![BigInt::zero(), BigInt::zero()];
    unit[axis] = BigInt::one();
    let line = Lattice::from_generators(2, &[unit]);
    l.intersect(&line).basis_vectors().first().map(|v| v[axis].clone()).unwrap_or_else(BigInt::zero)
}

fn divides(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        n.is_multiple_of(d)
    }
}

/// `a^k ⊆ ann` for `a = (m, x)`: `a^0 = R`, `a^k = (m^k, m^(k-1)·x)`.
fn power_kills(ann: &Ideal, m: &BigInt, k: u32) -> bool {
    if k == 0 {
        return ann.is_unit_ideal();
    }
    let c0 = axis_generator(ann.lattice(), 0);
    let d0 = axis_generator(ann.lattice(), 1);
    divides(&c0, &m.pow(k)) && divides(&d0, &m.pow(k - 1))
}

fn radical_divides(d: &BigInt, m: &BigInt) -> bool {
    !d.is_zero() && prime_divisors(d).iter().all(|&q| m.is_multiple_of(&BigInt::from(q)))
}

/// Decides whether `e` is `a`-torsion for an ideal `a = (m, x)`.
pub fn is_torsion(e: &SeqElt, a: &Ideal, bound: u32) -> Result<TorsionVerdict> {
    if a.base() != BaseRing::Integers || !a.contains(&RingElt::x()) {
        return Err(Error::Precondition(format!("torsion is decided for ideals (m, x); got {a}")));
    }
    let m = axis_generator(a.lattice(), 0);
    let ann = e.annihilator();
    if let Some(k) = (0..=bound).find(|&k| power_kills(&ann, &m, k)) {
        return Ok(TorsionVerdict::Torsion(k));
    }
    let eventually = m.is_zero()
        || (radical_divides(&axis_generator(ann.lattice(), 0), &m)
            && radical_divides(&axis_generator(ann.lattice(), 1), &m));
    if eventually {
        return Ok(TorsionVerdict::Unknown);
    }
    let p = e.p();
    let proof = if !e.is_bounded() {
        let (c, rate) = if e.tail().is_bounded(0) { (1, e.tail().max_rate(1)) } else { (0, e.tail().max_rate(0)) };
        format!("tail component {c} has a rate-{rate} term, so entry orders grow like {p}^({rate}i) without bound")
    } else {
        format!("entries are {p}-power torsion and {m} is prime to {p}, so (m, x) acts through units")
    };
    let mut candidates: Vec<i64> = e.exceptions().keys().copied().collect();
    let scan = e.tail_from() + i64::from(bound) + 64;
    candidates.extend(e.tail_from()..=scan);
    for i in candidates {
        let ai = e.entry(i).annihilator();
        if !power_kills(&ai, &m, bound) {
            return Ok(TorsionVerdict::NotTorsion { index: i, power: bound, proof });
        }
    }
    Ok(TorsionVerdict::Unknown)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssVerdict {
    /// A witness whose annihilator is exactly the queried prime.
    Yes(SeqElt),
    /// No witness among the searched shapes; not a proof of absence.
    BoundedNo,
    /// The prime lies in no associated prime of the factor.
    OutsideUpperBound,
}

impl AssVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, AssVerdict::Yes(_))
    }
}

/// Witness shapes tried by [`ass_membership`].
pub fn witness_family(m: &ProductModule) -> Vec<SeqElt> {
    let p = m.p();
    let mut out = vec![
        m.single(m.start, EElt::socle_generator(p)).expect("socle lies in every factor"),
        m.geometric_witness(),
        m.socle_constant(),
    ];
    if matches!(m.factor, ProductFactor::EMax(_)) {
        let dual = EElt::new(PruferElt::zero(p), PruferElt::unit_fraction(p, 1));
        out.push(m.single(m.start, dual).expect("E entry"));
        let t = super::product::GeoTail::from_terms(p, &[], &[super::product::TailTerm::geometric(1, 1 - m.start)])
            .expect("prime");
        out.push(SeqElt::from_tail(m.factor, m.start, t).expect("E entries"));
    }
    out
}

pub fn ass_membership(m: &ProductModule, q: PrimeIdeal) -> AssVerdict {
    if !m.ass_upper_bound().iter().any(|&b| q.is_contained_in(b)) {
        return AssVerdict::OutsideUpperBound;
    }
    let target = q.to_ideal();
    witness_family(m)
        .into_iter()
        .find(|w| w.annihilator() == target)
        .map_or(AssVerdict::BoundedNo, AssVerdict::Yes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::product::{GeoTail, TailTerm};

    #[test]
    fn torsion_examples() {
        for p in [2u64, 3, 5] {
            let m = ProductModule::new(ProductFactor::EMax(p), 0);
            let n = PrimeIdeal::MaximalAt(p).to_ideal();
            assert_eq!(is_torsion(&m.socle_constant(), &n, 12).unwrap(), TorsionVerdict::Torsion(1));
            assert_eq!(is_torsion(&m.zero(), &n, 12).unwrap(), TorsionVerdict::Torsion(0));
            match is_torsion(&m.geometric_witness(), &n, 12).unwrap() {
                TorsionVerdict::NotTorsion { index, power, .. } => {
                    assert_eq!(power, 12);
                    // a^12 contains p^12, and entry index has order p^(index+1)
                    assert!(index >= 12);
                }
                v => panic!("unexpected {v}"),
            }
            // (x)-torsion: x² = 0 kills everything
            let x = PrimeIdeal::MinimalX.to_ideal();
            assert_eq!(is_torsion(&m.geometric_witness(), &x, 12).unwrap(), TorsionVerdict::Torsion(1));
            let t = GeoTail::from_terms(p, &[], &[TailTerm::geometric(1, 0)]).unwrap();
            let s = SeqElt::from_tail(ProductFactor::EMax(p), 0, t).unwrap();
            assert_eq!(is_torsion(&s, &x, 12).unwrap(), TorsionVerdict::Torsion(2));
        }
    }

    #[test]
    fn torsion_beyond_bound_is_unknown() {
        let m = ProductModule::new(ProductFactor::EMax(2), 0);
        let deep = m.single(3, EElt::new(PruferElt::unit_fraction(2, 20), PruferElt::zero(2))).unwrap();
        let n = PrimeIdeal::MaximalAt(2).to_ideal();
        assert_eq!(is_torsion(&deep, &n, 12).unwrap(), TorsionVerdict::Unknown);
        assert_eq!(is_torsion(&deep, &n, 20).unwrap(), TorsionVerdict::Torsion(20));
        // other primes act invertibly
        let q = PrimeIdeal::MaximalAt(3).to_ideal();
        assert!(matches!(is_torsion(&deep, &q, 5).unwrap(), TorsionVerdict::NotTorsion { index: 3, .. }));
    }

    #[test]
    fn ass_examples() {
        let m = ProductModule::new(ProductFactor::EMax(2), 0);
        match ass_membership(&m, PrimeIdeal::MaximalAt(2)) {
            AssVerdict::Yes(w) => assert_eq!(w, m.single(0, EElt::socle_generator(2)).unwrap()),
            v => panic!("{v:?}"),
        }
        match ass_membership(&m, PrimeIdeal::MinimalX) {
            AssVerdict::Yes(w) => assert_eq!(w, m.geometric_witness()),
            v => panic!("{v:?}"),
        }
        assert_eq!(ass_membership(&m, PrimeIdeal::MaximalAt(3)), AssVerdict::OutsideUpperBound);
        let mm = ProductModule::new(ProductFactor::M(3), -4);
        assert!(ass_membership(&mm, PrimeIdeal::MinimalX).is_yes());
        assert!(ass_membership(&mm, PrimeIdeal::MaximalAt(3)).is_yes());
    }

    #[test]
    fn ann_of_species() {
        assert_eq!(
            ann_element(&Element::Max(EElt::socle_generator(7))).unwrap(),
            PrimeIdeal::MaximalAt(7).to_ideal()
        );
        assert!(ann_element(&Element::Vector(vec![])).is_err());
    }
}
