use std::fmt;

use num_bigint::BigInt;
use rand::Rng;

use super::{scalar_element, ComplexShape, SampleConfig, Window};
use crate::error::{Error, Result};
use crate::exactnum::pow_u64;
use crate::modules::{DualTarget, Element, FgModule, ModuleDesc, RMatrix, StdInjective, Summand};
use crate::ring::{PrimeIdeal, RingElt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub evidence: String,
}

impl CheckOutcome {
    fn pass(evidence: impl Into<String>) -> Self {
        CheckOutcome { passed: true, evidence: evidence.into() }
    }

    fn fail(evidence: impl Into<String>) -> Self {
        CheckOutcome { passed: false, evidence: evidence.into() }
    }
}

#[derive(Clone, Debug)]
pub struct DegreeMinimality {
    pub degree: i64,
    /// Every sampled nonzero `e` has a multiple `r·e ≠ 0` in `ker ∂`.
    pub essential: CheckOutcome,
    /// The differential vanishes on the socles of the term.
    pub socle: CheckOutcome,
}

#[derive(Clone, Debug)]
pub struct MinimalityReport {
    pub degrees: Vec<DegreeMinimality>,
    pub minimal: bool,
}

fn element_prime(e: &Element) -> Option<u64> {
    match e {
        Element::Max(x) => Some(x.p()),
        Element::Prufer(x) => Some(x.p()),
        Element::Seq(x) => Some(x.p()),
        Element::Tuple(v) => v.first().map(|x| x.p()),
        Element::Min(_) | Element::Vector(_) => None,
    }
}

/// Multipliers tried when looking for a nonzero cocycle multiple.
fn multipliers(p: Option<u64>, max_expo: u32) -> Vec<RingElt> {
    let mut out = vec![RingElt::int(1, 0), RingElt::x()];
    if let Some(p) = p {
        for a in 1..=max_expo + 1 {
            let q = pow_u64(p, a);
            out.push(RingElt::int_big(q.clone(), BigInt::from(0)));
            out.push(RingElt::int_big(BigInt::from(0), q));
        }
    }
    out
}

fn essential_check<R: Rng>(c: &ComplexShape, n: i64, samples: usize, rng: &mut R) -> Result<CheckOutcome> {
    let cfg = SampleConfig::default();
    let mut tested = 0usize;
    for _ in 0..samples {
        let Some(e) = c.sample(n, rng, &cfg) else {
            return Ok(CheckOutcome::pass("no explicit elements to sample"));
        };
        if c.element_is_zero(n, &e) {
            continue;
        }
        tested += 1;
        let mut found = None;
        for r in multipliers(element_prime(&e), cfg.max_expo) {
            let re = scalar_element(&r, &e)?;
            if !c.element_is_zero(n, &re) && c.is_cocycle(n, &re)? {
                found = Some(r);
                break;
            }
        }
        if found.is_none() {
            return Ok(CheckOutcome::fail(format!("no multiple of {e} is a nonzero cocycle")));
        }
    }
    Ok(CheckOutcome::pass(format!("{tested} nonzero samples each have a nonzero cocycle multiple")))
}

fn injective_desc(m: &ModuleDesc) -> bool {
    m.is_zero()
        || m.summands().is_some_and(|s| {
            s.keys().all(|k| matches!(k, Summand::E(_) | Summand::EMin | Summand::AllMaximal))
        })
}

fn window_socle(target: DualTarget, base: &FgModule, m: Option<&RMatrix>, at: Option<PrimeIdeal>) -> Result<CheckOutcome> {
    if *base != FgModule::free(1) {
        return Err(Error::UnsupportedShape("minimality of windows over a non-free base".into()));
    }
    let Some(m) = m else { return Ok(CheckOutcome::pass("zero differential")) };
    let zero = match (target, at) {
        (DualTarget::Prufer(p), _) | (DualTarget::RationalModIntegers, Some(PrimeIdeal::MaximalAt(p))) => {
            m.residue_mod(p).is_zero()
        }
        _ => m.constant_part().is_zero(),
    };
    Ok(if zero {
        CheckOutcome::pass("differential has no unit entries on the socle")
    } else {
        CheckOutcome::fail(format!("differential {m} is nonzero on the socle"))
    })
}

pub(super) fn socle_check(c: &ComplexShape, n: i64, at: Option<PrimeIdeal>) -> Result<CheckOutcome> {
    match c {
        ComplexShape::Shift { inner, by } => socle_check(inner, n + by, at),
        ComplexShape::Localized { inner, at: q } => socle_check(inner, n, Some(*q)),
        ComplexShape::Concentrated { module, .. } => {
            if !injective_desc(module) {
                return Err(Error::Precondition(format!("{module} is not injective")));
            }
            Ok(CheckOutcome::pass("zero differential"))
        }
        ComplexShape::XTail { factor, .. } => {
            let g = match factor {
                StdInjective::EMax(p) => Element::Max(crate::modules::EElt::socle_generator(*p)),
                StdInjective::EMin => Element::Min(crate::modules::MinElt::socle_generator()),
            };
            let d = c.differential(n, &g)?;
            Ok(if c.element_is_zero(n + 1, &d) {
                CheckOutcome::pass(format!("x kills the socle generator {g}"))
            } else {
                CheckOutcome::fail(format!("differential moves the socle generator {g}"))
            })
        }
        ComplexShape::ProductOfShifts(base) => match base.as_ref() {
            ComplexShape::Concentrated { module, .. } => socle_check(&ComplexShape::concentrated(module.clone(), 0), 0, at),
            _ => {
                let ModuleDesc::Product(m) = c.term_at(n) else { unreachable!("product terms") };
                let gens: Vec<_> = if at == Some(PrimeIdeal::MinimalX) {
                    vec![m.geometric_witness()]
                } else {
                    let g = crate::modules::EElt::socle_generator(m.p());
                    let mut v = vec![m.socle_constant()];
                    for i in m.start..m.start + 4 {
                        v.push(m.single(i, g.clone())?);
                    }
                    v
                };
                for g in gens {
                    let d = c.differential(n, &Element::Seq(g.clone()))?;
                    if !c.element_is_zero(n + 1, &d) {
                        return Ok(CheckOutcome::fail(format!("differential moves the socle element {g}")));
                    }
                }
                Ok(CheckOutcome::pass("x kills every socle element (slotwise socles and the constant socle sequence)"))
            }
        },
        ComplexShape::FiniteWindow(Window::Dual(d)) => {
            let m = (n >= d.lo && n < d.hi()).then(|| &d.maps[(n - d.lo) as usize]);
            window_socle(d.target, &d.base, m, at)
        }
        ComplexShape::FiniteWindow(Window::Fg(_)) => {
            Err(Error::Precondition("finitely presented windows are not complexes of injectives".into()))
        }
        ComplexShape::IntegerDual(_) => Err(Error::UnsupportedShape("minimality of integer duals".into())),
    }
}

/// Degreewise minimality over `lo ..= hi`.
pub fn check_minimal<R: Rng>(c: &ComplexShape, lo: i64, hi: i64, samples: usize, rng: &mut R) -> Result<MinimalityReport> {
    let mut degrees = Vec::new();
    for n in lo..=hi {
        if c.term_at(n).is_zero() {
            let z = CheckOutcome::pass("zero term");
            degrees.push(DegreeMinimality { degree: n, essential: z.clone(), socle: z });
            continue;
        }
        let socle = socle_check(c, n, None)?;
        let essential = essential_check(c, n, samples, rng)?;
        degrees.push(DegreeMinimality { degree: n, essential, socle });
    }
    let minimal = degrees.iter().all(|d| d.essential.passed && d.socle.passed);
    Ok(MinimalityReport { degrees, minimal })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractVerdict {
    Contractible(String),
    NotContractible(String),
    Unknown(String),
}

impl fmt::Display for ContractVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContractVerdict::Contractible(s) => write!(f, "contractible ({s})"),
            ContractVerdict::NotContractible(s) => write!(f, "not contractible ({s})"),
            ContractVerdict::Unknown(s) => write!(f, "unknown ({s})"),
        }
    }
}

/// Bound on the number of candidate homotopies tried.
const HOMOTOPY_SEARCH_LIMIT: u64 = 1_000_000;

/// Search for `h` with `∂h + h∂ = 1`, entries `a + bx` with `a, b ∈ {-1, 0, 1}`.
fn homotopy_search(ranks: &[usize], maps: &[RMatrix]) -> Option<Vec<RMatrix>> {
    let k = ranks.len();
    // h[j]: C^j → C^{j-1}, j = 1..k-1
    let shapes: Vec<(usize, usize)> = (1..k).map(|j| (ranks[j - 1], ranks[j])).collect();
    let unknowns: usize = shapes.iter().map(|(r, c)| 2 * r * c).sum();
    if 3u64.checked_pow(unknowns as u32).map_or(true, |t| t > HOMOTOPY_SEARCH_LIMIT) {
        return None;
    }
    let mut digits = vec![0u8; unknowns];
    loop {
        let mut idx = 0;
        let hs: Vec<RMatrix> = shapes
            .iter()
            .map(|&(r, c)| {
                if r == 0 {
                    return RMatrix::zeros(0, c);
                }
                let mut pairs = vec![vec![(0i64, 0i64); c]; r];
                for row in pairs.iter_mut() {
                    for e in row.iter_mut() {
                        *e = (digits[idx] as i64 - 1, digits[idx + 1] as i64 - 1);
                        idx += 2;
                    }
                }
                RMatrix::from_pairs(&pairs)
            })
            .collect();
        let ok = (0..k).all(|j| {
            let mut s = RMatrix::zeros(ranks[j], ranks[j]);
            if j >= 1 {
                s = s.add(&maps[j - 1].mul(&hs[j - 1]).expect("shape")).expect("shape");
            }
            if j + 1 < k {
                s = s.add(&hs[j].mul(&maps[j]).expect("shape")).expect("shape");
            }
            s == RMatrix::identity(ranks[j])
        });
        if ok {
            return Some(hs);
        }
        let mut i = 0;
        loop {
            if i == unknowns {
                return None;
            }
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Decide contractibility over the degrees `lo ..= hi`.
pub fn contractibility_verdict<R: Rng>(c: &ComplexShape, lo: i64, hi: i64, samples: usize, rng: &mut R) -> Result<ContractVerdict> {
    if (lo..=hi).all(|n| c.term_at(n).is_zero()) {
        return Ok(ContractVerdict::Contractible("every term is zero; h = 0".into()));
    }
    for n in lo..=hi {
        let h = c.cohomology_at(n)?;
        if !h.is_zero() {
            return Ok(ContractVerdict::NotContractible(format!("H^{n} = {h} is nonzero")));
        }
    }
    if let ComplexShape::FiniteWindow(Window::Dual(d)) = c {
        if d.base == FgModule::free(1) {
            if let Some(hs) = homotopy_search(&d.ranks, &d.maps) {
                let s: Vec<String> = hs.iter().map(ToString::to_string).collect();
                return Ok(ContractVerdict::Contractible(format!("homotopy h = [{}]", s.join("; "))));
            }
        }
    }
    match check_minimal(c, lo, hi, samples, rng) {
        Ok(r) if r.minimal => Ok(ContractVerdict::NotContractible(
            "minimal with a nonzero term, and a contractible minimal complex of injectives is zero".into(),
        )),
        Ok(_) => Ok(ContractVerdict::Unknown("acyclic, not minimal, no small homotopy found".into())),
        Err(e) => Ok(ContractVerdict::Unknown(format!("acyclic; minimality undecided: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::localize_complex;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn j_and_i_are_minimal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [2, 3, 5] {
            for c in [ComplexShape::j(p), ComplexShape::i(p)] {
                let r = check_minimal(&c, -3, 3, 30, &mut rng).unwrap();
                assert!(r.minimal, "{c}: {:?}", r.degrees);
            }
        }
    }

    #[test]
    fn identity_window_is_not_minimal_but_contractible() {
        let c = ComplexShape::e_window(2, 0, vec![1, 1], vec![RMatrix::identity(1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = check_minimal(&c, 0, 1, 20, &mut rng).unwrap();
        assert!(!r.minimal);
        assert!(!r.degrees[0].socle.passed);
        let v = contractibility_verdict(&c, 0, 1, 20, &mut rng).unwrap();
        assert!(matches!(v, ContractVerdict::Contractible(_)), "{v}");
    }

    #[test]
    fn localized_i_is_acyclic_minimal_not_contractible() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let l = localize_complex(&ComplexShape::i(3), PrimeIdeal::MinimalX);
        let r = check_minimal(&l, -2, 2, 30, &mut rng).unwrap();
        assert!(r.minimal, "{:?}", r.degrees);
        let v = contractibility_verdict(&l, -2, 2, 30, &mut rng).unwrap();
        assert!(matches!(v, ContractVerdict::NotContractible(_)), "{v}");
    }

    #[test]
    fn zero_complex_is_contractible() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let v = contractibility_verdict(&ComplexShape::zero(), -2, 2, 5, &mut rng).unwrap();
        assert!(matches!(v, ContractVerdict::Contractible(_)));
        let v = contractibility_verdict(&ComplexShape::j(2), -2, 2, 5, &mut rng).unwrap();
        assert!(matches!(v, ContractVerdict::NotContractible(_)));
    }

    #[test]
    fn non_injective_terms_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = ComplexShape::concentrated(ModuleDesc::prufer(2), 0);
        assert!(check_minimal(&c, 0, 0, 5, &mut rng).is_err());
    }
}
