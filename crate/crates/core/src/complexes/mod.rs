//! Cochain complexes over `Z[x]/(x²)` drawn from a closed universe of shapes:
//! modules in one degree, finite windows, the x-tail `0 → E → E → …`, products
//! of shifts of these, integer duals of free complexes, localizations and
//! suspensions.

mod maps;
mod minimal;
mod torsion;

pub use maps::{check_quasi_iso, ChainMap, DegreeIso, MapRule, QuasiIsoReport};
pub use minimal::{check_minimal, contractibility_verdict, CheckOutcome, ContractVerdict, DegreeMinimality, MinimalityReport};
pub use torsion::{gamma_torsion, hom_from_residue, GammaResult, HomResidueReport, SocleDim};

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactnum::{pow_u64, PruferElt};
use crate::modules::product::sample_eelt;
use crate::modules::{
    ann_element, DualComplex, DualTarget, EElt, Element, FgComplex, FgModule, MinElt, ModuleDesc, ProductFactor,
    ProductModule, SeqElt, SlotConstraint, StdInjective, SubProductConstraint, Summand,
};
use crate::ring::{PrimeIdeal, RingElt};
use crate::support::FreeResolution;

/// A bounded window of explicit terms.
#[derive(Clone, Debug)]
pub enum Window {
    /// Terms `Hom_Z(N, A)^r` with R-matrix differentials.
    Dual(DualComplex),
    /// Finitely presented terms.
    Fg(FgComplex),
}

#[derive(Clone, Debug)]
pub enum ComplexShape {
    Concentrated { module: ModuleDesc, degree: i64 },
    FiniteWindow(Window),
    /// `0 → E → E → …` with differential `x`, first term in degree `start`.
    XTail { factor: StdInjective, start: i64 },
    /// `∏_{i∈Z} Σ^i(base)` for a base `XTail(E(R/(p,x)), d)` or `Concentrated`.
    ProductOfShifts(Box<ComplexShape>),
    /// `Tot Hom_Z(F, Q → Q/Z)` for a free complex `F`: a complex of injectives
    /// quasi-isomorphic to `Hom_R(F, R)`.
    IntegerDual(FreeResolution),
    Localized { inner: Box<ComplexShape>, at: PrimeIdeal },
    /// `Σ^by(inner)`: degree `n` holds `inner`'s degree `n + by`, differential
    /// times `(-1)^by`.
    Shift { inner: Box<ComplexShape>, by: i64 },
}

/// Parameters for random element generation.
#[derive(Clone, Copy, Debug)]
pub struct SampleConfig {
    pub max_expo: u32,
    pub exceptions: usize,
    pub span: i64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { max_expo: 6, exceptions: 3, span: 8 }
    }
}

impl ComplexShape {
    pub fn concentrated(module: ModuleDesc, degree: i64) -> Self {
        ComplexShape::Concentrated { module, degree }
    }

    pub fn zero() -> Self {
        Self::concentrated(ModuleDesc::Zero, 0)
    }

    /// `J = 0 → E → E → …` for `E = E(R/(p,x))`.
    pub fn j(p: u64) -> Self {
        ComplexShape::XTail { factor: StdInjective::EMax(p), start: 0 }
    }

    /// `I = ∏ Σ^i J`.
    pub fn i(p: u64) -> Self {
        Self::product_of_shifts(Self::j(p)).expect("supported base")
    }

    /// `X = ∏ Σ^i M`.
    pub fn x(p: u64) -> Self {
        Self::product_of_shifts(Self::concentrated(ModuleDesc::prufer(p), 0)).expect("supported base")
    }

    pub fn product_of_shifts(base: ComplexShape) -> Result<Self> {
        match &base {
            ComplexShape::XTail { factor: StdInjective::EMax(_), .. } | ComplexShape::Concentrated { .. } => {
                Ok(ComplexShape::ProductOfShifts(Box::new(base)))
            }
            other => Err(Error::UnsupportedShape(format!("products of shifts of {other}"))),
        }
    }

    /// Window of `E(R/(p,x))`-powers.
    pub fn e_window(p: u64, lo: i64, ranks: Vec<usize>, maps: Vec<crate::modules::RMatrix>) -> Result<Self> {
        Ok(ComplexShape::FiniteWindow(Window::Dual(DualComplex::e_powers(p, lo, ranks, maps)?)))
    }

    pub fn is_localized(&self) -> Option<PrimeIdeal> {
        match self {
            ComplexShape::Localized { at, .. } => Some(*at),
            ComplexShape::Shift { inner, .. } => inner.is_localized(),
            _ => None,
        }
    }

    /// Slot range start of a product term: `I^n = ∏_{i ≥ d - n}`.
    fn product_start(d: i64, n: i64) -> i64 {
        d - n
    }

    pub fn term_at(&self, n: i64) -> ModuleDesc {
        match self {
            ComplexShape::Concentrated { module, degree } => {
                if n == *degree {
                    module.clone()
                } else {
                    ModuleDesc::Zero
                }
            }
            ComplexShape::FiniteWindow(Window::Dual(d)) => d.term_at(n),
            ComplexShape::FiniteWindow(Window::Fg(c)) => {
                c.module_at(n).filter(|m| !m.is_zero()).map_or(ModuleDesc::Zero, |m| ModuleDesc::Fg(m.clone()))
            }
            ComplexShape::XTail { factor, start } => {
                if n >= *start {
                    ModuleDesc::injective(*factor, 1)
                } else {
                    ModuleDesc::Zero
                }
            }
            ComplexShape::ProductOfShifts(base) => match base.as_ref() {
                ComplexShape::XTail { factor: StdInjective::EMax(p), start } => ModuleDesc::Product(ProductModule::new(
                    ProductFactor::EMax(*p),
                    Self::product_start(*start, n),
                )),
                ComplexShape::Concentrated { module, .. } => module.clone(),
                _ => unreachable!("validated at construction"),
            },
            ComplexShape::IntegerDual(f) => {
                let len = f.ranks.len() as i64;
                let mut parts = Vec::new();
                if (0..len).contains(&n) {
                    parts.push(ModuleDesc::Dual(DualTarget::Rational, FgModule::free(f.ranks[n as usize])));
                }
                if (1..=len).contains(&n) {
                    parts.push(ModuleDesc::Dual(
                        DualTarget::RationalModIntegers,
                        FgModule::free(f.ranks[n as usize - 1]),
                    ));
                }
                let s = ModuleDesc::Sum(parts);
                if s.is_zero() {
                    ModuleDesc::Zero
                } else {
                    s
                }
            }
            ComplexShape::Localized { inner, at } => inner.term_at(n).localize(*at),
            ComplexShape::Shift { inner, by } => inner.term_at(n + by),
        }
    }

    /// Kernel and image of the differentials around degree `n` of a product
    /// of shifted x-tails, as constraints on `∏_{i ≥ d - n}`.
    pub fn product_kernel_image(&self, n: i64) -> Option<(SubProductConstraint, SubProductConstraint)> {
        let ComplexShape::ProductOfShifts(base) = self else { return None };
        let ComplexShape::XTail { start, .. } = base.as_ref() else { return None };
        let s = Self::product_start(*start, n);
        // x maps E onto M slotwise; the newest slot s receives 0
        let ker = SubProductConstraint::uniform(SlotConstraint::MPart);
        let im = SubProductConstraint::uniform(SlotConstraint::MPart).with_slot(s, SlotConstraint::Zero);
        Some((ker, im))
    }

    pub fn cohomology_at(&self, n: i64) -> Result<ModuleDesc> {
        Ok(match self {
            ComplexShape::Concentrated { .. } => self.term_at(n),
            ComplexShape::FiniteWindow(Window::Dual(d)) => d.cohomology_at(n)?,
            ComplexShape::FiniteWindow(Window::Fg(c)) => {
                let h = c.homology(n);
                if h.is_zero() {
                    ModuleDesc::Zero
                } else {
                    ModuleDesc::Fg(h)
                }
            }
            ComplexShape::XTail { factor, start } => {
                if n != *start {
                    ModuleDesc::Zero
                } else {
                    match factor {
                        StdInjective::EMax(p) => ModuleDesc::prufer(*p),
                        StdInjective::EMin => ModuleDesc::rational_line(),
                    }
                }
            }
            ComplexShape::ProductOfShifts(base) => match base.as_ref() {
                ComplexShape::XTail { factor, .. } => {
                    let (ker, im) = self.product_kernel_image(n).expect("x-tail base");
                    quotient_of_constraints(&ker, &im, factor.prime())?
                }
                ComplexShape::Concentrated { module, .. } => module.clone(),
                _ => unreachable!("validated at construction"),
            },
            ComplexShape::IntegerDual(f) => {
                let h = f.hom_into(&FgModule::free(1))?.homology(n);
                if h.is_zero() {
                    ModuleDesc::Zero
                } else {
                    ModuleDesc::Fg(h)
                }
            }
            ComplexShape::Localized { inner, at } => inner.cohomology_at(n)?.localize(*at),
            ComplexShape::Shift { inner, by } => inner.cohomology_at(n + by)?,
        })
    }

    /// Largest degree where the shape's cohomology is exact rather than a
    /// truncation artefact.
    pub fn trusted_up_to(&self) -> Option<i64> {
        match self {
            ComplexShape::IntegerDual(f) if !f.finite => Some(f.length() as i64 - 1),
            ComplexShape::Localized { inner, .. } => inner.trusted_up_to(),
            ComplexShape::Shift { inner, by } => inner.trusted_up_to().map(|t| t - by),
            _ => None,
        }
    }

    pub fn shift(&self, i: i64) -> ComplexShape {
        if i == 0 {
            return self.clone();
        }
        match self {
            ComplexShape::Concentrated { module, degree } => Self::concentrated(module.clone(), degree - i),
            ComplexShape::Shift { inner, by } => {
                if by + i == 0 {
                    inner.as_ref().clone()
                } else {
                    ComplexShape::Shift { inner: inner.clone(), by: by + i }
                }
            }
            other => ComplexShape::Shift { inner: Box::new(other.clone()), by: i },
        }
    }

    /// Random element of the degree-`n` term, for shapes with explicit elements.
    pub fn sample<R: Rng>(&self, n: i64, rng: &mut R, cfg: &SampleConfig) -> Option<Element> {
        match self {
            ComplexShape::Concentrated { module, degree } => {
                if n == *degree {
                    sample_module(module, rng, cfg)
                } else {
                    None
                }
            }
            ComplexShape::XTail { factor, start } if n >= *start => Some(match factor {
                StdInjective::EMax(p) => Element::Max(sample_eelt(rng, *p, cfg.max_expo)),
                StdInjective::EMin => Element::Min(MinElt::int(rng.gen_range(-9..=9), rng.gen_range(-9..=9))),
            }),
            ComplexShape::XTail { .. } => None,
            ComplexShape::ProductOfShifts(base) => match base.as_ref() {
                ComplexShape::XTail { .. } => match self.term_at(n) {
                    ModuleDesc::Product(m) => Some(Element::Seq(m.sample(rng, cfg.max_expo, cfg.exceptions, cfg.span))),
                    _ => None,
                },
                ComplexShape::Concentrated { module, .. } => sample_module(module, rng, cfg),
                _ => None,
            },
            ComplexShape::FiniteWindow(Window::Dual(d)) => {
                let DualTarget::Prufer(p) = d.target else { return None };
                if d.base != FgModule::free(1) || n < d.lo || n > d.hi() {
                    return None;
                }
                let r = d.ranks[(n - d.lo) as usize];
                (r > 0).then(|| Element::Tuple((0..r).map(|_| sample_eelt(rng, p, cfg.max_expo)).collect()))
            }
            ComplexShape::FiniteWindow(Window::Fg(c)) => {
                let m = c.module_at(n)?;
                (m.rank() > 0).then(|| Element::Vector((0..m.rank()).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect()))
            }
            ComplexShape::IntegerDual(_) => None,
            ComplexShape::Localized { inner, .. } => inner.sample(n, rng, cfg),
            ComplexShape::Shift { inner, by } => inner.sample(n + by, rng, cfg),
        }
    }

    /// `∂^n(e)`, an element of the degree `n + 1` term.
    pub fn differential(&self, n: i64, e: &Element) -> Result<Element> {
        match self {
            ComplexShape::Concentrated { .. } => Ok(zero_like(e)),
            ComplexShape::XTail { .. } => x_element(e),
            ComplexShape::ProductOfShifts(base) => match (base.as_ref(), e) {
                (ComplexShape::XTail { start, .. }, Element::Seq(s)) => {
                    Ok(Element::Seq(s.x_act().extend_start(Self::product_start(*start, n + 1))?))
                }
                (ComplexShape::Concentrated { .. }, _) => Ok(zero_like(e)),
                _ => Err(Error::IncompatibleShapes(format!("element {e} in degree {n}"))),
            },
            ComplexShape::FiniteWindow(Window::Dual(d)) => {
                let Element::Tuple(v) = e else {
                    return Err(Error::IncompatibleShapes(format!("element {e} in a window")));
                };
                let Some(m) = (n >= d.lo && n < d.hi()).then(|| &d.maps[(n - d.lo) as usize]) else {
                    return Ok(zero_like(e));
                };
                let p = v.first().map_or(2, EElt::p);
                let mut out = Vec::with_capacity(m.rows());
                for i in 0..m.rows() {
                    let mut acc = EElt::zero(p);
                    for (j, x) in v.iter().enumerate() {
                        acc = acc.add(&x.scalar_act(&m.entry(i, j))?)?;
                    }
                    out.push(acc);
                }
                Ok(Element::Tuple(out))
            }
            ComplexShape::FiniteWindow(Window::Fg(c)) => {
                let Element::Vector(v) = e else {
                    return Err(Error::IncompatibleShapes(format!("element {e} in a window")));
                };
                Ok(Element::Vector(c.map_at(n).map_or_else(|| vec![], |m| m.apply(v))))
            }
            ComplexShape::IntegerDual(_) => Err(Error::UnsupportedShape("elementwise integer duals".into())),
            ComplexShape::Localized { inner, .. } => inner.differential(n, e),
            ComplexShape::Shift { inner, by } => {
                let d = inner.differential(n + by, e)?;
                Ok(if by % 2 == 0 { d } else { neg_element(&d) })
            }
        }
    }

    /// Whether `e` vanishes in the degree-`n` term (after localization).
    pub fn element_is_zero(&self, n: i64, e: &Element) -> bool {
        match self {
            ComplexShape::Localized { inner, at } => {
                inner.element_is_zero(n, e) || element_ann(inner, n, e).is_some_and(|a| !at.contains_ideal(&a))
            }
            ComplexShape::Shift { inner, by } => inner.element_is_zero(n + by, e),
            ComplexShape::FiniteWindow(Window::Fg(c)) => match e {
                Element::Vector(v) => c.module_at(n).map_or(true, |m| v.is_empty() || m.is_zero_element(v)),
                _ => false,
            },
            _ => element_plain_zero(e),
        }
    }

    pub fn is_cocycle(&self, n: i64, e: &Element) -> Result<bool> {
        let d = self.differential(n, e)?;
        Ok(self.element_is_zero(n + 1, &d))
    }

    /// `r·e` in the degree-`n` term.
    pub fn act(&self, n: i64, r: &RingElt, e: &Element) -> Result<Element> {
        match (self, e) {
            (ComplexShape::FiniteWindow(Window::Fg(c)), Element::Vector(v)) => {
                let m = c.module_at(n).ok_or_else(|| Error::Precondition("degree outside window".into()))?;
                Ok(Element::Vector(m.scalar_apply(r, v)?))
            }
            (ComplexShape::Shift { inner, by }, _) => inner.act(n + by, r, e),
            (ComplexShape::Localized { inner, .. }, _) => inner.act(n, r, e),
            (ComplexShape::ProductOfShifts(b), _) if matches!(b.as_ref(), ComplexShape::Concentrated { module, .. } if matches!(module, ModuleDesc::Fg(_))) => {
                Err(Error::UnsupportedShape("ring action on finitely presented product terms".into()))
            }
            _ => scalar_element(r, e),
        }
    }
}

/// Annihilator of an element, using the term's module where needed.
pub(crate) fn element_ann(c: &ComplexShape, n: i64, e: &Element) -> Option<crate::ring::Ideal> {
    match (c, e) {
        (ComplexShape::FiniteWindow(Window::Fg(w)), Element::Vector(v)) => w.module_at(n).map(|m| m.elem_annihilator(v)),
        (ComplexShape::Concentrated { module: ModuleDesc::Fg(m), .. }, Element::Vector(v)) => Some(m.elem_annihilator(v)),
        (ComplexShape::Shift { inner, by }, _) => element_ann(inner, n + by, e),
        (ComplexShape::Localized { inner, .. }, _) => element_ann(inner, n, e),
        _ => ann_element(e).ok(),
    }
}

fn element_plain_zero(e: &Element) -> bool {
    match e {
        Element::Max(x) => x.is_zero(),
        Element::Min(x) => x.is_zero(),
        Element::Prufer(x) => x.is_zero(),
        Element::Seq(x) => x.is_zero(),
        Element::Tuple(v) => v.iter().all(EElt::is_zero),
        Element::Vector(v) => v.iter().all(Zero::is_zero),
    }
}

fn zero_like(e: &Element) -> Element {
    match e {
        Element::Max(x) => Element::Max(EElt::zero(x.p())),
        Element::Min(_) => Element::Min(MinElt::zero()),
        Element::Prufer(x) => Element::Prufer(PruferElt::zero(x.p())),
        Element::Seq(x) => Element::Seq(SeqElt::zero(x.factor(), x.start())),
        Element::Tuple(v) => Element::Tuple(v.iter().map(|x| EElt::zero(x.p())).collect()),
        Element::Vector(v) => Element::Vector(vec![BigInt::zero(); v.len()]),
    }
}

pub(crate) fn x_element(e: &Element) -> Result<Element> {
    scalar_element(&RingElt::x(), e)
}

pub(crate) fn neg_element(e: &Element) -> Element {
    scalar_element(&RingElt::int(-1, 0), e).expect("integers act on every species")
}

pub(crate) fn scalar_element(r: &RingElt, e: &Element) -> Result<Element> {
    Ok(match e {
        Element::Max(x) => Element::Max(x.scalar_act(r)?),
        Element::Min(x) => Element::Min(x.scalar_act(r)),
        Element::Prufer(x) => {
            let (a, _) = r.int_coords().ok_or_else(|| Error::ScalarOutsideRing(r.to_string(), "M".into()))?;
            Element::Prufer(x.scale(&a))
        }
        Element::Seq(x) => Element::Seq(x.scalar_act(r)?),
        Element::Tuple(v) => Element::Tuple(v.iter().map(|x| x.scalar_act(r)).collect::<Result<_>>()?),
        Element::Vector(_) => {
            return Err(Error::Precondition("vectors need their module for the ring action".into()));
        }
    })
}

fn sample_module<R: Rng>(m: &ModuleDesc, rng: &mut R, cfg: &SampleConfig) -> Option<Element> {
    if let ModuleDesc::Fg(n) = m {
        return (n.rank() > 0).then(|| Element::Vector((0..n.rank()).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect()));
    }
    let s = m.summands()?;
    if s.len() != 1 {
        return None;
    }
    match s.into_iter().next()? {
        (Summand::E(p), 1) => Some(Element::Max(sample_eelt(rng, p, cfg.max_expo))),
        (Summand::M(p), 1) => {
            let e = rng.gen_range(0..=cfg.max_expo);
            let n = u64::try_from(&pow_u64(p, e)).unwrap_or(u64::MAX);
            Some(Element::Prufer(PruferElt::new(p, rng.gen_range(0..n.max(1)), e).expect("prime")))
        }
        (Summand::EMin, 1) => Some(Element::Min(MinElt::int(rng.gen_range(-9..=9), rng.gen_range(-9..=9)))),
        _ => None,
    }
}

/// `K/L` for slot constraints `L ⊆ K` differing in finitely many slots.
fn quotient_of_constraints(ker: &SubProductConstraint, im: &SubProductConstraint, prime: PrimeIdeal) -> Result<ModuleDesc> {
    if !im.is_within(ker) {
        return Err(Error::InvalidModule("image is not inside the kernel".into()));
    }
    if ker.cofinal != im.cofinal {
        return Err(Error::UnsupportedShape("quotients differing in infinitely many slots".into()));
    }
    let PrimeIdeal::MaximalAt(p) = prime else {
        return Err(Error::UnsupportedShape("products over E(R/(x))".into()));
    };
    let mut slots: Vec<i64> = ker.slots.keys().chain(im.slots.keys()).copied().collect();
    slots.sort_unstable();
    slots.dedup();
    let mut parts = Vec::new();
    for i in slots {
        use SlotConstraint::*;
        let piece = match (ker.at(i), im.at(i)) {
            (a, b) if a == b => continue,
            // M/0, M/soc M ≅ M (via p), E/M ≅ M (via x)
            (MPart, Zero) | (MPart, Socle) | (Full, MPart) => ModuleDesc::prufer(p),
            (Socle, Zero) => ModuleDesc::Fg(FgModule::quotient_by_prime(prime)),
            (Full, Zero) => ModuleDesc::injective(StdInjective::EMax(p), 1),
            (a, b) => return Err(Error::UnsupportedShape(format!("slot quotient {a:?}/{b:?}"))),
        };
        parts.push(piece);
    }
    Ok(match parts.len() {
        0 => ModuleDesc::Zero,
        1 => parts.pop().expect("one part"),
        _ => ModuleDesc::Sum(parts),
    })
}

impl fmt::Display for ComplexShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexShape::Concentrated { module, degree } => write!(f, "{module}[{degree}]"),
            ComplexShape::FiniteWindow(Window::Dual(d)) => {
                write!(f, "window[{}..{}] of Hom_Z(-, {})", d.lo, d.hi(), d.target)
            }
            ComplexShape::FiniteWindow(Window::Fg(c)) => write!(f, "window[{}..{}] of fg modules", c.lo(), c.hi()),
            ComplexShape::XTail { factor, start } => write!(f, "0 -> {factor} -x-> {factor} -> ... (from {start})"),
            ComplexShape::ProductOfShifts(base) => write!(f, "prod_i S^i({base})"),
            ComplexShape::IntegerDual(r) => write!(f, "Tot Hom_Z(F, Q -> Q/Z), ranks {:?}", r.ranks),
            ComplexShape::Localized { inner, at } => write!(f, "({inner})_{at}"),
            ComplexShape::Shift { inner, by } => write!(f, "S^{by}({inner})"),
        }
    }
}

pub fn localize_complex(c: &ComplexShape, p: PrimeIdeal) -> ComplexShape {
    ComplexShape::Localized { inner: Box::new(c.clone()), at: p }
}

pub fn shift(c: &ComplexShape, i: i64) -> ComplexShape {
    c.shift(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn terms() {
        assert!(ComplexShape::j(2).term_at(-1).is_zero());
        assert_eq!(ComplexShape::j(2).term_at(3).to_string(), "E(R/(2,x))");
        match ComplexShape::i(3).term_at(4) {
            ModuleDesc::Product(m) => assert_eq!(m.start, -4),
            other => panic!("{other}"),
        }
        assert!(ComplexShape::concentrated(ModuleDesc::prufer(2), 0).term_at(3).is_zero());
    }

    #[test]
    fn cohomology() {
        for p in [2, 3, 5] {
            let j = ComplexShape::j(p);
            assert!(j.cohomology_at(0).unwrap().same_iso_class(&ModuleDesc::prufer(p)));
            assert!(j.cohomology_at(2).unwrap().is_zero());
            let i = ComplexShape::i(p);
            let x = ComplexShape::x(p);
            for n in -6..=6 {
                assert!(i.cohomology_at(n).unwrap().same_iso_class(&ModuleDesc::prufer(p)));
                assert!(x.cohomology_at(n).unwrap().same_iso_class(&ModuleDesc::prufer(p)));
            }
        }
    }

    #[test]
    fn localized_i_is_acyclic_with_nonzero_terms() {
        let l = localize_complex(&ComplexShape::i(2), PrimeIdeal::MinimalX);
        for n in -3..=3 {
            assert!(l.cohomology_at(n).unwrap().is_zero());
            assert!(!l.term_at(n).is_zero());
        }
        let j = localize_complex(&ComplexShape::j(2), PrimeIdeal::MaximalAt(3));
        for n in 0..4 {
            assert!(j.term_at(n).is_zero());
        }
    }

    #[test]
    fn shifts() {
        let m = ComplexShape::concentrated(ModuleDesc::prufer(2), 0);
        match m.shift(3) {
            ComplexShape::Concentrated { degree, .. } => assert_eq!(degree, -3),
            other => panic!("{other}"),
        }
        let s = ComplexShape::j(2).shift(1);
        assert!(s.term_at(-2).is_zero());
        assert!(!s.term_at(-1).is_zero());
        assert!(ComplexShape::j(2).shift(0).term_at(-1).is_zero());
        assert!(s.cohomology_at(-1).unwrap().same_iso_class(&ModuleDesc::prufer(2)));
    }

    #[test]
    fn dd_is_zero_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = SampleConfig::default();
        let shapes = [ComplexShape::j(3), ComplexShape::i(3), ComplexShape::x(3), ComplexShape::j(2).shift(1)];
        for c in &shapes {
            for n in -3..=3 {
                for _ in 0..20 {
                    if let Some(e) = c.sample(n, &mut rng, &cfg) {
                        let d = c.differential(n, &e).unwrap();
                        let dd = c.differential(n + 1, &d).unwrap();
                        assert!(c.element_is_zero(n + 2, &dd), "{c} at {n}: {e}");
                    }
                }
            }
        }
    }

    #[test]
    fn integer_dual_of_r() {
        let f = crate::support::free_resolution(&FgModule::free(1), 4).unwrap();
        let c = ComplexShape::IntegerDual(f);
        assert_eq!(c.term_at(0).to_string(), "E(R/(x))");
        assert_eq!(c.term_at(1).to_string(), "(+)_q E(R/(q,x))");
        assert!(c.term_at(2).is_zero());
        match c.cohomology_at(0).unwrap() {
            ModuleDesc::Fg(h) => assert_eq!(h.fingerprint(), FgModule::free(1).fingerprint()),
            other => panic!("{other}"),
        }
        assert!(c.cohomology_at(1).unwrap().is_zero());
    }
}
