use std::fmt;

use super::resolution::free_resolution;
use crate::complexes::{ComplexShape, Window};
use crate::error::{Error, Result};
use crate::modules::{FgModule, ModuleDesc, StdInjective};
use crate::ring::PrimeIdeal;

pub const DEFAULT_RESOLUTION_LENGTH: usize = 8;

/// `Tor_degree(resolved, target)`, the homology of `F ⊗ target` for a free
/// resolution `F` of `resolved`. Dual targets use
/// `F ⊗ Hom_Z(N, A) = Hom_Z(Hom_R(F, N), A)`.
pub fn derived_tensor_homology(target: &ModuleDesc, resolved: &FgModule, degree: usize, length: usize) -> Result<ModuleDesc> {
    let f = free_resolution(resolved, length)?;
    if !f.finite && degree + 1 >= length {
        return Err(Error::OutsideTrustWindow { degree: degree as i64, length });
    }
    tor_with(target, &f, degree)
}

fn tor_with(target: &ModuleDesc, f: &super::FreeResolution, degree: usize) -> Result<ModuleDesc> {
    let out = match target {
        ModuleDesc::Zero => ModuleDesc::Zero,
        ModuleDesc::Fg(n) => ModuleDesc::Fg(f.tensor(n)?.homology(-(degree as i64))),
        ModuleDesc::Dual(a, n) => ModuleDesc::Dual(*a, f.hom_into(n)?.homology(degree as i64)),
        ModuleDesc::Sum(parts) => ModuleDesc::Sum(parts.iter().map(|p| tor_with(p, f, degree)).collect::<Result<_>>()?),
        ModuleDesc::Localized(inner, at) => tor_with(inner, f, degree)?.localize(*at),
        ModuleDesc::Product(_) => {
            return Err(Error::UnsupportedShape("derived tensor with a product module".into()));
        }
    };
    Ok(if out.is_zero() { ModuleDesc::Zero } else { out })
}

/// `H_degree(target ⊗^L k(𝔭))`. For `(x)`, `k((x)) = R/(x) ⊗ Q` and
/// rationalizing is localizing at `(x)`.
pub fn tor_with_residue(target: &ModuleDesc, p: PrimeIdeal, degree: usize, length: usize) -> Result<ModuleDesc> {
    let h = derived_tensor_homology(target, &FgModule::quotient_by_prime(p), degree, length)?;
    Ok(match p {
        PrimeIdeal::MinimalX => h.localize(p),
        PrimeIdeal::MaximalAt(_) => h,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportVerdict {
    pub member: bool,
    /// True when the verdict holds in all degrees, not only inside the window.
    pub exact: bool,
    pub evidence: String,
}

impl SupportVerdict {
    pub fn scope(&self) -> &'static str {
        if self.exact {
            "window-exact"
        } else {
            "window-bounded"
        }
    }
}

#[derive(Clone, Debug)]
pub struct SupportReport {
    pub prime: PrimeIdeal,
    pub in_small_support: SupportVerdict,
    pub in_big_support: SupportVerdict,
}

impl fmt::Display for SupportReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: small {} ({}; {}), big {} ({})",
            self.prime,
            self.in_small_support.member,
            self.in_small_support.scope(),
            self.in_small_support.evidence,
            self.in_big_support.member,
            self.in_big_support.evidence
        )
    }
}

/// Degrees carried by a piece of a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degrees {
    Single(i64),
    /// One copy in every degree.
    All,
}

/// A complex with zero differential up to quasi-isomorphism, as module pieces.
pub fn decompose(c: &ComplexShape) -> Result<Vec<(ModuleDesc, Degrees)>> {
    Ok(match c {
        ComplexShape::Concentrated { module, degree } => vec![(module.clone(), Degrees::Single(*degree))],
        // J ≃ H^start(J) placed in its degree
        ComplexShape::XTail { start, .. } => vec![(c.cohomology_at(*start)?, Degrees::Single(*start))],
        ComplexShape::ProductOfShifts(base) => match base.as_ref() {
            // X ≅ ⊕ Σ^i M, and I ≃ X
            ComplexShape::Concentrated { module, .. } => vec![(module.clone(), Degrees::All)],
            ComplexShape::XTail { start, .. } => vec![(base.cohomology_at(*start)?, Degrees::All)],
            _ => unreachable!("validated at construction"),
        },
        ComplexShape::Localized { inner, at } => {
            decompose(inner)?.into_iter().map(|(m, d)| (m.localize(*at), d)).collect()
        }
        ComplexShape::Shift { inner, by } => decompose(inner)?
            .into_iter()
            .map(|(m, d)| {
                let d = match d {
                    Degrees::Single(k) => Degrees::Single(k - by),
                    Degrees::All => Degrees::All,
                };
                (m, d)
            })
            .collect(),
        ComplexShape::FiniteWindow(Window::Fg(w)) => {
            if (w.lo()..w.hi()).all(|n| w.map_at(n).map_or(true, |m| m.is_zero())) {
                (w.lo()..=w.hi()).filter_map(|n| w.module_at(n).map(|m| (ModuleDesc::Fg(m.clone()), Degrees::Single(n)))).collect()
            } else {
                return Err(Error::UnsupportedShape("support of windows with nonzero differentials".into()));
            }
        }
        ComplexShape::FiniteWindow(Window::Dual(d)) => {
            if d.maps.iter().all(|m| m.is_zero()) {
                (0..d.ranks.len()).map(|k| (d.term_at(d.lo + k as i64), Degrees::Single(d.lo + k as i64))).collect()
            } else {
                return Err(Error::UnsupportedShape("support of windows with nonzero differentials".into()));
            }
        }
        ComplexShape::IntegerDual(_) => {
            return Err(Error::UnsupportedShape("support of integer duals".into()));
        }
    })
}

/// `H(m ⊗^L k(𝔭)) = 0` in all degrees, certified by an element of
/// `ann k(𝔭)` acting invertibly on `m`.
fn vanishing_certificate(m: &ModuleDesc, p: PrimeIdeal) -> Option<String> {
    let s = m.summands()?;
    let PrimeIdeal::MaximalAt(q) = p else {
        use crate::modules::Summand::*;
        let torsion = s.keys().all(|k| matches!(k, E(_) | M(_) | Cyclic(..)));
        return torsion.then(|| format!("{m} is torsion, so every Tor with it dies after inverting the integers"));
    };
    let ok = s.keys().all(|k| {
        use crate::modules::Summand::*;
        match k {
            E(r) | M(r) | Cyclic(r, _) => *r != q,
            EMin | RationalLine => true,
            AllMaximal => false,
        }
    });
    ok.then(|| format!("{q} lies in ann k({p}) and acts invertibly on {m}"))
}

fn small_verdict(pieces: &[(ModuleDesc, Degrees)], p: PrimeIdeal, window: (i64, i64), length: usize) -> Result<SupportVerdict> {
    let mut certified = true;
    let f = free_resolution(&FgModule::quotient_by_prime(p), length)?;
    for (m, d) in pieces {
        if m.is_zero() {
            continue;
        }
        let degs: Vec<i64> = match d {
            Degrees::Single(k) if (window.0..=window.1).contains(k) => vec![*k],
            Degrees::Single(_) => continue,
            Degrees::All => vec![window.0],
        };
        let cert = vanishing_certificate(m, p);
        let finite = matches!(m, ModuleDesc::Fg(_));
        for j in 0..length.saturating_sub(1) {
            let mut h = tor_with(m, &f, j)?;
            if p == PrimeIdeal::MinimalX {
                h = h.localize(p);
            }
            if !h.is_zero() {
                let n = degs[0] - j as i64;
                let spread = if *d == Degrees::All { " (the same in every degree)" } else { "" };
                return Ok(SupportVerdict {
                    member: true,
                    exact: true,
                    evidence: format!("H_{j}({m} (x)^L k({p})) = {h} contributes to degree {n}{spread}"),
                });
            }
        }
        if cert.is_none() && !finite {
            certified = false;
        }
    }
    Ok(SupportVerdict {
        member: false,
        exact: certified,
        evidence: format!("Tor_j vanishes for j < {} on every piece in window [{}, {}]", length - 1, window.0, window.1),
    })
}

fn big_verdict(c: &ComplexShape, p: PrimeIdeal, window: (i64, i64)) -> Result<SupportVerdict> {
    for n in window.0..=window.1 {
        let h = c.cohomology_at(n)?;
        let l = h.localize(p);
        if !l.is_zero() {
            return Ok(SupportVerdict { member: true, exact: true, evidence: format!("H^{n} = {h} survives at {p}") });
        }
    }
    Ok(SupportVerdict {
        member: false,
        exact: c.trusted_up_to().is_none(),
        evidence: format!("H^n localizes to zero for n in [{}, {}]", window.0, window.1),
    })
}

/// Foxby support `{𝔭 | H(X ⊗^L k(𝔭)) ≠ 0}` and big support over `primes`.
pub fn small_support(x: &ComplexShape, primes: &[PrimeIdeal], window: (i64, i64)) -> Result<Vec<SupportReport>> {
    small_support_with(x, primes, window, DEFAULT_RESOLUTION_LENGTH)
}

pub fn small_support_with(x: &ComplexShape, primes: &[PrimeIdeal], window: (i64, i64), length: usize) -> Result<Vec<SupportReport>> {
    let pieces = decompose(x)?;
    primes
        .iter()
        .map(|&p| {
            Ok(SupportReport {
                prime: p,
                in_small_support: small_verdict(&pieces, p, window, length)?,
                in_big_support: big_verdict(x, p, window)?,
            })
        })
        .collect()
}

pub fn small_support_module(m: &ModuleDesc, primes: &[PrimeIdeal]) -> Result<Vec<PrimeIdeal>> {
    let r = small_support(&ComplexShape::concentrated(m.clone(), 0), primes, (0, 0))?;
    Ok(r.into_iter().filter(|s| s.in_small_support.member).map(|s| s.prime).collect())
}

/// `{𝔭 | x_𝔭 ≠ 0}` among `primes`.
pub fn big_support(x: &ModuleDesc, primes: &[PrimeIdeal]) -> Vec<PrimeIdeal> {
    primes.iter().copied().filter(|&p| !x.localize(p).is_zero()).collect()
}

pub fn std_module(e: StdInjective) -> ModuleDesc {
    ModuleDesc::injective(e, 1)
}
