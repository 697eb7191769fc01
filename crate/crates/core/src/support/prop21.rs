use std::fmt;

use super::derived::{small_support_with, DEFAULT_RESOLUTION_LENGTH};
use super::resolution::free_resolution;
use crate::complexes::{check_quasi_iso, gamma_torsion, hom_from_residue, ChainMap, ComplexShape};
use crate::error::{Error, Result};
use crate::modules::{ass_fg, ass_membership, AssVerdict, FgModule, ModuleDesc, Summand};
use crate::ring::PrimeIdeal;

/// Default bound on torsion exponents in `Γ` witnesses.
pub const TORSION_BOUND: u32 = 12;

/// The three nonvanishing conditions at a maximal ideal:
/// (i) `H(X ⊗^L k) ≠ 0`, (ii) `H(RHom(k, X)) ≠ 0`, (iii) `H(RΓ_𝔪 X) ≠ 0`.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub prime: PrimeIdeal,
    pub tensor: bool,
    pub residue_hom: bool,
    pub torsion: bool,
    pub evidence: Vec<String>,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.tensor == self.residue_hom && self.residue_hom == self.torsion
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: tensor {}, residue hom {}, torsion {} ({})",
            self.prime,
            self.tensor,
            self.residue_hom,
            self.torsion,
            if self.agree() { "agree" } else { "DISAGREE" }
        )
    }
}

/// Evaluates (i)-(iii) for `x` with injective model `model`. Without a model,
/// `x` must be a finitely generated module in one degree; (ii) is then read
/// off `Ext_R(k, N)` and (iii) off `Γ_𝔪 N` together with the lowest nonzero
/// `Ext`, which is the lowest nonzero local cohomology.
pub fn check_prop21_equivalence(
    x: &ComplexShape,
    model: Option<&ComplexShape>,
    m: PrimeIdeal,
    window: (i64, i64),
) -> Result<EquivalenceReport> {
    if !m.is_maximal() {
        return Err(Error::Precondition("the equivalence is taken at a maximal ideal".into()));
    }
    let mut evidence = Vec::new();
    let small = small_support_with(x, &[m], window, DEFAULT_RESOLUTION_LENGTH)?;
    let tensor = small[0].in_small_support.member;
    evidence.push(format!("(i) {}", small[0].in_small_support.evidence));

    let (residue_hom, torsion) = match model {
        Some(i) => {
            let r = hom_from_residue(i, m, window.0, window.1)?;
            let rh = r
                .cohomology_nonzero
                .ok_or_else(|| Error::UnsupportedShape("cohomology of Hom(k, I) is undecided".into()))?;
            evidence.push(format!(
                "(ii) Hom(k, I) terms {:?}, differentials zero: {}",
                r.terms.iter().map(|(n, d)| format!("{n}:{d}")).collect::<Vec<_>>(),
                r.all_differentials_zero()
            ));
            let g = gamma_torsion(i, m, TORSION_BOUND, window)?;
            let nonzero: Vec<String> =
                g.cohomology.iter().filter(|(_, h)| !h.is_zero()).map(|(n, h)| format!("H^{n} = {h}")).collect();
            evidence.push(format!("(iii) Gamma(I): {}; {}", g.description, if nonzero.is_empty() { "acyclic".into() } else { nonzero.join(", ") }));
            (rh, !nonzero.is_empty())
        }
        None => {
            let ComplexShape::Concentrated { module: ModuleDesc::Fg(n), .. } = x else {
                return Err(Error::Precondition("an injective model is required for this shape".into()));
            };
            let f = free_resolution(&FgModule::quotient_by_prime(m), DEFAULT_RESOLUTION_LENGTH)?;
            let hom = f.hom_into(n)?;
            let ext: Vec<usize> = (0..DEFAULT_RESOLUTION_LENGTH as i64 - 1).filter(|&j| !hom.homology(j).is_zero()).map(|j| j as usize).collect();
            evidence.push(format!("(ii) Ext^j(k, N) nonzero for j in {ext:?}"));
            let PrimeIdeal::MaximalAt(q) = m else { unreachable!() };
            let gamma0 = n.torsion_primes().contains(&q);
            evidence.push(format!(
                "(iii) Gamma(N) {}; local cohomology first appears at depth {:?}",
                if gamma0 { "nonzero" } else { "zero" },
                ext.first()
            ));
            (!ext.is_empty(), gamma0 || !ext.is_empty())
        }
    };
    Ok(EquivalenceReport { prime: m, tensor, residue_hom, torsion, evidence })
}

/// Whether `q ∈ ass` of a term, with a witness description.
pub fn term_ass(term: &ModuleDesc, q: PrimeIdeal) -> Result<(bool, Option<String>)> {
    Ok(match term {
        ModuleDesc::Zero => (false, None),
        ModuleDesc::Product(pm) => match ass_membership(pm, q) {
            AssVerdict::Yes(w) => (true, Some(format!("{w} has annihilator {q}"))),
            AssVerdict::BoundedNo | AssVerdict::OutsideUpperBound => (false, None),
        },
        ModuleDesc::Fg(n) => (ass_fg(n).contains(&q), None),
        ModuleDesc::Localized(inner, at) => {
            if q.is_contained_in(*at) {
                term_ass(inner, q)?
            } else {
                (false, None)
            }
        }
        ModuleDesc::Sum(parts) => {
            for p in parts {
                let r = term_ass(p, q)?;
                if r.0 {
                    return Ok(r);
                }
            }
            (false, None)
        }
        ModuleDesc::Dual(..) => {
            let s = term.summands().ok_or_else(|| Error::UnsupportedShape(format!("associated primes of {term}")))?;
            let hit = s.keys().any(|k| match (k, q) {
                (Summand::E(p) | Summand::M(p) | Summand::Cyclic(p, _), PrimeIdeal::MaximalAt(r)) => *p == r,
                (Summand::EMin | Summand::RationalLine, PrimeIdeal::MinimalX) => true,
                (Summand::AllMaximal, PrimeIdeal::MaximalAt(_)) => true,
                _ => false,
            });
            (hit, None)
        }
    })
}

#[derive(Clone, Debug)]
pub struct InclusionReport {
    pub quasi_iso: bool,
    pub support: Vec<PrimeIdeal>,
    pub ass_union: Vec<PrimeIdeal>,
    pub holds: bool,
    pub equality: bool,
    /// A prime in some `ass I^n` outside the support, with its degree and witness.
    pub strict_witness: Option<(PrimeIdeal, i64, String)>,
}

/// `supp X ⊆ ⋃_n ass I^n` over `primes`, after checking `f: X → I` is a
/// quasi-isomorphism on the window.
pub fn check_prop21_inclusion(f: &ChainMap, primes: &[PrimeIdeal], window: (i64, i64)) -> Result<InclusionReport> {
    let qi = check_quasi_iso(f, window.0, window.1)?;
    let support: Vec<PrimeIdeal> = small_support_with(&f.source, primes, window, DEFAULT_RESOLUTION_LENGTH)?
        .into_iter()
        .filter(|r| r.in_small_support.member)
        .map(|r| r.prime)
        .collect();
    let mut ass_union = Vec::new();
    let mut strict_witness = None;
    for &q in primes {
        for n in window.0..=window.1 {
            let (hit, w) = term_ass(&f.target.term_at(n), q)?;
            if hit {
                ass_union.push(q);
                if !support.contains(&q) && strict_witness.is_none() {
                    strict_witness = Some((q, n, w.unwrap_or_else(|| format!("{q} in ass of degree {n}"))));
                }
                break;
            }
        }
    }
    let holds = support.iter().all(|p| ass_union.contains(p));
    let equality = holds && ass_union.iter().all(|p| support.contains(p));
    Ok(InclusionReport { quasi_iso: qi.quasi_iso, support, ass_union, holds, equality, strict_witness })
}
