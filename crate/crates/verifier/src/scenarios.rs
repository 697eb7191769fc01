use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use injsupp::complexes::{
    check_minimal, check_quasi_iso, contractibility_verdict, gamma_torsion, hom_from_residue, localize_complex,
    ChainMap, ComplexShape, ContractVerdict, MapRule, MinimalityReport, SampleConfig,
};
use injsupp::exactnum::pow_u64;
use injsupp::modules::product::sample_eelt;
use injsupp::modules::{
    ass_membership, unit_action_bijective, unit_action_socle_certificate, AssVerdict, EElt, Element, LengthVerdict,
    ModuleDesc, ProductFactor, ProductModule, SeqElt, StdInjective,
};
use injsupp::ring::{spec_enumerate, PrimeIdeal, RingElt};
use injsupp::support::{
    check_prop21_equivalence, check_prop21_inclusion, small_support, small_support_module, std_module, term_ass,
};
use injsupp::Result;

use crate::corpus::equivalence_corpus;
use crate::{verdict, Outcome, Runner, Scenario};

/// Primes against which supports are computed.
const SUPPORT_PRIME_BOUND: u64 = 11;
/// Primes for the injective-hull facts.
const HULL_PRIME_BOUND: u64 = 50;
/// Random elements checked for power torsion.
const TORSION_ELEMENTS: usize = 1000;
/// Largest `k` for the unit action on `{e : p^k e = 0}`.
const UNIT_ACTION_EXPO: u32 = 8;
/// Enumeration is used while the subgroup has at most this many elements.
const ENUMERATION_LIMIT: u64 = 1_000_000;

fn rng(s: &Scenario, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(s.seed);
    r.set_stream(stream);
    r
}

fn primes_str(ps: &[PrimeIdeal]) -> String {
    format!("{{{}}}", ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn ideal_str(i: &injsupp::ring::Ideal) -> String {
    PrimeIdeal::from_ideal(i).map_or_else(|| i.to_string(), |q| q.to_string())
}

fn degrees(s: &Scenario) -> std::ops::RangeInclusive<i64> {
    s.window.0..=s.window.1
}

fn product_term(c: &ComplexShape, n: i64) -> Result<ProductModule> {
    match c.term_at(n) {
        ModuleDesc::Product(m) => Ok(m),
        other => Err(injsupp::Error::Shape(format!("degree {n} term {other} is not a product"))),
    }
}

fn minimality_outcomes(r: &MinimalityReport) -> (Outcome, Outcome) {
    let ess = r.degrees.iter().find(|d| !d.essential.passed);
    let soc = r.degrees.iter().find(|d| !d.socle.passed);
    let first = r.degrees.first();
    let essential = match ess {
        Some(d) => Outcome::Fail(format!("degree {}: {}", d.degree, d.essential.evidence)),
        None => Outcome::Pass(first.map(|d| format!("degree {}: {}", d.degree, d.essential.evidence)).unwrap_or_default()),
    };
    let socle = match soc {
        Some(d) => Outcome::Fail(format!("degree {}: {}", d.degree, d.socle.evidence)),
        None => Outcome::Pass(first.map(|d| format!("degree {}: {}", d.degree, d.socle.evidence)).unwrap_or_default()),
    };
    (essential, socle)
}

fn run_minimality(run: &mut Runner, prefix: &str, claim: &str, c: &ComplexShape, s: &Scenario, stream: u64) {
    let mut report = None;
    run.check(&format!("{prefix}.essential"), claim, || {
        if s.samples == 0 {
            report = Some(Outcome::Skip("no samples requested".into()));
            return Ok(Outcome::Skip("no samples requested".into()));
        }
        let r = check_minimal(c, s.window.0, s.window.1, s.samples, &mut rng(s, stream))?;
        let (ess, soc) = minimality_outcomes(&r);
        report = Some(soc);
        Ok(ess)
    });
    run.check(&format!("{prefix}.socle"), claim, || {
        Ok(report.unwrap_or_else(|| Outcome::Fail("minimality report unavailable".into())))
    });
}

fn inclusion_map(p: u64) -> ChainMap {
    ChainMap { source: ComplexShape::x(p), target: ComplexShape::i(p), rule: MapRule::InclusionMIntoE }
}

fn quasi_iso_check(f: &ChainMap, s: &Scenario) -> Result<Outcome> {
    let r = check_quasi_iso(f, s.window.0, s.window.1)?;
    if let Some(bad) = r.degrees.iter().find(|d| !d.iso) {
        return Ok(Outcome::Fail(format!("degree {}: {} -> {}: {}", bad.degree, bad.source_h, bad.target_h, bad.evidence)));
    }
    let d = &r.degrees[0];
    Ok(verdict(
        r.quasi_iso,
        format!("{} degrees; degree {}: {} -> {} ({})", r.degrees.len(), d.degree, d.source_h, d.target_h, d.evidence),
    ))
}

/// `(x)` is witnessed by a sequence killed by `x` whose `p`-power multiples
/// stay nonzero up to the bound.
fn minimal_prime_witness(w: &SeqElt, bound: u32) -> bool {
    let p = w.p();
    w.x_act().is_zero()
        && (0..=bound).all(|k| {
            let m = w.scale(&pow_u64(p, k));
            (0..=i64::from(bound) + 1).any(|j| !m.entry(w.start() + j).is_zero())
        })
}

pub(crate) fn prop_main(s: &Scenario, run: &mut Runner) {
    let p = s.prime;
    let i = ComplexShape::i(p);
    let x = ComplexShape::x(p);
    let n = PrimeIdeal::MaximalAt(p);

    run_minimality(run, "prop-main.minimal", "claim:i-minimal", &i, s, 1);

    run.check("prop-main.semi-injective", "claim:i-semi-injective", || {
        for d in degrees(s) {
            let m = product_term(&i, d)?;
            if m.factor != ProductFactor::EMax(p) {
                return Ok(Outcome::Fail(format!("degree {d}: factor {}", m.factor)));
            }
        }
        let base = ComplexShape::j(p);
        Ok(Outcome::Pass(format!(
            "I = prod_i shift^i J, J = {base} bounded below with injective terms; I^{} = {}",
            s.window.0,
            i.term_at(s.window.0)
        )))
    });

    run.check("prop-main.differential", "claim:i-differential", || {
        let mut r = rng(s, 2);
        let cfg = SampleConfig::default();
        let mut count = 0;
        for d in degrees(s) {
            let src = product_term(&i, d)?;
            let tgt = product_term(&i, d + 1)?;
            for _ in 0..s.samples.div_ceil(10).max(1) {
                let Some(Element::Seq(e)) = i.sample(d, &mut r, &cfg) else { continue };
                let Element::Seq(de) = i.differential(d, &Element::Seq(e.clone()))? else {
                    return Ok(Outcome::Fail(format!("degree {d}: differential left the product")));
                };
                if de.entry(tgt.start) != EElt::zero(p) {
                    return Ok(Outcome::Fail(format!("degree {d}: new slot {} of d({e}) is nonzero", tgt.start)));
                }
                for j in src.start..src.start + 12 {
                    if de.entry(j) != e.entry(j).x_act() {
                        return Ok(Outcome::Fail(format!("degree {d}: slot {j} of d({e}) is not x e_{j}")));
                    }
                }
                count += 1;
            }
        }
        Ok(Outcome::Pass(format!("d = [x; 0] slotwise on {count} sampled elements")))
    });

    run.check("prop-main.dd-zero", "claim:i-differential", || {
        let mut r = rng(s, 3);
        let cfg = SampleConfig::default();
        let mut count = 0;
        for d in degrees(s) {
            for _ in 0..s.samples.div_ceil(10).max(1) {
                let Some(e) = i.sample(d, &mut r, &cfg) else { continue };
                let dde = i.differential(d + 1, &i.differential(d, &e)?)?;
                if !i.element_is_zero(d + 2, &dde) {
                    return Ok(Outcome::Fail(format!("degree {d}: dd({e}) = {dde}")));
                }
                count += 1;
            }
        }
        Ok(Outcome::Pass(format!("dd = 0 on {count} sampled elements")))
    });

    run.check("prop-main.cohomology", "claim:i-cohomology", || {
        let m = ModuleDesc::prufer(p);
        for d in degrees(s) {
            for (name, c) in [("I", &i), ("X", &x)] {
                let h = c.cohomology_at(d)?;
                if !h.same_iso_class(&m) {
                    return Ok(Outcome::Fail(format!("H^{d}({name}) = {h}")));
                }
            }
        }
        Ok(Outcome::Pass(format!("H^n(I) = H^n(X) = {m} for n in [{}, {}]", s.window.0, s.window.1)))
    });

    run.check("prop-main.quasi-iso", "claim:inclusion-quasi-iso", || quasi_iso_check(&inclusion_map(p), s));

    run.check("prop-main.support", "claim:x-support", || {
        let primes = spec_enumerate(SUPPORT_PRIME_BOUND)?;
        let r = small_support(&x, &primes, s.window)?;
        let members: Vec<PrimeIdeal> = r.iter().filter(|v| v.in_small_support.member).map(|v| v.prime).collect();
        let exact = r.iter().all(|v| v.in_small_support.exact);
        let at_n = r.iter().find(|v| v.prime == n).map(ToString::to_string).unwrap_or_default();
        Ok(verdict(members == vec![n] && exact, format!("supp X = {} among primes <= {SUPPORT_PRIME_BOUND}; {at_n}", primes_str(&members))))
    });

    run.check("prop-main.ass-maximal", "claim:i-ass", || {
        for d in degrees(s) {
            if !ass_membership(&product_term(&i, d)?, n).is_yes() {
                return Ok(Outcome::Fail(format!("no witness for {n} in ass I^{d}")));
            }
        }
        Ok(Outcome::Pass(format!("{n} in ass I^n for every n in the window")))
    });

    run.check("prop-main.ass-strict", "claim:i-ass-strict", || {
        let target = PrimeIdeal::MinimalX.to_ideal();
        let mut shown = String::new();
        for d in degrees(s) {
            let m = product_term(&i, d)?;
            let AssVerdict::Yes(w) = ass_membership(&m, PrimeIdeal::MinimalX) else {
                return Ok(Outcome::Fail(format!("no witness for (x) in ass I^{d}")));
            };
            if w.annihilator() != target || !minimal_prime_witness(&w, s.torsion_bound) {
                return Ok(Outcome::Fail(format!("degree {d}: {w} has annihilator {}", ideal_str(&w.annihilator()))));
            }
            if d == 0 {
                shown = format!("I^0 contains {w} with annihilator exactly (x); ");
            }
        }
        let supp = small_support(&x, &[PrimeIdeal::MinimalX], s.window)?;
        let outside = !supp[0].in_small_support.member;
        Ok(verdict(outside, format!("{shown}(x) in ass I^n for all n in the window, (x) not in supp X: {outside}")))
    });

    let local = localize_complex(&i, PrimeIdeal::MinimalX);

    run.check("prop-main.localized.acyclic", "claim:localized-acyclic", || {
        for d in degrees(s) {
            let h = local.cohomology_at(d)?;
            if !h.is_zero() {
                return Ok(Outcome::Fail(format!("H^{d}(I_(x)) = {h}")));
            }
        }
        Ok(Outcome::Pass(format!("H^n(I_(x)) = 0 for n in [{}, {}]", s.window.0, s.window.1)))
    });

    run.check("prop-main.localized.nonzero", "claim:localized-acyclic", || {
        let mut shown = String::new();
        for d in degrees(s) {
            let w = Element::Seq(product_term(&i, d)?.geometric_witness());
            if local.term_at(d).is_zero() || local.element_is_zero(d, &w) {
                return Ok(Outcome::Fail(format!("degree {d}: {w} vanishes at (x)")));
            }
            if d == 0 {
                shown = format!("degree 0: {w} stays nonzero after localizing at (x)");
            }
        }
        Ok(Outcome::Pass(shown))
    });

    run_minimality(run, "prop-main.localized.minimal", "claim:localized-minimal", &local, s, 4);

    run.check("prop-main.localized.not-contractible", "claim:localized-not-contractible", || {
        let v = contractibility_verdict(&local, s.window.0, s.window.1, s.samples, &mut rng(s, 5))?;
        Ok(verdict(matches!(v, ContractVerdict::NotContractible(_)), v.to_string()))
    });

    run.check("prop-main.inclusion-strict", "claim:support-in-ass", || {
        let primes = spec_enumerate(SUPPORT_PRIME_BOUND)?;
        let r = check_prop21_inclusion(&inclusion_map(p), &primes, s.window)?;
        let strict = r.strict_witness.as_ref().filter(|w| w.0 == PrimeIdeal::MinimalX);
        let w = strict.map(|(q, d, e)| format!("{q} in ass I^{d} via {e}")).unwrap_or_default();
        Ok(verdict(
            r.quasi_iso && r.holds && !r.equality && strict.is_some(),
            format!("supp = {}, union ass = {}; {w}", primes_str(&r.support), primes_str(&r.ass_union)),
        ))
    });
}

pub(crate) fn prop_support(s: &Scenario, run: &mut Runner) {
    let p = s.prime;
    let i = ComplexShape::i(p);
    let x = ComplexShape::x(p);

    run.check("prop-support.equivalence.x", "claim:support-equivalence", || {
        let mut lines = Vec::new();
        for q in injsupp::exactnum::primes_up_to(SUPPORT_PRIME_BOUND) {
            let r = check_prop21_equivalence(&x, Some(&i), PrimeIdeal::MaximalAt(q), s.window)?;
            if !r.agree() || r.tensor != (q == p) {
                return Ok(Outcome::Fail(r.to_string()));
            }
            lines.push(format!("({q},x): {}", r.tensor));
        }
        Ok(Outcome::Pass(lines.join(", ")))
    });

    run.check("prop-support.equivalence.corpus", "claim:support-equivalence", || {
        let corpus = equivalence_corpus()?;
        let mut count = 0;
        for entry in &corpus {
            for q in injsupp::exactnum::primes_up_to(SUPPORT_PRIME_BOUND) {
                let r = check_prop21_equivalence(&entry.object, entry.model.as_ref(), PrimeIdeal::MaximalAt(q), s.window)?;
                if !r.agree() {
                    return Ok(Outcome::Fail(format!("{}: {r}", entry.name)));
                }
                count += 1;
            }
        }
        Ok(Outcome::Pass(format!("{} objects, {count} (object, prime) pairs, 0 disagreements", corpus.len())))
    });

    run.check("prop-support.torsion", "claim:support-equivalence", || {
        let n = PrimeIdeal::MaximalAt(p);
        let g = gamma_torsion(&i, n, s.torsion_bound, s.window)?;
        let Some((d, w)) = &g.witness else {
            return Ok(Outcome::Fail(format!("no {n}-torsion witness: {}", g.evidence)));
        };
        let other = (2..).find(|&q| q != p && injsupp::exactnum::is_prime(q)).expect("primes");
        let g2 = gamma_torsion(&i, PrimeIdeal::MaximalAt(other), s.torsion_bound, s.window)?;
        let h = hom_from_residue(&i, n, s.window.0, s.window.1)?;
        Ok(verdict(
            g2.is_zero() && h.nonzero(),
            format!("degree {d}: {w} is {n}-torsion; Gamma at ({other},x) zero: {}; Hom(k, I) nonzero: {}", g2.is_zero(), h.nonzero()),
        ))
    });

    run.check("prop-support.inclusion", "claim:support-in-ass", || {
        let primes = spec_enumerate(SUPPORT_PRIME_BOUND)?;
        let r = check_prop21_inclusion(&inclusion_map(p), &primes, s.window)?;
        Ok(verdict(
            r.quasi_iso && r.holds,
            format!("supp X = {} within union ass I^n = {}", primes_str(&r.support), primes_str(&r.ass_union)),
        ))
    });
}

pub(crate) fn remark_ass(s: &Scenario, run: &mut Runner) {
    let p = s.prime;
    let n = PrimeIdeal::MaximalAt(p);
    let factors = [ProductFactor::EMax(p), ProductFactor::M(p)];

    run.check("remark-ass.left", "claim:product-ass-left", || {
        let mut shown = String::new();
        for f in factors {
            let m = ProductModule::new(f, s.window.0);
            for slot in m.start..m.start + 8 {
                let w = m.single(slot, EElt::socle_generator(p))?;
                if w.annihilator() != n.to_ideal() {
                    return Ok(Outcome::Fail(format!("{w} has annihilator {}", ideal_str(&w.annihilator()))));
                }
                if slot == m.start && f == ProductFactor::EMax(p) {
                    shown = format!("{w} has annihilator {n}");
                }
            }
        }
        Ok(Outcome::Pass(format!("ass of each factor is {{{n}}}, and sits in every slot; {shown}")))
    });

    run.check("remark-ass.right", "claim:product-ass-right", || {
        let primes = spec_enumerate(SUPPORT_PRIME_BOUND)?;
        for f in factors {
            let m = ProductModule::new(f, 0);
            for &q in &primes {
                let v = ass_membership(&m, q);
                let bounded = q.is_contained_in(n);
                if !bounded && v != AssVerdict::OutsideUpperBound {
                    return Ok(Outcome::Fail(format!("{q} not ruled out for {m}")));
                }
                if bounded && !v.is_yes() {
                    return Ok(Outcome::Fail(format!("{q} below {n} not witnessed for {m}")));
                }
            }
        }
        Ok(Outcome::Pass(format!(
            "ass prod lies in the primes contained in {n}: {}",
            primes_str(&ProductModule::new(ProductFactor::EMax(p), 0).ass_upper_bound())
        )))
    });

    run.check("remark-ass.strict", "claim:product-ass-strict", || {
        let (in_factor, _) = term_ass(&std_module(StdInjective::EMax(p)), PrimeIdeal::MinimalX)?;
        let m = ProductModule::new(ProductFactor::EMax(p), 0);
        let AssVerdict::Yes(w) = ass_membership(&m, PrimeIdeal::MinimalX) else {
            return Ok(Outcome::Fail("(x) not witnessed in the product".into()));
        };
        Ok(verdict(
            !in_factor && minimal_prime_witness(&w, s.torsion_bound),
            format!("(x) not in ass E(R/({p},x)); {w} in {m} has annihilator {}", ideal_str(&w.annihilator())),
        ))
    });
}

pub(crate) fn remark_ihulls(s: &Scenario, run: &mut Runner) {
    let p = s.prime;

    run.check("remark-ihulls.supp-ass", "claim:hull-support", || {
        let primes = spec_enumerate(HULL_PRIME_BOUND)?;
        for &q in &primes {
            let e = std_module(StdInjective::hull_of(q));
            let supp = small_support_module(&e, &primes)?;
            if supp != vec![q] {
                return Ok(Outcome::Fail(format!("supp E(R/{q}) = {}", primes_str(&supp))));
            }
            for &r in &primes {
                if term_ass(&e, r)?.0 != (r == q) {
                    return Ok(Outcome::Fail(format!("ass E(R/{q}) disagrees at {r}")));
                }
            }
        }
        Ok(Outcome::Pass(format!("supp E(R/P) = ass E(R/P) = {{P}} for {} primes P", primes.len())))
    });

    run.check("remark-ihulls.unit-action", "claim:hull-unit-action", || {
        let units = [RingElt::int(1, 1), RingElt::int(-1, 3), RingElt::int(p as i64 + 1, -2), RingElt::int(2 * p as i64 - 1, p as i64)];
        let (mut enumerated, mut certified) = (0, 0);
        for u in &units {
            for k in 1..=UNIT_ACTION_EXPO {
                let size = pow_u64(p, 2 * k);
                let ok = if size <= BigInt::from(ENUMERATION_LIMIT) {
                    enumerated += 1;
                    unit_action_bijective(p, k, u)?
                } else {
                    certified += 1;
                    unit_action_socle_certificate(p, u)?
                };
                if !ok {
                    return Ok(Outcome::Fail(format!("{u} not bijective on p^{k}-torsion")));
                }
            }
        }
        let x_fails = !unit_action_bijective(p, 1, &RingElt::x())?;
        Ok(verdict(
            x_fails,
            format!("{} units, k <= {UNIT_ACTION_EXPO}: {enumerated} enumerated, {certified} by socle certificate; x is not bijective", units.len()),
        ))
    });

    run.check("remark-ihulls.torsion", "claim:hull-artinian", || {
        let mut r = rng(s, 6);
        let n = PrimeIdeal::MaximalAt(p).to_ideal();
        let mut worst = 0;
        for _ in 0..TORSION_ELEMENTS {
            let e = sample_eelt(&mut r, p, UNIT_ACTION_EXPO);
            let k = e.expo() + 1;
            if !e.annihilator().contains_ideal(&n.pow(k)?) {
                return Ok(Outcome::Fail(format!("{e} is not killed by (p,x)^{k}")));
            }
            worst = worst.max(k);
        }
        Ok(Outcome::Pass(format!("{TORSION_ELEMENTS} random elements each killed by (p,x)^k, k <= {worst}")))
    });

    run.check("remark-ihulls.length", "claim:hull-length", || {
        let emin = StdInjective::EMin.length_over_localization();
        let emax = StdInjective::EMax(p).length_over_localization();
        let ok = emin == LengthVerdict::Finite(2) && matches!(emax, LengthVerdict::Infinite { .. }) && emax.chain_is_strict();
        let chain = match &emax {
            LengthVerdict::Infinite { chain } => chain.iter().map(ToString::to_string).collect::<Vec<_>>().join(" < "),
            LengthVerdict::Finite(n) => format!("finite {n}"),
        };
        Ok(verdict(ok, format!("E(R/(x)): {emin:?}; E(R/({p},x)) strict chain {chain} < ...")))
    });

    run.check("remark-ihulls.localization", "claim:hull-unit-action", || {
        let e = std_module(StdInjective::EMax(p));
        let at_n = e.localize(PrimeIdeal::MaximalAt(p));
        let at_x = e.localize(PrimeIdeal::MinimalX);
        Ok(verdict(
            at_n.same_iso_class(&e) && at_x.is_zero(),
            format!("E_({p},x) = {at_n}, E_(x) = 0: {}", at_x.is_zero()),
        ))
    });
}

pub(crate) fn foxby(s: &Scenario, run: &mut Runner) {
    let p = s.prime;
    let n = PrimeIdeal::MaximalAt(p);
    let j = ComplexShape::j(p);
    let f = ChainMap {
        source: ComplexShape::concentrated(ModuleDesc::prufer(p), 0),
        target: j.clone(),
        rule: MapRule::InclusionMIntoE,
    };

    run.check("foxby.quasi-iso", "claim:j-resolution", || quasi_iso_check(&f, s));
    run_minimality(run, "foxby.minimal", "claim:j-resolution", &j, s, 7);

    run.check("foxby.equality", "claim:bounded-below-equality", || {
        let primes = spec_enumerate(SUPPORT_PRIME_BOUND)?;
        let r = check_prop21_inclusion(&f, &primes, s.window)?;
        Ok(verdict(
            r.quasi_iso && r.equality && r.support == vec![n] && r.ass_union == vec![n],
            format!("supp M = {}, union ass J^n = {}", primes_str(&r.support), primes_str(&r.ass_union)),
        ))
    });
}
