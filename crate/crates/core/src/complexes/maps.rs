use super::{ComplexShape, Window};
use crate::error::{Error, Result};
use crate::exactnum::{IntMatrix, PruferElt};
use crate::modules::{DualComplex, EElt, Element, FgComplex, ModuleDesc, RMatrix, SeqElt, StdInjective, Summand};

/// Per-degree rule of a chain map.
#[derive(Clone, Debug)]
pub enum MapRule {
    Identity,
    Zero,
    /// `ι: M → E`, `f ↦ (f, 0)`, entrywise.
    InclusionMIntoE,
    /// `f^n` for degrees `lo, lo+1, …` between windows of `Hom_Z(N, A)`-powers.
    Matrices { lo: i64, maps: Vec<RMatrix> },
    /// `f^n` for degrees `lo, lo+1, …` between finitely presented windows.
    IntMatrices { lo: i64, maps: Vec<IntMatrix> },
}

#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ComplexShape,
    pub target: ComplexShape,
    pub rule: MapRule,
}

#[derive(Clone, Debug)]
pub struct DegreeIso {
    pub degree: i64,
    pub source_h: ModuleDesc,
    pub target_h: ModuleDesc,
    pub iso: bool,
    pub evidence: String,
}

#[derive(Clone, Debug)]
pub struct QuasiIsoReport {
    pub degrees: Vec<DegreeIso>,
    pub quasi_iso: bool,
}

/// Generators `1/p^k` of `M` checked against `H(ι)`.
const GENERATOR_BOUND: u32 = 8;

fn prufer_prime(m: &ModuleDesc) -> Option<u64> {
    match m.summands()?.into_iter().collect::<Vec<_>>().as_slice() {
        [(Summand::M(p), 1)] => Some(*p),
        _ => None,
    }
}

/// Checks `class(ι(1/p^k)) = 1/p^k` for `k ≤ GENERATOR_BOUND` in degree `n`.
fn inclusion_degree(source: &ComplexShape, target: &ComplexShape, n: i64) -> Result<DegreeIso> {
    let sh = source.cohomology_at(n)?;
    let th = target.cohomology_at(n)?;
    let bad = || Error::IncompatibleShapes(format!("inclusion of M into E from {source} to {target}"));
    let (p, slot) = match (source, target) {
        (ComplexShape::Concentrated { module, degree: d }, ComplexShape::XTail { factor: StdInjective::EMax(p), start })
            if d == start && prufer_prime(module) == Some(*p) =>
        {
            if n != *d {
                let iso = sh.is_zero() && th.is_zero();
                return Ok(DegreeIso { degree: n, source_h: sh, target_h: th, iso, evidence: "both sides vanish".into() });
            }
            (*p, None)
        }
        (ComplexShape::ProductOfShifts(a), ComplexShape::ProductOfShifts(b)) => match (a.as_ref(), b.as_ref()) {
            (
                ComplexShape::Concentrated { module, degree: d },
                ComplexShape::XTail { factor: StdInjective::EMax(p), start },
            ) if d == start && prufer_prime(module) == Some(*p) => (*p, Some(d - n)),
            _ => return Err(bad()),
        },
        _ => return Err(bad()),
    };
    let mut iso = sh.same_iso_class(&th);
    let mut failures = Vec::new();
    for k in 0..=GENERATOR_BOUND {
        let f = PruferElt::unit_fraction(p, k);
        let image = EElt::new(f.clone(), PruferElt::zero(p));
        let (elt, read_back) = match slot {
            None => (Element::Max(image.clone()), image.f0().clone()),
            Some(s) => {
                let ModuleDesc::Product(pm) = target.term_at(n) else { return Err(bad()) };
                let seq: SeqElt = pm.single(s, image)?;
                let (ker, im) = target.product_kernel_image(n).expect("product of x-tails");
                if !ker.contains(&seq) || (!f.is_zero() && im.contains(&seq)) {
                    failures.push(k);
                }
                let back = seq.entry(s).f0().clone();
                (Element::Seq(seq), back)
            }
        };
        if !target.is_cocycle(n, &elt)? || read_back != f {
            failures.push(k);
        }
    }
    if !failures.is_empty() {
        iso = false;
    }
    let evidence = if failures.is_empty() {
        format!("H^{n}(i) sends 1/{p}^k to its own class for k <= {GENERATOR_BOUND}")
    } else {
        format!("generators 1/{p}^k fail for k in {failures:?}")
    };
    Ok(DegreeIso { degree: n, source_h: sh, target_h: th, iso, evidence })
}

fn window_of(c: &ComplexShape) -> Option<&DualComplex> {
    match c {
        ComplexShape::FiniteWindow(Window::Dual(d)) => Some(d),
        _ => None,
    }
}

fn fg_window_of(c: &ComplexShape) -> Option<&FgComplex> {
    match c {
        ComplexShape::FiniteWindow(Window::Fg(d)) => Some(d),
        _ => None,
    }
}

fn rank_at(d: &DualComplex, n: i64) -> usize {
    if n < d.lo || n > d.hi() {
        0
    } else {
        d.ranks[(n - d.lo) as usize]
    }
}

fn dual_window_degree(s: &DualComplex, t: &DualComplex, lo: i64, maps: &[RMatrix], n: i64) -> Result<(bool, String)> {
    if s.target != t.target || s.base != t.base {
        return Err(Error::IncompatibleShapes("windows over different targets or bases".into()));
    }
    let (rs, rt) = (rank_at(s, n), rank_at(t, n));
    let f = match (n - lo).try_into().ok().and_then(|k: usize| maps.get(k)) {
        Some(f) => f.clone(),
        None => RMatrix::zeros(rt, rs),
    };
    if f.rows() != rt || f.cols() != rs {
        return Err(Error::Shape(format!("map in degree {n} has shape {}x{}", f.rows(), f.cols())));
    }
    // Hom_Z(-, A) turns f into fᵀ between the predual complexes, degree -n
    let ps = s.predual()?;
    let pt = t.predual()?;
    let fz = f.transpose().act_on(s.base.x_action());
    let (hs, ht, m) = if ps.module_at(-n).is_none() || pt.module_at(-n).is_none() {
        let hs = if pt.module_at(-n).is_some() { pt.homology(-n) } else { crate::modules::FgModule::zero() };
        let ht = if ps.module_at(-n).is_some() { ps.homology(-n) } else { crate::modules::FgModule::zero() };
        let m = IntMatrix::zeros(ht.rank(), hs.rank());
        (hs, ht, m)
    } else {
        pt.induced_map(&ps, -n, &fz)?
    };
    let (k, c) = hs.kernel_cokernel(&ht, &m);
    let dk = ModuleDesc::Dual(s.target, k);
    let dc = ModuleDesc::Dual(s.target, c);
    let iso = dk.is_zero() && dc.is_zero();
    Ok((iso, format!("dual map on predual homology: kernel {dk}, cokernel {dc}")))
}

pub fn check_quasi_iso(f: &ChainMap, lo: i64, hi: i64) -> Result<QuasiIsoReport> {
    let mut degrees = Vec::new();
    for n in lo..=hi {
        let d = match &f.rule {
            MapRule::InclusionMIntoE => inclusion_degree(&f.source, &f.target, n)?,
            rule => {
                let sh = f.source.cohomology_at(n)?;
                let th = f.target.cohomology_at(n)?;
                let (iso, evidence) = match rule {
                    MapRule::Identity => {
                        if f.source.to_string() != f.target.to_string() {
                            return Err(Error::IncompatibleShapes("identity between different shapes".into()));
                        }
                        (true, "identity".to_string())
                    }
                    MapRule::Zero => {
                        let z = sh.is_zero() && th.is_zero();
                        (z, if z { "both sides vanish".into() } else { "zero map on nonzero cohomology".into() })
                    }
                    MapRule::Matrices { lo: mlo, maps } => {
                        let (s, t) = window_of(&f.source)
                            .zip(window_of(&f.target))
                            .ok_or_else(|| Error::IncompatibleShapes("matrix rules need dual windows".into()))?;
                        dual_window_degree(s, t, *mlo, maps, n)?
                    }
                    MapRule::IntMatrices { lo: mlo, maps } => {
                        let (s, t) = fg_window_of(&f.source)
                            .zip(fg_window_of(&f.target))
                            .ok_or_else(|| Error::IncompatibleShapes("integer matrix rules need fg windows".into()))?;
                        match (s.module_at(n), t.module_at(n)) {
                            (Some(_), Some(_)) => {
                                let m = usize::try_from(n - mlo)
                                    .ok()
                                    .and_then(|k| maps.get(k))
                                    .ok_or_else(|| Error::Shape(format!("no map in degree {n}")))?;
                                let (hs, ht, im) = s.induced_map(t, n, m)?;
                                let iso = hs.hom_is_iso(&ht, &im);
                                (iso, format!("induced map {im:?} on homology"))
                            }
                            _ => {
                                let z = sh.is_zero() && th.is_zero();
                                (z, "outside one of the windows".into())
                            }
                        }
                    }
                    MapRule::InclusionMIntoE => unreachable!(),
                };
                DegreeIso { degree: n, source_h: sh, target_h: th, iso, evidence }
            }
        };
        degrees.push(d);
    }
    let quasi_iso = degrees.iter().all(|d| d.iso);
    Ok(QuasiIsoReport { degrees, quasi_iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn iota_into_j() {
        for p in [2, 3, 5] {
            let f = ChainMap {
                source: ComplexShape::concentrated(ModuleDesc::prufer(p), 0),
                target: ComplexShape::j(p),
                rule: MapRule::InclusionMIntoE,
            };
            let r = check_quasi_iso(&f, -2, 4).unwrap();
            assert!(r.quasi_iso, "{:?}", r.degrees);
        }
    }

    #[test]
    fn product_of_iotas() {
        for p in [2, 3] {
            let f = ChainMap { source: ComplexShape::x(p), target: ComplexShape::i(p), rule: MapRule::InclusionMIntoE };
            let r = check_quasi_iso(&f, -4, 4).unwrap();
            assert!(r.quasi_iso, "{:?}", r.degrees);
        }
    }

    #[test]
    fn zero_map_is_not_quasi_iso() {
        let m = ComplexShape::concentrated(ModuleDesc::prufer(2), 0);
        let f = ChainMap { source: m.clone(), target: m, rule: MapRule::Zero };
        assert!(!check_quasi_iso(&f, 0, 0).unwrap().quasi_iso);
    }

    #[test]
    fn window_maps() {
        let x = RMatrix::x_times_identity(1);
        let t = ComplexShape::e_window(2, 0, vec![1, 1, 1], vec![x.clone(), x.clone()]).unwrap();
        let id = ChainMap {
            source: t.clone(),
            target: t.clone(),
            rule: MapRule::Matrices { lo: 0, maps: vec![RMatrix::identity(1); 3] },
        };
        assert!(check_quasi_iso(&id, -1, 3).unwrap().quasi_iso);
        let twice = ChainMap {
            source: t.clone(),
            target: t,
            rule: MapRule::Matrices { lo: 0, maps: vec![RMatrix::identity(1).scaled(&BigInt::from(2)); 3] },
        };
        let r = check_quasi_iso(&twice, 0, 0).unwrap();
        assert!(!r.quasi_iso);
        let three = ComplexShape::e_window(2, 0, vec![1, 1, 1], vec![x.clone(), x]).unwrap();
        let f = ChainMap {
            source: three.clone(),
            target: three,
            rule: MapRule::Matrices { lo: 0, maps: vec![RMatrix::identity(1).scaled(&BigInt::from(3)); 3] },
        };
        assert!(check_quasi_iso(&f, 0, 2).unwrap().quasi_iso);
    }
}
