//! Objects on which the three nonvanishing conditions at a maximal ideal are
//! compared.

use injsupp::complexes::ComplexShape;
use injsupp::modules::{FgModule, ModuleDesc, StdInjective};
use injsupp::ring::{Ideal, PrimeIdeal};
use injsupp::support::{free_resolution, std_module, DEFAULT_RESOLUTION_LENGTH};
use injsupp::Result;

pub struct CorpusEntry {
    pub name: String,
    pub object: ComplexShape,
    /// A complex of injectives quasi-isomorphic to `object`, when one is used.
    pub model: Option<ComplexShape>,
}

fn fg(name: &str, m: FgModule) -> CorpusEntry {
    CorpusEntry { name: name.into(), object: ComplexShape::concentrated(ModuleDesc::Fg(m), 0), model: None }
}

fn modelled(name: String, object: ComplexShape, model: ComplexShape) -> CorpusEntry {
    CorpusEntry { name, object, model: Some(model) }
}

pub fn equivalence_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = vec![
        fg("R", FgModule::free(1)),
        fg("R/(x)", FgModule::quotient_by_prime(PrimeIdeal::MinimalX)),
        fg("R/(4)", FgModule::cyclic(&Ideal::int(&[(4, 0)]))?),
        fg("R/(6)", FgModule::cyclic(&Ideal::int(&[(6, 0)]))?),
        fg("R/(9,x)", FgModule::cyclic(&Ideal::int(&[(9, 0), (0, 1)]))?),
        fg("Z/4 + Z/3", FgModule::trivial_x(&[4, 3])),
    ];
    for q in [2, 3, 5, 7, 11] {
        out.push(fg(&format!("R/({q},x)"), FgModule::quotient_by_prime(PrimeIdeal::MaximalAt(q))));
    }
    for q in [2, 3, 5, 7] {
        let e = ComplexShape::concentrated(std_module(StdInjective::EMax(q)), 0);
        out.push(modelled(format!("E(R/({q},x))"), e.clone(), e));
    }
    let emin = ComplexShape::concentrated(std_module(StdInjective::EMin), 0);
    out.push(modelled("E(R/(x))".into(), emin.clone(), emin));
    for p in [2, 3, 5] {
        out.push(modelled(
            format!("M({p})"),
            ComplexShape::concentrated(ModuleDesc::prufer(p), 0),
            ComplexShape::j(p),
        ));
    }
    for p in [2, 3] {
        out.push(modelled(format!("X({p})"), ComplexShape::x(p), ComplexShape::i(p)));
    }
    let r = free_resolution(&FgModule::free(1), DEFAULT_RESOLUTION_LENGTH)?;
    out.push(modelled(
        "R (integer-dual model)".into(),
        ComplexShape::concentrated(ModuleDesc::Fg(FgModule::free(1)), 0),
        ComplexShape::IntegerDual(r),
    ));
    Ok(out)
}
