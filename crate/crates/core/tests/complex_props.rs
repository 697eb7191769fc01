use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use injsupp::complexes::{gamma_torsion, hom_from_residue, localize_complex, shift, ComplexShape, SampleConfig};
use injsupp::modules::{FgModule, ModuleDesc, RMatrix, StdInjective};
use injsupp::ring::{Ideal, PrimeIdeal, RingElt};
use injsupp::support::{free_resolution, std_module};

const WINDOW: (i64, i64) = (-6, 6);
const SAMPLES: usize = 500;

fn x_window(p: u64) -> ComplexShape {
    let x = RMatrix::x_times_identity(1);
    ComplexShape::e_window(p, 0, vec![1, 1, 1], vec![x.clone(), x]).unwrap()
}

fn shapes(p: u64) -> Vec<(String, ComplexShape)> {
    vec![
        ("I".into(), ComplexShape::i(p)),
        ("J".into(), ComplexShape::j(p)),
        ("X".into(), ComplexShape::x(p)),
        ("I_(x)".into(), localize_complex(&ComplexShape::i(p), PrimeIdeal::MinimalX)),
        ("shifted I".into(), shift(&ComplexShape::i(p), 3)),
        ("E-window".into(), x_window(p)),
    ]
}

#[test]
fn dd_vanishes_on_samples() {
    let cfg = SampleConfig::default();
    for p in [2, 3] {
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for (name, c) in shapes(p) {
            for n in WINDOW.0..=WINDOW.1 {
                for _ in 0..SAMPLES {
                    let Some(e) = c.sample(n, &mut rng, &cfg) else { break };
                    let dde = c.differential(n + 1, &c.differential(n, &e).unwrap()).unwrap();
                    assert!(c.element_is_zero(n + 2, &dde), "{name} degree {n}: dd({e}) = {dde}");
                }
            }
        }
    }
}

#[test]
fn essentiality_dichotomy() {
    let cfg = SampleConfig::default();
    for p in [2, 3, 5] {
        let i = ComplexShape::i(p);
        let mut rng = ChaCha8Rng::seed_from_u64(10 + p);
        for n in WINDOW.0..=WINDOW.1 {
            for _ in 0..SAMPLES {
                let e = i.sample(n, &mut rng, &cfg).unwrap();
                if i.element_is_zero(n, &e) {
                    continue;
                }
                let xe = i.act(n, &RingElt::x(), &e).unwrap();
                let ok = i.is_cocycle(n, &e).unwrap()
                    || (!i.element_is_zero(n, &xe) && i.is_cocycle(n, &xe).unwrap());
                assert!(ok, "degree {n}: {e}");
            }
        }
    }
}

#[test]
fn cohomology_of_i_and_x_is_m() {
    for p in [2, 3, 5] {
        let m = ModuleDesc::prufer(p);
        for n in WINDOW.0..=WINDOW.1 {
            assert!(ComplexShape::i(p).cohomology_at(n).unwrap().same_iso_class(&m));
            assert!(ComplexShape::x(p).cohomology_at(n).unwrap().same_iso_class(&m));
        }
    }
}

fn agree(a: &ModuleDesc, b: &ModuleDesc) -> bool {
    a.same_iso_class(b) || (a.is_zero() && b.is_zero())
}

#[test]
fn localization_is_exact() {
    let r = free_resolution(&FgModule::free(1), 8).unwrap();
    let fg = FgModule::cyclic(&Ideal::int(&[(12, 0), (0, 3)])).unwrap();
    let mut cases = shapes(2);
    cases.retain(|(n, _)| n != "I_(x)");
    cases.push(("R/(12,3x)".into(), ComplexShape::concentrated(ModuleDesc::Fg(fg), 0)));
    cases.push(("integer dual of R".into(), ComplexShape::IntegerDual(r)));
    cases.push(("E(R/(x))".into(), ComplexShape::concentrated(std_module(StdInjective::EMin), 0)));
    for (name, c) in cases {
        for q in [PrimeIdeal::MinimalX, PrimeIdeal::MaximalAt(2), PrimeIdeal::MaximalAt(3)] {
            let l = localize_complex(&c, q);
            for n in -2..=4 {
                let lhs = l.cohomology_at(n).unwrap();
                let rhs = c.cohomology_at(n).unwrap().localize(q);
                assert!(agree(&lhs, &rhs), "{name} at {q}, degree {n}: {lhs} vs {rhs}");
            }
        }
    }
}

fn entry() -> impl Strategy<Value = (i64, i64)> {
    (-3i64..=3, -3i64..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gamma_and_residue_hom_agree(
        p in prop::sample::select(vec![2u64, 3]),
        q in prop::sample::select(vec![2u64, 3, 5]),
        r0 in 0usize..=2,
        r1 in 0usize..=2,
        entries in prop::collection::vec(entry(), 4),
    ) {
        let rows: Vec<Vec<(i64, i64)>> = (0..r1).map(|i| (0..r0).map(|j| entries[i * 2 + j]).collect()).collect();
        let d = if r0 == 0 || r1 == 0 { RMatrix::zeros(r1, r0) } else { RMatrix::from_pairs(&rows) };
        let c = ComplexShape::e_window(p, 0, vec![r0, r1], vec![d]).unwrap();
        let m = PrimeIdeal::MaximalAt(q);
        let g = gamma_torsion(&c, m, 12, WINDOW).unwrap();
        let h = hom_from_residue(&c, m, WINDOW.0, WINDOW.1).unwrap();
        prop_assert_eq!(g.witness.is_some(), h.nonzero());
        prop_assert_eq!(h.nonzero(), p == q && r0 + r1 > 0);
    }
}

#[test]
fn gamma_and_residue_hom_agree_on_products() {
    for p in [2, 3] {
        for (name, c) in shapes(p) {
            for q in [2, 3, 5] {
                let m = PrimeIdeal::MaximalAt(q);
                let g = gamma_torsion(&c, m, 12, WINDOW).unwrap();
                let h = hom_from_residue(&c, m, WINDOW.0, WINDOW.1).unwrap();
                assert_eq!(g.witness.is_some(), h.nonzero(), "{name} at {m}");
            }
        }
    }
}
