use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use injsupp::exactnum::PruferElt;
use injsupp::modules::product::sample_eelt;
use injsupp::modules::{
    ann_element, ass_membership, matlis_dual_homology, unit_action_bijective, AssVerdict, DualComplex, DualTarget, EElt,
    FgModule, MinElt, ModuleDesc, ProductFactor, ProductModule, RMatrix, StdInjective,
};
use injsupp::oracle::{brute_homology, dual_window};
use injsupp::ring::{spec_enumerate, Ideal, PrimeIdeal, RingElt};

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

fn factor() -> impl Strategy<Value = ProductFactor> {
    (prime(), any::<bool>()).prop_map(|(p, e)| if e { ProductFactor::EMax(p) } else { ProductFactor::M(p) })
}

fn entry() -> impl Strategy<Value = (i64, i64)> {
    (-4i64..=4, -4i64..=4)
}

proptest! {
    #[test]
    fn x_squared_is_zero(p in prime(), seed in any::<u64>(), a in -20i64..=20, b in -20i64..=20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = sample_eelt(&mut rng, p, 6);
        prop_assert!(e.x_act().x_act().is_zero());
        prop_assert!(MinElt::int(a, b).x_act().x_act().is_zero());
        let m = ProductModule::new(ProductFactor::EMax(p), a);
        let s = m.sample(&mut rng, 5, 3, 6);
        prop_assert!(s.x_act().x_act().is_zero());
    }

    #[test]
    fn single_slot_keeps_the_annihilator(f in factor(), seed in any::<u64>(), start in -5i64..5, off in 0i64..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut e = sample_eelt(&mut rng, f.p(), 6);
        if matches!(f, ProductFactor::M(_)) {
            e = EElt::new(e.f0().clone(), PruferElt::zero(f.p()));
        }
        let s = ProductModule::new(f, start).single(start + off, e.clone()).unwrap();
        prop_assert_eq!(s.annihilator(), e.annihilator());
    }

    #[test]
    fn ass_witnesses_lie_below_the_factor_prime(f in factor(), start in -5i64..5) {
        let m = ProductModule::new(f, start);
        for q in [PrimeIdeal::MinimalX, PrimeIdeal::MaximalAt(2), PrimeIdeal::MaximalAt(3), PrimeIdeal::MaximalAt(5)] {
            match ass_membership(&m, q) {
                AssVerdict::Yes(w) => {
                    prop_assert!(q.is_contained_in(PrimeIdeal::MaximalAt(f.p())));
                    prop_assert_eq!(w.annihilator(), q.to_ideal());
                }
                AssVerdict::OutsideUpperBound => prop_assert!(!q.is_contained_in(PrimeIdeal::MaximalAt(f.p()))),
                AssVerdict::BoundedNo => {}
            }
        }
    }

    #[test]
    fn matlis_dual_homology_matches_the_oracle(
        p in prop::sample::select(vec![2u64, 3]),
        k in 1u32..=2,
        r0 in 1usize..=2,
        r1 in 1usize..=2,
        entries in prop::collection::vec(entry(), 4),
    ) {
        let rows: Vec<Vec<(i64, i64)>> = (0..r1).map(|i| (0..r0).map(|j| entries[i * 2 + j]).collect()).collect();
        let d = RMatrix::from_pairs(&rows);
        let base = FgModule::cyclic(&Ideal::int(&[(p.pow(k) as i64, 0)])).unwrap();
        let c = DualComplex::new(DualTarget::Prufer(p), base, 0, vec![r0, r1], vec![d.clone()]).unwrap();
        let fc = dual_window(p, k, 0, &[r0, r1], &[d]).unwrap();
        for n in 0..=1 {
            let engine = match matlis_dual_homology(&c, n).unwrap() {
                ModuleDesc::Zero => 1u64,
                ModuleDesc::Dual(_, h) => u64::try_from(h.order().unwrap()).unwrap(),
                other => panic!("unexpected {other}"),
            };
            prop_assert_eq!(engine, brute_homology(&fc, n).unwrap().size);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn units_act_bijectively(a in 1i64..40, b in -20i64..=20) {
        for (p, kmax) in [(2u64, 8u32), (3, 4)] {
            if a % p as i64 == 0 {
                continue;
            }
            for k in 1..=kmax {
                prop_assert!(unit_action_bijective(p, k, &RingElt::int(a, b)).unwrap());
            }
        }
    }
}

#[test]
fn socle_generators_have_prime_annihilators() {
    for q in spec_enumerate(50).unwrap() {
        let soc = StdInjective::hull_of(q).socle(q);
        assert_eq!(soc.dim(), 1);
        assert_eq!(ann_element(&soc.generators[0]).unwrap(), q.to_ideal(), "{q}");
    }
}
