use proptest::prelude::*;

use injsupp::complexes::ComplexShape;
use injsupp::modules::{ass_membership, FgModule, ModuleDesc, RMatrix};
use injsupp::ring::{spec_enumerate, Ideal, PrimeIdeal};
use injsupp::support::{big_support, check_prop21_equivalence, free_resolution, small_support, small_support_module};

fn fg_module() -> impl Strategy<Value = FgModule> {
    (1usize..=2, 1usize..=3, prop::collection::vec((-6i64..=6, -6i64..=6), 6)).prop_map(|(r, c, e)| {
        let rows: Vec<Vec<(i64, i64)>> = (0..r).map(|i| (0..c).map(|j| e[i * 3 + j]).collect()).collect();
        FgModule::cokernel(&RMatrix::from_pairs(&rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn resolutions_are_exact(m in fg_module()) {
        let f = free_resolution(&m, 5).unwrap();
        prop_assert!(f.verify().unwrap());
    }

    #[test]
    fn equivalence_holds_on_fg_modules(m in fg_module(), q in prop::sample::select(vec![2u64, 3, 5])) {
        let x = ComplexShape::concentrated(ModuleDesc::Fg(m), 0);
        let r = check_prop21_equivalence(&x, None, PrimeIdeal::MaximalAt(q), (-6, 6)).unwrap();
        prop_assert!(r.agree(), "{}", r);
    }
}

#[test]
fn small_and_big_support_agree_on_fg_modules() {
    let primes = spec_enumerate(50).unwrap();
    let c = |g: &[(i64, i64)]| FgModule::cyclic(&Ideal::int(g)).unwrap();
    let modules = [
        FgModule::free(1),
        FgModule::quotient_by_prime(PrimeIdeal::MinimalX),
        c(&[(6, 0)]),
        c(&[(12, 0), (0, 3)]),
        c(&[(47, 0), (0, 1)]),
        FgModule::trivial_x(&[4, 9, 35]),
        FgModule::cokernel(&RMatrix::from_pairs(&[vec![(2, 1), (0, 3)], vec![(0, 0), (5, 0)]])),
    ];
    for m in modules {
        let d = ModuleDesc::Fg(m);
        assert_eq!(small_support_module(&d, &primes).unwrap(), big_support(&d, &primes), "{d}");
    }
}

#[test]
fn x_has_support_at_one_point_and_i_has_x_associated() {
    let primes = spec_enumerate(11).unwrap();
    for p in [2, 3, 5] {
        let members: Vec<PrimeIdeal> = small_support(&ComplexShape::x(p), &primes, (-6, 6))
            .unwrap()
            .into_iter()
            .filter(|r| r.in_small_support.member)
            .map(|r| r.prime)
            .collect();
        assert_eq!(members, vec![PrimeIdeal::MaximalAt(p)]);
        let i = ComplexShape::i(p);
        for n in -6..=6 {
            let ModuleDesc::Product(m) = i.term_at(n) else { panic!("product term") };
            assert!(ass_membership(&m, PrimeIdeal::MinimalX).is_yes(), "p={p} degree {n}");
        }
    }
}
