use proptest::prelude::*;

use injsupp::ring::{annihilator_of_element, ideal_membership, spec_enumerate, Ideal, PrimeIdeal, RingElt};

fn elt() -> impl Strategy<Value = RingElt> {
    (-50i64..=50, -50i64..=50).prop_map(|(a, b)| RingElt::int(a, b))
}

fn gens() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-12i64..=12, -12i64..=12), 1..=3)
}

proptest! {
    #[test]
    fn ring_axioms(r in elt(), s in elt(), t in elt()) {
        let rs_t = r.mul(&s).unwrap().mul(&t).unwrap();
        prop_assert_eq!(rs_t, r.mul(&s.mul(&t).unwrap()).unwrap());
        prop_assert_eq!(r.mul(&s).unwrap(), s.mul(&r).unwrap());
        let lhs = r.mul(&s.add(&t).unwrap()).unwrap();
        let rhs = r.mul(&s).unwrap().add(&r.mul(&t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(r.add(&s).unwrap().add(&t).unwrap(), r.add(&s.add(&t).unwrap()).unwrap());
        prop_assert_eq!(r.mul(&RingElt::int(1, 0)).unwrap(), r.clone());
        prop_assert!(RingElt::x().mul(&RingElt::x()).unwrap().is_zero());
    }

    #[test]
    fn membership_is_monotone(g in gens(), extra in (-12i64..=12, -12i64..=12), r in elt(), s in elt()) {
        let small = Ideal::int(&g);
        let mut more = g.clone();
        more.push(extra);
        let big = Ideal::int(&more);
        prop_assert!(big.contains_ideal(&small));
        if ideal_membership(&r, &small) {
            prop_assert!(ideal_membership(&r, &big));
            prop_assert!(ideal_membership(&r.mul(&s).unwrap(), &small));
        }
    }

    #[test]
    fn annihilators_kill(r in elt(), s in elt()) {
        let ann = annihilator_of_element(&r);
        if ann.contains(&s) {
            prop_assert!(s.mul(&r).unwrap().is_zero());
        }
        if s.mul(&r).unwrap().is_zero() {
            prop_assert!(ann.contains(&s));
        }
    }
}

#[test]
fn spec_primes_contain_x() {
    let primes = spec_enumerate(50).unwrap();
    assert_eq!(primes.len(), 16);
    for p in &primes {
        assert!(p.to_ideal().contains(&RingElt::x()), "{p}");
        assert!(PrimeIdeal::MinimalX.is_contained_in(*p));
    }
}

#[test]
fn annihilator_of_x_is_x() {
    assert_eq!(annihilator_of_element(&RingElt::x()), Ideal::int(&[(0, 1)]));
    assert_eq!(annihilator_of_element(&RingElt::x()), PrimeIdeal::MinimalX.to_ideal());
}
