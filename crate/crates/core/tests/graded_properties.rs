use proptest::prelude::*;
use segcalc_core::graded::{rat, Basis, CycleClass, FormalSeries, Rational, TruncPoly};

const VARS: [&str; 3] = ["x", "y", "z"];
const T: u32 = 4;

fn series() -> impl Strategy<Value = FormalSeries> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -5i64..=5), 0..8).prop_map(|terms| {
        FormalSeries::from_terms(&VARS, T, terms.into_iter().map(|(a, b, c, v)| (vec![a, b, c], rat(v))))
    })
}

fn divisor_like() -> impl Strategy<Value = FormalSeries> {
    series().prop_map(|s| {
        let c = s.constant_term();
        &s - &FormalSeries::constant(&VARS, T, c)
    })
}

fn projective_class(n: usize) -> impl Strategy<Value = CycleClass> {
    prop::collection::vec(-20i64..=20, n + 1)
        .prop_map(move |cs| CycleClass::projective(n, cs.into_iter().enumerate()))
}

fn poly() -> impl Strategy<Value = TruncPoly> {
    prop::collection::vec(-4i64..=4, 0..6).prop_map(|cs| TruncPoly::from_ints(&cs))
}

proptest! {
    #[test]
    fn series_ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn geometric_series_inverts_one_plus(d in divisor_like()) {
        let g = d.series_geometric().unwrap();
        let one_plus = &FormalSeries::one(&VARS, T) + &d;
        prop_assert_eq!(&one_plus * &g, d);
    }

    #[test]
    fn dual_is_an_involution(a in projective_class(5)) {
        prop_assert_eq!(a.dual().dual(), a);
    }

    #[test]
    fn trivial_twist_is_identity(a in projective_class(4)) {
        prop_assert_eq!(a.tensor(0).unwrap(), a);
    }

    #[test]
    fn cap_is_multiplicative(p in poly(), q in poly(), a in projective_class(4)) {
        let pq = p.mul_trunc(&q, 4);
        prop_assert_eq!(a.cap_projective(&pq), a.cap_projective(&q).cap_projective(&p));
    }

    #[test]
    fn no_floating_point_drift(a in projective_class(3), k in 1i64..50) {
        let third = Rational::new(1.into(), 3.into());
        let tripled = a.scale(&third).scale_int(3);
        prop_assert_eq!(tripled, a.clone());
        prop_assert!(a.scale_int(k).is_integral());
    }
}

proptest! {
    #[test]
    fn twists_compose_additively(a in projective_class(5), d1 in -4i64..=4, d2 in -4i64..=4) {
        let twice = a.tensor(d1).unwrap().tensor(d2).unwrap();
        prop_assert_eq!(twice, a.tensor(d1 + d2).unwrap());
        prop_assert_eq!(a.tensor(d1).unwrap().tensor(-d1).unwrap(), a);
    }
}

#[test]
fn zero_class_twists_to_zero() {
    assert_eq!(CycleClass::zero(&Basis::projective(2)).tensor(5).unwrap().to_string(), "0");
}
