use proptest::prelude::*;
use serde_json::json;

use segcalc::classjson::{class_from_json, class_to_json};
use segcalc::scenario::{parse_scenarios, Scenario};
use segcalc_core::graded::{Basis, CycleClass, Rational};
use segcalc_core::Exec;

fn one(text: &str) -> Scenario {
    parse_scenarios(text).unwrap().pop().unwrap()
}

proptest! {
    #[test]
    fn class_json_round_trip(n in 0usize..8, nums in prop::collection::vec(any::<i64>(), 9), dens in prop::collection::vec(1i64..50, 9)) {
        let coeffs: Vec<Rational> = (0..=n).map(|i| Rational::new(nums[i].into(), dens[i].into())).collect();
        let class = CycleClass::from_coeffs(&Basis::projective(n), coeffs).unwrap();
        let text = serde_json::to_string(&class_to_json(&class)).unwrap();
        let back = class_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, class);
    }

    #[test]
    fn hyperplane_scenarios_match_inclusion_exclusion(n in 2usize..6, r in 1usize..5) {
        let base = json!({
            "schema": "segcalc/1", "name": "pencil", "ambient": {"n": n},
            "center": {"kind": "linear", "dim": n - 2},
            "components": {"hypersurfaces": vec![1; r]},
        });
        let mut a = base.clone();
        a["operation"] = json!("union_segre");
        let mut b = base;
        b["operation"] = json!("sm_segre");
        let ra = one(&a.to_string()).run(Exec::Parallel, None).unwrap();
        let rb = one(&b.to_string()).run(Exec::Sequential, None).unwrap();
        prop_assert_eq!(&ra.class, &rb.class);
        prop_assert!(!rb.failed());
    }
}

#[test]
fn operations_accept_strings_and_objects() {
    let s = one(r#"{"schema":"segcalc/1","name":"x","ambient":{"n":2},"operation":{"chern_recursion":{"d":2,"r":3}}}"#);
    let report = s.run(Exec::Parallel, None).unwrap();
    assert!(!report.failed());
    assert_eq!(report.checks.len(), 1);
}

#[test]
fn identities_use_global_truncation_when_unset() {
    let s = one(r#"{"schema":"segcalc/1","name":"x","ambient":{"n":3},"operation":{"identities":{"r":3}}}"#);
    let default = s.run(Exec::Parallel, None).unwrap();
    assert!(default.checks[0].name.contains("T=7"));
    let global = s.run(Exec::Parallel, Some(5)).unwrap();
    assert!(global.checks[0].name.contains("T=5"));
    assert!(s.run(Exec::Parallel, Some(2)).is_err());
}

#[test]
fn ambient_compare_reports_both_twists() {
    let s = one(
        r#"{"schema":"segcalc/1","name":"x","ambient":{"n":3},"center":"empty","components":{"lines":2},
            "operation":{"ambient_compare":{"n_prime":2}}}"#,
    );
    let report = s.run(Exec::Parallel, None).unwrap();
    assert_eq!(report.class, Some(CycleClass::projective(2, [(1, 2), (0, -2)])));
    assert_eq!(report.extra["reverse_twist"], CycleClass::projective(2, [(1, 2), (0, -6)]));
    assert_eq!(report.extra["source"], CycleClass::projective(3, [(1, 2), (0, -4)]));
}

#[test]
fn custom_center_matches_builtin_complete_intersection() {
    let custom = one(include_str!("../scenarios/conic_custom_center.json")).run(Exec::Parallel, None).unwrap();
    let builtin = one(
        r#"{"schema":"segcalc/1","name":"x","ambient":{"n":3},"center":{"kind":"complete_intersection","degrees":[1,2]},
            "components":{"hypersurfaces":[1,2]},"operation":"closed_form"}"#,
    )
    .run(Exec::Parallel, None)
    .unwrap();
    assert_eq!(custom.class, builtin.class);
}

#[test]
fn custom_center_rejects_inconsistent_data() {
    let bad = include_str!("../scenarios/conic_custom_center.json").replace("\"pushforward\": [2, 1]", "\"pushforward\": [2, 3]");
    let s = one(&bad);
    assert!(s.run(Exec::Parallel, None).is_err());
}
