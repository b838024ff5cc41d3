mod common;

#[test]
fn enumerations_are_isometry_invariant() {
    common::isometry_invariance(64).unwrap();
}

#[test]
fn decorations_are_stable_under_relabeling() {
    common::decoration_stability(64).unwrap();
}

#[test]
fn verdicts_are_monotone_under_decoration_upgrades() {
    common::verdict_monotonicity(512).unwrap();
}

#[test]
fn surfaces_and_verdicts_round_trip_through_json() {
    common::json_round_trip(128).unwrap();
}
