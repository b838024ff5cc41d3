mod common;

use common::{entry, verdict_of};
use duval_core::config::{AdeType, Family, Variant};
use duval_core::galois::{Decoration, Sign};
use duval_core::oracle::{decide_degree_nine, decide_input, Answer, OracleInput, Rule, SMALL_LIST_DEG1};

fn dec(base: AdeType, sign: Sign) -> Decoration {
    Decoration { base, sign, variant: None }
}

fn input(degree: i64, geometric: &[AdeType], rational: &[Decoration]) -> OracleInput {
    OracleInput {
        degree,
        geometric: geometric.to_vec(),
        rational: rational.to_vec(),
        construction_case: None,
    }
}

fn verdict(id: &str) -> (Answer, Rule) {
    let (e, s) = entry(id);
    let v = verdict_of(e, s);
    (v.answer, v.rule)
}

#[test]
fn cubic_with_three_conjugate_a1_points_has_no_cylinder() {
    assert_eq!(verdict("eg1"), (Answer::NoCylinder, Rule::Deg34None));
}

#[test]
fn quartic_with_a1_plus_plus_has_no_cylinder() {
    assert_eq!(verdict("eg2"), (Answer::NoCylinder, Rule::Deg34None));
}

#[test]
fn degree_two_example_depends_on_the_minus_flag() {
    assert_eq!(verdict("eg3-minus"), (Answer::ContainsCylinder, Rule::LowDegMinusDecoration));
    assert_eq!(verdict("eg3-plus").0, Answer::NoCylinder);
    assert_eq!(verdict("eg3-plusplus").0, Answer::NoCylinder);
}

#[test]
fn fibration_over_a_curve_needs_a_rational_singular_point() {
    assert_eq!(verdict("eg4-rational"), (Answer::ContainsCylinder, Rule::Deg34KRationalNonA1pp));
    assert_eq!(verdict("eg4-none"), (Answer::NoCylinder, Rule::Deg34None));
}

#[test]
fn constant_fibrations_fail_only_on_degree_one_small_types() {
    let c = common::catalog();
    let mut seen = 0;
    for (e, s) in c.surfaces.iter().filter(|(e, _)| e.id.starts_with("eg5-")) {
        let v = verdict_of(e, s);
        let small = e.degree == 1 && s.profile.types().iter().all(|t| SMALL_LIST_DEG1.contains(t));
        assert_eq!(v.answer == Answer::NoCylinder, small, "{}", e.id);
        seen += 1;
    }
    assert!(seen >= 20, "{seen} constant fibrations");
}

#[test]
fn twisted_family_has_a_cylinder_iff_even() {
    assert_eq!(verdict("eg6-even").0, Answer::ContainsCylinder);
    assert_eq!(verdict("eg6-odd").0, Answer::NoCylinder);
}

#[test]
fn high_degree_always_contains_a_cylinder() {
    assert_eq!(decide_degree_nine().answer, Answer::ContainsCylinder);
    for d in 5..=8 {
        let v = decide_input(&input(d, &[], &[]));
        assert_eq!((v.answer, v.rule), (Answer::ContainsCylinder, Rule::Deg5Plus));
    }
}

#[test]
fn degree_three_and_four_clause() {
    let a1 = AdeType::a(1);
    let a2 = AdeType::a(2);
    let v = decide_input(&input(3, &[a1, a2], &[dec(a1, Sign::PlusPlus)]));
    assert_eq!((v.answer, v.rule), (Answer::NoCylinder, Rule::Deg34None));
    let v = decide_input(&input(3, &[a1, a2], &[dec(a1, Sign::PlusPlus), dec(a2, Sign::Plus)]));
    assert_eq!((v.answer, v.rule), (Answer::ContainsCylinder, Rule::Deg34KRationalNonA1pp));
    let v = decide_input(&input(4, &[a1, a1], &[]));
    assert_eq!(v.answer, Answer::NoCylinder);
}

#[test]
fn low_degree_clauses_in_order() {
    let (a1, a3, a5, a7, e7, d4) = (AdeType::a(1), AdeType::a(3), AdeType::a(5), AdeType::a(7), AdeType::e(7), AdeType::d(4));
    // forcing list
    let v = decide_input(&input(2, &[e7], &[dec(e7, Sign::Plus)]));
    assert_eq!((v.answer, v.rule), (Answer::ContainsCylinder, Rule::LowDegBigSingList));
    // forcing type present but not rational falls through
    let v = decide_input(&input(2, &[e7], &[]));
    assert_eq!(v.answer, Answer::NoCylinder);
    // central chain on degree 2 and degree 1
    let dp = |b, sign| Decoration { base: b, sign, variant: Some(Variant::DoublePrime) };
    let v = decide_input(&input(2, &[a5], &[dp(a5, Sign::Plus)]));
    assert_eq!((v.answer, v.rule), (Answer::ContainsCylinder, Rule::LowDegDoublePrime));
    let v = decide_input(&input(2, &[a5], &[dp(a5, Sign::PlusPlus)]));
    assert_eq!((v.answer, v.rule), (Answer::NoCylinder, Rule::LowDegDoublePrime));
    let v = decide_input(&input(1, &[a7], &[dp(a7, Sign::Minus)]));
    assert_eq!(v.answer, Answer::ContainsCylinder);
    // small types only
    let v = decide_input(&input(1, &[a3, a1, d4], &[dec(a3, Sign::Minus)]));
    assert_eq!((v.answer, v.rule), (Answer::NoCylinder, Rule::LowDegSmallSingOnly));
    let v = decide_input(&input(2, &[a1], &[dec(a1, Sign::Plus)]));
    assert_eq!((v.answer, v.rule), (Answer::NoCylinder, Rule::LowDegSmallSingOnly));
    // Minus decoration
    let v = decide_input(&input(2, &[a3], &[dec(a3, Sign::Minus)]));
    assert_eq!((v.answer, v.rule), (Answer::ContainsCylinder, Rule::LowDegMinusDecoration));
    let v = decide_input(&input(2, &[a3], &[dec(a3, Sign::Plus)]));
    assert_eq!((v.answer, v.rule), (Answer::NoCylinder, Rule::LowDegNone));
}

#[test]
fn every_rule_produces_only_its_answers() {
    for (e, s) in &common::catalog().surfaces {
        let v = verdict_of(e, s);
        assert!(v.rule.allows(v.answer), "{}", e.id);
        assert_eq!(v.trace.first().map(|t| t.cite.as_str()), Some("input"), "{}", e.id);
        assert!(s.profile.points.iter().all(|p| p.ade.family != Family::A || p.ade.n >= 1));
    }
}
