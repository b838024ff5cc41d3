mod common;

use std::collections::BTreeSet;

use common::{catalog, fixtures_dir};
use duval_core::catalog::{check_divd, check_entry, rows, Source, CLAUSE12_ROWS, DIVD_ROWS, MINUS_ROWS, TABLE1_ROWS};
use duval_core::config::{validate_config, ProfileJson};
use duval_core::oracle::{Answer, Rule};

#[test]
fn every_shipped_entry_matches_its_row() {
    let dir = fixtures_dir();
    for e in &catalog().index.entries {
        let c = check_entry(&dir, e);
        assert!(c.ok, "{c:?}");
    }
}

#[test]
fn every_row_is_shipped_or_explained() {
    let idx = &catalog().index;
    let shipped: BTreeSet<&str> = idx.entries.iter().map(|e| e.id.as_str()).collect();
    let missing: Vec<&str> = idx.unrealized.iter().map(|u| u.id.as_str()).collect();
    for r in rows() {
        assert!(shipped.contains(r.id.as_str()) || missing.contains(&r.id.as_str()), "{}", r.id);
    }
    assert_eq!(missing, ["t1-d4-4A1-rho5"]);
    let table_rows: usize = TABLE1_ROWS.iter().map(|r| r.3.len()).sum();
    assert_eq!(idx.entries.iter().filter(|e| e.source == Source::Table1).count(), table_rows - 1);
    let c12: usize = CLAUSE12_ROWS.iter().map(|r| r.2.len()).sum();
    assert_eq!(idx.entries.iter().filter(|e| e.source == Source::Clause12).count(), c12 + 2);
    assert_eq!(idx.entries.iter().filter(|e| e.source == Source::MinusList).count(), MINUS_ROWS.len());
}

#[test]
fn three_a2_on_degree_two_uses_the_minus_clause() {
    let (e, s) = common::entry("minus-d2-3A2-rho5");
    let v = common::verdict_of(e, s);
    assert_eq!((v.answer, v.rule), (Answer::ContainsCylinder, Rule::LowDegMinusDecoration));
    assert_eq!(duval_core::galois::analyze(s).unwrap().fixed_rank, 5);
}

#[test]
fn shipped_profiles_round_trip_through_validation() {
    for (e, s) in &catalog().surfaces {
        let again = validate_config(&s.profile.form, &s.profile.roots).unwrap();
        assert_eq!(again.types(), s.profile.types(), "{}", e.id);
        let json = ProfileJson::from(&s.profile);
        assert_eq!(json.validate().unwrap().roots, s.profile.roots);
    }
}

#[test]
fn divisor_d_rows() {
    let idx = &catalog().index;
    assert_eq!(idx.divd.len(), DIVD_ROWS.len());
    let mut letters = BTreeSet::new();
    for f in idx.divd.iter().filter(|f| f.primary) {
        let c = check_divd(f);
        assert!(c.ok(), "{c:?}");
        letters.insert(f.case.clone());
    }
    assert_eq!(letters.len(), 7);
    let b_rows: BTreeSet<&str> = idx
        .divd
        .iter()
        .filter(|f| f.primary && f.expected == "B")
        .map(|f| f.id.as_str())
        .collect();
    let expect: BTreeSet<&str> = [
        "divd-a-d2-A3_A1-15",
        "divd-b-d2-A5-7",
        "divd-b-d2-A5_A1-5",
        "divd-b-d2-A5_A2-3",
        "divd-d-d1-A5_A1-21",
        "divd-e-d1-A7-8",
    ]
    .into();
    assert_eq!(b_rows, expect);
}
