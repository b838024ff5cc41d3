//! Re-derives the frozen table of types with two line counts.

use duval_core::config::{format_types, line_count_spectrum, parse_types, AdeType, LINE_VARIANTS, PRIMED};
use duval_core::lattice::lattice_for_degree;

fn all_types(max_rank: usize) -> Vec<AdeType> {
    let mut v: Vec<AdeType> = (1..=8).map(AdeType::a).collect();
    v.extend((4..=8).map(AdeType::d));
    v.extend((6..=8).map(AdeType::e));
    v.retain(|t| t.n <= max_rank);
    v
}

/// Multisets of ADE types with total rank at most `max_rank`.
fn multisets(max_rank: usize) -> Vec<Vec<AdeType>> {
    fn go(types: &[AdeType], start: usize, left: usize, cur: &mut Vec<AdeType>, out: &mut Vec<Vec<AdeType>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for i in start..types.len() {
            if types[i].n <= left {
                cur.push(types[i]);
                go(types, i, left - types[i].n, cur, out);
                cur.pop();
            }
        }
    }
    let types = all_types(max_rank);
    let mut out = Vec::new();
    go(&types, 0, max_rank, &mut Vec::new(), &mut out);
    out
}

fn listed(d: i64, label: &str) -> Option<[usize; 2]> {
    LINE_VARIANTS.iter().find(|(e, s, _)| *e == d && *s == label).map(|x| x.2)
}

fn check_degree_exhaustively(d: i64) {
    let form = lattice_for_degree(d).unwrap();
    let mut ambiguous = Vec::new();
    for ts in multisets((9 - d) as usize) {
        let counts: Vec<usize> = line_count_spectrum(&form, &ts).into_keys().collect();
        let label = format_types(&ts);
        match listed(d, &label) {
            Some(pair) => assert_eq!(counts, pair.to_vec(), "d={d} {label}"),
            None => assert!(counts.len() <= 1, "d={d} {label} has counts {counts:?}"),
        }
        if counts.len() == 2 {
            ambiguous.push(label);
        }
    }
    let expected: Vec<&str> = LINE_VARIANTS.iter().filter(|x| x.0 == d).map(|x| x.1).collect();
    assert_eq!(ambiguous.len(), expected.len(), "d={d}: {ambiguous:?}");
}

#[test]
fn degrees_three_to_eight_are_exhaustive() {
    for d in 3..=8 {
        check_degree_exhaustively(d);
    }
}

#[test]
fn degree_two_listed_pairs() {
    let form = lattice_for_degree(2).unwrap();
    for (_, label, pair) in LINE_VARIANTS.iter().filter(|x| x.0 == 2) {
        let ts = parse_types(label).unwrap();
        let counts: Vec<usize> = line_count_spectrum(&form, &ts).into_keys().collect();
        assert_eq!(counts, pair.to_vec(), "{label}");
    }
    for label in ["A7", "A5+A2", "D4+3A1", "2A3+A1", "3A2"] {
        let counts = line_count_spectrum(&form, &parse_types(label).unwrap());
        assert_eq!(counts.len(), 1, "{label}");
    }
}

#[test]
fn degree_one_listed_pairs() {
    let form = lattice_for_degree(1).unwrap();
    for (_, label, pair) in LINE_VARIANTS.iter().filter(|x| x.0 == 1) {
        let ts = parse_types(label).unwrap();
        let counts: Vec<usize> = line_count_spectrum(&form, &ts).into_keys().collect();
        assert_eq!(counts, pair.to_vec(), "{label}");
    }
}

#[test]
fn primed_types_are_ambiguous() {
    for (d, label, _) in PRIMED {
        assert!(listed(*d, label).is_some(), "{d} {label}");
    }
}
