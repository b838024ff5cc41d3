use std::collections::BTreeSet;

use duval_core::curves::{line_classes, lines_by_reflection, roots, roots_by_reflection};
use duval_core::lattice::{lattice_for_degree, DivisorClass};

const COUNTS: [(i64, usize, usize); 8] = [
    (1, 240, 240),
    (2, 126, 56),
    (3, 72, 27),
    (4, 40, 16),
    (5, 20, 10),
    (6, 8, 6),
    (7, 2, 3),
    (8, 2, 0),
];

fn set(v: Vec<DivisorClass>) -> BTreeSet<DivisorClass> {
    v.into_iter().collect()
}

#[test]
fn two_strategies_agree_on_every_degree() {
    for (d, nr, nl) in COUNTS {
        let form = lattice_for_degree(d).unwrap();
        let r = set(roots(&form).classes);
        let l = set(line_classes(&form).classes);
        assert_eq!(r.len(), nr, "roots d={d}");
        assert_eq!(l.len(), nl, "lines d={d}");
        assert_eq!(r, set(roots_by_reflection(&form)), "roots d={d}");
        assert_eq!(l, set(lines_by_reflection(&form)), "lines d={d}");
    }
}

#[test]
fn enumerated_classes_have_the_defining_numbers() {
    for (d, _, _) in COUNTS {
        let form = lattice_for_degree(d).unwrap();
        for r in roots(&form).classes {
            assert_eq!(form.dot(&r, &r), -2);
            assert_eq!(form.dot_k(&r), 0);
        }
        for l in line_classes(&form).classes {
            assert_eq!(form.dot(&l, &l), -1);
            assert_eq!(form.dot_k(&l), -1);
        }
    }
}

#[test]
fn roots_are_closed_under_negation() {
    for (d, _, _) in COUNTS {
        let form = lattice_for_degree(d).unwrap();
        let r = set(roots(&form).classes);
        assert!(r.iter().all(|x| r.contains(&x.scale(-1))), "d={d}");
    }
}
