//! Shared fixtures and property checks for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::OnceLock;

use duval_core::catalog::{load_entry, load_index, CatalogEntry, CatalogIndex, Mode};
use duval_core::config::validate_config;
use duval_core::curves::{line_classes, lines_on_surface, roots};
use duval_core::galois::{analyze, decorations, mat_mul, Decoration, GaloisAction, Matrix, Sign, SurfaceOverK};
use duval_core::lattice::{apply, lattice_for_degree, DivisorClass, IntersectionForm};
use duval_core::oracle::{decide, decide_fibration, decide_input, oracle_input, OracleInput, Verdict};
use duval_core::surface::{load_str, to_json_string, Loaded};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRunner};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
}

pub struct Catalog {
    pub index: CatalogIndex,
    pub surfaces: Vec<(CatalogEntry, SurfaceOverK)>,
}

pub fn catalog() -> &'static Catalog {
    static CELL: OnceLock<Catalog> = OnceLock::new();
    CELL.get_or_init(|| {
        let dir = fixtures_dir();
        let index = load_index(&dir).expect("fixtures/catalog.json");
        let surfaces = index
            .entries
            .iter()
            .map(|e| (e.clone(), load_entry(&dir, e).expect("fixture loads")))
            .collect();
        Catalog { index, surfaces }
    })
}

pub fn entry(id: &str) -> &'static (CatalogEntry, SurfaceOverK) {
    catalog()
        .surfaces
        .iter()
        .find(|(e, _)| e.id == id)
        .unwrap_or_else(|| panic!("no catalog entry {id}"))
}

pub fn verdict_of(e: &CatalogEntry, s: &SurfaceOverK) -> Verdict {
    match e.mode {
        Mode::Decide => decide(s).expect("decides"),
        Mode::Fibration => decide_fibration(s).expect("decides"),
    }
}

/// Matrix of the reflection in a root: `v -> v + (v.a) a`.
pub fn reflection(form: &IntersectionForm, a: &DivisorClass) -> Matrix {
    let n = form.rank();
    let cols: Vec<DivisorClass> = (0..n)
        .map(|j| {
            let e = DivisorClass::unit(n, j);
            let c = form.dot(&e, a);
            DivisorClass::combination(n, &[(1, &e), (c, a)])
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j].0[i]).collect()).collect()
}

/// A Weyl group element and its inverse from a word in root indices.
pub fn weyl_element(form: &IntersectionForm, word: &[usize]) -> (Matrix, Matrix) {
    let rs = roots(form).classes;
    let n = form.rank();
    let mut w = duval_core::galois::identity(n);
    let mut inv = duval_core::galois::identity(n);
    for &i in word {
        let s = reflection(form, &rs[i % rs.len()]);
        w = mat_mul(&s, &w);
        inv = mat_mul(&inv, &s);
    }
    (w, inv)
}

fn sorted(v: Vec<DivisorClass>) -> Vec<DivisorClass> {
    let mut v = v;
    v.sort();
    v
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Weyl group elements preserve the enumerated root and line sets, and
/// carry the lines of a configuration to the lines of its image.
pub fn isometry_invariance(cases: u32) -> Result<(), TestError<(i64, Vec<usize>, usize)>> {
    let n_entries = catalog().surfaces.len();
    runner(cases).run(
        &(1i64..=8, proptest::collection::vec(0usize..240, 1..6), 0..n_entries),
        |(d, word, k)| {
            let form = lattice_for_degree(d).unwrap();
            let (w, _) = weyl_element(&form, &word);
            let r = sorted(roots(&form).classes);
            let l = sorted(line_classes(&form).classes);
            prop_assert_eq!(sorted(r.iter().map(|x| apply(&w, x)).collect()), r);
            prop_assert_eq!(sorted(l.iter().map(|x| apply(&w, x)).collect()), l);
            let (_, s) = &catalog().surfaces[k];
            let form = &s.profile.form;
            let (w, _) = weyl_element(form, &word);
            let moved: Vec<DivisorClass> = s.profile.roots.iter().map(|x| apply(&w, x)).collect();
            let p = validate_config(form, &moved).unwrap();
            let image = sorted(lines_on_surface(&s.profile).classes.iter().map(|x| apply(&w, x)).collect());
            prop_assert_eq!(sorted(lines_on_surface(&p).classes), image);
            prop_assert_eq!(p.types(), s.profile.types());
            Ok(())
        },
    )
}

/// The same surface with roots reordered and everything moved by a Weyl element.
pub fn relabel(s: &SurfaceOverK, perm: &[usize], word: &[usize]) -> SurfaceOverK {
    let form = &s.profile.form;
    let (w, inv) = weyl_element(form, word);
    let moved: Vec<DivisorClass> = perm.iter().map(|&i| apply(&w, &s.profile.roots[i])).collect();
    let profile = validate_config(form, &moved).unwrap();
    let generators = s
        .action
        .generators
        .iter()
        .map(|g| mat_mul(&mat_mul(&w, g), &inv))
        .collect();
    // carry flags by component sets
    let mut point_flags = BTreeMap::new();
    for (id, flag) in &s.point_flags {
        let pt = s.profile.point(id).unwrap();
        let image = sorted(s.profile.point_classes(pt).iter().map(|x| apply(&w, x)).collect());
        let new = profile
            .points
            .iter()
            .find(|q| sorted(profile.point_classes(q)) == image)
            .expect("image point");
        point_flags.insert(new.id.clone(), *flag);
    }
    SurfaceOverK {
        profile,
        action: GaloisAction { generators },
        point_flags,
        rank_one_assertion: s.rank_one_assertion,
    }
}

fn decoration_multiset(s: &SurfaceOverK) -> Vec<String> {
    let a = analyze(s).unwrap();
    let mut v: Vec<String> = decorations(s, &a).unwrap().values().map(|d| d.to_string()).collect();
    v.sort();
    v
}

/// Decorations, rho and the verdict do not depend on labels or on the
/// chosen lattice embedding.
pub fn decoration_stability(cases: u32) -> Result<(), TestError<(usize, Vec<usize>, Vec<usize>)>> {
    let n_entries = catalog().surfaces.len();
    let strategy = (0..n_entries).prop_flat_map(|k| {
        let n = catalog().surfaces[k].1.profile.roots.len();
        (
            Just(k),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            proptest::collection::vec(0usize..240, 0..5),
        )
    });
    runner(cases).run(&strategy, |(k, perm, word)| {
        let (e, s) = &catalog().surfaces[k];
        let t = relabel(s, &perm, &word);
        prop_assert_eq!(decoration_multiset(&t), decoration_multiset(s));
        let (a, b) = (analyze(s).unwrap(), analyze(&t).unwrap());
        prop_assert_eq!(a.fixed_rank, b.fixed_rank);
        prop_assert_eq!(a.group_order, b.group_order);
        let (v, u) = (verdict_of(e, s), verdict_of(e, &t));
        prop_assert_eq!(v.answer, u.answer);
        prop_assert_eq!(v.rule, u.rule);
        prop_assert_eq!(v.construction_case, u.construction_case);
        Ok(())
    })
}

/// One step up the order `++ < + < -` that the decoration rule allows.
pub fn upgrade(d: &Decoration) -> Option<Decoration> {
    let sign = match (d.sign, d.base.n) {
        (Sign::PlusPlus, _) => Sign::Plus,
        (Sign::Plus, 1) if d.base.family == duval_core::config::Family::A => return None,
        (Sign::Plus, _) => Sign::Minus,
        (Sign::Minus, _) => return None,
    };
    Some(Decoration { sign, ..*d })
}

pub fn oracle_inputs() -> &'static Vec<OracleInput> {
    static CELL: OnceLock<Vec<OracleInput>> = OnceLock::new();
    CELL.get_or_init(|| {
        catalog()
            .surfaces
            .iter()
            .filter(|(e, _)| e.mode == Mode::Decide)
            .map(|(_, s)| oracle_input(s).expect("rank one").0)
            .collect()
    })
}

/// Upgrading a decoration never turns a yes into a no.
pub fn verdict_monotonicity(cases: u32) -> Result<(), TestError<(usize, usize)>> {
    let n = oracle_inputs().len();
    runner(cases).run(&(0..n, 0usize..8), |(k, j)| {
        let input = &oracle_inputs()[k];
        if input.rational.is_empty() {
            return Ok(());
        }
        let j = j % input.rational.len();
        let Some(up) = upgrade(&input.rational[j]) else {
            return Ok(());
        };
        let mut better = input.clone();
        better.rational[j] = up;
        let before = decide_input(input).answer.is_yes();
        let after = decide_input(&better).answer.is_yes();
        prop_assert!(!before || after, "{:?} -> {:?}", input, better);
        Ok(())
    })
}

/// Emitted surfaces and verdicts re-parse to equal values.
pub fn json_round_trip(cases: u32) -> Result<(), TestError<(usize, Vec<bool>)>> {
    let n = catalog().surfaces.len();
    runner(cases).run(&(0..n, proptest::collection::vec(any::<bool>(), 9)), |(k, flags)| {
        let (e, s) = &catalog().surfaces[k];
        let mut s = s.clone();
        let a = analyze(&s).unwrap();
        s.point_flags = a.rational_points.iter().zip(&flags).map(|(id, f)| (id.clone(), *f)).collect();
        let text = to_json_string(&s);
        match load_str(&text).unwrap() {
            Loaded::Surface(t) => prop_assert_eq!(&t, &s),
            Loaded::DegreeNine => prop_assert!(false, "degree nine"),
        }
        if let Ok(v) = match e.mode {
            Mode::Decide => decide(&s),
            Mode::Fibration => decide_fibration(&s),
        } {
            let back: Verdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
            prop_assert_eq!(back, v);
        }
        Ok(())
    })
}
