//! The built-in catalog: one explicit surface per row of the classification
//! tables, the worked examples, and the profiles used for the divisor `D`
//! checks.
//!
//! Each row states the table's `rho_k(S~)` and the verdict the row
//! illustrates. A realizing Galois action is found by searching cyclic and
//! then two-generated subgroups of the symmetry group of the configuration;
//! the result is written as Surface JSON plus an index, `catalog.json`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{
    central_vertex_variant, find_embeddings, format_types, line_count_spectrum, parse_types, surface_type,
    validate_config, AdeType, ProfileJson, SingularityProfile, Variant, LINE_VARIANTS, PRIMED,
};
use crate::divisor::{decompose_special, table_divd, DivDCase};
use crate::error::{Error, Result};
use crate::galois::{
    analyze, configuration_symmetries, decoration_rule, identity, mat_mul, rank_one_with, Decoration, Matrix, Sign,
    SurfaceOverK,
};
use crate::lattice::{lattice_for_degree, DivisorClass};
use crate::linalg;
use crate::oracle::{decide, decide_fibration, decide_input, Answer, OracleInput, Rule};
use crate::surface::{Loaded, SurfaceJson};

/// Which table or example a row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Source {
    /// Rank-one types of degree >= 3 with a rational singular point, with their construction label.
    Table1,
    /// Degree 3 and 4 types without any rational singular point.
    NoRationalPoint,
    /// Degree 1 and 2 types decided by the forcing list or the `(A_{9-2d})''` clause.
    Clause12,
    /// Degree 1 and 2 types decided by a Minus decoration.
    MinusList,
    /// The same types with no Minus decoration among the rational points.
    MinusListConverse,
    /// Worked examples, encoded combinatorially.
    Example,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Decide,
    Fibration,
}

/// Constraint on the rational points of a realizing action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointRule {
    AnyRational,
    NoRational,
    Free,
    /// No rational point is Minus (flags true).
    NoMinus,
    /// The decorations of the rational points, as a multiset.
    Exact(Vec<(AdeType, Sign)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpec {
    pub id: String,
    pub source: Source,
    pub degree: i64,
    /// Type label: `A3(1)`, `(A5)''`, `D4+3A1`, ...
    pub label: String,
    /// Target `rho_k(S~)`; `None` accepts any value.
    pub rho_tilde: Option<usize>,
    pub rule: PointRule,
    /// Required order of a cyclic generator (1 forces the identity).
    pub order: Option<usize>,
    pub mode: Mode,
    pub answer: Answer,
    pub verdict_rule: Rule,
    pub construction_case: Option<u8>,
    /// Reuse the surface of another row instead of searching.
    pub reuse: Option<String>,
}

/// Table rows: `(degree, label, construction label, rho values)`.
pub const TABLE1_ROWS: &[(i64, &str, u8, &[usize])] = &[
    (8, "A1", 9, &[2]),
    (6, "A2+A1", 1, &[4]),
    (6, "A2", 6, &[3]),
    (6, "A1(1)", 1, &[2]),
    (5, "A4", 1, &[5]),
    (4, "D5", 1, &[6]),
    (4, "A3+2A1", 10, &[4, 6]),
    (4, "D4", 6, &[4]),
    (4, "A3+A1", 2, &[5]),
    (4, "A2+2A1", 4, &[3]),
    (4, "4A1", 8, &[4, 5]),
    (4, "A3(1)", 10, &[3, 4]),
    (4, "3A1", 5, &[3]),
    (4, "A2", 4, &[2]),
    (4, "2A1(1)", 8, &[3]),
    (4, "A1", 5, &[2]),
    (3, "E6", 1, &[7]),
    (3, "A5+A1", 2, &[7]),
    (3, "3A2", 2, &[4, 7]),
    (3, "A5", 2, &[6]),
    (3, "2A2+A1", 3, &[4]),
    (3, "D4", 1, &[3]),
    (3, "2A2", 7, &[5]),
    (3, "4A1", 3, &[3]),
    (3, "A2", 2, &[2, 3]),
    (3, "A1", 3, &[2]),
];

pub const NO_RATIONAL_ROWS: &[(i64, &str, &[usize])] = &[
    (4, "4A1", &[2, 3]),
    (4, "2A1(1)", &[2]),
    (3, "3A2", &[2]),
    (3, "2A2", &[3]),
    (3, "4A1", &[2]),
    (3, "3A1", &[2]),
];

pub const CLAUSE12_ROWS: &[(i64, &str, &[usize])] = &[
    (2, "D4", &[3, 4, 5]),
    (2, "D4+A1", &[5, 6]),
    (2, "D4+2A1", &[5, 7]),
    (2, "D4+3A1", &[4, 6, 8]),
    (2, "A6", &[4]),
    (2, "A7", &[5, 8]),
    (2, "D5", &[5]),
    (2, "D5+A1", &[6]),
    (2, "D6", &[7]),
    (2, "D6+A1", &[8]),
    (2, "E6", &[5]),
    (2, "E7", &[8]),
    (1, "A8", &[5, 9]),
    (1, "D6", &[6, 7]),
    (1, "D6+A1", &[8]),
    (1, "D6+2A1", &[7, 9]),
    (1, "D7", &[7]),
    (1, "D8", &[9]),
    (1, "E7", &[8]),
    (1, "E7+A1", &[9]),
    (1, "E8", &[9]),
    (2, "(A5)''", &[4]),
    (1, "(A7)''", &[5]),
];

/// `(degree, label, decorations of the rational points, rho)`.
pub const MINUS_ROWS: &[(i64, &str, &str, usize)] = &[
    (2, "A5+A2", "A5-,A2-", 8),
    (2, "2A3+A1", "A3-,A3-,A1+", 8),
    (2, "2A3", "A3-,A3-", 7),
    (2, "A3+3A1", "A3-,A1+", 6),
    (2, "3A2", "A2-", 5),
    (2, "(A5)'", "A5-", 6),
    (2, "(A3+2A1)''", "A3-", 5),
    (2, "A2+3A1", "A2-", 4),
    (2, "(A3+A1)'", "A3-,A1+", 5),
    (2, "A3", "A3-", 4),
    (2, "A2", "A2-", 3),
    (1, "A7+A1", "A7-,A1+", 9),
    (1, "E6+A2", "E6-,A2-", 9),
    (1, "D5+A3", "D5-,A3-", 9),
    (1, "A5+A2+A1", "A5-,A2-,A1+", 9),
    (1, "2A4", "A4-,A4-", 9),
    (1, "(A7)'", "A7-", 8),
    (1, "D5+2A1", "D5-", 7),
    (1, "A5+A2", "A5-,A2-", 8),
    (1, "E6", "E6-", 7),
    (1, "(A5+A1)'", "A5-,A1+", 7),
    (1, "D5", "D5-", 6),
    (1, "A5", "A5-", 6),
    (1, "A4", "A4-", 5),
];

/// Constant fibrations: identity action on a configuration with `9 - d` roots.
pub const CONSTANT_FIBRATION_TYPES: &[(i64, &str)] = &[
    (1, "2D4"),
    (1, "4A2"),
    (1, "2A3+2A1"),
    (1, "E8"),
    (1, "A8"),
    (1, "2A4"),
    (1, "E6+A2"),
    (1, "A7+A1"),
    (1, "D5+A3"),
    (2, "E7"),
    (2, "A7"),
    (2, "D6+A1"),
    (2, "A5+A2"),
    (2, "2A3+A1"),
    (2, "D4+3A1"),
    (3, "E6"),
    (3, "3A2"),
    (3, "A5+A1"),
    (4, "D5"),
    (4, "A3+2A1"),
    (5, "A4"),
    (6, "A2+A1"),
    (8, "A1"),
];

/// Parses `"A5-,A2-,A1+"`.
pub fn parse_decorations(s: &str) -> Option<Vec<(AdeType, Sign)>> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            let (base, sign) = if let Some(b) = p.strip_suffix("++") {
                (b, Sign::PlusPlus)
            } else if let Some(b) = p.strip_suffix('+') {
                (b, Sign::Plus)
            } else {
                (p.strip_suffix('-')?, Sign::Minus)
            };
            let t = parse_types(base)?;
            (t.len() == 1).then(|| (t[0], sign))
        })
        .collect()
}

/// File-name friendly form of a label.
pub fn slug(label: &str) -> String {
    let mut s = String::new();
    for c in label.chars() {
        match c {
            '+' => s.push('_'),
            '\'' => s.push('p'),
            '(' | ')' => {}
            c => s.push(c),
        }
    }
    s
}

fn expected_low_degree(types: &[AdeType], d: i64) -> Rule {
    let big: &[AdeType] = if d == 2 {
        &crate::oracle::BIG_LIST_DEG2
    } else {
        &crate::oracle::BIG_LIST_DEG1
    };
    if types.iter().any(|t| big.contains(t)) {
        Rule::LowDegBigSingList
    } else {
        Rule::LowDegDoublePrime
    }
}

/// Every catalog row, in a fixed order.
pub fn rows() -> Vec<RowSpec> {
    let base = |id: String, source, degree, label: &str| RowSpec {
        id,
        source,
        degree,
        label: label.to_string(),
        rho_tilde: None,
        rule: PointRule::Free,
        order: None,
        mode: Mode::Decide,
        answer: Answer::ContainsCylinder,
        verdict_rule: Rule::Deg5Plus,
        construction_case: None,
        reuse: None,
    };
    let mut out = Vec::new();
    for &(d, label, case, rhos) in TABLE1_ROWS {
        for &r in rhos {
            let mut row = base(format!("t1-d{d}-{}-rho{r}", slug(label)), Source::Table1, d, label);
            row.rho_tilde = Some(r);
            row.rule = PointRule::AnyRational;
            row.verdict_rule = if d >= 5 { Rule::Deg5Plus } else { Rule::Deg34KRationalNonA1pp };
            row.construction_case = Some(case);
            out.push(row);
        }
    }
    for &(d, label, rhos) in NO_RATIONAL_ROWS {
        for &r in rhos {
            let mut row = base(format!("norat-d{d}-{}-rho{r}", slug(label)), Source::NoRationalPoint, d, label);
            row.rho_tilde = Some(r);
            row.rule = PointRule::NoRational;
            row.answer = Answer::NoCylinder;
            row.verdict_rule = Rule::Deg34None;
            out.push(row);
        }
    }
    for &(d, label, rhos) in CLAUSE12_ROWS {
        let types = resolve_label(d, label).map(|r| r.0).unwrap_or_default();
        for &r in rhos {
            let mut row = base(format!("c12-d{d}-{}-rho{r}", slug(label)), Source::Clause12, d, label);
            row.rho_tilde = Some(r);
            row.verdict_rule = expected_low_degree(&types, d);
            out.push(row);
        }
    }
    for (d, label) in [(2, "(A5)''"), (1, "(A7)''")] {
        let central = AdeType::a((9 - 2 * d) as usize);
        let mut row = base(format!("c12-d{d}-{}-plusplus", slug(label)), Source::Clause12, d, label);
        row.rule = PointRule::Exact(vec![(central, Sign::PlusPlus)]);
        row.answer = Answer::NoCylinder;
        row.verdict_rule = Rule::LowDegDoublePrime;
        out.push(row);
    }
    for &(d, label, decs, r) in MINUS_ROWS {
        let mut row = base(format!("minus-d{d}-{}-rho{r}", slug(label)), Source::MinusList, d, label);
        row.rho_tilde = Some(r);
        row.rule = PointRule::Exact(parse_decorations(decs).expect("static decorations parse"));
        row.verdict_rule = Rule::LowDegMinusDecoration;
        out.push(row);
        let mut row = base(format!("nominus-d{d}-{}", slug(label)), Source::MinusListConverse, d, label);
        row.rule = PointRule::NoMinus;
        row.answer = Answer::NoCylinder;
        row.verdict_rule = Rule::LowDegNone;
        out.push(row);
    }
    // worked examples
    let mut eg1 = base("eg1".into(), Source::Example, 3, "3A1");
    eg1.rho_tilde = Some(2);
    eg1.rule = PointRule::NoRational;
    eg1.answer = Answer::NoCylinder;
    eg1.verdict_rule = Rule::Deg34None;
    out.push(eg1);
    let mut eg2 = base("eg2".into(), Source::Example, 4, "3A1");
    eg2.rho_tilde = Some(3);
    eg2.rule = PointRule::Exact(vec![(AdeType::a(1), Sign::PlusPlus)]);
    eg2.answer = Answer::NoCylinder;
    eg2.verdict_rule = Rule::Deg34None;
    out.push(eg2);
    let mut eg3 = base("eg3-minus".into(), Source::Example, 2, "A5+A2");
    eg3.rho_tilde = Some(8);
    eg3.rule = PointRule::Exact(vec![(AdeType::a(5), Sign::Minus), (AdeType::a(2), Sign::Minus)]);
    eg3.verdict_rule = Rule::LowDegMinusDecoration;
    out.push(eg3);
    for (id, sign) in [("eg3-plus", Sign::Plus), ("eg3-plusplus", Sign::PlusPlus)] {
        let mut row = base(id.into(), Source::Example, 2, "A5+A2");
        row.rule = PointRule::Exact(vec![(AdeType::a(5), Sign::Plus), (AdeType::a(2), sign)]);
        row.answer = Answer::NoCylinder;
        row.verdict_rule = Rule::LowDegNone;
        out.push(row);
    }
    let reuse = |id: &str, from: &str, d: i64, label: &str, answer: Answer, rule: Rule| {
        let mut row = base(id.into(), Source::Example, d, label);
        row.reuse = Some(from.into());
        row.mode = Mode::Fibration;
        row.answer = answer;
        row.verdict_rule = rule;
        row
    };
    out.push(reuse("eg4-rational", "eg2", 4, "3A1", Answer::ContainsCylinder, Rule::Deg34KRationalNonA1pp));
    out.push(reuse("eg4-none", "eg1", 3, "3A1", Answer::NoCylinder, Rule::Deg34None));
    out.push(reuse("eg6-even", "eg3-minus", 2, "A5+A2", Answer::ContainsCylinder, Rule::LowDegMinusDecoration));
    out.push(reuse("eg6-odd", "eg3-plusplus", 2, "A5+A2", Answer::NoCylinder, Rule::LowDegNone));
    for &(d, label) in CONSTANT_FIBRATION_TYPES {
        let types = parse_types(label).expect("static label parses");
        let mut row = base(format!("eg5-d{d}-{}", slug(label)), Source::Example, d, label);
        row.rho_tilde = Some(lattice_for_degree(d).expect("static degree").rank());
        row.order = Some(1);
        row.mode = Mode::Fibration;
        let small = d == 1 && types.iter().all(|t| crate::oracle::SMALL_LIST_DEG1.contains(t));
        row.answer = if small { Answer::NoCylinder } else { Answer::ContainsCylinder };
        row.verdict_rule = match d {
            5.. => Rule::Deg5Plus,
            3 | 4 => Rule::Deg34KRationalNonA1pp,
            _ if small => Rule::LowDegSmallSingOnly,
            _ => {
                let big: &[AdeType] = if d == 2 {
                    &crate::oracle::BIG_LIST_DEG2
                } else {
                    &crate::oracle::BIG_LIST_DEG1
                };
                if types.iter().any(|t| big.contains(t)) {
                    Rule::LowDegBigSingList
                } else {
                    Rule::LowDegMinusDecoration
                }
            }
        };
        out.push(row);
    }
    out
}

/// Singularities of a label and the admissible line counts (empty: any).
pub fn resolve_label(d: i64, label: &str) -> Result<(Vec<AdeType>, Vec<usize>)> {
    let bad = || Error::Hypothesis(format!("cannot resolve type label {label} in degree {d}"));
    let (core, primes) = match label.strip_prefix('(') {
        Some(rest) => {
            let close = rest.find(')').ok_or_else(bad)?;
            let primes = rest[close + 1..].chars().filter(|&c| c == '\'').count();
            (rest[..close].to_string(), Some(primes))
        }
        None => (label.to_string(), None),
    };
    let (core, index) = match core.strip_suffix(')') {
        Some(rest) if primes.is_none() => {
            let open = rest.rfind('(').ok_or_else(bad)?;
            let i: usize = rest[open + 1..].parse().map_err(|_| bad())?;
            (rest[..open].to_string(), Some(i))
        }
        _ => (core, None),
    };
    let types = parse_types(&core).ok_or_else(bad)?;
    let key = format_types(&types);
    let variants = LINE_VARIANTS.iter().find(|(dd, s, _)| *dd == d && *s == key);
    let counts = match (variants, index, primes) {
        (Some((_, _, c)), Some(i), _) if (1..=2).contains(&i) => vec![c[i - 1]],
        (Some((_, _, c)), None, Some(p)) => {
            let one_is_prime = PRIMED
                .iter()
                .find(|(dd, s, _)| *dd == d && *s == key)
                .map(|x| x.2)
                .ok_or_else(bad)?;
            let i = if (p == 1) == one_is_prime { 0 } else { 1 };
            vec![c[i]]
        }
        (Some(_), None, None) => Vec::new(),
        (None, None, _) => Vec::new(),
        _ => return Err(bad()),
    };
    Ok((types, counts))
}

/// One saturated embedding realizing a label.
pub fn witness_profile(d: i64, label: &str) -> Result<SingularityProfile> {
    let form = lattice_for_degree(d)?;
    let (types, counts) = resolve_label(d, label)?;
    let roots = if counts.is_empty() {
        find_embeddings(&form, &types, None, 1).into_iter().next()
    } else {
        line_count_spectrum(&form, &types).remove(&counts[0])
    };
    let roots = roots.ok_or_else(|| Error::Hypothesis(format!("no embedding of {label} in degree {d}")))?;
    let mut p = validate_config(&form, &roots)?;
    p.name = Some(label.to_string());
    Ok(p)
}

/// Precomputed data for the subgroup search.
struct SearchContext<'a> {
    profile: &'a SingularityProfile,
    elements: Vec<Matrix>,
    perms: Vec<Vec<usize>>,
    variants: Vec<Option<Variant>>,
}

fn perm_of(g: &Matrix, profile: &SingularityProfile) -> Vec<usize> {
    let index: HashMap<&DivisorClass, usize> = profile.roots.iter().enumerate().map(|(i, c)| (c, i)).collect();
    profile
        .roots
        .iter()
        .map(|c| index[&crate::lattice::apply(g, c)])
        .collect()
}

fn element_order(g: &Matrix) -> usize {
    let id = identity(g.len());
    let mut p = g.clone();
    let mut k = 1;
    while p != id {
        p = mat_mul(g, &p);
        k += 1;
    }
    k
}

fn orbits_of(n: usize, perms: &[&Vec<usize>]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for p in perms {
            for i in 0..n {
                let (a, b) = (label[i], label[p[i]]);
                if a != b {
                    let m = a.min(b);
                    label[i] = m;
                    label[p[i]] = m;
                    changed = true;
                }
            }
        }
    }
    label
}

/// Flags chosen for a candidate, if it satisfies the row.
fn evaluate(ctx: &SearchContext, gens: &[usize], row: &RowSpec) -> Option<BTreeMap<String, bool>> {
    let profile = ctx.profile;
    let perms: Vec<&Vec<usize>> = gens.iter().map(|&g| &ctx.perms[g]).collect();
    let label = orbits_of(profile.roots.len(), &perms);
    let mut reps: Vec<usize> = label.clone();
    reps.sort();
    reps.dedup();
    let orbit_count = reps.len();
    if let Some(t) = row.rho_tilde {
        if orbit_count + 1 != t {
            return None;
        }
    }
    let mut rational = Vec::new();
    for (k, (pt, comp)) in profile.points.iter().zip(&profile.components).enumerate() {
        if perms.iter().all(|p| comp.iter().all(|&i| comp.contains(&p[i]))) {
            let mut l: Vec<usize> = comp.iter().map(|&i| label[i]).collect();
            l.sort();
            l.dedup();
            rational.push((k, pt.id.clone(), pt.ade, l.len()));
        }
    }
    let decorate = |flags: &[bool]| -> Vec<Decoration> {
        rational
            .iter()
            .zip(flags)
            .map(|((k, _, ade, drop), &f)| Decoration {
                base: *ade,
                sign: decoration_rule(*ade, *drop, f),
                variant: ctx.variants[*k],
            })
            .collect()
    };
    let n = rational.len();
    let mut chosen: Option<Vec<bool>> = None;
    match &row.rule {
        PointRule::NoRational if n > 0 => return None,
        PointRule::AnyRational if n == 0 => return None,
        PointRule::NoMinus => {
            if decorate(&vec![true; n]).iter().any(|x| x.sign == Sign::Minus) {
                return None;
            }
        }
        PointRule::Exact(want) => {
            if want.len() != n {
                return None;
            }
            let mut want: Vec<(AdeType, Sign)> = want.clone();
            want.sort_by_key(|(t, s)| (t.to_string(), *s as u8));
            for mask in 0..(1u32 << n) {
                let flags: Vec<bool> = (0..n).map(|i| mask & (1 << i) == 0).collect();
                let mut got: Vec<(AdeType, Sign)> = decorate(&flags).iter().map(|x| (x.base, x.sign)).collect();
                got.sort_by_key(|(t, s)| (t.to_string(), *s as u8));
                if got == want {
                    chosen = Some(flags);
                    break;
                }
            }
            chosen.as_ref()?;
        }
        _ => {}
    }
    let flags = chosen.unwrap_or_else(|| vec![true; n]);
    let forced: Vec<bool> = if row.mode == Mode::Fibration { vec![true; n] } else { flags.clone() };
    let input = OracleInput {
        degree: profile.degree(),
        geometric: profile.types(),
        rational: decorate(&forced),
        construction_case: None,
    };
    let v = decide_input(&input);
    if v.answer != row.answer || v.rule != row.verdict_rule {
        return None;
    }
    // fixed rank last: it is the expensive part
    let mut rows = Vec::new();
    for &g in gens {
        for (i, r) in ctx.elements[g].iter().enumerate() {
            let mut r = r.clone();
            r[i] -= 1;
            rows.push(r);
        }
    }
    let fixed = profile.form.rank() - linalg::rank_small(&rows);
    if fixed != orbit_count + 1 {
        return None;
    }
    Some(rational.iter().zip(flags).map(|((_, id, _, _), f)| (id.clone(), f)).collect())
}

fn confirm(profile: &SingularityProfile, gens: Vec<Matrix>, flags: BTreeMap<String, bool>, row: &RowSpec) -> Option<SurfaceOverK> {
    let mut s = SurfaceOverK::new(profile.clone(), gens);
    s.point_flags = flags;
    let a = analyze(&s).ok()?;
    if !rank_one_with(&s, &a).ok {
        return None;
    }
    let v = match row.mode {
        Mode::Decide => decide(&s),
        Mode::Fibration => decide_fibration(&s),
    }
    .ok()?;
    (v.answer == row.answer && v.rule == row.verdict_rule).then_some(s)
}

/// Searches the symmetry group of the configuration for an action realizing `row`.
pub fn search_action(profile: &SingularityProfile, row: &RowSpec) -> Result<Option<SurfaceOverK>> {
    let n = profile.form.rank();
    let elements = match row.order {
        Some(1) => vec![identity(n)],
        _ => match configuration_symmetries(profile, 400_000) {
            Ok(e) => e,
            Err(Error::Hypothesis(_)) => vec![identity(n)],
            Err(e) => return Err(e),
        },
    };
    let perms: Vec<Vec<usize>> = elements.iter().map(|g| perm_of(g, profile)).collect();
    let variants = profile
        .points
        .iter()
        .map(|p| central_vertex_variant(profile, p).ok())
        .collect();
    let mut by_order: Vec<(usize, usize)> = elements.iter().enumerate().map(|(i, g)| (element_order(g), i)).collect();
    by_order.sort();
    let ctx = SearchContext {
        profile,
        elements,
        perms,
        variants,
    };
    for &(ord, i) in &by_order {
        if row.order.is_some_and(|o| o != ord) {
            continue;
        }
        if let Some(flags) = evaluate(&ctx, &[i], row) {
            if let Some(s) = confirm(profile, vec![ctx.elements[i].clone()], flags, row) {
                return Ok(Some(s));
            }
        }
    }
    if row.order.is_some() {
        return Ok(None);
    }
    // one representative per cyclic subgroup, then pairs of them
    let index: HashMap<&Matrix, usize> = ctx.elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for &(_, i) in &by_order {
        let g = &ctx.elements[i];
        let mut members = vec![i];
        let mut p = mat_mul(g, g);
        while let Some(&j) = index.get(&p) {
            if j == i {
                break;
            }
            members.push(j);
            p = mat_mul(g, &p);
        }
        members.sort();
        if seen.insert(members) {
            reps.push(i);
        }
    }
    for a in 0..reps.len() {
        for b in a + 1..reps.len() {
            let gens = [reps[a], reps[b]];
            if let Some(flags) = evaluate(&ctx, &gens, row) {
                let mats = gens.iter().map(|&g| ctx.elements[g].clone()).collect();
                if let Some(s) = confirm(profile, mats, flags, row) {
                    return Ok(Some(s));
                }
            }
        }
    }
    Ok(None)
}

/// Index entry of `catalog.json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub file: String,
    pub source: Source,
    pub degree: i64,
    pub label: String,
    /// Line count of the shipped configuration.
    pub num_lines: usize,
    pub rho_tilde: Option<usize>,
    pub mode: Mode,
    pub answer: Answer,
    pub rule: Rule,
    pub construction_case: Option<u8>,
    /// Decorations of the rational points, as computed.
    pub decorations: Vec<String>,
    pub group_order: usize,
}

/// A row the search could not realize.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unrealized {
    pub id: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogIndex {
    pub entries: Vec<CatalogEntry>,
    pub unrealized: Vec<Unrealized>,
    pub divd: Vec<DivDFixture>,
}

/// A profile for one row of the divisor `D` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivDFixture {
    pub id: String,
    /// Row letter `a`..`g`.
    pub case: String,
    pub profile: ProfileJson,
    /// Point ids of the chains `M_{1,*}, M_{2,*}, ...`.
    pub chains: Vec<String>,
    pub num_lines: usize,
    /// `A` or `B` as expected.
    pub expected: String,
    /// Part of the checked set; otherwise reported for information only.
    pub primary: bool,
}

/// `(case, degree, singularities, #lines, chain types, expected condition, primary)`.
pub const DIVD_ROWS: &[(char, i64, &str, usize, &str, char, bool)] = &[
    ('a', 2, "A5+A2", 3, "A5,A2", 'A', true),
    ('a', 2, "2A3", 6, "A3,A3", 'A', true),
    ('a', 2, "A3+A1", 15, "A3,A1", 'B', true),
    ('a', 2, "A3+A1", 16, "A3,A1", 'A', false),
    ('b', 2, "A7", 2, "A7", 'A', true),
    ('b', 2, "A5", 7, "A5", 'B', true),
    ('b', 2, "A5", 8, "A5", 'A', false),
    ('b', 2, "A5+A1", 5, "A5", 'B', true),
    ('b', 2, "A5+A1", 6, "A5", 'A', false),
    ('b', 2, "A5+A2", 3, "A5", 'B', true),
    ('c', 1, "A5+A2+A1", 8, "A5,A2,A1", 'A', true),
    ('c', 1, "2A3+A1", 16, "A3,A3,A1", 'A', true),
    ('d', 1, "A7+A1", 5, "A7,A1", 'A', true),
    ('d', 1, "A5+A2", 12, "A5,A2", 'A', true),
    ('d', 1, "2A4", 6, "A4,A4", 'A', true),
    ('d', 1, "A5+A1", 20, "A5,A1", 'A', false),
    ('d', 1, "A5+A1", 21, "A5,A1", 'B', true),
    ('e', 1, "A8", 3, "A8", 'A', true),
    ('e', 1, "A7", 7, "A7", 'A', false),
    ('e', 1, "A7", 8, "A7", 'B', true),
    ('f', 1, "D5+A3", 5, "D5,A3", 'A', true),
    ('g', 1, "E6+A2", 4, "E6,A2", 'A', true),
];

/// Assigns point ids to a comma-separated list of chain types, in order.
pub fn chain_ids(profile: &SingularityProfile, chains: &str) -> Result<Vec<String>> {
    let mut used: Vec<String> = Vec::new();
    for t in chains.split(',') {
        let ade = parse_types(t).and_then(|v| v.first().copied()).ok_or_else(|| Error::Hypothesis(format!("bad chain {t}")))?;
        let p = profile
            .points
            .iter()
            .find(|p| p.ade == ade && !used.contains(&p.id))
            .ok_or_else(|| Error::Hypothesis(format!("no free {t} point")))?;
        used.push(p.id.clone());
    }
    Ok(used)
}

pub fn divd_fixture(row: &(char, i64, &str, usize, &str, char, bool)) -> Result<DivDFixture> {
    let &(case, d, types, lines, chains, expected, primary) = row;
    let form = lattice_for_degree(d)?;
    let ts = parse_types(types).ok_or_else(|| Error::Hypothesis(types.into()))?;
    let roots = line_count_spectrum(&form, &ts)
        .remove(&lines)
        .ok_or_else(|| Error::Hypothesis(format!("{types} with {lines} lines not found")))?;
    let mut profile = validate_config(&form, &roots)?;
    profile.name = Some(format!("{types} ({lines} lines)"));
    let ids = chain_ids(&profile, chains)?;
    Ok(DivDFixture {
        id: format!("divd-{case}-d{d}-{}-{lines}", slug(types)),
        case: case.to_string(),
        profile: ProfileJson::from(&profile),
        chains: ids,
        num_lines: lines,
        expected: expected.to_string(),
        primary,
    })
}

/// Result of re-checking one divisor `D` fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivDCheck {
    pub id: String,
    pub checks_pass: bool,
    pub condition: Option<char>,
    pub expected: char,
    pub consistent: bool,
    pub error: Option<String>,
}

impl DivDCheck {
    pub fn ok(&self) -> bool {
        self.checks_pass && self.condition == Some(self.expected) && self.consistent
    }
}

pub fn check_divd(f: &DivDFixture) -> DivDCheck {
    let expected = f.expected.chars().next().unwrap_or('?');
    let mut out = DivDCheck {
        id: f.id.clone(),
        checks_pass: false,
        condition: None,
        expected,
        consistent: false,
        error: None,
    };
    let run = || -> Result<(bool, char, bool)> {
        let profile = f.profile.validate()?;
        let case = DivDCase::parse(&f.case).ok_or_else(|| Error::Hypothesis(format!("case {}", f.case)))?;
        let ids: Vec<&str> = f.chains.iter().map(|s| s.as_str()).collect();
        let divd = table_divd(case, &profile, &ids)?;
        let dec = decompose_special(&divd, &profile)?;
        Ok((divd.checks_pass(), dec.condition.letter(), dec.consistent()))
    };
    match run() {
        Ok((c, l, k)) => {
            out.checks_pass = c;
            out.condition = Some(l);
            out.consistent = k;
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("plain data serializes");
    std::fs::write(path, text + "\n").map_err(|e| Error::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn entry_for(row: &RowSpec, file: &str, s: &SurfaceOverK) -> Result<CatalogEntry> {
    let a = analyze(s)?;
    let decorations = crate::galois::decorations(s, &a)?
        .values()
        .map(|d| d.to_string())
        .collect();
    Ok(CatalogEntry {
        id: row.id.clone(),
        file: file.to_string(),
        source: row.source,
        degree: row.degree,
        label: row.label.clone(),
        num_lines: surface_type(&s.profile).num_lines,
        rho_tilde: row.rho_tilde,
        mode: row.mode,
        answer: row.answer,
        rule: row.verdict_rule,
        construction_case: row.construction_case,
        decorations,
        group_order: a.group_order,
    })
}

/// Regenerates every fixture under `dir`; `progress` receives one line per row.
pub fn generate(dir: &Path, progress: &mut dyn FnMut(&str)) -> Result<CatalogIndex> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Input {
        path: dir.display().to_string(),
        message: e.to_string(),
    })?;
    let mut index = CatalogIndex::default();
    let mut profiles: BTreeMap<(i64, String), SingularityProfile> = BTreeMap::new();
    let mut surfaces: BTreeMap<String, (String, SurfaceOverK)> = BTreeMap::new();
    for row in rows() {
        if let Some(from) = &row.reuse {
            let Some((file, s)) = surfaces.get(from).cloned() else {
                index.unrealized.push(Unrealized {
                    id: row.id.clone(),
                    reason: format!("source row {from} was not realized"),
                });
                continue;
            };
            index.entries.push(entry_for(&row, &file, &s)?);
            progress(&format!("{}: reuses {file}", row.id));
            continue;
        }
        let key = (row.degree, row.label.clone());
        let profile = match profiles.get(&key) {
            Some(p) => p.clone(),
            None => match witness_profile(row.degree, &row.label) {
                Ok(p) => {
                    profiles.insert(key, p.clone());
                    p
                }
                Err(e) => {
                    progress(&format!("{}: {e}", row.id));
                    index.unrealized.push(Unrealized {
                        id: row.id.clone(),
                        reason: e.to_string(),
                    });
                    continue;
                }
            },
        };
        match search_action(&profile, &row)? {
            Some(mut s) => {
                s.profile.name = Some(format!("{} (degree {})", row.label, row.degree));
                let file = format!("{}.json", row.id);
                write_json(&dir.join(&file), &SurfaceJson::from(&s))?;
                let entry = entry_for(&row, &file, &s)?;
                progress(&format!(
                    "{}: group order {}, decorations [{}]",
                    row.id,
                    entry.group_order,
                    entry.decorations.join(", ")
                ));
                index.entries.push(entry);
                surfaces.insert(row.id.clone(), (file, s));
            }
            None => {
                progress(&format!("{}: no realizing action found", row.id));
                index.unrealized.push(Unrealized {
                    id: row.id.clone(),
                    reason: "no cyclic or two-generated subgroup of the configuration symmetries realizes the row"
                        .into(),
                });
            }
        }
    }
    for r in DIVD_ROWS {
        let f = divd_fixture(r)?;
        progress(&format!("{}: divisor D profile", f.id));
        index.divd.push(f);
    }
    write_json(&dir.join("catalog.json"), &index)?;
    Ok(index)
}

/// Reads `catalog.json` from a fixtures directory.
pub fn load_index(dir: &Path) -> Result<CatalogIndex> {
    let path = dir.join("catalog.json");
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Loads the surface of an entry.
pub fn load_entry(dir: &Path, e: &CatalogEntry) -> Result<SurfaceOverK> {
    match crate::surface::load_file(&dir.join(&e.file))? {
        Loaded::Surface(s) => Ok(s),
        Loaded::DegreeNine => Err(Error::Hypothesis(format!("{} is a degree nine file", e.file))),
    }
}

/// Result of re-checking one catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryCheck {
    pub id: String,
    pub rho_tilde: Option<usize>,
    pub rho_tilde_expected: Option<usize>,
    pub rho: Option<i64>,
    pub answer: Option<Answer>,
    pub rule: Option<Rule>,
    pub construction_case: Option<u8>,
    pub ok: bool,
    pub error: Option<String>,
}

/// Recomputes rho and the verdict of an entry against the static row table.
pub fn check_entry(dir: &Path, e: &CatalogEntry) -> EntryCheck {
    let spec = rows().into_iter().find(|r| r.id == e.id);
    let mut out = EntryCheck {
        id: e.id.clone(),
        rho_tilde: None,
        rho_tilde_expected: spec.as_ref().and_then(|r| r.rho_tilde),
        rho: None,
        answer: None,
        rule: None,
        construction_case: None,
        ok: false,
        error: None,
    };
    let Some(spec) = spec else {
        out.error = Some("entry has no row in the built-in table".into());
        return out;
    };
    let run = || -> Result<_> {
        let s = load_entry(dir, e)?;
        let a = analyze(&s)?;
        let v = match spec.mode {
            Mode::Decide => decide(&s)?,
            Mode::Fibration => decide_fibration(&s)?,
        };
        Ok((a.fixed_rank, a.rho(), v))
    };
    match run() {
        Ok((rt, rho, v)) => {
            out.rho_tilde = Some(rt);
            out.rho = Some(rho);
            let case_ok = spec.source != Source::Table1 || v.construction_case == spec.construction_case;
            out.ok = spec.rho_tilde.is_none_or(|t| t == rt)
                && rho == 1
                && v.answer == spec.answer
                && v.rule == spec.verdict_rule
                && case_ok;
            out.answer = Some(v.answer);
            out.rule = Some(v.rule);
            out.construction_case = v.construction_case;
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}
