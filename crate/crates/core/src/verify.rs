//! Verification report: reproduces the tabulated closed forms, sweeps the
//! completed-square identities and integral bounds, re-derives the divisor
//! `D` rows and their decompositions, checks the inequality witnesses and
//! re-checks every shipped catalog entry.
//!
//! Printed values that disagree with the Gram matrix are reported with
//! status `misprint`: the printed value was evaluated and fails in the
//! documented way. A misprint check that unexpectedly holds is a failure.

use std::path::PathBuf;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, check_divd, check_entry, DivDFixture};
use crate::config::{find_embeddings, AdeType, SingularityProfile};
use crate::divisor::{
    self, anticanonical_line, boundary_cycle_witness, closed_form_chain, closed_form_symmetric, completed_square_sweep,
    corti_evaluate, corti_search, corti_special, d5_family_witness, de_plus_family, decompose_special, delta,
    local_pairings, local_self_pairing, local_self_pairing_int, pencil_degeneration, point_combination,
    solve_local, solve_prescribed_pairings, table_divd, ClosedForm, DePlusPosition, DivDCase, LinePattern,
    PrescribedPairing, CORTI_EXCLUDED, CORTI_TABLE, D5_FORMS, E6_DELTA12_MISPRINT, E6_FORMS,
};
use crate::error::{Error, Result};
use crate::lattice::{lattice_for_degree, DivisorClass};
use crate::linalg::{q, qf, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A printed value fails exactly as documented; not a failure.
    Misprint,
    /// Logged for reference; never a failure.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub scope: String,
    pub id: String,
    pub status: Status,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub misprint: usize,
    pub info: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scope: String,
    pub summary: Summary,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

pub const SCOPES: [&str; 11] = [
    "A-1", "D-1", "E-1", "ADE-1", "ADE-(-1)", "divD", "ADE-prop", "Corti", "DE+", "pencil", "catalog",
];

#[derive(Clone, Debug)]
pub struct Options {
    /// Directory holding `catalog.json`; without it the divisor `D`
    /// profiles are searched afresh and the catalog scope fails.
    pub fixtures: Option<PathBuf>,
    /// Largest denominator tried by the bounded witness search.
    pub denominator_bound: u32,
    /// Box radius of the completed-square sweeps.
    pub sweep_radius: i64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            fixtures: None,
            denominator_bound: 8,
            sweep_radius: 5,
        }
    }
}

/// Printed values of `(M)^2` for targets `delta_{j0}` on `A_n`, row `n`, column `j0`.
pub const CHAIN_SELF_PAIRING_TABLE: [&[(i64, i64)]; 8] = [
    &[(-1, 2)],
    &[(-2, 3), (-2, 3)],
    &[(-3, 4), (-1, 1), (-3, 4)],
    &[(-4, 5), (-6, 5), (-6, 5), (-4, 5)],
    &[(-5, 6), (-4, 3), (-3, 2), (-4, 3), (-5, 6)],
    &[(-6, 7), (-10, 7), (-12, 7), (-12, 7), (-10, 7), (-6, 7)],
    &[(-7, 8), (-3, 2), (-15, 8), (-2, 1), (-15, 8), (-3, 2), (-7, 8)],
    &[(-8, 9), (-14, 9), (-2, 1), (-20, 9), (-20, 9), (-2, 1), (-14, 9), (-8, 9)],
];

/// `(d, gamma, degenerate)` for the values met in the base-point argument.
pub const PENCIL_CASES: [(i64, i64, bool); 8] = [
    (2, 2, true),
    (1, 4, true),
    (1, 1, true),
    (2, 4, false),
    (2, 6, false),
    (1, 2, false),
    (1, 6, false),
    (1, 8, false),
];

pub const D5_FAMILY_POINTS: [(i64, i64); 5] = [(1, 1), (5, 4), (3, 2), (7, 4), (2, 1)];

struct Log {
    scope: &'static str,
    checks: Vec<Check>,
}

impl Log {
    fn new(scope: &'static str) -> Self {
        Log { scope, checks: Vec::new() }
    }

    fn push(&mut self, id: impl Into<String>, status: Status, detail: Value) {
        self.checks.push(Check {
            scope: self.scope.to_string(),
            id: id.into(),
            status,
            detail,
            counterexample: None,
        });
    }

    fn fail_with(&mut self, id: impl Into<String>, detail: Value, counterexample: Value) {
        self.push(id, Status::Fail, detail);
        self.checks.last_mut().expect("just pushed").counterexample = Some(counterexample);
    }

    fn check(&mut self, id: impl Into<String>, ok: bool, detail: Value) {
        self.push(id, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    fn error(&mut self, id: impl Into<String>, e: &Error) {
        self.push(id, Status::Fail, json!({ "error": e.to_string() }));
    }
}

fn qs(x: &Q) -> String {
    x.to_string()
}

fn qv(v: &[Q]) -> Vec<String> {
    v.iter().map(qs).collect()
}

/// One configuration of a single point of type `ade` on the given degree.
fn single_point_profile(d: i64, ade: AdeType) -> Result<SingularityProfile> {
    let form = lattice_for_degree(d)?;
    let roots = find_embeddings(&form, &[ade], None, 1)
        .pop()
        .ok_or_else(|| Error::Hypothesis(format!("no {ade} configuration on degree {d}")))?;
    crate::config::validate_config(&form, &roots)
}

/// Global solve on a witness profile; checks the targets and returns the
/// local coefficients and the self-pairing.
fn global_solve(profile: &SingularityProfile, targets: &[Q]) -> Result<(Vec<Q>, Q)> {
    let pt = profile.points[0].clone();
    let m = solve_prescribed_pairings(profile, &PrescribedPairing { point: pt.clone(), targets: targets.to_vec() })?;
    let form = &profile.form;
    for (j, &i) in pt.ordered.iter().enumerate() {
        let p = -form.pair(&m, &profile.roots[i].to_q())?;
        if p != targets[j] {
            return Err(Error::Hypothesis(format!("global solution misses target {j}")));
        }
    }
    let self_pairing = form.self_pair(&m)?;
    // coordinates of m on the components, recovered from the local solve
    let local = solve_local(pt.ade, targets)?;
    let terms: Vec<(Q, &DivisorClass)> = local.iter().cloned().zip(pt.ordered.iter().map(|&i| &profile.roots[i])).collect();
    if crate::lattice::QDivisor::combination(form.rank(), &terms) != m {
        return Err(Error::Hypothesis("global and local solutions differ".into()));
    }
    Ok((local, self_pairing))
}

fn scope_a1() -> Result<Vec<Check>> {
    let mut log = Log::new("A-1");
    for (row, entries) in CHAIN_SELF_PAIRING_TABLE.iter().enumerate() {
        let n = row + 1;
        for (col, &(a, b)) in entries.iter().enumerate() {
            let j0 = col + 1;
            let (_, m2) = closed_form_chain(n, j0)?;
            let printed = qf(a, b);
            log.check(
                format!("table n={n} j0={j0}"),
                m2 == printed,
                json!({ "printed": qs(&printed), "closed_form": qs(&m2) }),
            );
        }
    }
    for n in 1..=8usize {
        let profile = single_point_profile(1, AdeType::a(n))?;
        for j0 in 1..=n {
            let targets = delta(n, &[j0]);
            let (c, m2) = closed_form_chain(n, j0)?;
            match global_solve(&profile, &targets) {
                Ok((sc, s2)) => log.check(
                    format!("solver n={n} j0={j0}"),
                    sc == c && s2 == m2,
                    json!({ "coefficients": qv(&sc), "self_pairing": qs(&s2) }),
                ),
                Err(e) => log.error(format!("solver n={n} j0={j0}"), &e),
            }
        }
        for j0 in 1..=n.div_ceil(2) {
            let targets = delta(n, &[j0, n - j0 + 1]);
            let (c, m2) = closed_form_symmetric(n, j0)?;
            match global_solve(&profile, &targets) {
                Ok((sc, s2)) => log.check(
                    format!("symmetric n={n} j0={j0}"),
                    sc == c && s2 == m2,
                    json!({ "coefficients": qv(&sc), "self_pairing": qs(&s2) }),
                ),
                Err(e) => log.error(format!("symmetric n={n} j0={j0}"), &e),
            }
        }
    }
    Ok(log.checks)
}

fn fork_scope(scope: &'static str, forms: &[ClosedForm]) -> Result<Log> {
    let mut log = Log::new(scope);
    let ade = forms[0].ade;
    let profile = single_point_profile(1, ade)?;
    for f in forms {
        let id = format!("{ade} targets {:?}", f.targets);
        let targets = delta(ade.n, f.targets);
        match global_solve(&profile, &targets) {
            Ok((c, m2)) => log.check(
                id,
                c == f.coefficients() && m2 == qf(f.self_pairing.0, f.self_pairing.1),
                json!({ "coefficients": qv(&c), "self_pairing": qs(&m2) }),
            ),
            Err(e) => log.error(id, &e),
        }
    }
    Ok(log)
}

fn scope_e1() -> Result<Vec<Check>> {
    let mut log = fork_scope("E-1", E6_FORMS)?;
    let c: Vec<Q> = E6_DELTA12_MISPRINT.iter().map(|&x| q(x)).collect();
    let pairings = local_pairings(AdeType::e(6), &c);
    let square = local_self_pairing(AdeType::e(6), &c);
    let misses = pairings != delta(6, &[1, 2]);
    log.push(
        "E6 targets [1, 2] printed last coefficient 1",
        if misses { Status::Misprint } else { Status::Fail },
        json!({ "coefficients": E6_DELTA12_MISPRINT, "pairings": qv(&pairings), "self_pairing": qs(&square) }),
    );
    Ok(log.checks)
}

/// Calls `f` on every integer vector in the box `lo..=hi`; stops early when `f` returns false.
fn for_each_vec(lo: &[i64], hi: &[i64], f: &mut dyn FnMut(&[i64]) -> bool) {
    let n = lo.len();
    let mut b = lo.to_vec();
    loop {
        if !f(&b) {
            return;
        }
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            if b[k] < hi[k] {
                b[k] += 1;
                break;
            }
            b[k] = lo[k];
            k += 1;
        }
    }
}

/// Completed-square sweeps, run on scoped threads.
pub fn completed_square_sweeps(radius: i64) -> Vec<(AdeType, std::result::Result<u64, Vec<i64>>)> {
    let mut types: Vec<AdeType> = (1..=8).map(AdeType::a).collect();
    types.push(AdeType::d(5));
    types.push(AdeType::e(6));
    std::thread::scope(|s| {
        let handles: Vec<_> = types
            .iter()
            .map(|&t| s.spawn(move || (t, completed_square_sweep(t, radius))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep thread")).collect()
    })
}

fn bound_floor(ade: AdeType, case: u8) -> Vec<i64> {
    let n = ade.n;
    match case {
        2 => vec![1; n],
        3 => {
            let mut v = vec![2; n];
            v[0] = 1;
            v[n - 1] = 1;
            v
        }
        4 => {
            let mut v = vec![3; n];
            v[0] = 1;
            v[n - 1] = 1;
            v[1] = 2;
            v[n - 2] = 2;
            v
        }
        5 => vec![2, 2, 3, 2, 1],
        _ => vec![2, 2, 3, 3, 4, 2],
    }
}

fn scope_ade1(opts: &Options) -> Result<Vec<Check>> {
    let mut log = Log::new("ADE-1");
    let r = opts.sweep_radius;
    for (t, res) in completed_square_sweeps(r) {
        let id = format!("completed square {t} on [-{r},{r}]^{}", t.n);
        match res {
            Ok(count) => log.check(id, true, json!({ "vectors": count })),
            Err(b) => log.fail_with(id, json!({ "radius": r }), json!({ "b": b })),
        }
    }
    // the printed E6 square with (2 b_1 - b_2) as first term
    let e6 = AdeType::e(6);
    let mut witness = None;
    for_each_vec(&[-1; 6], &[1; 6], &mut |b| {
        if divisor::e6_completed_square_misprint(b) != q(local_self_pairing_int(e6, b)) {
            witness = Some(b.to_vec());
            return false;
        }
        true
    });
    match witness {
        Some(b) => log.push(
            "E6 completed square with first term (2b1 - b2)",
            Status::Misprint,
            json!({ "b": b, "printed": qs(&divisor::e6_completed_square_misprint(&b)), "gram": local_self_pairing_int(e6, &b) }),
        ),
        None => log.push("E6 completed square with first term (2b1 - b2)", Status::Fail, json!({ "note": "printed form agrees on [-1,1]^6" })),
    }
    // parity and negativity
    let mut parity_types: Vec<AdeType> = (1..=8).map(AdeType::a).collect();
    parity_types.extend([AdeType::d(5), AdeType::e(6)]);
    for t in parity_types {
        let mut bad = None;
        let mut count = 0u64;
        for_each_vec(&vec![-2; t.n], &vec![2; t.n], &mut |b| {
            count += 1;
            match divisor::ade1_checks(t, b, 1) {
                Ok(rep) if rep.holds() => true,
                _ => {
                    bad = Some(b.to_vec());
                    false
                }
            }
        });
        let id = format!("case 1 {t} on [-2,2]^{}", t.n);
        match bad {
            None => log.check(id, true, json!({ "vectors": count })),
            Some(b) => log.fail_with(id, json!({}), json!({ "b": b })),
        }
    }
    // lower-bound cases on floor + [0,2]^n
    let mut cases: Vec<(u8, AdeType)> = Vec::new();
    for n in 1..=8 {
        cases.push((2, AdeType::a(n)));
        if n >= 3 {
            cases.push((3, AdeType::a(n)));
        }
        if n >= 5 {
            cases.push((4, AdeType::a(n)));
        }
    }
    cases.extend([(5, AdeType::d(5)), (6, AdeType::e(6))]);
    for (case, t) in cases {
        let floor = bound_floor(t, case);
        let top: Vec<i64> = floor.iter().map(|x| x + 2).collect();
        let mut bad = None;
        let mut count = 0u64;
        let mut bound = 0;
        for_each_vec(&floor, &top, &mut |b| {
            count += 1;
            match divisor::ade1_checks(t, b, case) {
                Ok(rep) if rep.holds() => {
                    bound = rep.bound;
                    true
                }
                _ => {
                    bad = Some(b.to_vec());
                    false
                }
            }
        });
        let id = format!("case {case} {t} above {floor:?}");
        match bad {
            None => log.check(id, true, json!({ "vectors": count, "bound": bound })),
            Some(b) => log.fail_with(id, json!({}), json!({ "b": b })),
        }
    }
    Ok(log.checks)
}

fn scope_ade_minus1() -> Result<Vec<Check>> {
    let mut log = Log::new("ADE-(-1)");
    let mut cases: Vec<(AdeType, LinePattern, Vec<i64>)> = (1..=8)
        .map(|n| {
            let mut e = vec![0; n];
            e[0] += 1;
            e[n - 1] += 1;
            (AdeType::a(n), LinePattern::Chain, e)
        })
        .collect();
    cases.push((AdeType::d(5), LinePattern::ForkD5, vec![0, 0, 0, 1, 0]));
    cases.push((AdeType::e(6), LinePattern::ForkE6, vec![0, 0, 0, 0, 0, 1]));
    for (t, pattern, expected) in cases {
        let id = format!("{t} E = -K - M");
        let profile = single_point_profile(1, t)?;
        match anticanonical_line(&profile, &profile.points[0].id, pattern, &[]) {
            Ok(line) => log.check(id, line.pairings == expected, json!({ "class": line.class, "pairings": line.pairings })),
            Err(e) => log.error(id, &e),
        }
        if t.family != crate::config::Family::A {
            let printed = {
                let mut v = vec![0; t.n];
                v[0] = 1;
                v[1] = 1;
                v
            };
            let differs = printed != expected;
            log.push(
                format!("{t} printed pairing pattern delta_1 + delta_2"),
                if differs { Status::Misprint } else { Status::Fail },
                json!({ "printed": printed, "computed": expected }),
            );
        }
    }
    Ok(log.checks)
}

/// Divisor `D` profiles from the fixtures, or searched afresh.
fn divd_fixtures(opts: &Options) -> Result<Vec<DivDFixture>> {
    if let Some(dir) = &opts.fixtures {
        let idx = catalog::load_index(dir)?;
        if !idx.divd.is_empty() {
            return Ok(idx.divd);
        }
    }
    catalog::DIVD_ROWS.iter().map(catalog::divd_fixture).collect()
}

fn divd_misprints(log: &mut Log, fixtures: &[DivDFixture]) -> Result<()> {
    // row (e) with weights 1 on the outer ends and 2 on the inner ends
    if let Some(f) = fixtures.iter().find(|f| f.case == "e" && f.profile.roots.len() == 7) {
        let profile = f.profile.validate()?;
        let pt = profile.point(&f.chains[0])?;
        let n = pt.ade.n;
        let mut b = vec![-3; n];
        b[0] += 1;
        b[n - 1] += 1;
        b[1] += 2;
        b[n - 2] += 2;
        let form = &profile.form;
        let mk = form.anticanonical();
        let d = &mk.scale(2) + &point_combination(&profile, pt, &b);
        let sq = form.dot(&d, &d);
        log.push(
            "(e) printed end weights on A7",
            if sq != -2 { Status::Misprint } else { Status::Fail },
            json!({ "self_pairing": sq, "anticanonical_degree": form.dot(&d, &mk) }),
        );
    }
    // row (g) with the printed E6 vector
    if let Some(f) = fixtures.iter().find(|f| f.case == "g") {
        let profile = f.profile.validate()?;
        let e6 = profile.point(&f.chains[0])?;
        let a2 = profile.point(&f.chains[1])?;
        let form = &profile.form;
        let mk = form.anticanonical();
        let d = &(&mk.scale(2) - &point_combination(&profile, e6, &E6_DELTA12_MISPRINT))
            - &point_combination(&profile, a2, &vec![1; a2.ade.n]);
        let sq = form.dot(&d, &d);
        log.push(
            "(g) printed E6 vector",
            if sq != -2 { Status::Misprint } else { Status::Fail },
            json!({ "self_pairing": sq }),
        );
    }
    Ok(())
}

fn scope_divd(opts: &Options) -> Result<Vec<Check>> {
    let mut log = Log::new("divD");
    let fixtures = divd_fixtures(opts)?;
    for f in &fixtures {
        let c = check_divd(f);
        let detail = serde_json::to_value(&c).expect("plain data");
        let status = match (f.primary, c.ok()) {
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
            (false, _) => Status::Info,
        };
        log.push(f.id.clone(), status, detail);
    }
    for case in DivDCase::ALL {
        let covered = fixtures.iter().any(|f| f.primary && f.case.starts_with(case.letter()));
        log.check(format!("row {case} has a checked profile"), covered, json!({}));
    }
    divd_misprints(&mut log, &fixtures)?;
    Ok(log.checks)
}

fn scope_ade_prop(opts: &Options) -> Result<Vec<Check>> {
    let mut log = Log::new("ADE-prop");
    for f in divd_fixtures(opts)? {
        let run = || -> Result<Value> {
            let profile = f.profile.validate()?;
            let case = DivDCase::parse(&f.case).ok_or_else(|| Error::Hypothesis(format!("case {}", f.case)))?;
            let ids: Vec<&str> = f.chains.iter().map(|s| s.as_str()).collect();
            let divd = table_divd(case, &profile, &ids)?;
            let dec = decompose_special(&divd, &profile)?;
            Ok(json!({
                "condition": dec.condition.letter().to_string(),
                "components": dec.condition.components(),
                "remainder": dec.remainder,
                "lengths": dec.lengths,
                "a_solutions": dec.a_solutions,
                "b_solutions": dec.b_solutions,
                "components_in_span": dec.components_in_span,
                "admissible": dec.admissible,
                "consistent": dec.consistent(),
            }))
        };
        match run() {
            Ok(v) => {
                let ok = v["consistent"].as_bool() == Some(true);
                log.check(f.id.clone(), ok, v);
            }
            Err(e) => log.error(f.id.clone(), &e),
        }
    }
    Ok(log.checks)
}

fn scope_corti(opts: &Options) -> Result<Vec<Check>> {
    let mut log = Log::new("Corti");
    for row in CORTI_TABLE {
        let id = format!("d={} {}", row.d, row.label);
        let p = row.params();
        let derived_ok = row.derived() == (row.alpha, row.beta, row.gamma);
        let special = corti_special(row.d, &p.alpha, &p.gamma);
        let analytic_ok = special && {
            let (u, v) = divisor::analytic_witness(&p);
            corti_evaluate(&p, &u, &v)
        };
        let quoted_ok = row.witness.map(|(u, v)| corti_evaluate(&p, &q(u), &q(v)));
        let ok = derived_ok && (analytic_ok || quoted_ok == Some(true)) && quoted_ok != Some(false);
        log.check(
            id,
            ok,
            json!({
                "alpha": row.alpha, "beta": row.beta, "gamma": row.gamma,
                "derived_from_gram": derived_ok,
                "special_system": special,
                "quoted_witness": row.witness,
                "quoted_witness_passes": quoted_ok,
            }),
        );
    }
    for row in CORTI_EXCLUDED {
        let p = row.params();
        let found = corti_search(&p, opts.denominator_bound);
        log.push(
            format!("d={} {} (not tabulated)", row.d, row.label),
            Status::Info,
            json!({
                "alpha": row.alpha, "beta": row.beta, "gamma": row.gamma,
                "denominator_bound": opts.denominator_bound,
                "witness": found.map(|(u, v)| [qs(&u), qs(&v)]),
                "note": "bounded search; an empty result is not a proof",
            }),
        );
    }
    for (a, b) in D5_FAMILY_POINTS {
        let t = qf(a, b);
        let (p, u, v) = d5_family_witness(&t);
        log.check(
            format!("D5+ family at t = {t}"),
            corti_evaluate(&p, &u, &v),
            json!({ "beta": qs(&p.beta), "gamma": qs(&p.gamma), "u": qs(&u), "v": qs(&v) }),
        );
    }
    Ok(log.checks)
}

fn scope_de_plus() -> Result<Vec<Check>> {
    let mut log = Log::new("DE+");
    for pos in DePlusPosition::ALL {
        let (lo, hi) = pos.range();
        let mut t = lo.clone();
        let step = qf(1, 12);
        let mut bad = None;
        let mut count = 0;
        while t <= hi {
            let r = de_plus_family(pos, &t)?;
            count += 1;
            if !r.agrees() {
                bad = Some(json!({ "t": qs(&t), "gram": qs(&r.gamma), "polynomial": qs(&r.gamma_polynomial) }));
                break;
            }
            t += &step;
        }
        let id = format!("{pos:?} gamma(t) on [{lo}, {hi}]");
        match bad {
            None => log.check(id, true, json!({ "points": count, "step": "1/12" })),
            Some(c) => log.fail_with(id, json!({}), c),
        }
        let outside = de_plus_family(pos, &(&hi + &step)).is_err();
        log.check(format!("{pos:?} rejects t above range"), outside, json!({}));
    }
    Ok(log.checks)
}

fn scope_pencil() -> Result<Vec<Check>> {
    let mut log = Log::new("pencil");
    for (d, g, expected) in PENCIL_CASES {
        let got = pencil_degeneration(d, &q(g));
        log.check(format!("d={d} gamma={g}"), got == expected, json!({ "degenerate": got, "expected": expected }));
    }
    let cases = [(2, AdeType::a(1)), (2, AdeType::a(3)), (1, AdeType::a(3)), (1, AdeType::a(5)), (1, AdeType::d(5))];
    for (d, t) in cases {
        let id = format!("boundary cycle d={d} {t}");
        let profile = single_point_profile(d, t)?;
        match boundary_cycle_witness(&profile, &profile.points[0].id) {
            Ok(c) => {
                log.check(
                    id.clone(),
                    c.is_cycle,
                    json!({
                        "class": c.class,
                        "pairings": c.pairings,
                        "self_pairing": c.self_pairing,
                        "anticanonical_degree": c.anticanonical_degree,
                        "cycle": c.cycle.render(),
                    }),
                );
                if let Some(p) = &c.pencil {
                    let ok = p.orthogonal && p.self_pairing.is_zero();
                    // on D5 the pencil member meets C once; recorded as a conflict
                    let status = match (ok, t.family) {
                        (true, _) => Status::Pass,
                        (false, crate::config::Family::D) => Status::Misprint,
                        (false, _) => Status::Fail,
                    };
                    log.push(format!("{id} pencil"), status, serde_json::to_value(p).expect("plain data"));
                }
            }
            Err(e) => log.error(id, &e),
        }
    }
    Ok(log.checks)
}

fn scope_catalog(opts: &Options) -> Result<Vec<Check>> {
    let mut log = Log::new("catalog");
    let Some(dir) = &opts.fixtures else {
        log.push("fixtures", Status::Fail, json!({ "error": "no fixtures directory" }));
        return Ok(log.checks);
    };
    let idx = catalog::load_index(dir)?;
    for e in &idx.entries {
        let c = check_entry(dir, e);
        log.check(e.id.clone(), c.ok, serde_json::to_value(&c).expect("plain data"));
    }
    for u in &idx.unrealized {
        log.push(u.id.clone(), Status::Info, json!({ "unrealized": u.reason }));
    }
    Ok(log.checks)
}

fn run_one(scope: &str, opts: &Options) -> Result<Vec<Check>> {
    match scope {
        "A-1" => scope_a1(),
        "D-1" => Ok(fork_scope("D-1", D5_FORMS)?.checks),
        "E-1" => scope_e1(),
        "ADE-1" => scope_ade1(opts),
        "ADE-(-1)" => scope_ade_minus1(),
        "divD" => scope_divd(opts),
        "ADE-prop" => scope_ade_prop(opts),
        "Corti" => scope_corti(opts),
        "DE+" => scope_de_plus(),
        "pencil" => scope_pencil(),
        "catalog" => scope_catalog(opts),
        other => Err(Error::Input {
            path: "scope".into(),
            message: format!("unknown scope {other}; expected all or one of {}", SCOPES.join(", ")),
        }),
    }
}

/// Runs `all` or one scope. An unknown scope is an input error; a check
/// that cannot even be set up is reported as a failed check.
pub fn run(scope: &str, opts: &Options) -> Result<Report> {
    let scopes: Vec<&str> = if scope == "all" { SCOPES.to_vec() } else { vec![scope] };
    if let Some(bad) = scopes.iter().find(|s| !SCOPES.contains(s)) {
        return run_one(bad, opts).map(|_| unreachable!("unknown scopes are rejected"));
    }
    let mut checks = Vec::new();
    for s in scopes {
        match run_one(s, opts) {
            Ok(c) => checks.extend(c),
            Err(e) => checks.push(Check {
                scope: s.to_string(),
                id: "setup".into(),
                status: Status::Fail,
                detail: json!({ "error": e.to_string() }),
                counterexample: None,
            }),
        }
    }
    let mut summary = Summary::default();
    for c in &checks {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Misprint => summary.misprint += 1,
            Status::Info => summary.info += 1,
        }
    }
    Ok(Report {
        scope: scope.to_string(),
        summary,
        checks,
    })
}
