//! Cylinder existence for rank-one Du Val del Pezzo surfaces.
//!
//! The decision reads three things off a surface: its degree, the geometric
//! singularity types, and the decorations of the `k`-rational points. Clauses
//! are tried in a fixed order and the first one that applies decides.

use serde::{Deserialize, Serialize};

use crate::config::{construction_case, format_types, surface_type, AdeType, Variant};
use crate::error::{Error, Result};
use crate::galois::{analyze, decorations, rank_one_with, Decoration, Sign, SurfaceOverK, RHO_MODEL_NOTE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Answer {
    ContainsCylinder,
    NoCylinder,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::ContainsCylinder
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "Deg5Plus")]
    Deg5Plus,
    #[serde(rename = "Deg34-KRationalNonA1pp")]
    Deg34KRationalNonA1pp,
    #[serde(rename = "Deg34-None")]
    Deg34None,
    #[serde(rename = "LowDeg-BigSingList")]
    LowDegBigSingList,
    #[serde(rename = "LowDeg-DoublePrime")]
    LowDegDoublePrime,
    #[serde(rename = "LowDeg-SmallSingOnly")]
    LowDegSmallSingOnly,
    #[serde(rename = "LowDeg-MinusDecoration")]
    LowDegMinusDecoration,
    #[serde(rename = "LowDeg-None")]
    LowDegNone,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::Deg5Plus,
        Rule::Deg34KRationalNonA1pp,
        Rule::Deg34None,
        Rule::LowDegBigSingList,
        Rule::LowDegDoublePrime,
        Rule::LowDegSmallSingOnly,
        Rule::LowDegMinusDecoration,
        Rule::LowDegNone,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Deg5Plus => "Deg5Plus",
            Rule::Deg34KRationalNonA1pp => "Deg34-KRationalNonA1pp",
            Rule::Deg34None => "Deg34-None",
            Rule::LowDegBigSingList => "LowDeg-BigSingList",
            Rule::LowDegDoublePrime => "LowDeg-DoublePrime",
            Rule::LowDegSmallSingOnly => "LowDeg-SmallSingOnly",
            Rule::LowDegMinusDecoration => "LowDeg-MinusDecoration",
            Rule::LowDegNone => "LowDeg-None",
        }
    }

    pub fn parse(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.as_str() == s)
    }

    /// Answers a rule can produce; clause (2) is the only two-valued one.
    pub fn allows(self, answer: Answer) -> bool {
        match self {
            Rule::Deg5Plus | Rule::Deg34KRationalNonA1pp | Rule::LowDegBigSingList | Rule::LowDegMinusDecoration => {
                answer.is_yes()
            }
            Rule::Deg34None | Rule::LowDegSmallSingOnly | Rule::LowDegNone => !answer.is_yes(),
            Rule::LowDegDoublePrime => true,
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub cite: String,
    pub quote: String,
}

impl TraceEntry {
    fn new(cite: &str, quote: impl Into<String>) -> Self {
        TraceEntry {
            cite: cite.to_string(),
            quote: quote.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: Answer,
    pub rule: Rule,
    pub trace: Vec<TraceEntry>,
    pub construction_case: Option<u8>,
}

/// Everything the clauses look at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleInput {
    pub degree: i64,
    /// All geometric singularity types, rational or not.
    pub geometric: Vec<AdeType>,
    /// Decorations of the k-rational points.
    pub rational: Vec<Decoration>,
    /// Construction label for degree >= 3 types listed with one.
    pub construction_case: Option<u8>,
}

/// Singularities that force a cylinder once they are k-rational (degree 2, then 1).
pub const BIG_LIST_DEG2: [AdeType; 7] = [
    AdeType::a(6),
    AdeType::a(7),
    AdeType::d(4),
    AdeType::d(5),
    AdeType::d(6),
    AdeType::e(6),
    AdeType::e(7),
];
pub const BIG_LIST_DEG1: [AdeType; 6] = [
    AdeType::a(8),
    AdeType::d(6),
    AdeType::d(7),
    AdeType::d(8),
    AdeType::e(7),
    AdeType::e(8),
];

/// Types allowed in the clause that always says no (degree 2, then 1).
pub const SMALL_LIST_DEG2: [AdeType; 1] = [AdeType::a(1)];
pub const SMALL_LIST_DEG1: [AdeType; 4] = [AdeType::a(1), AdeType::a(2), AdeType::a(3), AdeType::d(4)];

fn is_a1pp(d: &Decoration) -> bool {
    d.base == AdeType::a(1) && d.sign == Sign::PlusPlus
}

fn list_text(ts: &[AdeType]) -> String {
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

fn rational_text(ds: &[Decoration]) -> String {
    if ds.is_empty() {
        "none".into()
    } else {
        ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
    }
}

fn verdict(answer: Answer, rule: Rule, trace: Vec<TraceEntry>, case: Option<u8>) -> Verdict {
    Verdict {
        answer,
        rule,
        trace,
        construction_case: if answer.is_yes() { case } else { None },
    }
}

/// The clauses in order; pure in its input.
pub fn decide_input(input: &OracleInput) -> Verdict {
    let d = input.degree;
    let mut trace = vec![TraceEntry::new(
        "input",
        format!(
            "degree {d}; geometric singularities {}; k-rational points {}",
            format_types(&input.geometric),
            rational_text(&input.rational)
        ),
    )];
    if d >= 5 {
        trace.push(TraceEntry::new(
            "deg>=5",
            "every rank-one Du Val del Pezzo surface of degree at least five contains a cylinder",
        ));
        return verdict(Answer::ContainsCylinder, Rule::Deg5Plus, trace, input.construction_case);
    }
    if d >= 3 {
        return match input.rational.iter().find(|x| !is_a1pp(x)) {
            Some(x) => {
                trace.push(TraceEntry::new(
                    "deg3-4/rational-point",
                    format!("k-rational singular point of type {x}, which is not A1^++"),
                ));
                verdict(
                    Answer::ContainsCylinder,
                    Rule::Deg34KRationalNonA1pp,
                    trace,
                    input.construction_case,
                )
            }
            None => {
                trace.push(TraceEntry::new(
                    "deg3-4/none",
                    "no k-rational singular point other than A1^++ points",
                ));
                verdict(Answer::NoCylinder, Rule::Deg34None, trace, None)
            }
        };
    }
    let (big, small, central): (&[AdeType], &[AdeType], AdeType) = if d == 2 {
        (&BIG_LIST_DEG2, &SMALL_LIST_DEG2, AdeType::a(5))
    } else {
        (&BIG_LIST_DEG1, &SMALL_LIST_DEG1, AdeType::a(7))
    };
    if let Some(x) = input.rational.iter().find(|x| big.contains(&x.base)) {
        trace.push(TraceEntry::new(
            "low-deg/clause-1",
            format!("k-rational point of type {x}; the forcing list is {}", list_text(big)),
        ));
        return verdict(Answer::ContainsCylinder, Rule::LowDegBigSingList, trace, None);
    }
    if let Some(x) = input
        .rational
        .iter()
        .find(|x| x.base == central && x.variant == Some(Variant::DoublePrime))
    {
        let yes = x.sign != Sign::PlusPlus;
        trace.push(TraceEntry::new(
            "low-deg/clause-2",
            format!(
                "k-rational ({central})'' point decorated {x}; a cylinder exists iff it is not {central}^++"
            ),
        ));
        if !yes && input.rational.iter().any(|y| y.sign == Sign::Minus) {
            trace.push(TraceEntry::new(
                "review",
                "another k-rational point carries a Minus decoration; clause 2 takes precedence here",
            ));
        }
        let answer = if yes { Answer::ContainsCylinder } else { Answer::NoCylinder };
        return verdict(answer, Rule::LowDegDoublePrime, trace, None);
    }
    if input.geometric.iter().all(|t| small.contains(t)) {
        trace.push(TraceEntry::new(
            "low-deg/clause-3",
            format!("all singularities lie in {{{}}}", list_text(small)),
        ));
        return verdict(Answer::NoCylinder, Rule::LowDegSmallSingOnly, trace, None);
    }
    match input.rational.iter().find(|x| x.sign == Sign::Minus) {
        Some(x) => {
            trace.push(TraceEntry::new(
                "low-deg/clause-4",
                format!("k-rational point decorated {x}"),
            ));
            verdict(Answer::ContainsCylinder, Rule::LowDegMinusDecoration, trace, None)
        }
        None => {
            trace.push(TraceEntry::new(
                "low-deg/clause-4",
                "no k-rational point carries a Minus decoration",
            ));
            verdict(Answer::NoCylinder, Rule::LowDegNone, trace, None)
        }
    }
}

/// Reads the clause input off a validated surface, checking rank one first.
pub fn oracle_input(surface: &SurfaceOverK) -> Result<(OracleInput, Vec<TraceEntry>)> {
    let a = analyze(surface)?;
    let report = rank_one_with(surface, &a);
    if !report.ok {
        let why = report
            .obstruction
            .map(|o| o.to_string())
            .unwrap_or_else(|| "unknown".into());
        return Err(Error::RankOne(why));
    }
    let mut notes = vec![TraceEntry::new(
        "rank-one",
        format!(
            "rho_k(S~) = {}, root orbits = {}, rho_k(S) = {}{}; {RHO_MODEL_NOTE}",
            report.rho_tilde,
            report.root_orbits,
            report.rho,
            if report.overridden { " (asserted by input)" } else { "" }
        ),
    )];
    notes.extend(a.warnings.iter().map(|w| TraceEntry::new("warning", w.clone())));
    let rational: Vec<Decoration> = decorations(surface, &a)?.into_values().collect();
    let degree = surface.degree();
    let case = construction_case(degree, &surface_type(&surface.profile));
    Ok((
        OracleInput {
            degree,
            geometric: surface.profile.types(),
            rational,
            construction_case: case,
        },
        notes,
    ))
}

fn with_notes(mut v: Verdict, notes: Vec<TraceEntry>) -> Verdict {
    let tail = v.trace.split_off(1);
    v.trace.extend(notes);
    v.trace.extend(tail);
    v
}

pub fn decide(surface: &SurfaceOverK) -> Result<Verdict> {
    let (input, notes) = oracle_input(surface)?;
    Ok(with_notes(decide_input(&input), notes))
}

/// Generic fiber of a fibration over a curve: the function field is C_1, so
/// every exceptional set of a rational point has a rational point.
pub fn decide_fibration(fiber: &SurfaceOverK) -> Result<Verdict> {
    let a = analyze(fiber)?;
    let mut s = fiber.clone();
    s.point_flags = a.rational_points.iter().map(|id| (id.clone(), true)).collect();
    let (input, mut notes) = oracle_input(&s)?;
    notes.push(TraceEntry::new(
        "fibration",
        "base field is a function field of a curve over C, so every rational-point flag is true",
    ));
    Ok(with_notes(decide_input(&input), notes))
}

/// Degree nine surfaces are forms of the plane and need no lattice.
pub fn decide_degree_nine() -> Verdict {
    decide_input(&OracleInput {
        degree: 9,
        geometric: Vec::new(),
        rational: Vec::new(),
        construction_case: None,
    })
}
