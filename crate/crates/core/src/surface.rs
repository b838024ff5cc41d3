//! Surface JSON: parsing with field-path diagnostics and conversion to and
//! from [`SurfaceOverK`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::validate_config;
use crate::error::{Error, Result};
use crate::galois::{analyze, Matrix, SurfaceOverK};
use crate::lattice::{lattice_for_degree, DivisorClass};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisJson {
    #[serde(default)]
    pub matrices: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceJson {
    pub degree: i64,
    pub roots: Vec<Vec<i64>>,
    #[serde(default)]
    pub galois: GaloisJson,
    #[serde(default)]
    pub point_flags: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assert_rank_one: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// A parsed input: degree nine needs no lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Loaded {
    DegreeNine,
    Surface(SurfaceOverK),
}

fn input_err(path: impl Into<String>, e: impl std::fmt::Display) -> Error {
    Error::Input {
        path: path.into(),
        message: e.to_string(),
    }
}

/// Parses Surface JSON text, reporting the field path of syntax and shape errors.
pub fn parse_json(text: &str) -> Result<SurfaceJson> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let path = if path == "." { format!("line {}", inner.line()) } else { path };
        input_err(path, inner)
    })
}

/// Attaches a field path to a validation error.
fn locate(e: Error, json: &SurfaceJson) -> Error {
    let path = match &e {
        Error::DegreeOutOfRange(_) => "degree".to_string(),
        Error::DimensionMismatch { expected, .. } => match json.roots.iter().position(|r| r.len() != *expected) {
            Some(i) => format!("roots[{i}]"),
            None => "galois.matrices".into(),
        },
        Error::NotARoot(i) => format!("roots[{i}]"),
        Error::BadPairing { j, .. } => format!("roots[{j}]"),
        Error::NotAde(_) | Error::TooManyRoots { .. } => "roots".into(),
        Error::BadMatrixShape { gen, .. }
        | Error::NotIsometry(gen)
        | Error::CanonicalNotFixed(gen)
        | Error::RootsNotPermuted(gen)
        | Error::LinesNotPermuted(gen) => format!("galois.matrices[{gen}]"),
        Error::GroupTooLarge(_) => "galois.matrices".into(),
        Error::UnknownPoint(id) | Error::NotRational(id) => format!("point_flags.{id}"),
        Error::Input { .. } => return e,
        _ => ".".into(),
    };
    input_err(path, e)
}

impl SurfaceJson {
    /// Validates every field and builds the surface.
    pub fn load(&self) -> Result<Loaded> {
        if self.degree == 9 {
            if !self.roots.is_empty() {
                return Err(input_err("roots", "degree 9 surfaces are smooth"));
            }
            if !self.galois.matrices.is_empty() {
                return Err(input_err("galois.matrices", "degree 9 takes no lattice action"));
            }
            if let Some(id) = self.point_flags.keys().next() {
                return Err(input_err(format!("point_flags.{id}"), "degree 9 has no singular points"));
            }
            return Ok(Loaded::DegreeNine);
        }
        let form = lattice_for_degree(self.degree).map_err(|e| locate(e, self))?;
        let roots: Vec<DivisorClass> = self.roots.iter().cloned().map(DivisorClass).collect();
        let mut profile = validate_config(&form, &roots).map_err(|e| locate(e, self))?;
        profile.name = self.name.clone();
        let mut gens = self.galois.matrices.clone();
        if gens.is_empty() {
            gens.push(crate::galois::identity(form.rank()));
        }
        let surface = SurfaceOverK {
            profile,
            action: crate::galois::GaloisAction { generators: gens },
            point_flags: self.point_flags.clone(),
            rank_one_assertion: self.assert_rank_one,
        };
        analyze(&surface).map_err(|e| locate(e, self))?;
        Ok(Loaded::Surface(surface))
    }
}

impl From<&SurfaceOverK> for SurfaceJson {
    fn from(s: &SurfaceOverK) -> Self {
        SurfaceJson {
            degree: s.degree(),
            roots: s.profile.roots.iter().map(|r| r.0.clone()).collect(),
            galois: GaloisJson {
                matrices: s.action.generators.clone(),
            },
            point_flags: s.point_flags.clone(),
            assert_rank_one: s.rank_one_assertion,
            name: s.profile.name.clone(),
        }
    }
}

/// Parse and validate in one step.
pub fn load_str(text: &str) -> Result<Loaded> {
    parse_json(text)?.load()
}

/// Loads a surface file; degree nine is reported through [`Loaded`].
pub fn load_file(path: &std::path::Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| input_err(path.display().to_string(), e))?;
    load_str(&text)
}

pub fn to_json_string(s: &SurfaceOverK) -> String {
    serde_json::to_string_pretty(&SurfaceJson::from(s)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_root_reports_path() {
        let text = r#"{"degree": 3, "roots": [[0,1,-1,0,0,0,0], [0,1,"x"]]}"#;
        match load_str(text) {
            Err(Error::Input { path, .. }) => assert_eq!(path, "roots[1][2]"),
            other => panic!("{other:?}"),
        }
        let text = r#"{"degree": 3, "roots": [[0,1,-1,0,0,0,0], [0,1,0]]}"#;
        match load_str(text) {
            Err(Error::Input { path, .. }) => assert_eq!(path, "roots[1]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_flag_reports_path() {
        let text = r#"{"degree": 4, "roots": [[0,1,-1,0,0,0]], "point_flags": {"p7": true}}"#;
        match load_str(text) {
            Err(Error::Input { path, .. }) => assert_eq!(path, "point_flags.p7"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degree_nine_short_circuits() {
        assert_eq!(load_str(r#"{"degree": 9, "roots": []}"#).unwrap(), Loaded::DegreeNine);
    }
}
