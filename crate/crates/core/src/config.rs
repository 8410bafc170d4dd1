//! Configuration documents and the built-in presets.
//!
//! A configuration is a JSON object:
//!
//! ```json
//! {
//!   "coordinates": ["t", "x1", "y1", "x2", "y2", "x3", "y3"],
//!   "lattice": [["4", "0", ...], ...],
//!   "generators": [{"name": "F", "linear": [[...]], "translation": ["1", ...]}],
//!   "phi": [[["t", "x1", "y1"], "1"], ...],
//!   "group_bound": 100000,
//!   "strata_labels": [{"name": "N1", "basepoint": [...], "directions": [[...], ...]}],
//!   "cobordism": {"base": {"basepoint": [...], "directions": [[...]]},
//!                 "t_start": "1/2", "t_end": "3/2",
//!                 "drift_start": [...], "drift_end": [...]},
//!   "massey": {"a": {"N1": "1", "N2": "1"}, "b": {...}, "c": {...}}
//! }
//! ```
//!
//! Matrices are lists of rows, except `directions`, which lists columns.
//! Rationals are strings `"p/q"` or `"p"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{standard_g2_form, Coordinates, Form, SerializedForm};
use crate::linalg::{format_rational, parse_rational, Rational, RationalMatrix};
use crate::locus::StratumAnchor;
use crate::massey::CobordismDatum;
use crate::orbifold::{validate, AffineIsometry, TorusLattice, DEFAULT_GROUP_BOUND};
use crate::preset;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGenerator {
    pub name: String,
    pub linear: Vec<Vec<String>>,
    pub translation: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSubtorus {
    pub basepoint: Vec<String>,
    pub directions: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAnchor {
    pub name: String,
    pub basepoint: Vec<String>,
    pub directions: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCobordism {
    pub base: RawSubtorus,
    pub t_start: String,
    pub t_end: String,
    pub drift_start: Vec<String>,
    pub drift_end: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTriple {
    pub a: BTreeMap<String, String>,
    pub b: BTreeMap<String, String>,
    pub c: BTreeMap<String, String>,
}

/// The document as written, before validation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<String>>,
    pub lattice: Vec<Vec<String>>,
    pub generators: Vec<RawGenerator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<SerializedForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strata_labels: Vec<RawAnchor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cobordism: Option<RawCobordism>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub massey: Option<RawTriple>,
}

/// Linear combination of Thom symbols, keyed by stratum label.
pub type ThomCombination = BTreeMap<String, Rational>;

/// A validated configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub coordinates: Coordinates,
    pub lattice: TorusLattice,
    pub generators: Vec<AffineIsometry>,
    pub phi: Form,
    pub group_bound: usize,
    pub anchors: Vec<StratumAnchor>,
    pub cobordism: Option<CobordismDatum>,
    pub massey: Option<[ThomCombination; 3]>,
}

pub const PRESETS: [&str; 3] = ["paper", "paper-no-cobordism", "paper-zero-drift"];

fn rational(path: &str, text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| Error::config(path, e.to_string()))
}

fn vector(path: &str, v: &[String], n: usize) -> Result<Vec<Rational>> {
    if v.len() != n {
        return Err(Error::config(path, format!("expected {n} entries, found {}", v.len())));
    }
    v.iter().enumerate().map(|(i, x)| rational(&format!("{path}[{i}]"), x)).collect()
}

fn rows(path: &str, m: &[Vec<String>], n: usize, cols: usize) -> Result<Vec<Vec<Rational>>> {
    if m.len() != n {
        return Err(Error::config(path, format!("expected {n} rows, found {}", m.len())));
    }
    m.iter().enumerate().map(|(i, r)| vector(&format!("{path}[{i}]"), r, cols)).collect()
}

fn columns(path: &str, m: &[Vec<String>], n: usize) -> Result<RationalMatrix> {
    let cols = m.iter().enumerate().map(|(j, c)| vector(&format!("{path}[{j}]"), c, n)).collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_columns(n, &cols))
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn matrix_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| strings(m.row(i))).collect()
}

fn matrix_columns(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.columns().iter().map(|c| strings(c)).collect()
}

impl RawConfig {
    pub fn from_json(text: &str) -> Result<RawConfig> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let path = if path == "." { "(root)".to_string() } else { path };
            Error::config(path, e.inner().to_string())
        })
    }

    pub fn validate(&self) -> Result<Config> {
        let coordinates = match &self.coordinates {
            Some(names) => Coordinates::new(names.clone()).map_err(|e| Error::config("coordinates", e.to_string()))?,
            None => Coordinates::standard(),
        };
        let n = coordinates.dim();
        let basis = RationalMatrix::from_rows(rows("lattice", &self.lattice, n, n)?);
        let lattice = TorusLattice::new(basis).map_err(|e| Error::config("lattice", e.to_string()))?;
        let phi = match &self.phi {
            Some(s) => Form::from_serialized(s, &coordinates).map_err(|e| Error::config("phi", e.to_string()))?,
            None if n == 7 => standard_g2_form(),
            None => return Err(Error::config("phi", "required unless there are 7 coordinates")),
        };

        let mut generators = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            let path = format!("generators[{i}]");
            let linear = RationalMatrix::from_rows(rows(&format!("{path}.linear"), &g.linear, n, n)?);
            let translation = vector(&format!("{path}.translation"), &g.translation, n)?;
            let iso = AffineIsometry::new(linear, translation, g.name.clone(), &lattice);
            let verdict = validate(&iso, &lattice, Some(&phi));
            if !verdict.is_valid() {
                return Err(Error::config(path, format!("'{}' fails validation: {:?}", g.name, verdict.violations)));
            }
            generators.push(iso);
        }

        let anchors = self
            .strata_labels
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let path = format!("strata_labels[{i}]");
                Ok(StratumAnchor {
                    name: a.name.clone(),
                    basepoint: vector(&format!("{path}.basepoint"), &a.basepoint, n)?,
                    directions: columns(&format!("{path}.directions"), &a.directions, n)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let cobordism = match &self.cobordism {
            None => None,
            Some(c) => {
                let datum = CobordismDatum {
                    basepoint: vector("cobordism.base.basepoint", &c.base.basepoint, n)?,
                    directions: columns("cobordism.base.directions", &c.base.directions, n)?,
                    t_start: rational("cobordism.t_start", &c.t_start)?,
                    t_end: rational("cobordism.t_end", &c.t_end)?,
                    drift_start: vector("cobordism.drift_start", &c.drift_start, n)?,
                    drift_end: vector("cobordism.drift_end", &c.drift_end, n)?,
                };
                datum.validate(&lattice).map_err(|e| Error::config("cobordism", e.to_string()))?;
                Some(datum)
            }
        };

        let massey = match &self.massey {
            None => None,
            Some(t) => {
                let combo = |name: &str, m: &BTreeMap<String, String>| -> Result<ThomCombination> {
                    m.iter().map(|(l, c)| Ok((l.clone(), rational(&format!("massey.{name}.{l}"), c)?))).collect()
                };
                Some([combo("a", &t.a)?, combo("b", &t.b)?, combo("c", &t.c)?])
            }
        };

        Ok(Config {
            coordinates,
            lattice,
            generators,
            phi,
            group_bound: self.group_bound.unwrap_or(DEFAULT_GROUP_BOUND),
            anchors,
            cobordism,
            massey,
        })
    }
}

pub fn parse_config(text: &str) -> Result<Config> {
    RawConfig::from_json(text)?.validate()
}

impl Config {
    pub fn preset(name: &str) -> Result<Config> {
        let lattice = TorusLattice::paper();
        let triple = preset::paper_triple().map(|t| t.into_iter().collect::<ThomCombination>());
        let mut config = Config {
            coordinates: Coordinates::standard(),
            generators: preset::paper_generators(&lattice),
            lattice,
            phi: standard_g2_form(),
            group_bound: DEFAULT_GROUP_BOUND,
            anchors: preset::paper_anchors(),
            cobordism: Some(preset::paper_cobordism()),
            massey: Some(triple),
        };
        match name {
            "paper" => {}
            "paper-no-cobordism" => config.cobordism = None,
            "paper-zero-drift" => config.cobordism = Some(preset::degenerate_cobordism()),
            other => {
                return Err(Error::config("preset", format!("unknown preset '{other}' (known: {})", PRESETS.join(", "))))
            }
        }
        Ok(config)
    }

    /// Normalized document; equal configurations give equal documents.
    pub fn to_raw(&self) -> RawConfig {
        let coords = &self.coordinates;
        RawConfig {
            coordinates: Some(coords.names().to_vec()),
            lattice: matrix_rows(self.lattice.basis()),
            generators: self
                .generators
                .iter()
                .map(|g| RawGenerator {
                    name: g.word.clone(),
                    linear: matrix_rows(&g.linear),
                    translation: strings(&g.translation),
                })
                .collect(),
            phi: Some(self.phi.to_serialized(coords)),
            group_bound: Some(self.group_bound),
            strata_labels: self
                .anchors
                .iter()
                .map(|a| RawAnchor {
                    name: a.name.clone(),
                    basepoint: strings(&a.basepoint),
                    directions: matrix_columns(&a.directions),
                })
                .collect(),
            cobordism: self.cobordism.as_ref().map(|c| RawCobordism {
                base: RawSubtorus { basepoint: strings(&c.basepoint), directions: matrix_columns(&c.directions) },
                t_start: format_rational(&c.t_start),
                t_end: format_rational(&c.t_end),
                drift_start: strings(&c.drift_start),
                drift_end: strings(&c.drift_end),
            }),
            massey: self.massey.as_ref().map(|[a, b, c]| {
                let m = |x: &ThomCombination| x.iter().map(|(l, v)| (l.clone(), format_rational(v))).collect();
                RawTriple { a: m(a), b: m(b), c: m(c) }
            }),
        }
    }

    /// Canonical JSON text, the input of cache keys.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("serializable")
    }
}
