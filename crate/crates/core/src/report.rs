//! The end-to-end pipeline and its machine-readable report.

use std::fmt;

use serde::Serialize;

use crate::cohomology::{stratum_cohomology, OrbifoldCohomology};
use crate::config::{Config, ThomCombination};
use crate::error::Error;
use crate::exterior::{Coordinates, SerializedForm};
use crate::linalg::{format_rational, Rational, RationalMatrix};
use crate::locus::{strata, Stratum};
use crate::massey::{boundary, intersections, massey_value, triple_massey, Intersection, StratumCount};
use crate::orbifold::{closure, IsometryGroup};
use crate::resolution::{ModelClass, ResolutionModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Config,
    Closure,
    Strata,
    Cohomology,
    PoincareDuals,
    Massey,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Config => "config",
            Stage::Closure => "closure",
            Stage::Strata => "strata",
            Stage::Cohomology => "cohomology",
            Stage::PoincareDuals => "poincare-duals",
            Stage::Massey => "massey",
        };
        f.write_str(name)
    }
}

/// A pipeline error tagged with the stage that raised it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageError {
    pub stage: Stage,
    pub error: Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} stage: {}", self.stage, self.error)
    }
}

impl std::error::Error for StageError {}

fn at(stage: Stage) -> impl Fn(Error) -> StageError {
    move |error| StageError { stage, error }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Closure,
    Strata,
    Betti,
    Pd,
    Massey,
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Closure => "closure",
            Command::Strata => "strata",
            Command::Betti => "betti",
            Command::Pd => "pd",
            Command::Massey => "massey",
            Command::Report => "report",
        }
    }

    fn needs_strata(self) -> bool {
        !matches!(self, Command::Closure)
    }
}

pub const VERDICT_NON_FORMAL: &str = "NON-FORMAL: certificate follows";
pub const VERDICT_VANISHES: &str = "Massey product vanishes (value 0)";
pub const VERDICT_IN_IDEAL: &str = "Massey product lies in the ideal (no certificate)";
pub const VERDICT_NO_DATA: &str = "no Massey data";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementEntry {
    pub word: String,
    pub linear: Vec<Vec<String>>,
    pub translation: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSection {
    pub order: usize,
    pub generators: Vec<String>,
    pub elements: Vec<ElementEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumEntry {
    pub label: String,
    pub dimension: usize,
    pub basepoint: Vec<String>,
    /// Oriented parametrization, as columns.
    pub directions: Vec<Vec<String>>,
    pub orbit_size: usize,
    pub stabilizer: String,
    pub multiplicity: usize,
    pub calibration: String,
    /// Basis of `H^d(N)` for `d = 0..=dimension`.
    pub cohomology: Vec<Vec<SerializedForm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiSection {
    pub orbifold: Vec<usize>,
    pub model: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyEntry {
    pub degree: usize,
    pub basis: Vec<SerializedForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareDualEntry {
    pub stratum: String,
    pub class: SerializedForm,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryEntry {
    pub sign: i32,
    pub stratum: String,
    pub member: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MasseySection {
    pub triple: [String; 3],
    pub ab: ModelClass,
    pub bc: ModelClass,
    pub boundary: Vec<BoundaryEntry>,
    pub intersections: Vec<Intersection>,
    pub counts: Vec<StratumCount>,
    pub degree: usize,
    pub value: ModelClass,
    pub value_text: String,
    pub ideal_basis: Vec<ModelClass>,
    pub ideal_rank: usize,
    pub augmented_rank: usize,
    pub member: bool,
}

/// Everything a command emits. Sections a command does not compute are
/// omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<StratumEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<Vec<CohomologyEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poincare_duals: Option<Vec<PoincareDualEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub massey: Option<MasseySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn matrix_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| strings(m.row(i))).collect()
}

pub fn compute_group(config: &Config) -> Result<IsometryGroup, StageError> {
    closure(&config.lattice, &config.generators, config.group_bound).map_err(at(Stage::Closure))
}

pub fn compute_strata(config: &Config, group: &IsometryGroup) -> Result<Vec<Stratum>, StageError> {
    strata(group, &config.phi, &config.anchors).map_err(at(Stage::Strata))
}

/// Human-readable rendering of a model class.
pub fn display_class(model: &ResolutionModel, class: &ModelClass, coords: &Coordinates) -> String {
    let mut parts = Vec::new();
    for (k, v) in &class.base {
        let form = model.cohomology().space(*k).combine(v, model.dim());
        parts.push(format!("[{}]", form.display(coords)));
    }
    for (label, blocks) in &class.fibered {
        let Ok(stratum) = model.stratum(label) else { continue };
        let params = Coordinates::parameters(stratum.dim());
        for (d, v) in blocks {
            let form = model.stratum_space(label, *d).expect("known stratum").combine(v, stratum.dim());
            parts.push(format!("[{}] x {label}", form.display(&params)));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn combination_text(c: &ThomCombination) -> String {
    let terms: Vec<String> = c.iter().map(|(l, v)| format!("({}) x_{l}", format_rational(v))).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn group_section(group: &IsometryGroup) -> GroupSection {
    GroupSection {
        order: group.order(),
        generators: group.generator_labels.clone(),
        elements: group
            .elements
            .iter()
            .map(|g| ElementEntry { word: g.word.clone(), linear: matrix_rows(&g.linear), translation: strings(&g.translation) })
            .collect(),
    }
}

fn strata_section(group: &IsometryGroup, strata: &[Stratum]) -> Vec<StratumEntry> {
    strata
        .iter()
        .map(|s| {
            let params = Coordinates::parameters(s.dim());
            StratumEntry {
                label: s.label.clone(),
                dimension: s.dim(),
                basepoint: strings(&s.representative.real_basepoint(&group.lattice)),
                directions: s.parametrization.columns().iter().map(|c| strings(c)).collect(),
                orbit_size: s.orbit_size(),
                stabilizer: s.stabilizer.word.clone(),
                multiplicity: s.multiplicity,
                calibration: format_rational(&s.calibration),
                cohomology: stratum_cohomology(s)
                    .iter()
                    .map(|space| space.basis.iter().map(|f| f.to_serialized(&params)).collect())
                    .collect(),
            }
        })
        .collect()
}

fn thom_combination(model: &ResolutionModel, c: &ThomCombination) -> Result<ModelClass, Error> {
    c.iter().try_fold(ModelClass::zero(), |acc, (l, v)| Ok(acc.add_scaled(&model.thom_symbol(l)?, v)))
}

fn massey_section(config: &Config, model: &ResolutionModel) -> Result<Option<MasseySection>, StageError> {
    let (Some(cob), Some(triple)) = (&config.cobordism, &config.massey) else {
        return Ok(None);
    };
    let err = at(Stage::Massey);
    let lattice = &config.lattice;
    let [a, b, c] = [&triple[0], &triple[1], &triple[2]].map(|t| thom_combination(model, t));
    let (a, b, c) = (a.map_err(&err)?, b.map_err(&err)?, c.map_err(&err)?);
    let ends = boundary(cob, model.strata(), lattice, &config.phi).map_err(&err)?;
    let points = intersections(cob, model.strata(), lattice, &config.phi).map_err(&err)?;
    let (value, counts) = massey_value(cob, model, lattice, &config.phi).map_err(&err)?;
    let verdict = triple_massey(model, &a, &b, &c, &value).map_err(&err)?;
    Ok(Some(MasseySection {
        triple: [&triple[0], &triple[1], &triple[2]].map(combination_text),
        ab: verdict.ab.clone(),
        bc: verdict.bc.clone(),
        boundary: ends
            .iter()
            .map(|e| BoundaryEntry { sign: e.sign, stratum: e.stratum.clone(), member: e.member })
            .collect(),
        intersections: points,
        counts,
        degree: verdict.degree,
        value_text: display_class(model, &value, &config.coordinates),
        value,
        ideal_basis: verdict.ideal_basis.clone(),
        ideal_rank: verdict.ideal_rank,
        augmented_rank: verdict.augmented_rank,
        member: verdict.member,
    }))
}

fn verdict_for(section: &Option<MasseySection>) -> String {
    match section {
        None => VERDICT_NO_DATA,
        Some(m) if !m.member => VERDICT_NON_FORMAL,
        Some(m) if m.value.is_zero() => VERDICT_VANISHES,
        Some(_) => VERDICT_IN_IDEAL,
    }
    .to_string()
}

/// Runs the stages `command` needs on top of a precomputed group and strata.
pub fn build_report(
    config: &Config,
    command: Command,
    group: &IsometryGroup,
    strata: Option<&[Stratum]>,
) -> Result<Report, StageError> {
    let mut report = Report {
        command: command.name().to_string(),
        group: None,
        strata: None,
        betti: None,
        cohomology: None,
        poincare_duals: None,
        massey: None,
        verdict: None,
    };
    let all = command == Command::Report;
    if matches!(command, Command::Closure | Command::Strata) || all {
        report.group = Some(group_section(group));
    }
    if !command.needs_strata() {
        return Ok(report);
    }
    let strata = strata.ok_or(StageError { stage: Stage::Strata, error: Error::Parse("strata not computed".into()) })?;
    if matches!(command, Command::Strata) || all {
        report.strata = Some(strata_section(group, strata));
    }
    if command == Command::Strata {
        return Ok(report);
    }

    let cohomology = OrbifoldCohomology::new(group);
    let model = ResolutionModel::new(cohomology.clone(), strata.to_vec());
    if matches!(command, Command::Betti) || all {
        report.betti = Some(BettiSection { orbifold: cohomology.betti(), model: model.model_betti() });
        report.cohomology = Some(
            (0..=cohomology.dim())
                .map(|k| CohomologyEntry {
                    degree: k,
                    basis: cohomology.space(k).basis.iter().map(|f| f.to_serialized(&config.coordinates)).collect(),
                })
                .collect(),
        );
    }
    if matches!(command, Command::Pd) || all {
        let mut pds = Vec::with_capacity(strata.len());
        for s in strata {
            let pd = cohomology
                .poincare_dual(s, &crate::exterior::Form::one(s.dim()))
                .map_err(at(Stage::PoincareDuals))?;
            pds.push(PoincareDualEntry {
                stratum: s.label.clone(),
                class: pd.to_serialized(&config.coordinates),
                text: pd.display(&config.coordinates).to_string(),
            });
        }
        report.poincare_duals = Some(pds);
    }
    if matches!(command, Command::Massey) || all {
        report.massey = massey_section(config, &model)?;
        report.verdict = Some(verdict_for(&report.massey));
    }
    Ok(report)
}

/// Full pipeline without caching.
pub fn formality_report(config: &Config, command: Command) -> Result<Report, StageError> {
    let group = compute_group(config)?;
    let strata = if command.needs_strata() { Some(compute_strata(config, &group)?) } else { None };
    build_report(config, command, &group, strata.as_deref())
}
