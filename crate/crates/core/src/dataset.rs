//! Meson input data: quark masses, experimental levels, published parameters
//! and comparison columns.
//!
//! The bundled default covers charmonium, bottomonium and the bottom-charm
//! system with the quark masses `m_c = 1.23`, `m_b = 4.19` GeV.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fitting::ExperimentalLevel;
use crate::hta::{CornellParams, MesonSystem, SpectroscopicLabel, Variant};

const DEFAULT_JSON: &str = include_str!("../data/mesons.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub mesons: Vec<MesonRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MesonRecord {
    pub label: String,
    #[serde(default)]
    pub description: String,
    pub m_q: f64,
    pub m_qbar: f64,
    /// Published parameters per variant.
    #[serde(default)]
    pub paper_params: BTreeMap<Variant, CornellParams>,
    /// Levels used as fit targets per variant; absent means every level
    /// with an experimental mass.
    #[serde(default)]
    pub fit_sets: BTreeMap<Variant, Vec<SpectroscopicLabel>>,
    #[serde(default)]
    pub reference_columns: Vec<String>,
    pub levels: Vec<LevelRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub label: SpectroscopicLabel,
    /// Experimental mass in GeV, if measured.
    #[serde(default)]
    pub exp: Option<f64>,
    /// Published model masses per variant.
    #[serde(default)]
    pub paper: BTreeMap<Variant, f64>,
    /// Other models, aligned with `reference_columns`.
    #[serde(default)]
    pub refs: Vec<Option<f64>>,
}

impl Dataset {
    /// The bundled data set.
    pub fn paper_default() -> Self {
        Self::from_json(DEFAULT_JSON).expect("bundled data set is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let data: Dataset =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("meson data: {e}")))?;
        data.validate()?;
        Ok(data)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("data set serializes")
    }

    pub fn find(&self, label: &str) -> Result<&MesonRecord> {
        self.mesons
            .iter()
            .find(|m| m.label == label)
            .ok_or_else(|| Error::Invalid(format!("no meson labelled {label:?}")))
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for m in &self.mesons {
            if !seen.insert(m.label.as_str()) {
                return Err(Error::Invalid(format!("duplicate meson {:?}", m.label)));
            }
            m.validate()?;
        }
        Ok(())
    }
}

impl MesonRecord {
    fn validate(&self) -> Result<()> {
        let quarks = MesonSystem::new(
            &self.label,
            self.m_q,
            self.m_qbar,
            CornellParams::new(0.0, 1.0, 1.0)?,
        )?;
        for p in self.paper_params.values() {
            p.validate()?;
        }
        let mut labels = BTreeSet::new();
        for level in &self.levels {
            if !labels.insert(level.label) {
                return Err(Error::Invalid(format!(
                    "{}: duplicate level {}",
                    self.label, level.label
                )));
            }
            if let Some(exp) = level.exp {
                if !(exp.is_finite() && exp > quarks.constituent_mass() - 1.0) {
                    return Err(Error::Invalid(format!(
                        "{} {}: experimental mass {exp} is below the constituent bound",
                        self.label, level.label
                    )));
                }
            }
        }
        for set in self.fit_sets.values() {
            if let Some(missing) = set.iter().find(|l| !labels.contains(l)) {
                return Err(Error::Invalid(format!(
                    "{}: fit set names unknown level {missing}",
                    self.label
                )));
            }
        }
        Ok(())
    }

    /// The system with the published parameters of `variant`.
    pub fn system(&self, variant: Variant) -> Result<MesonSystem> {
        let params = self.paper_params.get(&variant).copied().ok_or_else(|| {
            Error::Invalid(format!(
                "{} has no published {variant} parameters",
                self.label
            ))
        })?;
        self.system_with(params)
    }

    pub fn system_with(&self, params: CornellParams) -> Result<MesonSystem> {
        MesonSystem::new(&self.label, self.m_q, self.m_qbar, params)
    }

    /// Levels with an experimental mass, flagged by the fit set of `variant`.
    pub fn experimental_levels(&self, variant: Variant) -> Vec<ExperimentalLevel> {
        let set = self.fit_sets.get(&variant);
        self.levels
            .iter()
            .filter_map(|l| {
                l.exp.map(|mass| ExperimentalLevel {
                    label: l.label,
                    mass,
                    include_in_fit: set.is_none_or(|s| s.contains(&l.label)),
                })
            })
            .collect()
    }

    /// Every level with an experimental mass, all flagged for fitting.
    pub fn all_experimental_levels(&self) -> Vec<ExperimentalLevel> {
        self.levels
            .iter()
            .filter_map(|l| {
                l.exp.map(|mass| ExperimentalLevel {
                    label: l.label,
                    mass,
                    include_in_fit: true,
                })
            })
            .collect()
    }
}
