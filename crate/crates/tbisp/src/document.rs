//! JSON condition-space documents.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use tbisp_core::bispectral_core::{ConditionSpace, Distribution};
use tbisp_core::exactfield::{Gq, PolyExp};
use tbisp_core::text::parse_polyexp;

/// One term `coeff·Δ(lambda, order)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub lambda: String,
    pub order: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_override: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A condition space given by generating distributions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionDocument {
    pub distributions: Vec<Vec<Entry>>,
    #[serde(default)]
    pub settings: Settings,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad scalar \"{text}\": {source}")]
    Scalar { text: String, source: tbisp_core::Error },
    #[error("bad g override: {0}")]
    G(tbisp_core::Error),
    #[error("invalid condition space: {0}")]
    Space(tbisp_core::Error),
}

fn scalar(s: &str) -> Result<Gq, DocumentError> {
    Gq::from_str(s.trim()).map_err(|e| DocumentError::Scalar { text: s.to_string(), source: e })
}

impl ConditionDocument {
    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn from_space(c: &ConditionSpace) -> Self {
        let distributions = c
            .basis()
            .iter()
            .map(|d| {
                d.terms()
                    .map(|(l, n, a)| Entry { lambda: l.to_string(), order: n, coeff: a.to_string() })
                    .collect()
            })
            .collect();
        ConditionDocument { distributions, settings: Settings::default() }
    }

    pub fn space(&self) -> Result<ConditionSpace, DocumentError> {
        let gens = self
            .distributions
            .iter()
            .map(|entries| {
                let terms = entries
                    .iter()
                    .map(|e| Ok((scalar(&e.lambda)?, e.order, scalar(&e.coeff)?)))
                    .collect::<Result<Vec<_>, DocumentError>>()?;
                Ok(Distribution::from_terms(terms))
            })
            .collect::<Result<Vec<_>, DocumentError>>()?;
        ConditionSpace::new(gens).map_err(DocumentError::Space)
    }

    pub fn g_override(&self) -> Result<Option<PolyExp>, DocumentError> {
        self.settings.g_override.as_deref().map(parse_polyexp).transpose().map_err(DocumentError::G)
    }
}

/// The translated Calogero-Moser document shipped with the crate.
pub const CALOGERO_MOSER: &str = include_str!("../data/calogero_moser.json");

/// The two-soliton document shipped with the crate.
pub const SOLITON: &str = include_str!("../data/soliton.json");
