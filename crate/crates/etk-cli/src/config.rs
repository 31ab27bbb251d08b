//! JSON config file with the same keys as the command-line flags. Flags
//! override file values field by field.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Deserialize;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub command: Option<String>,
    pub potential: Option<String>,
    #[serde(rename = "G")]
    pub g: Option<f64>,
    pub beta: Option<f64>,
    pub alpha: Option<f64>,
    pub c: Option<f64>,
    pub d: Option<f64>,
    #[serde(rename = "C")]
    pub mix: Option<f64>,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    pub m: Option<f64>,
    #[serde(rename = "D")]
    pub dim: Option<u32>,
    pub state: Option<String>,
    pub phi: Option<f64>,
    pub figure: Option<String>,
    pub grid: Option<String>,
    pub output: Option<String>,
    pub summary: Option<String>,
    pub format: Option<String>,
    #[serde(rename = "tol-rel")]
    pub tol_rel: Option<f64>,
    #[serde(rename = "cond-cap")]
    pub cond_cap: Option<f64>,
    pub na: Option<usize>,
    pub nb: Option<usize>,
    #[serde(rename = "max-basis")]
    pub max_basis: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        serde_json::from_str(&text)
            .with_context(|| format!("malformed config file {}", path.display()))
    }
}
