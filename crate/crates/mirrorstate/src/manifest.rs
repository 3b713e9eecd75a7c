//! Run manifest, echoed next to every output set.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use mirrorstate_core::params::NUMERIC_KEYS;
use mirrorstate_core::PhysicalParams;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub program: String,
    pub subcommand: String,
    pub config: String,
    pub sweep: Option<String>,
    pub outputs: Vec<PathBuf>,
    pub backend: String,
    pub filter: Option<String>,
    pub filter_form: Option<String>,
    pub discard: Option<String>,
    pub n_multiplier: Option<f64>,
    /// analytic paths use no randomness
    pub seed: Option<u64>,
    pub nc_variant: String,
    pub noise_eval: String,
    /// resolved parameters, rates in rad/s
    pub params: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn new(subcommand: &str, config: &str, backend: &str, p: &PhysicalParams) -> Self {
        let params = NUMERIC_KEYS.iter().map(|k| (k.to_string(), p.get(k).unwrap())).collect();
        RunManifest {
            program: format!("mirrorstate {}", env!("CARGO_PKG_VERSION")),
            subcommand: subcommand.to_string(),
            config: config.to_string(),
            sweep: None,
            outputs: Vec::new(),
            backend: backend.to_string(),
            filter: None,
            filter_form: None,
            discard: None,
            n_multiplier: None,
            seed: None,
            nc_variant: p.nc_variant.name().to_string(),
            noise_eval: p.noise_eval.name().to_string(),
            params,
        }
    }

    pub fn write(&self, dir: &Path, stem: &str) -> Result<PathBuf> {
        let path = dir.join(format!("{stem}.manifest.json"));
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}
