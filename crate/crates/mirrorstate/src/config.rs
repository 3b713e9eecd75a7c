//! Parameter files. A config is a flat TOML table whose keys are the
//! `PhysicalParams` field names, plus three optional string keys:
//! `frequency_units` ("Hz" or "rad/s", default "Hz"), `nc_variant` and
//! `noise_eval`.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use mirrorstate_core::params::{is_frequency_key, NcVariant, NUMERIC_KEYS, OPTIONAL_KEYS};
use mirrorstate_core::{NoiseEval, PhysicalParams};

const STRING_KEYS: [&str; 3] = ["frequency_units", "nc_variant", "noise_eval"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreqUnits {
    Hz,
    RadPerSec,
}

impl FreqUnits {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "Hz" | "hz" => Some(FreqUnits::Hz),
            "rad/s" => Some(FreqUnits::RadPerSec),
            _ => None,
        }
    }
}

/// Parsed parameters and the non-fatal warnings raised while loading.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub params: PhysicalParams,
    pub warnings: Vec<String>,
}

pub fn load_file(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    load_str(&text).with_context(|| format!("in {}", path.display()))
}

pub fn load_str(text: &str) -> Result<Loaded> {
    let table: toml::Table = text.parse().context("config does not parse")?;
    for key in table.keys() {
        if !NUMERIC_KEYS.contains(&key.as_str()) && !STRING_KEYS.contains(&key.as_str()) {
            bail!("unknown key: {key}");
        }
    }
    let string = |key: &str| -> Result<Option<&str>> {
        match table.get(key) {
            None => Ok(None),
            Some(v) => v.as_str().map(Some).ok_or_else(|| anyhow!("{key}: expected a string")),
        }
    };
    let units = match string("frequency_units")? {
        None => FreqUnits::Hz,
        Some(s) => FreqUnits::parse(s).ok_or_else(|| anyhow!("frequency_units: expected \"Hz\" or \"rad/s\", got {s:?}"))?,
    };

    let mut p = PhysicalParams::table1();
    let mut warnings = Vec::new();
    for key in NUMERIC_KEYS {
        let v = match table.get(key) {
            Some(toml::Value::Float(x)) => *x,
            Some(toml::Value::Integer(i)) => *i as f64,
            Some(_) => bail!("{key}: expected a number"),
            None => match OPTIONAL_KEYS.iter().find(|(k, _)| *k == key) {
                Some((_, d)) => {
                    if key == "detection_eff" {
                        warnings.push(format!("detection_eff not given; using {d}"));
                    }
                    *d
                }
                None => bail!("missing key: {key}"),
            },
        };
        let v = if units == FreqUnits::Hz && is_frequency_key(key) { 2.0 * std::f64::consts::PI * v } else { v };
        p.set(key, v).map_err(|e| anyhow!("{key}: {e}"))?;
    }
    if let Some(s) = string("nc_variant")? {
        p.nc_variant = NcVariant::parse(s).ok_or_else(|| anyhow!("nc_variant: unknown value {s:?}"))?;
    }
    if let Some(s) = string("noise_eval")? {
        p.noise_eval = NoiseEval::parse(s).ok_or_else(|| anyhow!("noise_eval: unknown value {s:?}"))?;
    }
    let advisories = p.validate().map_err(|e| anyhow!("{e}"))?;
    warnings.extend(advisories.iter().map(|s| s.to_string()));
    Ok(Loaded { params: p, warnings })
}

/// Serialize in rad/s. `{:?}` prints the shortest text that reads back to
/// the same bits, so `load_str(&to_config_string(p))` reproduces `p`.
pub fn to_config_string(p: &PhysicalParams) -> String {
    let mut s = String::new();
    writeln!(s, "frequency_units = \"rad/s\"").unwrap();
    writeln!(s, "nc_variant = \"{}\"", p.nc_variant.name()).unwrap();
    writeln!(s, "noise_eval = \"{}\"", p.noise_eval.name()).unwrap();
    for key in NUMERIC_KEYS {
        writeln!(s, "{key} = {:?}", p.get(key).unwrap()).unwrap();
    }
    s
}
