//! Runtime configuration.
//!
//! Loaded from a TOML file; every field can also be overridden from the
//! command line via dotted `key=value` pairs (see [`Config::apply_override`]).
//! [`DEFAULT_CONFIG_TOML`] is the single source of defaults and is what
//! `config print-default` emits.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// Documented defaults. `Config::default()` parses this text, so the emitted
/// file and the in-process defaults can never drift apart.
pub const DEFAULT_CONFIG_TOML: &str = r#"# sightline configuration
# Predicted reasoning latency above this routes the interaction to the
# text-only fallback path.
latency_threshold_ms = 10000

# Speaker verification: accept when the nearest enrolled profile is strictly
# closer than this Euclidean distance.
auth_distance_threshold = 25.0

# How long an object may leave the frame without being re-announced when it
# returns.
permanence_window_ms = 5000

# Minimum spacing between announcements of the same label.
announce_min_interval_ms = 2000

# Smoothing factor for the latency predictor, in (0, 1].
ewma_alpha = 0.3

# Fundamental frequency at or above this classifies a voice as under 18.
age_pitch_threshold_hz = 260.0

# Rewrite/guardrail rule file.
rules_path = "rules.toml"

# Directory holding profile, gallery, and pin stores.
store_path = "stores"

[mfcc]
sample_rate = 16000
pre_emphasis = 0.97
window_ms = 25
hop_ms = 10
n_filters = 26
n_coeffs = 13
fft_size = 512
mel_low_hz = 0.0
mel_high_hz = 8000.0

[pitch]
min_hz = 50.0
max_hz = 500.0
voicing_threshold = 0.5

[scene]
# Boxes covering at least this fraction of the frame are "near".
near_area_fraction = 0.15

[perception]
# OCR task selection is reserved; off until a text-recognition backend lands.
ocr_enabled = false

[edgelink]
service_name = "smartsight-edge"
discover_timeout_ms = 500
pin_store_path = "pins.json"
# Peripheral capture cadence used by the simulator.
frames_per_second = 2.0
"#;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub latency_threshold_ms: u64,
    pub auth_distance_threshold: f64,
    pub permanence_window_ms: u64,
    pub announce_min_interval_ms: u64,
    pub ewma_alpha: f64,
    pub age_pitch_threshold_hz: f64,
    pub rules_path: PathBuf,
    pub store_path: PathBuf,
    pub mfcc: MfccParams,
    pub pitch: PitchParams,
    pub scene: SceneParams,
    pub perception: PerceptionParams,
    pub edgelink: EdgelinkParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfccParams {
    pub sample_rate: u32,
    pub pre_emphasis: f64,
    pub window_ms: u32,
    pub hop_ms: u32,
    pub n_filters: usize,
    pub n_coeffs: usize,
    pub fft_size: usize,
    pub mel_low_hz: f64,
    pub mel_high_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PitchParams {
    pub min_hz: f64,
    pub max_hz: f64,
    /// Normalized autocorrelation below this means "unvoiced".
    pub voicing_threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneParams {
    pub near_area_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerceptionParams {
    pub ocr_enabled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgelinkParams {
    pub service_name: String,
    pub discover_timeout_ms: u64,
    pub pin_store_path: PathBuf,
    pub frames_per_second: f64,
}

impl Default for Config {
    fn default() -> Self {
        toml::from_str(DEFAULT_CONFIG_TOML).expect("default config text must parse")
    }
}

impl Config {
    pub fn load_from_path(path: &Path) -> Result<Self, CoreError> {
        let text = std::fs::read_to_string(path).map_err(|source| CoreError::ConfigRead {
            path: path.to_path_buf(),
            source,
        })?;
        let config: Config = toml::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    /// Override one field by dotted key, e.g. `ewma_alpha=0.5` or
    /// `mfcc.n_coeffs=20`. The value is parsed as a TOML literal, falling back
    /// to a string for paths and names.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<(), CoreError> {
        let mut doc: toml::Value =
            toml::Value::try_from(&*self).map_err(|e| CoreError::ConfigOverride {
                key: key.to_string(),
                reason: e.to_string(),
            })?;

        let parsed: toml::Value = toml::from_str::<toml::Value>(&format!("v = {value}"))
            .ok()
            .and_then(|t| t.get("v").cloned())
            .unwrap_or_else(|| toml::Value::String(value.to_string()));

        let mut node = &mut doc;
        let parts: Vec<&str> = key.split('.').collect();
        for (i, part) in parts.iter().enumerate() {
            let table = node.as_table_mut().ok_or_else(|| CoreError::ConfigOverride {
                key: key.to_string(),
                reason: format!("`{}` is not a section", parts[..i].join(".")),
            })?;
            if i == parts.len() - 1 {
                if !table.contains_key(*part) {
                    return Err(CoreError::ConfigOverride {
                        key: key.to_string(),
                        reason: "no such config field".to_string(),
                    });
                }
                table.insert(part.to_string(), parsed);
                break;
            }
            node = table.get_mut(*part).ok_or_else(|| CoreError::ConfigOverride {
                key: key.to_string(),
                reason: "no such config section".to_string(),
            })?;
        }

        let updated: Config = doc.try_into().map_err(|e| CoreError::ConfigOverride {
            key: key.to_string(),
            reason: e.to_string(),
        })?;
        updated.validate()?;
        *self = updated;
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        fn positive(name: &'static str, v: f64) -> Result<(), CoreError> {
            if v > 0.0 {
                Ok(())
            } else {
                Err(CoreError::invalid(name, "must be strictly positive"))
            }
        }
        positive("latency_threshold_ms", self.latency_threshold_ms as f64)?;
        positive("auth_distance_threshold", self.auth_distance_threshold)?;
        positive("permanence_window_ms", self.permanence_window_ms as f64)?;
        positive("announce_min_interval_ms", self.announce_min_interval_ms as f64)?;
        positive("age_pitch_threshold_hz", self.age_pitch_threshold_hz)?;
        if !(self.ewma_alpha > 0.0 && self.ewma_alpha <= 1.0) {
            return Err(CoreError::invalid("ewma_alpha", "must lie in (0, 1]"));
        }
        if self.mfcc.sample_rate == 0 || self.mfcc.n_coeffs == 0 || self.mfcc.n_filters == 0 {
            return Err(CoreError::invalid("mfcc", "sample_rate, n_filters, n_coeffs must be > 0"));
        }
        if self.mfcc.n_coeffs > self.mfcc.n_filters {
            return Err(CoreError::invalid("mfcc", "n_coeffs cannot exceed n_filters"));
        }
        if self.pitch.min_hz <= 0.0 || self.pitch.max_hz <= self.pitch.min_hz {
            return Err(CoreError::invalid("pitch", "need 0 < min_hz < max_hz"));
        }
        if !(self.scene.near_area_fraction > 0.0 && self.scene.near_area_fraction <= 1.0) {
            return Err(CoreError::invalid("scene.near_area_fraction", "must lie in (0, 1]"));
        }
        Ok(())
    }
}
