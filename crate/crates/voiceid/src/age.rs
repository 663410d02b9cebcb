//! Age-range determination for the public pipeline.
//!
//! The baseline is deliberately simple: an autocorrelation fundamental-
//! frequency estimate compared against a configured pitch threshold. A
//! trained classifier can be injected behind [`AgeClassifier`] to override
//! it. When the voice gives no usable pitch the estimate is `Unknown`, which
//! sends the caller into the spoken confirmation flow ([`confirm_age`]).

use sightline_core::{AgeRange, AudioSignal, Config};

use crate::error::VoiceIdError;

/// Where an age estimate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgeSource {
    /// Derived from vocal features (baseline pitch rule or injected model).
    Acoustic,
    /// Stated out-of-band, e.g. a scenario declaration.
    Declared,
    /// Answered to the spoken confirmation question.
    Prompted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgeEstimate {
    pub range: AgeRange,
    pub source: AgeSource,
    /// `(f0_hz, mean_square_energy)` for acoustic baseline estimates.
    pub feature_summary: Option<(f64, f64)>,
}

impl AgeEstimate {
    pub fn declared(range: AgeRange) -> Self {
        AgeEstimate {
            range,
            source: AgeSource::Declared,
            feature_summary: None,
        }
    }
}

/// Answer to the spoken "is your age above 18?" question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PromptAnswer {
    Yes,
    No,
    NoAnswer,
}

/// Pluggable replacement for the pitch baseline. Returning `None` falls
/// through to the baseline.
pub trait AgeClassifier: Send + Sync {
    fn classify(&self, signal: &AudioSignal) -> Option<AgeRange>;
}

const MIN_SIGNAL_MS: u64 = 100;

/// Baseline estimate: autocorrelation F0, `Under18` iff the fundamental is at
/// or above the configured pitch threshold. Unvoiced or zero-energy input
/// yields `Unknown`.
pub fn estimate_age_range(signal: &AudioSignal, config: &Config) -> Result<AgeEstimate, VoiceIdError> {
    estimate_age_range_with(signal, config, None)
}

/// [`estimate_age_range`] with an optional injected classifier that overrides
/// the baseline when it produces an answer.
pub fn estimate_age_range_with(
    signal: &AudioSignal,
    config: &Config,
    classifier: Option<&dyn AgeClassifier>,
) -> Result<AgeEstimate, VoiceIdError> {
    let need = (signal.sample_rate as u64 * MIN_SIGNAL_MS / 1000) as usize;
    if signal.samples.len() < need {
        return Err(VoiceIdError::SignalTooShort {
            got_samples: signal.samples.len(),
            need_samples: need,
        });
    }

    if let Some(model) = classifier {
        if let Some(range) = model.classify(signal) {
            return Ok(AgeEstimate {
                range,
                source: AgeSource::Acoustic,
                feature_summary: None,
            });
        }
    }

    let estimate = match estimate_f0(signal, config) {
        Some((f0_hz, energy)) => {
            let range = if f0_hz >= config.age_pitch_threshold_hz {
                AgeRange::Under18
            } else {
                AgeRange::Over18
            };
            AgeEstimate {
                range,
                source: AgeSource::Acoustic,
                feature_summary: Some((f0_hz, energy)),
            }
        }
        None => AgeEstimate {
            range: AgeRange::Unknown,
            source: AgeSource::Acoustic,
            feature_summary: None,
        },
    };
    Ok(estimate)
}

/// Resolve an `Unknown` estimate from the spoken confirmation. `NoAnswer`
/// defaults to `Under18` so silence never unlocks adult content.
pub fn confirm_age(answer: PromptAnswer) -> AgeEstimate {
    let range = match answer {
        PromptAnswer::Yes => AgeRange::Over18,
        PromptAnswer::No | PromptAnswer::NoAnswer => AgeRange::Under18,
    };
    AgeEstimate {
        range,
        source: AgeSource::Prompted,
        feature_summary: None,
    }
}

/// Fundamental frequency by normalized autocorrelation.
///
/// Scans lags for pitches in `[pitch.min_hz, pitch.max_hz]`; among lags whose
/// correlation reaches 90% of the global peak, the smallest local maximum
/// wins. That keeps integer-sample harmonics of the period (2x, 3x the lag)
/// from masquerading as the fundamental. Returns `(f0_hz, mean_square_energy)`
/// or `None` for unvoiced input.
fn estimate_f0(signal: &AudioSignal, config: &Config) -> Option<(f64, f64)> {
    let samples = &signal.samples;
    let energy: f64 = samples.iter().map(|x| x * x).sum();
    if energy == 0.0 {
        return None;
    }
    let sr = signal.sample_rate as f64;
    let lag_min = (sr / config.pitch.max_hz).ceil() as usize;
    let lag_max = ((sr / config.pitch.min_hz).floor() as usize).min(samples.len().saturating_sub(1));
    if lag_min == 0 || lag_min > lag_max {
        return None;
    }

    let corrs: Vec<f64> = (lag_min..=lag_max)
        .map(|lag| {
            let n = samples.len() - lag;
            let mut num = 0.0;
            let mut e0 = 0.0;
            let mut e1 = 0.0;
            for i in 0..n {
                num += samples[i] * samples[i + lag];
                e0 += samples[i] * samples[i];
                e1 += samples[i + lag] * samples[i + lag];
            }
            let denom = (e0 * e1).sqrt();
            if denom == 0.0 {
                0.0
            } else {
                num / denom
            }
        })
        .collect();

    let best = corrs.iter().cloned().fold(f64::MIN, f64::max);
    if best < config.pitch.voicing_threshold {
        return None;
    }
    let cutoff = 0.9 * best;
    for (i, &r) in corrs.iter().enumerate() {
        if r < cutoff {
            continue;
        }
        let left_ok = i == 0 || corrs[i - 1] <= r;
        let right_ok = i + 1 >= corrs.len() || corrs[i + 1] <= r;
        if left_ok && right_ok {
            let lag = lag_min + i;
            return Some((sr / lag as f64, energy / samples.len() as f64));
        }
    }
    None
}
