//! Mel-frequency cepstral coefficient extraction.
//!
//! Standard cepstral pipeline: pre-emphasis, Hamming-windowed framing,
//! magnitude spectrum, triangular mel filterbank, floored log, orthonormal
//! DCT-II, first `n_coeffs` coefficients kept. Deterministic for fixed
//! parameters; all arithmetic in f64.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use sightline_core::config::MfccParams;
use sightline_core::AudioSignal;

use crate::error::VoiceIdError;

/// Energies below this are clamped before the log.
pub const LOG_FLOOR: f64 = 1e-10;

/// One coefficient row per analysis frame.
#[derive(Debug, Clone, PartialEq)]
pub struct MfccMatrix {
    pub frames: Vec<Vec<f64>>,
    pub n_coeffs: usize,
    pub frame_hop_ms: u32,
    pub frame_len_ms: u32,
}

impl MfccMatrix {
    pub fn num_frames(&self) -> usize {
        self.frames.len()
    }
}

fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * (1.0 + hz / 700.0).log10()
}

fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (10f64.powf(mel / 2595.0) - 1.0)
}

/// Triangular mel filters over discrete FFT bins. Returned as
/// `(first_bin, weights)` pairs so the per-frame dot product skips the zeros.
fn build_filterbank(params: &MfccParams) -> Vec<(usize, Vec<f64>)> {
    let bins = params.fft_size / 2 + 1;
    let mel_lo = hz_to_mel(params.mel_low_hz);
    let mel_hi = hz_to_mel(params.mel_high_hz);

    let bin_points: Vec<usize> = (0..params.n_filters + 2)
        .map(|i| {
            let mel = mel_lo + (mel_hi - mel_lo) * i as f64 / (params.n_filters + 1) as f64;
            let hz = mel_to_hz(mel);
            let bin = ((params.fft_size + 1) as f64 * hz / params.sample_rate as f64).floor() as usize;
            bin.min(bins - 1)
        })
        .collect();

    (0..params.n_filters)
        .map(|m| {
            let (lo, mid, hi) = (bin_points[m], bin_points[m + 1], bin_points[m + 2]);
            let mut weights = vec![0.0; hi.saturating_sub(lo).max(1)];
            for k in lo..mid {
                weights[k - lo] = (k - lo) as f64 / (mid - lo) as f64;
            }
            for k in mid..hi {
                weights[k - lo] = (hi - k) as f64 / (hi - mid) as f64;
            }
            if mid == hi && mid < bins {
                weights[mid - lo] = 1.0;
            }
            (lo, weights)
        })
        .collect()
}

fn dct2_ortho_coefficients(n_in: usize, n_out: usize) -> Vec<Vec<f64>> {
    (0..n_out)
        .map(|i| {
            let scale = if i == 0 {
                (1.0 / n_in as f64).sqrt()
            } else {
                (2.0 / n_in as f64).sqrt()
            };
            (0..n_in)
                .map(|j| {
                    scale
                        * (std::f64::consts::PI * i as f64 * (j as f64 + 0.5) / n_in as f64).cos()
                })
                .collect()
        })
        .collect()
}

/// Extract the cepstral matrix for `signal`.
///
/// The signal must already be at `params.sample_rate` (see
/// [`crate::wav::resample_linear`]) and at least one window long.
pub fn extract_mfcc(signal: &AudioSignal, params: &MfccParams) -> Result<MfccMatrix, VoiceIdError> {
    if signal.sample_rate != params.sample_rate {
        return Err(VoiceIdError::SampleRateMismatch {
            got: signal.sample_rate,
            want: params.sample_rate,
        });
    }
    let window = (params.sample_rate as u64 * params.window_ms as u64 / 1000) as usize;
    let hop = (params.sample_rate as u64 * params.hop_ms as u64 / 1000) as usize;
    let samples = &signal.samples;
    if samples.len() < window {
        return Err(VoiceIdError::SignalTooShort {
            got_samples: samples.len(),
            need_samples: window,
        });
    }
    debug_assert!(window <= params.fft_size, "window must fit the FFT size");

    let mut emphasized = Vec::with_capacity(samples.len());
    emphasized.push(samples[0]);
    for n in 1..samples.len() {
        emphasized.push(samples[n] - params.pre_emphasis * samples[n - 1]);
    }

    let hamming: Vec<f64> = (0..window)
        .map(|n| 0.54 - 0.46 * (2.0 * std::f64::consts::PI * n as f64 / (window - 1) as f64).cos())
        .collect();
    let filters = build_filterbank(params);
    let dct_rows = dct2_ortho_coefficients(params.n_filters, params.n_coeffs);

    let fft = FftPlanner::<f64>::new().plan_fft_forward(params.fft_size);
    let bins = params.fft_size / 2 + 1;
    let num_frames = 1 + (samples.len() - window) / hop;

    let mut frames = Vec::with_capacity(num_frames);
    let mut buffer = vec![Complex::new(0.0, 0.0); params.fft_size];
    for f in 0..num_frames {
        let start = f * hop;
        for (i, slot) in buffer.iter_mut().enumerate() {
            *slot = if i < window {
                Complex::new(emphasized[start + i] * hamming[i], 0.0)
            } else {
                Complex::new(0.0, 0.0)
            };
        }
        fft.process(&mut buffer);

        let mags: Vec<f64> = buffer[..bins].iter().map(|c| c.norm()).collect();
        let log_energies: Vec<f64> = filters
            .iter()
            .map(|(first, weights)| {
                let e: f64 = weights
                    .iter()
                    .zip(&mags[*first..])
                    .map(|(w, m)| w * m)
                    .sum();
                e.max(LOG_FLOOR).ln()
            })
            .collect();

        let row: Vec<f64> = dct_rows
            .iter()
            .map(|basis| basis.iter().zip(&log_energies).map(|(b, e)| b * e).sum())
            .collect();
        frames.push(row);
    }

    Ok(MfccMatrix {
        frames,
        n_coeffs: params.n_coeffs,
        frame_hop_ms: params.hop_ms,
        frame_len_ms: params.window_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sightline_core::Config;

    fn params() -> MfccParams {
        Config::default().mfcc
    }

    fn signal(samples: Vec<f64>) -> AudioSignal {
        AudioSignal::new(samples, 16_000, 0).unwrap()
    }

    #[test]
    fn silence_yields_identical_constant_rows() {
        let m = extract_mfcc(&signal(vec![0.0; 16_000]), &params()).unwrap();
        assert!(m.num_frames() > 90);
        let first = &m.frames[0];
        // c0 is the floored-log constant, the rest exactly zero
        assert!((first[0] - 26f64.sqrt() * LOG_FLOOR.ln()).abs() < 1e-9);
        for c in &first[1..] {
            assert!(c.abs() < 1e-12);
        }
        for row in &m.frames {
            assert_eq!(row, first);
        }
    }

    #[test]
    fn too_short_signal_is_rejected() {
        // one window is 400 samples at 16 kHz / 25 ms
        let err = extract_mfcc(&signal(vec![0.1; 399]), &params()).unwrap_err();
        assert!(matches!(err, VoiceIdError::SignalTooShort { need_samples: 400, .. }));
        assert!(extract_mfcc(&signal(vec![0.1; 400]), &params()).is_ok());
    }

    #[test]
    fn sample_rate_mismatch_is_rejected() {
        let sig = AudioSignal::new(vec![0.1; 8_000], 8_000, 0).unwrap();
        assert!(matches!(
            extract_mfcc(&sig, &params()),
            Err(VoiceIdError::SampleRateMismatch { got: 8_000, want: 16_000 })
        ));
    }
}
