//! Minimal RIFF/WAVE support: 16-bit PCM mono in and out, which is all the
//! enrollment and verification CLI accepts. Unknown chunks are skipped.

use std::io::Read;
use std::path::Path;

use sightline_core::AudioSignal;

use crate::error::VoiceIdError;

fn wav_err(path: &Path, reason: impl Into<String>) -> VoiceIdError {
    VoiceIdError::Wav {
        path: path.display().to_string(),
        reason: reason.into(),
    }
}

/// Read a 16-bit PCM mono file into samples normalized to `[-1, 1)`.
pub fn read_wav_mono_16(path: &Path) -> Result<AudioSignal, VoiceIdError> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| wav_err(path, e.to_string()))?;

    if bytes.len() < 12 || &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(wav_err(path, "not a RIFF/WAVE file"));
    }

    let mut sample_rate: Option<u32> = None;
    let mut data: Option<&[u8]> = None;
    let mut pos = 12;
    while pos + 8 <= bytes.len() {
        let id = &bytes[pos..pos + 4];
        let size = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        let body_end = (pos + 8 + size).min(bytes.len());
        let body = &bytes[pos + 8..body_end];
        match id {
            b"fmt " => {
                if body.len() < 16 {
                    return Err(wav_err(path, "fmt chunk too small"));
                }
                let format = u16::from_le_bytes(body[0..2].try_into().unwrap());
                let channels = u16::from_le_bytes(body[2..4].try_into().unwrap());
                let rate = u32::from_le_bytes(body[4..8].try_into().unwrap());
                let bits = u16::from_le_bytes(body[14..16].try_into().unwrap());
                if format != 1 {
                    return Err(wav_err(path, format!("unsupported format tag {format}, need PCM")));
                }
                if channels != 1 {
                    return Err(wav_err(path, format!("{channels} channels, need mono")));
                }
                if bits != 16 {
                    return Err(wav_err(path, format!("{bits}-bit samples, need 16")));
                }
                sample_rate = Some(rate);
            }
            b"data" => data = Some(body),
            _ => {} // skip LIST, fact, etc.
        }
        // chunks are word-aligned
        pos = pos + 8 + size + (size & 1);
    }

    let sample_rate = sample_rate.ok_or_else(|| wav_err(path, "missing fmt chunk"))?;
    let data = data.ok_or_else(|| wav_err(path, "missing data chunk"))?;
    let samples: Vec<f64> = data
        .chunks_exact(2)
        .map(|b| i16::from_le_bytes([b[0], b[1]]) as f64 / 32_768.0)
        .collect();
    if samples.is_empty() {
        return Err(wav_err(path, "empty data chunk"));
    }
    AudioSignal::new(samples, sample_rate, 0).map_err(VoiceIdError::Core)
}

/// Write samples (clamped to `[-1, 1]`) as 16-bit PCM mono.
pub fn write_wav_mono_16(path: &Path, samples: &[f64], sample_rate: u32) -> Result<(), VoiceIdError> {
    let data_len = samples.len() * 2;
    let mut out = Vec::with_capacity(44 + data_len);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&((36 + data_len) as u32).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // PCM
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&sample_rate.to_le_bytes());
    out.extend_from_slice(&(sample_rate * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes()); // bits
    out.extend_from_slice(b"data");
    out.extend_from_slice(&(data_len as u32).to_le_bytes());
    for &s in samples {
        let v = (s.clamp(-1.0, 1.0) * 32_767.0).round() as i16;
        out.extend_from_slice(&v.to_le_bytes());
    }
    std::fs::write(path, out).map_err(|e| wav_err(path, e.to_string()))
}

/// Linear-interpolation resampling, good enough to bring arbitrary-rate
/// enrollment audio to the pipeline rate.
pub fn resample_linear(samples: &[f64], from_rate: u32, to_rate: u32) -> Vec<f64> {
    if from_rate == to_rate || samples.is_empty() {
        return samples.to_vec();
    }
    let out_len = (samples.len() as u64 * to_rate as u64 / from_rate as u64) as usize;
    (0..out_len)
        .map(|i| {
            let src = i as f64 * from_rate as f64 / to_rate as f64;
            let lo = src.floor() as usize;
            let hi = (lo + 1).min(samples.len() - 1);
            let frac = src - lo as f64;
            samples[lo] * (1.0 - frac) + samples[hi] * frac
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wav_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.wav");
        let samples: Vec<f64> = (0..800)
            .map(|i| (2.0 * std::f64::consts::PI * 440.0 * i as f64 / 16_000.0).sin() * 0.5)
            .collect();
        write_wav_mono_16(&path, &samples, 16_000).unwrap();
        let sig = read_wav_mono_16(&path).unwrap();
        assert_eq!(sig.sample_rate, 16_000);
        assert_eq!(sig.samples.len(), 800);
        for (a, b) in sig.samples.iter().zip(&samples) {
            assert!((a - b).abs() < 1.0 / 32_768.0 + 1e-9);
        }
    }

    #[test]
    fn rejects_stereo_and_garbage() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.wav");
        std::fs::write(&path, b"definitely not a wav file").unwrap();
        assert!(read_wav_mono_16(&path).is_err());
    }

    #[test]
    fn resample_keeps_duration() {
        let samples = vec![0.5; 8_000];
        let out = resample_linear(&samples, 8_000, 16_000);
        assert_eq!(out.len(), 16_000);
        assert!(out.iter().all(|v| (v - 0.5).abs() < 1e-9));
    }
}
