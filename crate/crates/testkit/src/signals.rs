//! Deterministic synthetic audio: pure tones, filtered-noise speaker
//! mixtures, and seeded random test signals.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Pure sine tone. `amplitude` ≤ 1 keeps samples in range.
pub fn tone(freq_hz: f64, sample_rate: u32, duration_s: f64, amplitude: f64) -> Vec<f64> {
    let n = (sample_rate as f64 * duration_s) as usize;
    (0..n)
        .map(|i| amplitude * (2.0 * std::f64::consts::PI * freq_hz * i as f64 / sample_rate as f64).sin())
        .collect()
}

/// White noise in [-1, 1], seeded.
pub fn white_noise(seed: u64, len: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// One-pole lowpass: y[n] = (1-c)·x[n] + c·y[n-1].
pub fn one_pole_lowpass(samples: &[f64], coefficient: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(samples.len());
    let mut prev = 0.0;
    for &x in samples {
        prev = (1.0 - coefficient) * x + coefficient * prev;
        out.push(prev);
    }
    out
}

/// A "speaker": a fixed three-tone chord plus speaker-specific filtered
/// noise. Clips of the same speaker differ only in their noise realization,
/// so same-speaker cepstral profiles cluster tightly while different
/// speakers' spectral envelopes stay far apart.
pub fn speaker_clip(speaker: usize, clip: usize, sample_rate: u32, duration_s: f64) -> Vec<f64> {
    let f1 = 110.0 + 37.0 * speaker as f64;
    let f2 = 310.0 + 53.0 * speaker as f64;
    let f3 = 720.0 + 71.0 * speaker as f64;

    let base = tone(f1, sample_rate, duration_s, 0.30);
    let mid = tone(f2, sample_rate, duration_s, 0.25);
    let high = tone(f3, sample_rate, duration_s, 0.20);

    let seed = (speaker as u64) * 1_000 + clip as u64 + 1;
    let noise = one_pole_lowpass(
        &white_noise(seed, base.len()),
        0.30 + 0.06 * speaker as f64,
    );

    base.iter()
        .zip(&mid)
        .zip(&high)
        .zip(&noise)
        .map(|(((a, b), c), n)| a + b + c + 0.08 * n)
        .collect()
}

/// Random multi-tone-plus-noise signal for oracle sweeps.
pub fn random_signal(seed: u64, sample_rate: u32, duration_s: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = (sample_rate as f64 * duration_s) as usize;
    let tones: Vec<(f64, f64, f64)> = (0..rng.gen_range(1..=4))
        .map(|_| {
            (
                rng.gen_range(80.0..4_000.0),
                rng.gen_range(0.05..0.3),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect();
    let noise_gain: f64 = rng.gen_range(0.0..0.1);
    (0..n)
        .map(|i| {
            let t = i as f64 / sample_rate as f64;
            let mut v: f64 = tones
                .iter()
                .map(|(f, a, p)| a * (std::f64::consts::TAU * f * t + p).sin())
                .sum();
            v += noise_gain * rng.gen_range(-1.0..1.0);
            v
        })
        .collect()
}
