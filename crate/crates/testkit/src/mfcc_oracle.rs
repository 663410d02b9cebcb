//! Brute-force cepstral pipeline: naive O(n²) DFT, textbook mel filterbank,
//! direct DCT-II sums. The reference the fast implementation must match to
//! 1e-6 per cell.

/// Pipeline parameters, mirrored from the production config but owned here so
/// the oracle stays self-contained.
#[derive(Debug, Clone)]
pub struct OracleParams {
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

impl OracleParams {
    /// The common speech defaults: 16 kHz, 25 ms Hamming window, 10 ms hop,
    /// 26 mel filters over 0–8 kHz, 13 coefficients.
    pub fn speech_defaults() -> Self {
        OracleParams {
            sample_rate: 16_000,
            pre_emphasis: 0.97,
            window_ms: 25,
            hop_ms: 10,
            n_filters: 26,
            n_coeffs: 13,
            fft_size: 512,
            mel_low_hz: 0.0,
            mel_high_hz: 8_000.0,
        }
    }

    pub fn window_len(&self) -> usize {
        (self.sample_rate as u64 * self.window_ms as u64 / 1000) as usize
    }

    pub fn hop_len(&self) -> usize {
        (self.sample_rate as u64 * self.hop_ms as u64 / 1000) as usize
    }
}

pub const LOG_FLOOR: f64 = 1e-10;

fn hz_to_mel(hz: f64) -> f64 {
    2595.0 * (1.0 + hz / 700.0).log10()
}

fn mel_to_hz(mel: f64) -> f64 {
    700.0 * (10f64.powf(mel / 2595.0) - 1.0)
}

/// Magnitude spectrum of one zero-padded frame by direct DFT summation.
fn naive_magnitude_spectrum(frame: &[f64], fft_size: usize) -> Vec<f64> {
    let bins = fft_size / 2 + 1;
    let mut mags = Vec::with_capacity(bins);
    for k in 0..bins {
        let mut re = 0.0;
        let mut im = 0.0;
        for (n, &x) in frame.iter().enumerate() {
            let angle = -2.0 * std::f64::consts::PI * k as f64 * n as f64 / fft_size as f64;
            re += x * angle.cos();
            im += x * angle.sin();
        }
        mags.push((re * re + im * im).sqrt());
    }
    mags
}

/// Triangular filters over discrete FFT bins, HTK-style mel spacing.
fn filterbank(params: &OracleParams) -> Vec<Vec<f64>> {
    let bins = params.fft_size / 2 + 1;
    let mel_lo = hz_to_mel(params.mel_low_hz);
    let mel_hi = hz_to_mel(params.mel_high_hz);
    let n = params.n_filters;

    let mut bin_points = Vec::with_capacity(n + 2);
    for i in 0..(n + 2) {
        let mel = mel_lo + (mel_hi - mel_lo) * i as f64 / (n + 1) as f64;
        let hz = mel_to_hz(mel);
        let bin = ((params.fft_size + 1) as f64 * hz / params.sample_rate as f64).floor() as usize;
        bin_points.push(bin.min(bins - 1));
    }

    let mut filters = vec![vec![0.0; bins]; n];
    for m in 0..n {
        let (lo, mid, hi) = (bin_points[m], bin_points[m + 1], bin_points[m + 2]);
        for k in lo..mid {
            filters[m][k] = (k - lo) as f64 / (mid - lo) as f64;
        }
        for k in mid..hi {
            filters[m][k] = (hi - k) as f64 / (hi - mid) as f64;
        }
        if mid == hi && mid < bins {
            filters[m][mid] = 1.0;
        }
    }
    filters
}

/// Orthonormal DCT-II of `values`, first `n_out` coefficients.
fn dct2_ortho(values: &[f64], n_out: usize) -> Vec<f64> {
    let m = values.len();
    let mut out = Vec::with_capacity(n_out);
    for i in 0..n_out {
        let mut sum = 0.0;
        for (j, &v) in values.iter().enumerate() {
            sum += v * (std::f64::consts::PI * i as f64 * (j as f64 + 0.5) / m as f64).cos();
        }
        let scale = if i == 0 {
            (1.0 / m as f64).sqrt()
        } else {
            (2.0 / m as f64).sqrt()
        };
        out.push(scale * sum);
    }
    out
}

/// Full reference pipeline. Returns one coefficient row per frame, or `None`
/// when the signal is shorter than one window.
pub fn reference_mfcc(samples: &[f64], params: &OracleParams) -> Option<Vec<Vec<f64>>> {
    let window = params.window_len();
    let hop = params.hop_len();
    if samples.len() < window || window == 0 || hop == 0 {
        return None;
    }

    // pre-emphasis over the whole signal
    let mut emphasized = Vec::with_capacity(samples.len());
    emphasized.push(samples[0]);
    for n in 1..samples.len() {
        emphasized.push(samples[n] - params.pre_emphasis * samples[n - 1]);
    }

    let hamming: Vec<f64> = (0..window)
        .map(|n| {
            0.54 - 0.46 * (2.0 * std::f64::consts::PI * n as f64 / (window - 1) as f64).cos()
        })
        .collect();
    let filters = filterbank(params);

    let num_frames = 1 + (samples.len() - window) / hop;
    let mut rows = Vec::with_capacity(num_frames);
    for f in 0..num_frames {
        let start = f * hop;
        let mut frame: Vec<f64> = emphasized[start..start + window]
            .iter()
            .zip(&hamming)
            .map(|(x, w)| x * w)
            .collect();
        frame.resize(params.fft_size, 0.0);

        let mags = naive_magnitude_spectrum(&frame, params.fft_size);
        let log_energies: Vec<f64> = filters
            .iter()
            .map(|filt| {
                let e: f64 = filt.iter().zip(&mags).map(|(w, m)| w * m).sum();
                e.max(LOG_FLOOR).ln()
            })
            .collect();
        rows.push(dct2_ortho(&log_energies, params.n_coeffs));
    }
    Some(rows)
}

/// Per-coefficient mean over frames: the profile vector the verifier compares.
pub fn reference_profile(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows[0].len();
    let mut mean = vec![0.0; n];
    for row in rows {
        for (acc, v) in mean.iter_mut().zip(row) {
            *acc += v;
        }
    }
    for v in &mut mean {
        *v /= rows.len() as f64;
    }
    mean
}
