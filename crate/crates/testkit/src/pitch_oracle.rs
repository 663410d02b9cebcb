//! Reference fundamental-frequency estimate by direct normalized
//! autocorrelation over the whole lag range.

/// Outcome of the reference pitch search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RefPitch {
    Voiced { f0_hz: f64, lag: usize },
    Unvoiced,
}

/// Normalized autocorrelation r(lag) over the full signal.
pub fn normalized_autocorr(samples: &[f64], lag: usize) -> f64 {
    let n = samples.len();
    if lag >= n {
        return 0.0;
    }
    let mut num = 0.0;
    let mut e0 = 0.0;
    let mut e1 = 0.0;
    for i in 0..(n - lag) {
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
}

/// Estimate F0 by scanning all lags in `[sr/max_hz, sr/min_hz]`, then taking
/// the smallest local-maximum lag whose correlation reaches 90% of the global
/// peak. Picking the smallest qualifying lag avoids locking onto an
/// integer-sample harmonic of the period.
pub fn reference_f0(
    samples: &[f64],
    sample_rate: u32,
    min_hz: f64,
    max_hz: f64,
    voicing_threshold: f64,
) -> RefPitch {
    let energy: f64 = samples.iter().map(|x| x * x).sum();
    if energy == 0.0 {
        return RefPitch::Unvoiced;
    }
    let sr = sample_rate as f64;
    let lag_min = (sr / max_hz).ceil() as usize;
    let lag_max = ((sr / min_hz).floor() as usize).min(samples.len().saturating_sub(1));
    if lag_min == 0 || lag_min > lag_max {
        return RefPitch::Unvoiced;
    }

    let corrs: Vec<f64> = (lag_min..=lag_max)
        .map(|lag| normalized_autocorr(samples, lag))
        .collect();
    let best = corrs.iter().cloned().fold(f64::MIN, f64::max);
    if best < voicing_threshold {
        return RefPitch::Unvoiced;
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
            return RefPitch::Voiced {
                f0_hz: sr / lag as f64,
                lag,
            };
        }
    }
    RefPitch::Unvoiced
}
