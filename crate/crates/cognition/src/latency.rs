//! Latency prediction and execution-path selection.
//!
//! The predictor is an exponentially weighted moving average of observed
//! backend response times, with a bounded ring of raw samples kept for
//! percentile reporting. Routing is strict: the fallback path is taken only
//! when the prediction *exceeds* the threshold, and an empty history is
//! optimistic (multimodal).

use std::collections::VecDeque;

use sightline_core::ExecutionPath;

use crate::error::CognitionError;

/// Raw samples kept per backend for percentile reporting.
pub const SAMPLE_RING_CAPACITY: usize = 32;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LatencyStats {
    ring: VecDeque<f64>,
    ewma: Option<f64>,
    sample_count: u64,
}

impl LatencyStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ewma_ms(&self) -> Option<f64> {
        self.ewma
    }

    pub fn sample_count(&self) -> u64 {
        self.sample_count
    }

    /// Most recent samples, oldest first (bounded by [`SAMPLE_RING_CAPACITY`]).
    pub fn recent_samples(&self) -> impl Iterator<Item = f64> + '_ {
        self.ring.iter().copied()
    }
}

/// Fold one observed response time into the stats. The first sample becomes
/// the EWMA seed; later samples blend as `alpha·observed + (1-alpha)·ewma`.
pub fn update_latency(
    stats: &mut LatencyStats,
    observed_ms: f64,
    alpha: f64,
) -> Result<(), CognitionError> {
    if !(observed_ms >= 0.0) {
        return Err(CognitionError::InvalidLatency(observed_ms));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(CognitionError::InvalidAlpha(alpha));
    }
    stats.ewma = Some(match stats.ewma {
        None => observed_ms,
        Some(current) => alpha * observed_ms + (1.0 - alpha) * current,
    });
    if stats.ring.len() == SAMPLE_RING_CAPACITY {
        stats.ring.pop_front();
    }
    stats.ring.push_back(observed_ms);
    stats.sample_count += 1;
    Ok(())
}

/// Pick the execution path from the current prediction. "Exceeds" is strict:
/// a prediction equal to the threshold still runs multimodal.
pub fn select_path(stats: &LatencyStats, latency_threshold_ms: u64) -> ExecutionPath {
    match stats.ewma {
        Some(ewma) if ewma > latency_threshold_ms as f64 => ExecutionPath::TextFallback,
        _ => ExecutionPath::Multimodal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_sample_seeds_the_ewma() {
        let mut stats = LatencyStats::new();
        update_latency(&mut stats, 5_620.0, 0.3).unwrap();
        assert_eq!(stats.ewma_ms(), Some(5_620.0));
        assert_eq!(stats.sample_count(), 1);
    }

    #[test]
    fn midpoint_blend_at_alpha_half() {
        let mut stats = LatencyStats::new();
        update_latency(&mut stats, 4_000.0, 0.5).unwrap();
        update_latency(&mut stats, 6_000.0, 0.5).unwrap();
        assert_eq!(stats.ewma_ms(), Some(5_000.0));
    }

    #[test]
    fn alpha_one_tracks_the_last_observation() {
        let mut stats = LatencyStats::new();
        for v in [100.0, 900.0, 250.0] {
            update_latency(&mut stats, v, 1.0).unwrap();
            assert_eq!(stats.ewma_ms(), Some(v));
        }
    }

    #[test]
    fn negative_latency_and_bad_alpha_are_rejected() {
        let mut stats = LatencyStats::new();
        assert!(update_latency(&mut stats, -1.0, 0.5).is_err());
        assert!(update_latency(&mut stats, f64::NAN, 0.5).is_err());
        assert!(update_latency(&mut stats, 10.0, 0.0).is_err());
        assert!(update_latency(&mut stats, 10.0, 1.5).is_err());
        assert_eq!(stats.sample_count(), 0);
    }

    #[test]
    fn ring_is_bounded() {
        let mut stats = LatencyStats::new();
        for i in 0..100 {
            update_latency(&mut stats, i as f64, 0.5).unwrap();
        }
        assert_eq!(stats.recent_samples().count(), SAMPLE_RING_CAPACITY);
        assert_eq!(stats.sample_count(), 100);
        assert_eq!(stats.recent_samples().next(), Some(68.0));
    }

    #[test]
    fn path_selection_is_strict_at_the_threshold() {
        let mut stats = LatencyStats::new();
        update_latency(&mut stats, 6_000.0, 1.0).unwrap();
        assert_eq!(select_path(&stats, 5_000), ExecutionPath::TextFallback);

        let mut boundary = LatencyStats::new();
        update_latency(&mut boundary, 5_000.0, 1.0).unwrap();
        assert_eq!(select_path(&boundary, 5_000), ExecutionPath::Multimodal);
    }

    #[test]
    fn no_samples_starts_optimistic() {
        assert_eq!(select_path(&LatencyStats::new(), 1), ExecutionPath::Multimodal);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn ewma_stays_within_sample_bounds(
            samples in prop::collection::vec(0.0f64..100_000.0, 1..40),
            alpha in 0.01f64..=1.0,
        ) {
            let mut stats = LatencyStats::new();
            for &s in &samples {
                update_latency(&mut stats, s, alpha).unwrap();
            }
            let min = samples.iter().cloned().fold(f64::MAX, f64::min);
            let max = samples.iter().cloned().fold(f64::MIN, f64::max);
            let ewma = stats.ewma_ms().unwrap();
            prop_assert!(ewma >= min - 1e-9 && ewma <= max + 1e-9);
        }

        #[test]
        fn path_depends_only_on_ewma_and_threshold(
            samples in prop::collection::vec(0.0f64..100_000.0, 0..40),
            threshold in 1u64..50_000,
        ) {
            let mut a = LatencyStats::new();
            let mut b = LatencyStats::new();
            for &s in &samples {
                update_latency(&mut a, s, 0.3).unwrap();
                update_latency(&mut b, s, 0.3).unwrap();
            }
            prop_assert_eq!(select_path(&a, threshold), select_path(&b, threshold));
        }
    }
}
