//! Incremental novelty tracking vs. the brute-force full-history oracle.

use proptest::prelude::*;
use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;
use sightline_core::{BoundingBox, Detection, DetectionSet, Frame};
use sightline_perception::{process_frame, throttle, AnnouncementKind, PerceptionState, PermanenceParams};
use sightline_testkit::novelty_oracle::{reference_run, OracleFrame};

const LABELS: [&str; 5] = ["person", "chair", "table", "door", "cup"];

fn random_sequence(seed: u64) -> Vec<OracleFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let frames = rng.gen_range(1..=50);
    let mut t = 0u64;
    (0..frames)
        .map(|_| {
            t += rng.gen_range(50..=400);
            let mut labels = Vec::new();
            for label in LABELS.iter().take(rng.gen_range(1..=5)) {
                if rng.gen_bool(0.5) {
                    let copies = rng.gen_range(1..=3);
                    for _ in 0..copies {
                        labels.push(label.to_string());
                    }
                }
            }
            (t, labels)
        })
        .collect()
}

fn to_frame(id: u64, oracle_frame: &OracleFrame) -> Frame {
    let items = oracle_frame
        .1
        .iter()
        .map(|l| Detection::new(l.clone(), 0.9, BoundingBox::new(0.2, 0.2, 0.1, 0.1).unwrap()).unwrap())
        .collect();
    Frame::with_detections(id, oracle_frame.0, DetectionSet::new(items).unwrap())
}

fn run_incremental(history: &[OracleFrame], window_ms: u64) -> Vec<Vec<(String, u64)>> {
    let params = PermanenceParams {
        permanence_window_ms: window_ms,
        announce_min_interval_ms: 0,
    };
    let mut state = PerceptionState::new();
    history
        .iter()
        .enumerate()
        .map(|(i, f)| {
            process_frame(&to_frame(i as u64 + 1, f), &mut state, &params, f.0)
                .unwrap()
                .into_iter()
                .map(|a| match a.kind {
                    AnnouncementKind::ObjectAppeared { label, count } => (label, count),
                    other => panic!("unexpected {other:?}"),
                })
                .collect()
        })
        .collect()
}

/// Windows expressed in multiples of a ~200 ms frame interval.
fn windows() -> [u64; 4] {
    [0, 200, 600, 2_000]
}

#[test]
fn incremental_matches_oracle_on_1000_random_sequences() {
    for seed in 0..1_000u64 {
        let history = random_sequence(seed);
        for window in windows() {
            let want = reference_run(&history, window);
            let got = run_incremental(&history, window);
            assert_eq!(got, want, "seed {seed}, window {window}");
        }
    }
}

#[test]
fn larger_windows_never_announce_more() {
    for seed in 0..1_000u64 {
        let history = random_sequence(seed);
        let mut previous: Option<usize> = None;
        for window in windows() {
            let total: usize = run_incremental(&history, window).iter().map(Vec::len).sum();
            if let Some(prev) = previous {
                assert!(
                    total <= prev,
                    "seed {seed}: window {window} announced {total} > {prev}"
                );
            }
            previous = Some(total);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn throttle_conserves_announcements(seed in 0u64..10_000, interval in 0u64..2_000) {
        let history = random_sequence(seed);
        let params = PermanenceParams {
            permanence_window_ms: 0,
            announce_min_interval_ms: interval,
        };
        let mut state = PerceptionState::new();
        let mut produced = 0usize;
        let mut delivered = 0usize;
        for (i, f) in history.iter().enumerate() {
            let pending = process_frame(&to_frame(i as u64 + 1, f), &mut state, &params, f.0).unwrap();
            produced += pending.len();
            let snapshot: Vec<_> = pending.clone();
            let (emitted, deferred) = throttle(pending, &mut state, &params, f.0);
            delivered += emitted.len() + deferred.len();
            // permutation: same multiset of announcements
            let mut lhs: Vec<String> = snapshot.iter().map(|a| format!("{a:?}")).collect();
            let mut rhs: Vec<String> = emitted.iter().chain(&deferred).map(|a| format!("{a:?}")).collect();
            lhs.sort();
            rhs.sort();
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert_eq!(produced, delivered);
    }
}
