//! Cepstral pipeline vs. the brute-force reference, plus the metric and
//! threshold properties the verifier must satisfy.

use proptest::prelude::*;
use sightline_core::{AudioSignal, Config};
use sightline_testkit::mfcc_oracle::{reference_mfcc, reference_profile, OracleParams};
use sightline_testkit::signals::{random_signal, tone};
use sightline_voiceid::{
    enroll_profile, euclidean_distance, extract_mfcc, make_profile, verify, AuthResult,
};

const TOL: f64 = 1e-6;

fn signal(samples: Vec<f64>) -> AudioSignal {
    AudioSignal::new(samples, 16_000, 0).unwrap()
}

fn assert_matrix_close(got: &[Vec<f64>], want: &[Vec<f64>]) {
    assert_eq!(got.len(), want.len(), "frame count");
    for (g_row, w_row) in got.iter().zip(want) {
        assert_eq!(g_row.len(), w_row.len());
        for (g, w) in g_row.iter().zip(w_row) {
            assert!((g - w).abs() <= TOL, "cell {g} vs {w}");
        }
    }
}

#[test]
fn tone_440hz_matches_oracle_per_cell() {
    let config = Config::default();
    let sig = signal(tone(440.0, 16_000, 0.3, 0.5));
    let got = extract_mfcc(&sig, &config.mfcc).unwrap();
    let want = reference_mfcc(&sig.samples, &OracleParams::speech_defaults()).unwrap();
    assert_matrix_close(&got.frames, &want);
}

#[test]
fn twenty_random_signals_match_oracle_within_1e6() {
    let config = Config::default();
    let oracle_params = OracleParams::speech_defaults();
    for seed in 0..20u64 {
        let samples = random_signal(seed, 16_000, 0.25);
        let got = extract_mfcc(&signal(samples.clone()), &config.mfcc).unwrap();
        let want = reference_mfcc(&samples, &oracle_params).unwrap();
        assert_matrix_close(&got.frames, &want);
    }
}

#[test]
fn complete_frames_are_shift_invariant_under_concatenation() {
    // Frames fully inside the first copy of a doubled signal must equal the
    // frames of a single-copy run.
    let config = Config::default();
    let base = tone(523.25, 16_000, 0.2, 0.4);
    let single = extract_mfcc(&signal(base.clone()), &config.mfcc).unwrap();

    let mut doubled = base.clone();
    doubled.extend_from_slice(&base);
    let both = extract_mfcc(&signal(doubled), &config.mfcc).unwrap();

    for (i, row) in single.frames.iter().enumerate() {
        for (a, b) in row.iter().zip(&both.frames[i]) {
            assert!((a - b).abs() <= TOL);
        }
    }
}

#[test]
fn profile_of_oracle_rows_matches_oracle_profile() {
    let config = Config::default();
    let samples = random_signal(99, 16_000, 0.3);
    let got = make_profile(&extract_mfcc(&signal(samples.clone()), &config.mfcc).unwrap()).unwrap();
    let want = reference_profile(&reference_mfcc(&samples, &OracleParams::speech_defaults()).unwrap());
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() <= TOL);
    }
}

#[test]
fn self_match_accepts_at_every_positive_threshold() {
    let config = Config::default();
    for seed in [3u64, 17, 42] {
        let sig = signal(random_signal(seed, 16_000, 0.3));
        let profile = enroll_profile(&sig, &config.mfcc, "self", 0).unwrap();
        for threshold in [1e-6, 0.5, 10.0, 1e6] {
            let result = verify(&sig, std::slice::from_ref(&profile), threshold, &config.mfcc).unwrap();
            match result {
                AuthResult::Accepted { distance, .. } => assert_eq!(distance, 0.0),
                other => panic!("self-match rejected at {threshold}: {other:?}"),
            }
        }
    }
}

#[test]
fn acceptance_is_monotone_in_threshold() {
    let config = Config::default();
    let enrolled = signal(random_signal(7, 16_000, 0.3));
    let probe = signal(random_signal(8, 16_000, 0.3));
    let profile = enroll_profile(&enrolled, &config.mfcc, "a", 0).unwrap();

    let mut accepted_at = Vec::new();
    for threshold in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0] {
        let accepted = verify(&probe, std::slice::from_ref(&profile), threshold, &config.mfcc)
            .unwrap()
            .is_accepted();
        accepted_at.push(accepted);
    }
    // once accepted, every larger threshold accepts too
    let first_accept = accepted_at.iter().position(|a| *a);
    if let Some(i) = first_accept {
        assert!(accepted_at[i..].iter().all(|a| *a), "{accepted_at:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euclidean_metric_properties(
        a in prop::collection::vec(-50.0f64..50.0, 13),
        b in prop::collection::vec(-50.0f64..50.0, 13),
        c in prop::collection::vec(-50.0f64..50.0, 13),
    ) {
        let dab = euclidean_distance(&a, &b).unwrap();
        let dba = euclidean_distance(&b, &a).unwrap();
        let dac = euclidean_distance(&a, &c).unwrap();
        let dcb = euclidean_distance(&c, &b).unwrap();
        prop_assert!(dab >= 0.0);
        prop_assert!((dab - dba).abs() < 1e-9);
        prop_assert!(euclidean_distance(&a, &a).unwrap() == 0.0);
        // triangle inequality with float slack
        prop_assert!(dab <= dac + dcb + 1e-9);
    }
}
