//! Voice profiles and Euclidean-distance verification.

use serde::{Deserialize, Serialize};
use sightline_core::config::MfccParams;
use sightline_core::AudioSignal;

use crate::error::VoiceIdError;
use crate::mfcc::{extract_mfcc, MfccMatrix};

/// An enrolled speaker: per-coefficient mean of their cepstral frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoiceProfile {
    pub user_id: String,
    pub vector: Vec<f64>,
    pub enrolled_at_ms: u64,
}

/// Verification outcome. Accepted means the nearest profile sits strictly
/// inside the distance threshold.
#[derive(Debug, Clone, PartialEq)]
pub enum AuthResult {
    Accepted { user_id: String, distance: f64 },
    Rejected { best_distance: f64 },
}

impl AuthResult {
    pub fn is_accepted(&self) -> bool {
        matches!(self, AuthResult::Accepted { .. })
    }
}

/// Element-wise mean over frames; the aggregation behind every profile.
pub fn make_profile(mfcc: &MfccMatrix) -> Result<Vec<f64>, VoiceIdError> {
    if mfcc.frames.is_empty() {
        return Err(VoiceIdError::EmptyMatrix);
    }
    let n = mfcc.n_coeffs;
    let mut mean = vec![0.0; n];
    for row in &mfcc.frames {
        for (acc, v) in mean.iter_mut().zip(row) {
            *acc += v;
        }
    }
    for v in &mut mean {
        *v /= mfcc.frames.len() as f64;
    }
    Ok(mean)
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64, VoiceIdError> {
    if a.len() != b.len() {
        return Err(VoiceIdError::VectorLength {
            got: b.len(),
            want: a.len(),
        });
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

/// Extract, aggregate, and wrap a profile for `user_id`.
pub fn enroll_profile(
    signal: &AudioSignal,
    params: &MfccParams,
    user_id: impl Into<String>,
    now_ms: u64,
) -> Result<VoiceProfile, VoiceIdError> {
    let vector = make_profile(&extract_mfcc(signal, params)?)?;
    Ok(VoiceProfile {
        user_id: user_id.into(),
        vector,
        enrolled_at_ms: now_ms,
    })
}

/// Verify `signal` against enrolled profiles: nearest neighbour by Euclidean
/// distance, accepted iff that distance is strictly below `threshold`.
///
/// Equidistant profiles tie-break on lexicographic `user_id`; an empty
/// profile list rejects with infinite distance.
pub fn verify(
    signal: &AudioSignal,
    profiles: &[VoiceProfile],
    threshold: f64,
    params: &MfccParams,
) -> Result<AuthResult, VoiceIdError> {
    let candidate = make_profile(&extract_mfcc(signal, params)?)?;
    verify_vector(&candidate, profiles, threshold)
}

/// [`verify`] with the candidate vector already computed.
pub fn verify_vector(
    candidate: &[f64],
    profiles: &[VoiceProfile],
    threshold: f64,
) -> Result<AuthResult, VoiceIdError> {
    if threshold <= 0.0 {
        return Err(VoiceIdError::NonPositiveThreshold);
    }
    let mut best: Option<(&VoiceProfile, f64)> = None;
    for profile in profiles {
        let d = euclidean_distance(candidate, &profile.vector)?;
        best = match best {
            None => Some((profile, d)),
            Some((bp, bd)) => {
                if d < bd || (d == bd && profile.user_id < bp.user_id) {
                    Some((profile, d))
                } else {
                    Some((bp, bd))
                }
            }
        };
    }

    Ok(match best {
        None => AuthResult::Rejected {
            best_distance: f64::INFINITY,
        },
        Some((profile, distance)) if distance < threshold => AuthResult::Accepted {
            user_id: profile.user_id.clone(),
            distance,
        },
        Some((_, best_distance)) => AuthResult::Rejected { best_distance },
    })
}
