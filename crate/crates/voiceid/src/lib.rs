//! Voice identity and age determination.
//!
//! The private pipeline authenticates its single user by comparing a
//! mel-frequency cepstral profile of the incoming voice against enrolled
//! profiles with Euclidean distance. The public pipeline instead estimates an
//! age range from vocal pitch (or a plugged-in classifier) and falls back to
//! a spoken confirmation question when the voice is ambiguous.
//!
//! Everything is a pure function of its inputs; profile persistence lives in
//! the store crate.

pub mod age;
pub mod error;
pub mod mfcc;
pub mod profile;
pub mod wav;

pub use age::{
    confirm_age, estimate_age_range, estimate_age_range_with, AgeClassifier, AgeEstimate,
    AgeSource, PromptAnswer,
};
pub use error::VoiceIdError;
pub use mfcc::{extract_mfcc, MfccMatrix};
pub use profile::{enroll_profile, euclidean_distance, make_profile, verify, AuthResult, VoiceProfile};
