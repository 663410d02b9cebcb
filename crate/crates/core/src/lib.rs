//! Shared foundation for the sightline assistive pipeline.
//!
//! This crate holds the domain vocabulary every other crate speaks:
//! audio and frame inputs, fused queries, session context, the per-interaction
//! execution trace, the session clock abstraction, and runtime configuration.
//!
//! Everything here is a plain value object. No I/O beyond config loading and
//! the atomic-write helper, no policy: routing, gating, and rewriting live in
//! the crates that implement them.

pub mod clock;
pub mod config;
pub mod error;
pub mod fsutil;
pub mod trace;
pub mod types;

pub use clock::{Clock, SystemClock, VirtualClock};
pub use config::Config;
pub use error::CoreError;
pub use trace::{ExecutionPath, ExecutionTrace, GateOutcome, SafetyVerdict, StageTiming};
pub use types::{
    position_phrase, AgeRange, AudioSignal, BoundingBox, DepthZone, Detection, DetectionSet,
    Frame, FusedInput, HorizontalZone, ImageData, PixelEncoding, SessionContext, SessionMode,
    UserId,
};
