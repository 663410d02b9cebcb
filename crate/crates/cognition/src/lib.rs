//! The cognition engine: everything between a fused input and a spoken
//! answer.
//!
//! An interaction flows route → reason → rewrite. Routing predicts the
//! multimodal engine's response time with an EWMA over its recent latencies
//! and falls back to scene-text plus a text-only engine when the prediction
//! exceeds the configured limit. Whatever the backend returns is passed
//! through the safety rewrite rules before delivery, and every stage lands in
//! the interaction's execution trace.

pub mod backend;
pub mod error;
pub mod latency;
pub mod pipeline;
pub mod prompt;
pub mod remote;
pub mod scene;

pub use backend::{
    reject_frame_if_text_only, BackendRegistry, BackendResponse, Capability, ReasoningBackend,
};
pub use error::CognitionError;
pub use latency::{select_path, update_latency, LatencyStats, SAMPLE_RING_CAPACITY};
pub use pipeline::{answer, reserve_frame, AnswerContext, STAGE_REASON, STAGE_REWRITE, STAGE_ROUTE};
pub use prompt::{build_prompt, Prompt, BVI_SYSTEM_INSTRUCTIONS};
pub use remote::{RemoteBackend, RemoteImage, RemoteReply, RemoteRequest};
pub use scene::{scene_to_text, SceneDescription, EMPTY_SCENE_SENTENCE};
pub use sightline_core::ExecutionPath;
