//! Reasoning backend interface and the in-process registry.

use sightline_core::Frame;

use crate::error::CognitionError;
use crate::prompt::Prompt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capability {
    TextOnly,
    Multimodal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BackendResponse {
    pub text: String,
    /// Response time as measured at the backend (model latency for mocks,
    /// wall time for live services).
    pub latency_ms: u64,
}

/// One reasoning engine. Implementations must be reentrant; the pipeline may
/// call them from concurrent sessions.
pub trait ReasoningBackend: Send + Sync {
    fn name(&self) -> &str;
    fn capability(&self) -> Capability;

    /// Answer the prompt. Text-only backends must reject a frame (use
    /// [`reject_frame_if_text_only`]).
    fn invoke(&self, prompt: &Prompt, frame: Option<&Frame>) -> Result<BackendResponse, CognitionError>;
}

/// Guard for implementations: a text-only backend handed a frame is a wiring
/// bug.
pub fn reject_frame_if_text_only(
    backend: &dyn ReasoningBackend,
    frame: Option<&Frame>,
) -> Result<(), CognitionError> {
    if backend.capability() == Capability::TextOnly && frame.is_some() {
        return Err(CognitionError::FrameRejected {
            backend: backend.name().to_string(),
        });
    }
    Ok(())
}

/// Registered backends, looked up by capability (first registered wins) or
/// name.
#[derive(Default)]
pub struct BackendRegistry {
    backends: Vec<Box<dyn ReasoningBackend>>,
}

impl BackendRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, backend: Box<dyn ReasoningBackend>) {
        self.backends.push(backend);
    }

    pub fn by_name(&self, name: &str) -> Option<&dyn ReasoningBackend> {
        self.backends.iter().find(|b| b.name() == name).map(|b| b.as_ref())
    }

    pub fn first_with(&self, capability: Capability) -> Option<&dyn ReasoningBackend> {
        self.backends
            .iter()
            .find(|b| b.capability() == capability)
            .map(|b| b.as_ref())
    }

    /// The answer pipeline needs both routes available.
    pub fn require_both_routes(&self) -> Result<(&dyn ReasoningBackend, &dyn ReasoningBackend), CognitionError> {
        let multimodal = self
            .first_with(Capability::Multimodal)
            .ok_or(CognitionError::NoBackend { capability: "multimodal" })?;
        let text = self
            .first_with(Capability::TextOnly)
            .ok_or(CognitionError::NoBackend { capability: "text-only" })?;
        Ok((multimodal, text))
    }

    pub fn names(&self) -> Vec<&str> {
        self.backends.iter().map(|b| b.name()).collect()
    }
}
