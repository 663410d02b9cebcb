use thiserror::Error;

#[derive(Debug, Error)]
pub enum CognitionError {
    #[error("no {capability} backend registered")]
    NoBackend { capability: &'static str },

    #[error("text-only backend `{backend}` cannot take a frame")]
    FrameRejected { backend: String },

    #[error("text fallback with a reserved frame needs a scene description")]
    MissingScene,

    #[error("latency sample {0} must be a non-negative number")]
    InvalidLatency(f64),

    #[error("ewma alpha {0} must lie in (0, 1]")]
    InvalidAlpha(f64),

    #[error("backend `{backend}` failed: {message}")]
    Backend { backend: String, message: String },

    #[error("remote backend: {0}")]
    Remote(String),

    #[error(transparent)]
    Core(#[from] sightline_core::CoreError),
}
