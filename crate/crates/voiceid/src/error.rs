use thiserror::Error;

#[derive(Debug, Error)]
pub enum VoiceIdError {
    #[error("signal too short: {got_samples} samples, need at least {need_samples}")]
    SignalTooShort { got_samples: usize, need_samples: usize },

    #[error("signal sampled at {got} Hz but the pipeline is configured for {want} Hz; resample first")]
    SampleRateMismatch { got: u32, want: u32 },

    #[error("empty cepstral matrix")]
    EmptyMatrix,

    #[error("vector length {got} does not match configured {want} coefficients")]
    VectorLength { got: usize, want: usize },

    #[error("threshold must be strictly positive")]
    NonPositiveThreshold,

    #[error("age confirmation applies only to an unknown estimate")]
    NotUnknown,

    #[error("wav {path}: {reason}")]
    Wav { path: String, reason: String },

    #[error(transparent)]
    Core(#[from] sightline_core::CoreError),
}
