use thiserror::Error;

#[derive(Debug, Error)]
pub enum PerceptionError {
    #[error("gallery entry `{person_id}` needs a non-empty description")]
    EmptyDescription { person_id: String },

    #[error("frame timestamp {got_ms} ms is older than the last processed frame at {last_ms} ms")]
    NonMonotoneFrame { got_ms: u64, last_ms: u64 },
}
