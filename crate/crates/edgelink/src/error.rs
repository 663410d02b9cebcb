use thiserror::Error;

#[derive(Debug, Error)]
pub enum EdgelinkError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed message: {0}")]
    Malformed(String),

    #[error("unknown message type {0}")]
    UnknownMessageType(u8),

    #[error("message of {got} bytes exceeds the {limit} byte limit")]
    MessageTooLarge { got: usize, limit: usize },

    #[error("payload holds {got} bytes, expected {want} for {width}x{height}")]
    PayloadSize {
        got: usize,
        want: usize,
        width: u32,
        height: u32,
    },

    #[error("zero-dimension image")]
    ZeroDimension,

    #[error("fingerprint for {address} does not match the pinned value; refusing to connect")]
    FingerprintMismatch { address: String },

    #[error("peer rejected the session: {reason}")]
    Rejected { reason: String },

    #[error("handshake expected {expected}, peer sent message type {got}")]
    UnexpectedMessage { expected: &'static str, got: u8 },

    #[error("no responder for service `{service}` within {timeout_ms} ms")]
    DiscoveryTimeout { service: String, timeout_ms: u64 },

    #[error("service `{service}` answered by multiple conflicting responders: {addresses:?}")]
    DiscoveryConflict {
        service: String,
        addresses: Vec<String>,
    },

    #[error("sequence {got} does not advance past {last}")]
    SequenceRegression { got: u64, last: u64 },

    #[error("frame {sequence} failed its checksum and was dropped (NAK sent)")]
    FrameCorrupt { sequence: u64 },

    #[error("receiver rejected frame {sequence} (NAK)")]
    NakReceived { sequence: u64 },

    #[error("pin store {path}: {reason}")]
    PinStore { path: String, reason: String },
}
