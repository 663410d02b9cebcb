//! The peripheral↔edge link.
//!
//! A wearable capture device finds its edge box by service name, verifies it
//! is talking to the same machine as last time via a pinned fingerprint
//! (trust on first use), and streams preprocessed camera frames over a
//! length-prefixed binary protocol with per-frame CRC-32 and strictly
//! increasing sequence numbers. Transport is any `Read + Write` byte stream:
//! TCP in deployment, in-memory pipes and loopback sockets in tests.

pub mod crc;
pub mod discovery;
pub mod error;
pub mod image;
pub mod pins;
pub mod session;
pub mod wire;

pub use crc::crc32;
pub use discovery::{discover, respond_loop, DiscoveryTransport, SimTransport, UdpTransport};
pub use error::EdgelinkError;
pub use image::{luma, preprocess};
pub use pins::{PinCheck, PinStore, PinnedHosts};
pub use session::{client_handshake, server_handshake, Session};
pub use wire::{
    decode_payload, encode, read_message, write_message, FrameEncoding, HandshakeOffer,
    ImageEnvelope, Message, FINGERPRINT_LEN, MAX_MESSAGE_LEN,
};
