//! Handshake and framed image transfer over a reliable byte stream.
//!
//! The edge (server) opens with an OFFER carrying its fingerprint; the
//! peripheral (client) checks it against its pinned hosts: first contact
//! pins it, a match opens the session, a mismatch is a hard reject with no
//! fallback. Frames then flow stop-and-wait: every FRAME is answered by an
//! ACK, or a NAK when the checksum fails, and sequence numbers must strictly
//! increase.

use std::io::{Read, Write};

use crate::error::EdgelinkError;
use crate::pins::{PinCheck, PinStore};
use crate::wire::{read_message, write_message, HandshakeOffer, ImageEnvelope, Message};

/// An open link. The same type serves both ends: the peripheral sends frames
/// and reads ACK/NAKs, the edge receives frames and answers them.
pub struct Session<S: Read + Write> {
    stream: S,
    pub offer: HandshakeOffer,
    /// Highest sequence the receiver accepted.
    last_received: Option<u64>,
    /// Highest sequence the sender got an ACK for.
    last_acked: Option<u64>,
}

impl<S: Read + Write> Session<S> {
    fn new(stream: S, offer: HandshakeOffer) -> Self {
        Session {
            stream,
            offer,
            last_received: None,
            last_acked: None,
        }
    }

    /// Send one frame and wait for the receiver's verdict.
    ///
    /// Sequences must advance past the last acknowledged frame; a NAK leaves
    /// the sequence unconsumed so the caller may retransmit it.
    pub fn send_frame(&mut self, envelope: &ImageEnvelope) -> Result<(), EdgelinkError> {
        if let Some(last) = self.last_acked {
            if envelope.sequence <= last {
                return Err(EdgelinkError::SequenceRegression {
                    got: envelope.sequence,
                    last,
                });
            }
        }
        write_message(&mut self.stream, &Message::Frame(envelope.clone()))?;
        match read_message(&mut self.stream)? {
            Message::Ack { sequence } if sequence == envelope.sequence => {
                self.last_acked = Some(sequence);
                Ok(())
            }
            Message::Nak { sequence } => Err(EdgelinkError::NakReceived { sequence }),
            other => Err(EdgelinkError::UnexpectedMessage {
                expected: "ACK or NAK",
                got: other.type_byte(),
            }),
        }
    }

    /// Receive one frame, verify it, and answer ACK or NAK.
    ///
    /// A checksum failure drops the frame, NAKs its sequence, and returns
    /// [`EdgelinkError::FrameCorrupt`]; the session stays usable. A sequence
    /// that fails to advance is a protocol error.
    pub fn receive_frame(&mut self) -> Result<ImageEnvelope, EdgelinkError> {
        match read_message(&mut self.stream)? {
            Message::Frame(envelope) => {
                if let Some(last) = self.last_received {
                    if envelope.sequence <= last {
                        return Err(EdgelinkError::SequenceRegression {
                            got: envelope.sequence,
                            last,
                        });
                    }
                }
                if !envelope.checksum_ok() {
                    write_message(&mut self.stream, &Message::Nak { sequence: envelope.sequence })?;
                    return Err(EdgelinkError::FrameCorrupt {
                        sequence: envelope.sequence,
                    });
                }
                write_message(&mut self.stream, &Message::Ack { sequence: envelope.sequence })?;
                self.last_received = Some(envelope.sequence);
                Ok(envelope)
            }
            Message::Bye => Err(EdgelinkError::UnexpectedMessage {
                expected: "FRAME",
                got: crate::wire::MSG_BYE,
            }),
            other => Err(EdgelinkError::UnexpectedMessage {
                expected: "FRAME",
                got: other.type_byte(),
            }),
        }
    }

    /// Announce the end of the session.
    pub fn bye(&mut self) -> Result<(), EdgelinkError> {
        write_message(&mut self.stream, &Message::Bye)
    }

    pub fn stream_mut(&mut self) -> &mut S {
        &mut self.stream
    }
}

/// Peripheral side: read the edge's OFFER, enforce the pin policy, answer
/// ACCEPT or REJECT.
pub fn client_handshake<S: Read + Write>(
    mut stream: S,
    pins: &mut PinStore,
) -> Result<Session<S>, EdgelinkError> {
    let offer = match read_message(&mut stream)? {
        Message::Offer(offer) => offer,
        other => {
            return Err(EdgelinkError::UnexpectedMessage {
                expected: "OFFER",
                got: other.type_byte(),
            })
        }
    };

    match pins.check(&offer.edge_address, &offer.server_fingerprint) {
        PinCheck::Unknown => {
            pins.trust(&offer.edge_address, offer.server_fingerprint)?;
        }
        PinCheck::Match => {}
        PinCheck::Mismatch => {
            write_message(
                &mut stream,
                &Message::Reject {
                    reason: "fingerprint does not match pinned value".into(),
                },
            )?;
            return Err(EdgelinkError::FingerprintMismatch {
                address: offer.edge_address,
            });
        }
    }

    write_message(&mut stream, &Message::Accept)?;
    Ok(Session::new(stream, offer))
}

/// Edge side: send the OFFER, wait for the peripheral's ACCEPT.
pub fn server_handshake<S: Read + Write>(
    mut stream: S,
    offer: HandshakeOffer,
) -> Result<Session<S>, EdgelinkError> {
    offer.validate()?;
    write_message(&mut stream, &Message::Offer(offer.clone()))?;
    match read_message(&mut stream)? {
        Message::Accept => Ok(Session::new(stream, offer)),
        Message::Reject { reason } => Err(EdgelinkError::Rejected { reason }),
        other => Err(EdgelinkError::UnexpectedMessage {
            expected: "ACCEPT or REJECT",
            got: other.type_byte(),
        }),
    }
}
