//! Bit-exact wire format.
//!
//! Every message is `[u32 big-endian length][u8 type][body]`, where `length`
//! counts the type byte plus the body. Strings are `u16 BE length` + UTF-8.
//!
//! ```text
//! type 1 OFFER   u16 version, str edge_address, str image_directory,
//!                str username, 32-byte fingerprint
//! type 2 ACCEPT  (empty)
//! type 3 REJECT  str reason
//! type 4 FRAME   u64 sequence, u64 capture_timestamp_ms, u32 width,
//!                u32 height, u8 encoding (0=GRAY8, 1=RGB8),
//!                u32 payload_len, payload, u32 crc32(payload)
//! type 5 ACK     u64 sequence
//! type 6 NAK     u64 sequence
//! type 7 BYE     (empty)
//! ```

use std::io::{Read, Write};

use crate::crc::crc32;
use crate::error::EdgelinkError;

pub const MSG_OFFER: u8 = 1;
pub const MSG_ACCEPT: u8 = 2;
pub const MSG_REJECT: u8 = 3;
pub const MSG_FRAME: u8 = 4;
pub const MSG_ACK: u8 = 5;
pub const MSG_NAK: u8 = 6;
pub const MSG_BYE: u8 = 7;

/// Refuse to allocate messages beyond this.
pub const MAX_MESSAGE_LEN: usize = 64 * 1024 * 1024;

pub const FINGERPRINT_LEN: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameEncoding {
    Gray8,
    Rgb8,
}

impl FrameEncoding {
    pub fn bytes_per_pixel(&self) -> usize {
        match self {
            FrameEncoding::Gray8 => 1,
            FrameEncoding::Rgb8 => 3,
        }
    }

    fn to_byte(self) -> u8 {
        match self {
            FrameEncoding::Gray8 => 0,
            FrameEncoding::Rgb8 => 1,
        }
    }

    fn from_byte(b: u8) -> Result<Self, EdgelinkError> {
        match b {
            0 => Ok(FrameEncoding::Gray8),
            1 => Ok(FrameEncoding::Rgb8),
            other => Err(EdgelinkError::Malformed(format!("bad encoding byte {other}"))),
        }
    }
}

/// What the edge sends first: who it is and where images should go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandshakeOffer {
    pub edge_address: String,
    pub server_fingerprint: [u8; FINGERPRINT_LEN],
    pub image_directory: String,
    pub username: String,
    pub protocol_version: u16,
}

impl HandshakeOffer {
    pub fn validate(&self) -> Result<(), EdgelinkError> {
        if self.protocol_version < 1 {
            return Err(EdgelinkError::Malformed("protocol_version must be >= 1".into()));
        }
        Ok(())
    }
}

/// One captured image in flight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageEnvelope {
    pub sequence: u64,
    pub capture_timestamp_ms: u64,
    pub width: u32,
    pub height: u32,
    pub encoding: FrameEncoding,
    pub payload: Vec<u8>,
    pub checksum: u32,
}

impl ImageEnvelope {
    /// Build an envelope with a freshly computed checksum. Rejects payloads
    /// that do not match `width * height * bytes_per_pixel`.
    pub fn new(
        sequence: u64,
        capture_timestamp_ms: u64,
        width: u32,
        height: u32,
        encoding: FrameEncoding,
        payload: Vec<u8>,
    ) -> Result<Self, EdgelinkError> {
        let want = width as usize * height as usize * encoding.bytes_per_pixel();
        if payload.len() != want {
            return Err(EdgelinkError::PayloadSize {
                got: payload.len(),
                want,
                width,
                height,
            });
        }
        let checksum = crc32(&payload);
        Ok(ImageEnvelope {
            sequence,
            capture_timestamp_ms,
            width,
            height,
            encoding,
            payload,
            checksum,
        })
    }

    pub fn checksum_ok(&self) -> bool {
        crc32(&self.payload) == self.checksum
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Message {
    Offer(HandshakeOffer),
    Accept,
    Reject { reason: String },
    Frame(ImageEnvelope),
    Ack { sequence: u64 },
    Nak { sequence: u64 },
    Bye,
}

impl Message {
    pub fn type_byte(&self) -> u8 {
        match self {
            Message::Offer(_) => MSG_OFFER,
            Message::Accept => MSG_ACCEPT,
            Message::Reject { .. } => MSG_REJECT,
            Message::Frame(_) => MSG_FRAME,
            Message::Ack { .. } => MSG_ACK,
            Message::Nak { .. } => MSG_NAK,
            Message::Bye => MSG_BYE,
        }
    }
}

pub fn encode(message: &Message) -> Vec<u8> {
    let mut body = Vec::new();
    match message {
        Message::Offer(offer) => {
            body.extend_from_slice(&offer.protocol_version.to_be_bytes());
            put_string(&mut body, &offer.edge_address);
            put_string(&mut body, &offer.image_directory);
            put_string(&mut body, &offer.username);
            body.extend_from_slice(&offer.server_fingerprint);
        }
        Message::Accept | Message::Bye => {}
        Message::Reject { reason } => put_string(&mut body, reason),
        Message::Frame(envelope) => {
            body.extend_from_slice(&envelope.sequence.to_be_bytes());
            body.extend_from_slice(&envelope.capture_timestamp_ms.to_be_bytes());
            body.extend_from_slice(&envelope.width.to_be_bytes());
            body.extend_from_slice(&envelope.height.to_be_bytes());
            body.push(envelope.encoding.to_byte());
            body.extend_from_slice(&(envelope.payload.len() as u32).to_be_bytes());
            body.extend_from_slice(&envelope.payload);
            body.extend_from_slice(&envelope.checksum.to_be_bytes());
        }
        Message::Ack { sequence } | Message::Nak { sequence } => {
            body.extend_from_slice(&sequence.to_be_bytes());
        }
    }

    let mut out = Vec::with_capacity(5 + body.len());
    out.extend_from_slice(&((body.len() + 1) as u32).to_be_bytes());
    out.push(message.type_byte());
    out.extend_from_slice(&body);
    out
}

/// Decode one message from a byte slice holding exactly `[type][body]`.
pub fn decode_payload(payload: &[u8]) -> Result<Message, EdgelinkError> {
    let (&type_byte, body) = payload
        .split_first()
        .ok_or_else(|| EdgelinkError::Malformed("empty message".into()))?;
    let mut cursor = Cursor { body, pos: 0 };
    let message = match type_byte {
        MSG_OFFER => {
            let protocol_version = cursor.u16()?;
            let edge_address = cursor.string()?;
            let image_directory = cursor.string()?;
            let username = cursor.string()?;
            let fingerprint = cursor.bytes(FINGERPRINT_LEN)?;
            let mut server_fingerprint = [0u8; FINGERPRINT_LEN];
            server_fingerprint.copy_from_slice(fingerprint);
            let offer = HandshakeOffer {
                edge_address,
                server_fingerprint,
                image_directory,
                username,
                protocol_version,
            };
            offer.validate()?;
            Message::Offer(offer)
        }
        MSG_ACCEPT => Message::Accept,
        MSG_REJECT => Message::Reject { reason: cursor.string()? },
        MSG_FRAME => {
            let sequence = cursor.u64()?;
            let capture_timestamp_ms = cursor.u64()?;
            let width = cursor.u32()?;
            let height = cursor.u32()?;
            let encoding = FrameEncoding::from_byte(cursor.u8()?)?;
            let payload_len = cursor.u32()? as usize;
            let want = width as usize * height as usize * encoding.bytes_per_pixel();
            if payload_len != want {
                return Err(EdgelinkError::PayloadSize {
                    got: payload_len,
                    want,
                    width,
                    height,
                });
            }
            let payload = cursor.bytes(payload_len)?.to_vec();
            let checksum = cursor.u32()?;
            Message::Frame(ImageEnvelope {
                sequence,
                capture_timestamp_ms,
                width,
                height,
                encoding,
                payload,
                checksum,
            })
        }
        MSG_ACK => Message::Ack { sequence: cursor.u64()? },
        MSG_NAK => Message::Nak { sequence: cursor.u64()? },
        MSG_BYE => Message::Bye,
        other => return Err(EdgelinkError::UnknownMessageType(other)),
    };
    if cursor.pos != cursor.body.len() {
        return Err(EdgelinkError::Malformed(format!(
            "{} trailing bytes",
            cursor.body.len() - cursor.pos
        )));
    }
    Ok(message)
}

/// Write one length-prefixed message to a stream.
pub fn write_message<W: Write>(writer: &mut W, message: &Message) -> Result<(), EdgelinkError> {
    writer.write_all(&encode(message))?;
    writer.flush()?;
    Ok(())
}

/// Read one length-prefixed message from a stream.
pub fn read_message<R: Read>(reader: &mut R) -> Result<Message, EdgelinkError> {
    let mut len_bytes = [0u8; 4];
    reader.read_exact(&mut len_bytes)?;
    let len = u32::from_be_bytes(len_bytes) as usize;
    if len == 0 {
        return Err(EdgelinkError::Malformed("zero-length message".into()));
    }
    if len > MAX_MESSAGE_LEN {
        return Err(EdgelinkError::MessageTooLarge {
            got: len,
            limit: MAX_MESSAGE_LEN,
        });
    }
    let mut payload = vec![0u8; len];
    reader.read_exact(&mut payload)?;
    decode_payload(&payload)
}

fn put_string(out: &mut Vec<u8>, s: &str) {
    debug_assert!(s.len() <= u16::MAX as usize);
    out.extend_from_slice(&(s.len() as u16).to_be_bytes());
    out.extend_from_slice(s.as_bytes());
}

struct Cursor<'a> {
    body: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn bytes(&mut self, n: usize) -> Result<&'a [u8], EdgelinkError> {
        if self.pos + n > self.body.len() {
            return Err(EdgelinkError::Malformed("truncated message".into()));
        }
        let slice = &self.body[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u8(&mut self) -> Result<u8, EdgelinkError> {
        Ok(self.bytes(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, EdgelinkError> {
        Ok(u16::from_be_bytes(self.bytes(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, EdgelinkError> {
        Ok(u32::from_be_bytes(self.bytes(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, EdgelinkError> {
        Ok(u64::from_be_bytes(self.bytes(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String, EdgelinkError> {
        let len = self.u16()? as usize;
        let bytes = self.bytes(len)?;
        String::from_utf8(bytes.to_vec())
            .map_err(|_| EdgelinkError::Malformed("non-utf8 string field".into()))
    }
}
