//! Client for an out-of-process reasoning service.
//!
//! The wire contract is one JSON request/response over HTTP/1.1:
//!
//! ```text
//! POST <path> HTTP/1.1
//! Content-Type: application/json
//!
//! {"system_instructions": "...", "user_query": "...", "scene_text": "..."|null,
//!  "image": {"width": u32, "height": u32, "encoding": "gray8"|"rgb8",
//!            "data_b64": "..."}|null}
//! ```
//!
//! and the service answers `200` with `{"text": "...", "latency_ms": u64}`,
//! where `latency_ms` is measured server-side. Anything else is an error.

use std::io::{Read, Write};
use std::net::TcpStream;
use std::time::Duration;

use base64::Engine;
use serde::{Deserialize, Serialize};
use sightline_core::{Frame, PixelEncoding};

use crate::backend::{reject_frame_if_text_only, BackendResponse, Capability, ReasoningBackend};
use crate::error::CognitionError;
use crate::prompt::Prompt;

#[derive(Debug, Serialize, Deserialize)]
pub struct RemoteRequest {
    pub system_instructions: String,
    pub user_query: String,
    pub scene_text: Option<String>,
    pub image: Option<RemoteImage>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RemoteImage {
    pub width: u32,
    pub height: u32,
    pub encoding: String,
    pub data_b64: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RemoteReply {
    pub text: String,
    pub latency_ms: u64,
}

/// A reasoning backend living behind a TCP endpoint.
pub struct RemoteBackend {
    name: String,
    capability: Capability,
    /// `host:port`
    address: String,
    path: String,
    timeout: Duration,
}

impl RemoteBackend {
    pub fn new(
        name: impl Into<String>,
        capability: Capability,
        address: impl Into<String>,
        path: impl Into<String>,
        timeout: Duration,
    ) -> Self {
        RemoteBackend {
            name: name.into(),
            capability,
            address: address.into(),
            path: path.into(),
            timeout,
        }
    }

    fn encode_image(frame: &Frame) -> Option<RemoteImage> {
        let pixels = frame.pixels.as_ref()?;
        let encoding = match pixels.encoding {
            PixelEncoding::Gray8 => "gray8",
            PixelEncoding::Rgb8 => "rgb8",
        };
        Some(RemoteImage {
            width: frame.width,
            height: frame.height,
            encoding: encoding.to_string(),
            data_b64: base64::engine::general_purpose::STANDARD.encode(&pixels.data),
        })
    }

    fn post(&self, body: &[u8]) -> Result<Vec<u8>, CognitionError> {
        let err = |m: String| CognitionError::Remote(m);
        let stream = TcpStream::connect(&self.address).map_err(|e| err(e.to_string()))?;
        stream.set_read_timeout(Some(self.timeout)).map_err(|e| err(e.to_string()))?;
        stream.set_write_timeout(Some(self.timeout)).map_err(|e| err(e.to_string()))?;
        let mut stream = stream;

        let head = format!(
            "POST {} HTTP/1.1\r\nHost: {}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n",
            self.path,
            self.address,
            body.len()
        );
        stream.write_all(head.as_bytes()).map_err(|e| err(e.to_string()))?;
        stream.write_all(body).map_err(|e| err(e.to_string()))?;
        stream.flush().map_err(|e| err(e.to_string()))?;

        let mut raw = Vec::new();
        stream.read_to_end(&mut raw).map_err(|e| err(e.to_string()))?;

        let header_end = find_header_end(&raw)
            .ok_or_else(|| err("malformed response: no header terminator".into()))?;
        let head_text = std::str::from_utf8(&raw[..header_end])
            .map_err(|_| err("malformed response: non-utf8 headers".into()))?;
        let status_line = head_text.lines().next().unwrap_or_default();
        if !status_line.contains(" 200") {
            return Err(err(format!("service answered `{status_line}`")));
        }
        Ok(raw[header_end + 4..].to_vec())
    }
}

fn find_header_end(raw: &[u8]) -> Option<usize> {
    raw.windows(4).position(|w| w == b"\r\n\r\n")
}

impl ReasoningBackend for RemoteBackend {
    fn name(&self) -> &str {
        &self.name
    }

    fn capability(&self) -> Capability {
        self.capability
    }

    fn invoke(&self, prompt: &Prompt, frame: Option<&Frame>) -> Result<BackendResponse, CognitionError> {
        reject_frame_if_text_only(self, frame)?;
        let request = RemoteRequest {
            system_instructions: prompt.system_instructions.clone(),
            user_query: prompt.user_query.clone(),
            scene_text: prompt.scene_text.clone(),
            image: frame.and_then(Self::encode_image),
        };
        let body = serde_json::to_vec(&request).map_err(|e| CognitionError::Remote(e.to_string()))?;
        let reply_bytes = self.post(&body)?;
        let reply: RemoteReply = serde_json::from_slice(&reply_bytes)
            .map_err(|e| CognitionError::Remote(format!("bad reply body: {e}")))?;
        Ok(BackendResponse {
            text: reply.text,
            latency_ms: reply.latency_ms,
        })
    }
}
