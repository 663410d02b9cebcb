//! Service discovery: resolve the edge's service name to exactly one
//! address.
//!
//! The transport is abstract so tests and the simulator run an in-process
//! registry while deployments use the UDP group-query transport. Zero
//! responders is a timeout; more than one distinct address for the same name
//! is a configuration error and reported with the full list.

use std::collections::BTreeMap;
use std::net::UdpSocket;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::error::EdgelinkError;

pub trait DiscoveryTransport {
    /// Collect responder addresses for `service_name` within the budget.
    fn query(&self, service_name: &str, timeout_ms: u64) -> Result<Vec<String>, EdgelinkError>;
}

/// Resolve a service name to one address.
pub fn discover(
    service_name: &str,
    transport: &dyn DiscoveryTransport,
    timeout_ms: u64,
) -> Result<String, EdgelinkError> {
    let mut addresses = transport.query(service_name, timeout_ms)?;
    addresses.sort();
    addresses.dedup();
    match addresses.len() {
        0 => Err(EdgelinkError::DiscoveryTimeout {
            service: service_name.to_string(),
            timeout_ms,
        }),
        1 => Ok(addresses.remove(0)),
        _ => Err(EdgelinkError::DiscoveryConflict {
            service: service_name.to_string(),
            addresses,
        }),
    }
}

/// Deterministic in-process transport: a registry of responders.
#[derive(Default)]
pub struct SimTransport {
    responders: Mutex<BTreeMap<String, Vec<String>>>,
}

impl SimTransport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&self, service_name: &str, address: &str) {
        self.responders
            .lock()
            .unwrap()
            .entry(service_name.to_string())
            .or_default()
            .push(address.to_string());
    }
}

impl DiscoveryTransport for SimTransport {
    fn query(&self, service_name: &str, _timeout_ms: u64) -> Result<Vec<String>, EdgelinkError> {
        Ok(self
            .responders
            .lock()
            .unwrap()
            .get(service_name)
            .cloned()
            .unwrap_or_default())
    }
}

/// Datagram query transport. `target` is normally a multicast group
/// (joined by responders); any unicast address works the same way, which is
/// how the loopback tests run.
pub struct UdpTransport {
    pub target: String,
}

const QUERY_PREFIX: &str = "SIGHTLINE-QRY ";
const ANSWER_PREFIX: &str = "SIGHTLINE-ANS ";

impl DiscoveryTransport for UdpTransport {
    fn query(&self, service_name: &str, timeout_ms: u64) -> Result<Vec<String>, EdgelinkError> {
        let socket = UdpSocket::bind("0.0.0.0:0")?;
        socket.send_to(format!("{QUERY_PREFIX}{service_name}").as_bytes(), &self.target)?;

        let deadline = Instant::now() + Duration::from_millis(timeout_ms);
        let mut addresses = Vec::new();
        let mut buf = [0u8; 1024];
        loop {
            let remaining = deadline.saturating_duration_since(Instant::now());
            if remaining.is_zero() {
                break;
            }
            socket.set_read_timeout(Some(remaining))?;
            match socket.recv_from(&mut buf) {
                Ok((n, _)) => {
                    if let Ok(text) = std::str::from_utf8(&buf[..n]) {
                        if let Some(rest) = text.strip_prefix(ANSWER_PREFIX) {
                            if let Some((name, address)) = rest.split_once(' ') {
                                if name == service_name {
                                    addresses.push(address.to_string());
                                }
                            }
                        }
                    }
                }
                Err(e)
                    if e.kind() == std::io::ErrorKind::WouldBlock
                        || e.kind() == std::io::ErrorKind::TimedOut =>
                {
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
        Ok(addresses)
    }
}

/// Responder half of the datagram transport: answers queries for
/// `service_name` with `advertised_address` until the socket errors out.
/// Meant to run on its own thread on the edge device.
pub fn respond_loop(
    socket: UdpSocket,
    service_name: &str,
    advertised_address: &str,
) -> Result<(), EdgelinkError> {
    let mut buf = [0u8; 1024];
    loop {
        let (n, from) = socket.recv_from(&mut buf)?;
        if let Ok(text) = std::str::from_utf8(&buf[..n]) {
            if text.strip_prefix(QUERY_PREFIX) == Some(service_name) {
                socket.send_to(
                    format!("{ANSWER_PREFIX}{service_name} {advertised_address}").as_bytes(),
                    from,
                )?;
            }
        }
    }
}
