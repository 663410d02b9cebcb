//! Trust-on-first-use fingerprint pinning.
//!
//! One fingerprint per edge address, stored as human-readable JSON. First
//! contact pins; any later mismatch is a hard reject. Replacing a pin is an
//! explicit operation, never a side effect of connecting.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sightline_core::fsutil::atomic_write;

use crate::error::EdgelinkError;
use crate::wire::FINGERPRINT_LEN;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PinCheck {
    /// Address never seen; caller may trust-on-first-use.
    Unknown,
    Match,
    Mismatch,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct PinnedHosts {
    pins: BTreeMap<String, [u8; FINGERPRINT_LEN]>,
}

#[derive(Serialize, Deserialize)]
struct PinFile {
    version: u32,
    /// address -> fingerprint hex
    pins: BTreeMap<String, String>,
}

const PIN_SCHEMA_VERSION: u32 = 1;

impl PinnedHosts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&self, address: &str, fingerprint: &[u8; FINGERPRINT_LEN]) -> PinCheck {
        match self.pins.get(address) {
            None => PinCheck::Unknown,
            Some(pinned) if pinned == fingerprint => PinCheck::Match,
            Some(_) => PinCheck::Mismatch,
        }
    }

    /// Explicitly trust `fingerprint` for `address`, inserting or replacing.
    pub fn trust(&mut self, address: &str, fingerprint: [u8; FINGERPRINT_LEN]) {
        self.pins.insert(address.to_string(), fingerprint);
    }

    pub fn get(&self, address: &str) -> Option<&[u8; FINGERPRINT_LEN]> {
        self.pins.get(address)
    }

    pub fn len(&self) -> usize {
        self.pins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pins.is_empty()
    }

    pub fn load(path: &Path) -> Result<Self, EdgelinkError> {
        let err = |reason: String| EdgelinkError::PinStore {
            path: path.display().to_string(),
            reason,
        };
        if !path.exists() {
            return Ok(Self::new());
        }
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        let file: PinFile = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
        if file.version != PIN_SCHEMA_VERSION {
            return Err(err(format!("unsupported version {}", file.version)));
        }
        let mut pins = BTreeMap::new();
        for (address, hex) in file.pins {
            let bytes = decode_hex(&hex).ok_or_else(|| err(format!("bad fingerprint for {address}")))?;
            pins.insert(address, bytes);
        }
        Ok(PinnedHosts { pins })
    }

    pub fn save(&self, path: &Path) -> Result<(), EdgelinkError> {
        let file = PinFile {
            version: PIN_SCHEMA_VERSION,
            pins: self
                .pins
                .iter()
                .map(|(a, fp)| (a.clone(), encode_hex(fp)))
                .collect(),
        };
        let text = serde_json::to_string_pretty(&file).expect("pin file serializes");
        atomic_write(path, text.as_bytes()).map_err(|e| EdgelinkError::PinStore {
            path: path.display().to_string(),
            reason: e.to_string(),
        })
    }
}

/// A pin store bound to its file path; saves after every mutation.
#[derive(Debug)]
pub struct PinStore {
    path: PathBuf,
    hosts: PinnedHosts,
}

impl PinStore {
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, EdgelinkError> {
        let path = path.into();
        let hosts = PinnedHosts::load(&path)?;
        Ok(PinStore { path, hosts })
    }

    pub fn hosts(&self) -> &PinnedHosts {
        &self.hosts
    }

    pub fn check(&self, address: &str, fingerprint: &[u8; FINGERPRINT_LEN]) -> PinCheck {
        self.hosts.check(address, fingerprint)
    }

    pub fn trust(&mut self, address: &str, fingerprint: [u8; FINGERPRINT_LEN]) -> Result<(), EdgelinkError> {
        self.hosts.trust(address, fingerprint);
        self.hosts.save(&self.path)
    }
}

fn encode_hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn decode_hex(s: &str) -> Option<[u8; FINGERPRINT_LEN]> {
    if s.len() != FINGERPRINT_LEN * 2 {
        return None;
    }
    let mut out = [0u8; FINGERPRINT_LEN];
    for (i, chunk) in s.as_bytes().chunks_exact(2).enumerate() {
        let hi = (chunk[0] as char).to_digit(16)?;
        let lo = (chunk[1] as char).to_digit(16)?;
        out[i] = ((hi << 4) | lo) as u8;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_transitions() {
        let mut hosts = PinnedHosts::new();
        let fp_a = [1u8; 32];
        let fp_b = [2u8; 32];
        assert_eq!(hosts.check("edge:1", &fp_a), PinCheck::Unknown);
        hosts.trust("edge:1", fp_a);
        assert_eq!(hosts.check("edge:1", &fp_a), PinCheck::Match);
        assert_eq!(hosts.check("edge:1", &fp_b), PinCheck::Mismatch);
    }

    #[test]
    fn persists_across_reload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pins.json");
        let mut store = PinStore::open(&path).unwrap();
        store.trust("10.0.0.9:7411", [9u8; 32]).unwrap();
        drop(store);

        let reloaded = PinStore::open(&path).unwrap();
        assert_eq!(reloaded.check("10.0.0.9:7411", &[9u8; 32]), PinCheck::Match);
        assert_eq!(reloaded.hosts().len(), 1);
    }

    #[test]
    fn missing_file_is_an_empty_store() {
        let dir = tempfile::tempdir().unwrap();
        let store = PinStore::open(dir.path().join("nope.json")).unwrap();
        assert!(store.hosts().is_empty());
    }
}
