//! Variable novelty prioritization.
//!
//! Plain novelty would re-announce an object every time it blinks out of
//! frame for a single capture. The object-permanence window fixes that: an
//! object seen in the immediately previous frame is continuously visible and
//! never re-announced; one that skipped at least a frame is re-announced only
//! when its absence exceeded the window. Window zero therefore degenerates to
//! the previous-frame novelty rule.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use sightline_core::{Config, Frame};

use crate::error::PerceptionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermanenceParams {
    pub permanence_window_ms: u64,
    pub announce_min_interval_ms: u64,
}

impl PermanenceParams {
    pub fn from_config(config: &Config) -> Self {
        PermanenceParams {
            permanence_window_ms: config.permanence_window_ms,
            announce_min_interval_ms: config.announce_min_interval_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnouncementKind {
    ObjectAppeared {
        label: String,
        count: u64,
    },
    PersonRecognized {
        person_id: String,
        /// The stored memory anchor; `None` for faces the backend returned
        /// but the gallery does not know.
        description: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Announcement {
    pub kind: AnnouncementKind,
    pub timestamp_ms: u64,
}

impl Announcement {
    /// Spoken form used by the text-to-speech sink and the simulator
    /// transcript.
    pub fn spoken_text(&self) -> String {
        match &self.kind {
            AnnouncementKind::ObjectAppeared { label, count } => {
                if *count == 1 {
                    format!("{} ahead.", capitalize(label))
                } else {
                    format!("{count} {label}s ahead.")
                }
            }
            AnnouncementKind::PersonRecognized {
                person_id,
                description: Some(description),
            } => format!("{} is here. {}", capitalize(person_id), description),
            AnnouncementKind::PersonRecognized {
                person_id,
                description: None,
            } => format!("Someone I do not recognize is here ({person_id})."),
        }
    }
}

fn capitalize(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().collect::<String>() + chars.as_str(),
        None => String::new(),
    }
}

/// Mutable perception memory. Single writer: the frame loop.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PerceptionState {
    /// Label → last frame time it was visible.
    last_seen: BTreeMap<String, u64>,
    /// Label → last time an announcement for it was emitted (throttle state).
    last_announced: BTreeMap<String, u64>,
    /// Person ids already announced this session.
    session_faces: BTreeSet<String>,
    /// Timestamp of the previously processed frame.
    last_frame_ms: Option<u64>,
}

impl PerceptionState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn last_seen(&self, label: &str) -> Option<u64> {
        self.last_seen.get(label).copied()
    }

    pub fn session_faces(&self) -> &BTreeSet<String> {
        &self.session_faces
    }

    pub(crate) fn note_face(&mut self, person_id: &str) -> bool {
        self.session_faces.insert(person_id.to_string())
    }

    pub(crate) fn last_announced(&self, label: &str) -> Option<u64> {
        self.last_announced.get(label).copied()
    }

    pub(crate) fn note_announced(&mut self, label: &str, now_ms: u64) {
        self.last_announced.insert(label.to_string(), now_ms);
    }
}

/// Process one frame: decide which labels are novel enough to announce, then
/// mark everything in the frame as seen now.
///
/// A label is announced iff it was never seen before, or it was absent from
/// the previous frame and `now - last_seen` exceeds the permanence window.
/// Same-label detections within the frame collapse into one announcement
/// carrying a count. Announcements come out sorted by label.
pub fn process_frame(
    frame: &Frame,
    state: &mut PerceptionState,
    params: &PermanenceParams,
    now_ms: u64,
) -> Result<Vec<Announcement>, PerceptionError> {
    if let Some(last) = state.last_frame_ms {
        if now_ms < last {
            return Err(PerceptionError::NonMonotoneFrame {
                got_ms: now_ms,
                last_ms: last,
            });
        }
    }

    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for d in &frame.detections.items {
        *counts.entry(d.label.as_str()).or_insert(0) += 1;
    }

    let mut announcements = Vec::new();
    for (label, count) in &counts {
        let novel = match state.last_seen.get(*label) {
            None => true,
            Some(&seen) => {
                let in_previous_frame = state.last_frame_ms == Some(seen);
                !in_previous_frame && now_ms - seen > params.permanence_window_ms
            }
        };
        if novel {
            announcements.push(Announcement {
                kind: AnnouncementKind::ObjectAppeared {
                    label: (*label).to_string(),
                    count: *count,
                },
                timestamp_ms: now_ms,
            });
        }
    }

    for label in counts.keys() {
        state.last_seen.insert((*label).to_string(), now_ms);
    }
    state.last_frame_ms = Some(now_ms);

    Ok(announcements)
}
