//! First-sighting face announcements ("memory anchors").

use serde::{Deserialize, Serialize};
use sightline_core::Frame;

use crate::error::PerceptionError;
use crate::novelty::{Announcement, AnnouncementKind, PerceptionState};

/// A known person: an opaque matching token owned by the recognition backend
/// plus the description spoken on first sighting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceGalleryEntry {
    pub person_id: String,
    /// Backend-specific template or embedding handle; the pipeline never
    /// interprets it.
    pub template: String,
    pub description: String,
}

impl FaceGalleryEntry {
    pub fn new(
        person_id: impl Into<String>,
        template: impl Into<String>,
        description: impl Into<String>,
    ) -> Result<Self, PerceptionError> {
        let person_id = person_id.into();
        let description = description.into();
        if description.trim().is_empty() {
            return Err(PerceptionError::EmptyDescription { person_id });
        }
        Ok(FaceGalleryEntry {
            person_id,
            template: template.into(),
            description,
        })
    }
}

/// Pluggable face recognition. Implementations return the person ids they
/// matched in the frame; order is preserved in the announcements.
pub trait FaceRecognizer: Send + Sync {
    fn recognize(&self, frame: &Frame, gallery: &[FaceGalleryEntry]) -> Vec<String>;
}

/// Announce each person the backend recognized for the first time this
/// session, with their stored description. Ids the gallery does not know are
/// announced as unknown. Repeat sightings are silent.
pub fn recognize_and_anchor(
    frame: &Frame,
    gallery: &[FaceGalleryEntry],
    backend: &dyn FaceRecognizer,
    state: &mut PerceptionState,
    now_ms: u64,
) -> Vec<Announcement> {
    let mut announcements = Vec::new();
    for person_id in backend.recognize(frame, gallery) {
        if !state.note_face(&person_id) {
            continue; // already announced this session
        }
        let description = gallery
            .iter()
            .find(|e| e.person_id == person_id)
            .map(|e| e.description.clone());
        announcements.push(Announcement {
            kind: AnnouncementKind::PersonRecognized {
                person_id,
                description,
            },
            timestamp_ms: now_ms,
        });
    }
    announcements
}

#[cfg(test)]
mod tests {
    use super::*;
    use sightline_core::DetectionSet;

    struct FixedIds(Vec<String>);
    impl FaceRecognizer for FixedIds {
        fn recognize(&self, _frame: &Frame, _gallery: &[FaceGalleryEntry]) -> Vec<String> {
            self.0.clone()
        }
    }

    fn frame() -> Frame {
        Frame::with_detections(1, 0, DetectionSet::default())
    }

    fn gallery() -> Vec<FaceGalleryEntry> {
        vec![FaceGalleryEntry::new("alice", "tmpl-1", "Your neighbor from the third floor.").unwrap()]
    }

    #[test]
    fn first_sighting_carries_the_stored_description() {
        let mut state = PerceptionState::new();
        let backend = FixedIds(vec!["alice".into()]);
        let out = recognize_and_anchor(&frame(), &gallery(), &backend, &mut state, 10);
        assert_eq!(out.len(), 1);
        match &out[0].kind {
            AnnouncementKind::PersonRecognized { person_id, description } => {
                assert_eq!(person_id, "alice");
                assert_eq!(description.as_deref(), Some("Your neighbor from the third floor."));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn repeat_sightings_are_silent_and_set_only_grows() {
        let mut state = PerceptionState::new();
        let backend = FixedIds(vec!["alice".into()]);
        assert_eq!(recognize_and_anchor(&frame(), &gallery(), &backend, &mut state, 10).len(), 1);
        assert!(recognize_and_anchor(&frame(), &gallery(), &backend, &mut state, 20).is_empty());
        assert_eq!(state.session_faces().len(), 1);
    }

    #[test]
    fn unknown_ids_are_announced_without_description() {
        let mut state = PerceptionState::new();
        let backend = FixedIds(vec!["stranger-7".into()]);
        let out = recognize_and_anchor(&frame(), &gallery(), &backend, &mut state, 10);
        assert_eq!(out.len(), 1);
        match &out[0].kind {
            AnnouncementKind::PersonRecognized { person_id, description } => {
                assert_eq!(person_id, "stranger-7");
                assert!(description.is_none());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gallery_rejects_empty_descriptions() {
        assert!(FaceGalleryEntry::new("bob", "t", "  ").is_err());
    }
}
