//! Announcement rate limiting.
//!
//! Object announcements of the same label are spaced at least
//! `announce_min_interval_ms` apart; the surplus is deferred for the caller
//! to retry later, in arrival order. Person recognitions are never throttled:
//! they fire once per session and are the highest-value social cue the system
//! produces.

use crate::novelty::{Announcement, AnnouncementKind, PerceptionState, PermanenceParams};

/// Split `pending` into announcements to emit now and announcements to retry
/// later. Together the two outputs are a permutation of the input.
pub fn throttle(
    pending: Vec<Announcement>,
    state: &mut PerceptionState,
    params: &PermanenceParams,
    now_ms: u64,
) -> (Vec<Announcement>, Vec<Announcement>) {
    let mut emitted = Vec::with_capacity(pending.len());
    let mut deferred = Vec::new();
    for announcement in pending {
        match &announcement.kind {
            AnnouncementKind::PersonRecognized { .. } => emitted.push(announcement),
            AnnouncementKind::ObjectAppeared { label, .. } => {
                let too_soon = state
                    .last_announced(label)
                    .is_some_and(|last| now_ms - last < params.announce_min_interval_ms);
                if too_soon {
                    deferred.push(announcement);
                } else {
                    state.note_announced(label, now_ms);
                    emitted.push(announcement);
                }
            }
        }
    }
    (emitted, deferred)
}
