//! Full-history recomputation of the novelty-prioritization rule.
//!
//! For every frame the oracle rescans the entire past instead of keeping
//! incremental state, so any bookkeeping bug in the production path shows up
//! as a divergence.

/// `(timestamp_ms, labels detected in that frame)`; labels may repeat when a
/// frame holds several instances.
pub type OracleFrame = (u64, Vec<String>);

/// Announcements for frame `index`: sorted `(label, count)` pairs.
///
/// A label is announced when it was never seen before, or when it was absent
/// from the immediately preceding frame and has been out of sight for more
/// than `window_ms`. Presence in the previous frame always counts as
/// continuous visibility, whatever the window.
pub fn reference_announcements(
    history: &[OracleFrame],
    index: usize,
    window_ms: u64,
) -> Vec<(String, u64)> {
    let (now, labels) = &history[index];
    let mut unique: Vec<&String> = labels.iter().collect();
    unique.sort();
    unique.dedup();

    let mut out = Vec::new();
    for label in unique {
        let mut last_seen: Option<u64> = None;
        for (t, past) in history[..index].iter() {
            if past.iter().any(|l| l == label) {
                last_seen = Some(*t);
            }
        }
        let announce = match last_seen {
            None => true,
            Some(seen) => {
                let in_previous_frame =
                    index > 0 && history[index - 1].1.iter().any(|l| l == label);
                !in_previous_frame && now - seen > window_ms
            }
        };
        if announce {
            let count = labels.iter().filter(|l| *l == label).count() as u64;
            out.push((label.clone(), count));
        }
    }
    out
}

/// Oracle run over a whole sequence: one announcement list per frame.
pub fn reference_run(history: &[OracleFrame], window_ms: u64) -> Vec<Vec<(String, u64)>> {
    (0..history.len())
        .map(|i| reference_announcements(history, i, window_ms))
        .collect()
}
