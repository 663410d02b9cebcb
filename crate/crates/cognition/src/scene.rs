//! Detections to spoken scene text.
//!
//! Zones come from the shared spatial vocabulary: the horizontal thirds of
//! the view and a near/far split on apparent size. Same-label detections in
//! the same zone collapse into one counted sentence, ordered by
//! (zone, label) so output is reproducible.

use std::collections::BTreeMap;

use sightline_core::{position_phrase, DepthZone, DetectionSet, HorizontalZone};

pub const EMPTY_SCENE_SENTENCE: &str = "No objects detected in view.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SceneDescription {
    pub sentences: Vec<String>,
    /// Label → zone of its highest-confidence detection.
    pub object_positions: BTreeMap<String, (HorizontalZone, DepthZone)>,
}

impl SceneDescription {
    pub fn joined_text(&self) -> String {
        self.sentences.join(" ")
    }

    /// A frame-less description carrying prior knowledge of the space.
    pub fn from_notes(notes: &str) -> Self {
        SceneDescription {
            sentences: vec![notes.to_string()],
            object_positions: BTreeMap::new(),
        }
    }
}

/// Describe a detection set. Empty input produces the fixed empty-scene
/// sentence.
pub fn scene_to_text(detections: &DetectionSet, near_area_fraction: f64) -> SceneDescription {
    if detections.is_empty() {
        return SceneDescription {
            sentences: vec![EMPTY_SCENE_SENTENCE.to_string()],
            object_positions: BTreeMap::new(),
        };
    }

    // (zone, label) -> count, BTreeMap ordering gives the sentence order
    let mut groups: BTreeMap<(HorizontalZone, DepthZone, &str), u64> = BTreeMap::new();
    // label -> (confidence, zone) best-confidence position
    let mut positions: BTreeMap<String, (f64, (HorizontalZone, DepthZone))> = BTreeMap::new();

    for d in &detections.items {
        let zone = (d.horizontal_zone(), d.depth_zone(near_area_fraction));
        *groups.entry((zone.0, zone.1, d.label.as_str())).or_insert(0) += 1;
        positions
            .entry(d.label.clone())
            .and_modify(|(conf, z)| {
                if d.confidence > *conf {
                    *conf = d.confidence;
                    *z = zone;
                }
            })
            .or_insert((d.confidence, zone));
    }

    let sentences = groups
        .iter()
        .map(|(&(h, d, label), &count)| {
            let subject = if count == 1 {
                format!("{} {}", article(label), label)
            } else {
                format!("{} {}", count_word(count), pluralize(label))
            };
            let verb = if count == 1 { "is" } else { "are" };
            format!("{subject} {verb} {}.", position_phrase(h, d))
        })
        .collect();

    SceneDescription {
        sentences,
        object_positions: positions.into_iter().map(|(l, (_, z))| (l, z)).collect(),
    }
}

fn article(label: &str) -> &'static str {
    match label.chars().next().map(|c| c.to_ascii_lowercase()) {
        Some('a' | 'e' | 'i' | 'o' | 'u') => "An",
        _ => "A",
    }
}

fn count_word(count: u64) -> String {
    match count {
        2 => "Two".into(),
        3 => "Three".into(),
        4 => "Four".into(),
        5 => "Five".into(),
        6 => "Six".into(),
        7 => "Seven".into(),
        8 => "Eight".into(),
        9 => "Nine".into(),
        n => n.to_string(),
    }
}

fn pluralize(label: &str) -> String {
    if label.ends_with('s')
        || label.ends_with('x')
        || label.ends_with('z')
        || label.ends_with("ch")
        || label.ends_with("sh")
    {
        format!("{label}es")
    } else {
        format!("{label}s")
    }
}
