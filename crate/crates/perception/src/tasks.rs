//! Scene-aware task selection.
//!
//! Detection is cheap; the follow-up analyses are not. A frame earns face
//! recognition only when a person is actually in it. OCR selection is wired
//! the same way but stays behind a config flag until a text-recognition
//! backend exists.

use std::collections::BTreeSet;

use sightline_core::{Config, DetectionSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SceneTask {
    FaceRecognition,
    Ocr,
}

pub fn scene_tasks(detections: &DetectionSet, config: &Config) -> BTreeSet<SceneTask> {
    let mut tasks = BTreeSet::new();
    if detections.contains_label("person") {
        tasks.insert(SceneTask::FaceRecognition);
    }
    if config.perception.ocr_enabled && detections.contains_label("text") {
        tasks.insert(SceneTask::Ocr);
    }
    tasks
}
