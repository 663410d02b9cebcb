//! Passive ambient perception.
//!
//! The frame loop feeds every detection set through [`process_frame`], which
//! announces only *novel* objects: things never seen this session, or things
//! that left the frame for longer than the object-permanence window. Scene
//! awareness ([`scene_tasks`]) decides which expensive follow-up tasks a
//! frame deserves, first-per-session face recognitions become spoken memory
//! anchors, and [`throttle`] keeps repeat announcements from flooding the
//! speech channel.

pub mod error;
pub mod faces;
pub mod novelty;
pub mod tasks;
pub mod throttle;

pub use error::PerceptionError;
pub use faces::{recognize_and_anchor, FaceGalleryEntry, FaceRecognizer};
pub use novelty::{process_frame, Announcement, AnnouncementKind, PerceptionState, PermanenceParams};
pub use tasks::{scene_tasks, SceneTask};
pub use throttle::throttle;
