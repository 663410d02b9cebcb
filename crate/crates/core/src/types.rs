//! Domain value objects shared across the pipeline.
//!
//! All types are immutable values: construct, validate, share. Timestamps are
//! integer milliseconds on the session clock (see [`crate::clock`]).

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// Raw mono audio plus timing metadata. Amplitudes are expected in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AudioSignal {
    pub samples: Vec<f64>,
    pub sample_rate: u32,
    /// Capture start on the session clock, in milliseconds.
    pub start_time_ms: u64,
}

impl AudioSignal {
    pub fn new(samples: Vec<f64>, sample_rate: u32, start_time_ms: u64) -> Result<Self, CoreError> {
        if sample_rate == 0 {
            return Err(CoreError::invalid("AudioSignal", "sample_rate must be > 0"));
        }
        Ok(AudioSignal {
            samples,
            sample_rate,
            start_time_ms,
        })
    }

    /// Duration in whole milliseconds, rounded down.
    pub fn duration_ms(&self) -> u64 {
        (self.samples.len() as u64 * 1000) / self.sample_rate as u64
    }
}

/// Axis-aligned box normalized to the unit square, `(x, y)` top-left.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl BoundingBox {
    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Result<Self, CoreError> {
        let b = BoundingBox { x, y, w, h };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        let inside = self.x >= 0.0
            && self.y >= 0.0
            && self.w >= 0.0
            && self.h >= 0.0
            && self.x + self.w <= 1.0 + 1e-9
            && self.y + self.h <= 1.0 + 1e-9;
        if !inside {
            return Err(CoreError::invalid(
                "BoundingBox",
                format!("({}, {}, {}, {}) outside the unit square", self.x, self.y, self.w, self.h),
            ));
        }
        Ok(())
    }

    pub fn center_x(&self) -> f64 {
        self.x + self.w / 2.0
    }

    /// Fraction of the frame the box covers.
    pub fn area(&self) -> f64 {
        self.w * self.h
    }
}

/// One detected object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detection {
    pub label: String,
    pub confidence: f64,
    pub bbox: BoundingBox,
}

impl Detection {
    pub fn new(label: impl Into<String>, confidence: f64, bbox: BoundingBox) -> Result<Self, CoreError> {
        if !(0.0..=1.0).contains(&confidence) {
            return Err(CoreError::invalid("Detection", "confidence outside [0, 1]"));
        }
        bbox.validate()?;
        Ok(Detection {
            label: label.into(),
            confidence,
            bbox,
        })
    }

    pub fn horizontal_zone(&self) -> HorizontalZone {
        HorizontalZone::from_center_x(self.bbox.center_x())
    }

    pub fn depth_zone(&self, near_area_fraction: f64) -> DepthZone {
        if self.bbox.area() >= near_area_fraction {
            DepthZone::Near
        } else {
            DepthZone::Far
        }
    }
}

/// The detections attached to one frame. May be empty.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DetectionSet {
    pub items: Vec<Detection>,
}

impl DetectionSet {
    pub fn new(items: Vec<Detection>) -> Result<Self, CoreError> {
        for d in &items {
            if !(0.0..=1.0).contains(&d.confidence) {
                return Err(CoreError::invalid("DetectionSet", "confidence outside [0, 1]"));
            }
            d.bbox.validate()?;
        }
        Ok(DetectionSet { items })
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.items.iter().any(|d| d.label == label)
    }

    /// Highest-confidence detection; ties broken by lexicographic label so the
    /// choice is stable across runs.
    pub fn top_detection(&self) -> Option<&Detection> {
        self.items.iter().min_by(|a, b| {
            b.confidence
                .partial_cmp(&a.confidence)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then_with(|| a.label.cmp(&b.label))
        })
    }
}

/// Thirds of the field of view, from the box center x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HorizontalZone {
    Left,
    Center,
    Right,
}

impl HorizontalZone {
    pub fn from_center_x(cx: f64) -> Self {
        if cx < 1.0 / 3.0 {
            HorizontalZone::Left
        } else if cx < 2.0 / 3.0 {
            HorizontalZone::Center
        } else {
            HorizontalZone::Right
        }
    }

    /// Spoken direction, shared by scene description and response grounding.
    pub fn phrase(&self) -> &'static str {
        match self {
            HorizontalZone::Left => "to your left",
            HorizontalZone::Center => "in front of you",
            HorizontalZone::Right => "to your right",
        }
    }
}

/// Rough depth from apparent size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DepthZone {
    Near,
    Far,
}

/// Spoken position for an object: depth qualifier plus direction.
/// Near objects get called out; far ones are just given a direction.
pub fn position_phrase(h: HorizontalZone, d: DepthZone) -> String {
    match d {
        DepthZone::Near => format!("near, {}", h.phrase()),
        DepthZone::Far => h.phrase().to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PixelEncoding {
    Gray8,
    Rgb8,
}

impl PixelEncoding {
    pub fn bytes_per_pixel(&self) -> usize {
        match self {
            PixelEncoding::Gray8 => 1,
            PixelEncoding::Rgb8 => 3,
        }
    }
}

/// Row-major pixel grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageData {
    pub encoding: PixelEncoding,
    pub data: Vec<u8>,
}

/// A timestamped camera frame with its detections.
///
/// Frames coming from scenario files usually carry detections only; `pixels`
/// is populated on the image-transfer path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub frame_id: u64,
    pub timestamp_ms: u64,
    pub width: u32,
    pub height: u32,
    pub pixels: Option<ImageData>,
    #[serde(default)]
    pub detections: DetectionSet,
}

impl Frame {
    pub fn new(
        frame_id: u64,
        timestamp_ms: u64,
        width: u32,
        height: u32,
        pixels: Option<ImageData>,
        detections: DetectionSet,
    ) -> Result<Self, CoreError> {
        if let Some(px) = &pixels {
            let expected = width as usize * height as usize * px.encoding.bytes_per_pixel();
            if px.data.len() != expected {
                return Err(CoreError::invalid(
                    "Frame",
                    format!("pixel buffer holds {} bytes, expected {}", px.data.len(), expected),
                ));
            }
        }
        Ok(Frame {
            frame_id,
            timestamp_ms,
            width,
            height,
            pixels,
            detections,
        })
    }

    /// Detection-only frame, the common case in scenarios.
    pub fn with_detections(frame_id: u64, timestamp_ms: u64, detections: DetectionSet) -> Self {
        Frame {
            frame_id,
            timestamp_ms,
            width: 0,
            height: 0,
            pixels: None,
            detections,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UserId(pub String);

impl std::fmt::Display for UserId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Binary age bracket driving the query gate. `Unknown` is a first-class
/// state: it routes the caller into the confirmation prompt flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgeRange {
    Under18,
    Over18,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SessionMode {
    /// Single authenticated user; no query gate.
    Private,
    /// Shared installation; age determination plus query gate.
    Public,
}

/// Who is talking to the system and under what rules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionContext {
    pub user: Option<UserId>,
    pub age_range: AgeRange,
    pub mode: SessionMode,
    /// Prior knowledge of the surroundings for frame-less installations
    /// (overhead-microphone kiosks).
    pub environment_notes: Option<String>,
}

impl SessionContext {
    /// Private session for an authenticated user.
    pub fn private_session(user: UserId) -> Self {
        SessionContext {
            user: Some(user),
            age_range: AgeRange::Over18,
            mode: SessionMode::Private,
            environment_notes: None,
        }
    }

    /// Public session; age starts unknown until determined or declared.
    pub fn public_session() -> Self {
        SessionContext {
            user: None,
            age_range: AgeRange::Unknown,
            mode: SessionMode::Public,
            environment_notes: None,
        }
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        match self.mode {
            SessionMode::Private if self.user.is_none() => Err(CoreError::invalid(
                "SessionContext",
                "private mode requires an authenticated user",
            )),
            SessionMode::Public if self.user.is_some() => Err(CoreError::invalid(
                "SessionContext",
                "public mode never carries a user identity",
            )),
            _ => Ok(()),
        }
    }
}

/// One query paired with its reserved frame and session context: the unit the
/// cognition engine consumes.
#[derive(Debug, Clone, PartialEq)]
pub struct FusedInput {
    pub query_text: String,
    pub query_start_ms: u64,
    pub frame: Option<Frame>,
    pub session: SessionContext,
}

impl FusedInput {
    pub fn new(
        query_text: impl Into<String>,
        query_start_ms: u64,
        frame: Option<Frame>,
        session: SessionContext,
    ) -> Result<Self, CoreError> {
        session.validate()?;
        if let Some(f) = &frame {
            if f.timestamp_ms > query_start_ms {
                return Err(CoreError::invalid(
                    "FusedInput",
                    format!(
                        "frame at {} ms is newer than the query start {} ms",
                        f.timestamp_ms, query_start_ms
                    ),
                ));
            }
        }
        Ok(FusedInput {
            query_text: query_text.into(),
            query_start_ms,
            frame,
            session,
        })
    }
}
