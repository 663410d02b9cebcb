//! Edge-side image preprocessing: color drop and rotation.
//!
//! Recognition downstream keys on luminosity, so RGB input collapses to a
//! single luma channel (BT.601 weights). The sensor is mounted sideways, so
//! the frame then rotates 90 degrees clockwise; output dimensions swap.

use crate::error::EdgelinkError;
use crate::wire::{FrameEncoding, ImageEnvelope};

/// Luma for one RGB pixel: round(0.299 R + 0.587 G + 0.114 B).
pub fn luma(r: u8, g: u8, b: u8) -> u8 {
    (0.299 * r as f64 + 0.587 * g as f64 + 0.114 * b as f64).round() as u8
}

/// Grayscale then rotate 90° clockwise. Sequence and timestamp carry over;
/// the checksum is recomputed for the new payload.
pub fn preprocess(image: &ImageEnvelope) -> Result<ImageEnvelope, EdgelinkError> {
    if image.width == 0 || image.height == 0 {
        return Err(EdgelinkError::ZeroDimension);
    }
    let w = image.width as usize;
    let h = image.height as usize;

    let gray: Vec<u8> = match image.encoding {
        FrameEncoding::Gray8 => image.payload.clone(),
        FrameEncoding::Rgb8 => image
            .payload
            .chunks_exact(3)
            .map(|px| luma(px[0], px[1], px[2]))
            .collect(),
    };

    // (x, y) -> (h - 1 - y, x): new width = h, new height = w
    let mut rotated = vec![0u8; w * h];
    for y in 0..h {
        for x in 0..w {
            let nx = h - 1 - y;
            let ny = x;
            rotated[ny * h + nx] = gray[y * w + x];
        }
    }

    ImageEnvelope::new(
        image.sequence,
        image.capture_timestamp_ms,
        image.height,
        image.width,
        FrameEncoding::Gray8,
        rotated,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(width: u32, height: u32, data: Vec<u8>) -> ImageEnvelope {
        ImageEnvelope::new(1, 0, width, height, FrameEncoding::Gray8, data).unwrap()
    }

    #[test]
    fn dimensions_swap() {
        let out = preprocess(&gray(3, 2, vec![0; 6])).unwrap();
        assert_eq!((out.width, out.height), (2, 3));
    }

    #[test]
    fn gray_pixel_is_a_fixed_point_of_luma() {
        assert_eq!(luma(100, 100, 100), 100);
        assert_eq!(luma(0, 0, 0), 0);
        assert_eq!(luma(255, 255, 255), 255);
    }

    #[test]
    fn pure_red_weight() {
        // round(0.299 * 255)
        assert_eq!(luma(255, 0, 0), 76);
    }

    #[test]
    fn rotation_moves_bottom_left_to_top_left() {
        // 2x2: [a b / c d] rotated clockwise becomes [c a / d b]
        let out = preprocess(&gray(2, 2, vec![b'a', b'b', b'c', b'd'])).unwrap();
        assert_eq!(out.payload, vec![b'c', b'a', b'd', b'b']);
    }

    #[test]
    fn four_rotations_restore_dimensions_and_pixels() {
        let original = gray(3, 2, vec![1, 2, 3, 4, 5, 6]);
        let mut image = original.clone();
        for _ in 0..4 {
            image = preprocess(&image).unwrap();
        }
        assert_eq!((image.width, image.height), (3, 2));
        assert_eq!(image.payload, original.payload);
    }

    #[test]
    fn luma_step_is_idempotent_on_gray_input() {
        let input = gray(2, 2, vec![10, 20, 30, 40]);
        let once = preprocess(&input).unwrap();
        // rotate three more times to undo the rotation, pixels untouched
        let mut back = once.clone();
        for _ in 0..3 {
            back = preprocess(&back).unwrap();
        }
        assert_eq!(back.payload, input.payload);
    }

    #[test]
    fn rgb_converts_then_rotates() {
        // 1x2 RGB: red above gray(100)
        let rgb = ImageEnvelope::new(
            5,
            7,
            1,
            2,
            FrameEncoding::Rgb8,
            vec![255, 0, 0, 100, 100, 100],
        )
        .unwrap();
        let out = preprocess(&rgb).unwrap();
        assert_eq!((out.width, out.height), (2, 1));
        assert_eq!(out.encoding, FrameEncoding::Gray8);
        assert_eq!(out.payload, vec![100, 76]);
        assert_eq!(out.sequence, 5);
        assert_eq!(out.capture_timestamp_ms, 7);
    }

    #[test]
    fn zero_dimension_rejected() {
        let img = ImageEnvelope::new(1, 0, 0, 0, FrameEncoding::Gray8, vec![]).unwrap();
        assert!(matches!(preprocess(&img), Err(EdgelinkError::ZeroDimension)));
    }
}
