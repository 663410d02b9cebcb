//! Prompt construction for the reasoning engines.

use sightline_core::{ExecutionPath, FusedInput};

use crate::error::CognitionError;
use crate::scene::SceneDescription;

/// Standing response constraints sent with every prompt. The output rewriter
/// enforces the same rules after the fact; stating them up front keeps most
/// responses clean before they ever reach it.
pub const BVI_SYSTEM_INSTRUCTIONS: &str = "\
You assist a blind or visually impaired person. Answer with clear, functional \
descriptions they can act on without sight.
Use spatial words: left, center, right, near, far, in front of you.
Do not talk about the visual appearance or attraction of a person or thing.
Do not mention what color any object, person, or image contains; if the response \
contains colors rephrase them in simple words and don't mention any kind of color \
descriptions.
Do not talk about colors in the background; remove the sentences.
Do not mention that you did not consider the colors.
Do not use sight-assuming phrases such as \"as you can see\".
Mention any important information like values, if present in the question.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prompt {
    pub system_instructions: String,
    pub user_query: String,
    /// Inlined scene description; only the text-fallback path uses it. The
    /// multimodal path attaches the frame itself at invoke time.
    pub scene_text: Option<String>,
}

/// Assemble the prompt for the chosen path.
///
/// Text fallback with a reserved frame requires a scene description (that is
/// the whole point of the fallback); frame-less sessions may pass prior
/// knowledge instead, or nothing.
pub fn build_prompt(
    fused: &FusedInput,
    path: ExecutionPath,
    scene: Option<&SceneDescription>,
) -> Result<Prompt, CognitionError> {
    let scene_text = match path {
        ExecutionPath::Multimodal => None,
        ExecutionPath::TextFallback => {
            if fused.frame.is_some() && scene.is_none() {
                return Err(CognitionError::MissingScene);
            }
            scene.map(|s| s.joined_text())
        }
    };
    Ok(Prompt {
        system_instructions: BVI_SYSTEM_INSTRUCTIONS.to_string(),
        user_query: fused.query_text.clone(),
        scene_text,
    })
}
