//! Rewrite rule sets: loading, validation, and the shipped defaults.

use std::path::Path;

use serde::Deserialize;

use crate::error::SafetyError;
use crate::text::normalize_phrase;

/// The shipped default rules (also on disk at `assets/default_rules.toml`).
pub const DEFAULT_RULES_TOML: &str = include_str!("../assets/default_rules.toml");

/// The four rewrite passes, applied in this fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pass {
    OffensiveTerms,
    VisualAssumptions,
    ColorHandling,
    VagueGrounding,
}

pub const PASS_ORDER: [Pass; 4] = [
    Pass::OffensiveTerms,
    Pass::VisualAssumptions,
    Pass::ColorHandling,
    Pass::VagueGrounding,
];

#[derive(Debug, Clone, PartialEq)]
pub struct VaguePhrase {
    pub phrase: String,
    /// Replacement sentence; `{object}` and `{position}` are filled from the
    /// scene when one is present.
    pub template: String,
}

/// Validated, normalized rule set. Immutable after load.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleSet {
    pub offensive_terms: Vec<String>,
    pub color_terms: Vec<String>,
    pub visual_assumption_phrases: Vec<String>,
    pub vague_phrases: Vec<VaguePhrase>,
    pub refusal_text: String,
    pub ungrounded_text: String,
    pub near_area_fraction: f64,
}

impl RuleSet {
    /// Parse and validate rules from TOML text.
    pub fn from_toml_str(text: &str) -> Result<Self, SafetyError> {
        let file: RulesFile = toml::from_str(text)?;
        if file.version != 1 {
            return Err(SafetyError::Rules(format!(
                "unsupported rules version {}",
                file.version
            )));
        }

        let offensive_terms = normalized_unique("offensive_terms", file.offensive_terms.phrases)?;
        if offensive_terms.is_empty() {
            return Err(SafetyError::Rules("offensive_terms must not be empty".into()));
        }
        let color_terms = normalized_unique("color_terms", file.color_terms.words)?;
        let visual_assumption_phrases =
            normalized_unique("visual_assumptions", file.visual_assumptions.phrases)?;

        let mut vague_phrases = Vec::with_capacity(file.vague_phrases.entries.len());
        let mut seen = std::collections::BTreeSet::new();
        for entry in file.vague_phrases.entries {
            let phrase = normalize_phrase(&entry.phrase);
            if phrase.is_empty() {
                return Err(SafetyError::Rules("empty vague phrase".into()));
            }
            if !seen.insert(phrase.clone()) {
                return Err(SafetyError::Rules(format!("duplicate vague phrase `{phrase}`")));
            }
            validate_template(&entry.template)?;
            vague_phrases.push(VaguePhrase {
                phrase,
                template: entry.template,
            });
        }

        if !(file.near_area_fraction > 0.0 && file.near_area_fraction <= 1.0) {
            return Err(SafetyError::Rules("near_area_fraction must lie in (0, 1]".into()));
        }

        Ok(RuleSet {
            offensive_terms,
            color_terms,
            visual_assumption_phrases,
            vague_phrases,
            refusal_text: file.refusal_text,
            ungrounded_text: file.ungrounded_text,
            near_area_fraction: file.near_area_fraction,
        })
    }

    /// The shipped defaults, always valid.
    pub fn builtin() -> Self {
        RuleSet::from_toml_str(DEFAULT_RULES_TOML).expect("bundled default rules must parse")
    }
}

/// Load rules from a file.
pub fn load_rules(path: &Path) -> Result<RuleSet, SafetyError> {
    let text = std::fs::read_to_string(path).map_err(|e| SafetyError::RulesIo {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    RuleSet::from_toml_str(&text)
}

fn normalized_unique(list: &str, phrases: Vec<String>) -> Result<Vec<String>, SafetyError> {
    let mut out = Vec::with_capacity(phrases.len());
    let mut seen = std::collections::BTreeSet::new();
    for p in phrases {
        let norm = normalize_phrase(&p);
        if norm.is_empty() {
            return Err(SafetyError::Rules(format!("empty phrase in {list}")));
        }
        if !seen.insert(norm.clone()) {
            return Err(SafetyError::Rules(format!("duplicate `{norm}` in {list}")));
        }
        out.push(norm);
    }
    Ok(out)
}

fn validate_template(template: &str) -> Result<(), SafetyError> {
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        let Some(close) = rest[open..].find('}') else {
            return Err(SafetyError::Rules(format!("unclosed placeholder in `{template}`")));
        };
        let name = &rest[open + 1..open + close];
        if name != "object" && name != "position" {
            return Err(SafetyError::Rules(format!("unknown placeholder `{{{name}}}`")));
        }
        rest = &rest[open + close + 1..];
    }
    Ok(())
}

// ---- on-disk schema ----

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RulesFile {
    version: u32,
    refusal_text: String,
    ungrounded_text: String,
    #[serde(default = "default_near_area")]
    near_area_fraction: f64,
    offensive_terms: PhraseSection,
    color_terms: WordSection,
    visual_assumptions: PhraseSection,
    vague_phrases: VagueSection,
}

fn default_near_area() -> f64 {
    0.15
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhraseSection {
    phrases: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WordSection {
    words: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VagueSection {
    entries: Vec<VagueEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VagueEntry {
    phrase: String,
    template: String,
}
