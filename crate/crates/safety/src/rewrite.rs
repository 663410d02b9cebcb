//! Ordered rewrite passes that turn a raw model response into a
//! blind-friendly one.
//!
//! Passes run in the fixed order of [`crate::rules::PASS_ORDER`]:
//!
//! 1. offensive-term scan — any hit blocks the whole response and substitutes
//!    the configured refusal text;
//! 2. visual-assumption removal — "as you can see" and friends disappear;
//! 3. color handling — color adjectives are dropped, and sentences that only
//!    talk about background colors are removed outright;
//! 4. vague-phrase grounding — "it's over there" becomes a sentence naming
//!    the scene's most confident object and its position, or a generic
//!    direction request when no scene is available.
//!
//! Every change is recorded as a rule id plus the byte span it touched in the
//! text as it stood when that pass ran.

use sightline_core::{position_phrase, DetectionSet};

use crate::rules::RuleSet;
use crate::text::{remove_spans, sentence_spans, tidy, NormalizedText};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppliedRule {
    pub rule_id: String,
    pub span: (usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteResult {
    pub text: String,
    pub applied: Vec<AppliedRule>,
    pub blocked: bool,
}

impl RewriteResult {
    pub fn rule_ids(&self) -> Vec<&str> {
        self.applied.iter().map(|a| a.rule_id.as_str()).collect()
    }
}

/// Rewrite `text` under `rules`, grounding vague references against `scene`
/// when one is provided. Empty input returns an empty result.
pub fn rewrite_response(text: &str, rules: &RuleSet, scene: Option<&DetectionSet>) -> RewriteResult {
    if text.trim().is_empty() {
        return RewriteResult {
            text: String::new(),
            applied: Vec::new(),
            blocked: false,
        };
    }

    let mut applied = Vec::new();

    // pass 1: offensive terms block everything
    if let Some((term, span)) = leftmost_match(text, &rules.offensive_terms) {
        applied.push(AppliedRule {
            rule_id: format!("offensive:{term}"),
            span,
        });
        return RewriteResult {
            text: rules.refusal_text.clone(),
            applied,
            blocked: true,
        };
    }

    // pass 2: visual assumptions
    let text = remove_phrases_to_fixpoint(
        text.to_string(),
        &rules.visual_assumption_phrases,
        "visual",
        &mut applied,
    );

    // pass 3: colors
    let text = color_pass(text, rules, &mut applied);

    // pass 4: vague grounding
    let text = vague_pass(text, rules, scene, &mut applied);

    RewriteResult {
        text,
        applied,
        blocked: false,
    }
}

/// Leftmost match across `phrases` (longest wins position ties, then
/// lexicographic phrase).
fn leftmost_match(text: &str, phrases: &[String]) -> Option<(String, (usize, usize))> {
    let norm = NormalizedText::new(text);
    let mut best: Option<(&str, (usize, usize))> = None;
    for phrase in phrases {
        for span in norm.find(phrase) {
            let better = match &best {
                None => true,
                Some((bp, (bs, be))) => {
                    (span.0, std::cmp::Reverse(span.1)) < (*bs, std::cmp::Reverse(*be))
                        || (span.0 == *bs && span.1 == *be && phrase.as_str() < *bp)
                }
            };
            if better {
                best = Some((phrase, span));
            }
        }
    }
    best.map(|(p, s)| (p.to_string(), s))
}

/// Remove every occurrence of every phrase, repeating until nothing matches
/// so removals can never splice a new match together.
fn remove_phrases_to_fixpoint(
    mut text: String,
    phrases: &[String],
    rule_prefix: &str,
    applied: &mut Vec<AppliedRule>,
) -> String {
    for _ in 0..8 {
        let norm = NormalizedText::new(&text);
        let mut hits: Vec<(usize, usize, &String)> = Vec::new();
        for phrase in phrases {
            for (s, e) in norm.find(phrase) {
                hits.push((s, e, phrase));
            }
        }
        if hits.is_empty() {
            break;
        }
        hits.sort_by_key(|&(s, e, _)| (s, std::cmp::Reverse(e)));
        // keep non-overlapping hits, earliest first
        let mut kept: Vec<(usize, usize, &String)> = Vec::new();
        let mut cursor = 0;
        for (s, e, p) in hits {
            if s >= cursor {
                kept.push((s, e, p));
                cursor = e;
            }
        }
        for (s, e, p) in &kept {
            applied.push(AppliedRule {
                rule_id: format!("{rule_prefix}:{p}"),
                span: (*s, *e),
            });
        }
        let spans: Vec<(usize, usize)> = kept.iter().map(|&(s, e, _)| (s, e)).collect();
        text = tidy(&remove_spans(&text, &spans));
        if text.is_empty() {
            break;
        }
    }
    text
}

/// Drop whole sentences that talk about background colors, then strip color
/// adjectives everywhere else.
fn color_pass(text: String, rules: &RuleSet, applied: &mut Vec<AppliedRule>) -> String {
    if rules.color_terms.is_empty() {
        return text;
    }

    // sentence drop: a color term plus the word "background" in one sentence
    let mut dropped: Vec<(usize, usize)> = Vec::new();
    for (start, end) in sentence_spans(&text) {
        let sentence = &text[start..end];
        let norm = NormalizedText::new(sentence);
        let mentions_background = !norm.find("background").is_empty();
        let mentions_color = rules.color_terms.iter().any(|c| !norm.find(c).is_empty());
        if mentions_background && mentions_color {
            applied.push(AppliedRule {
                rule_id: "color:background-sentence".to_string(),
                span: (start, end),
            });
            dropped.push((start, end));
        }
    }
    let text = if dropped.is_empty() {
        text
    } else {
        tidy(&remove_spans(&text, &dropped))
    };

    remove_phrases_to_fixpoint(text, &rules.color_terms, "color", applied)
}

/// Replace each sentence containing a vague phrase with a grounded position
/// sentence (scene present) or the generic direction request.
fn vague_pass(
    text: String,
    rules: &RuleSet,
    scene: Option<&DetectionSet>,
    applied: &mut Vec<AppliedRule>,
) -> String {
    if rules.vague_phrases.is_empty() || text.is_empty() {
        return text;
    }
    let grounded = scene.and_then(|s| s.top_detection()).map(|d| {
        let position = position_phrase(d.horizontal_zone(), d.depth_zone(rules.near_area_fraction));
        (d.label.clone(), position)
    });

    let spans = sentence_spans(&text);
    let mut out = String::with_capacity(text.len());
    let mut changed = false;
    let mut cursor = 0;
    for (start, end) in spans {
        out.push_str(&text[cursor..start]);
        cursor = end;
        let sentence = &text[start..end];
        let norm = NormalizedText::new(sentence);
        let hit = rules
            .vague_phrases
            .iter()
            .find(|v| !norm.find(&v.phrase).is_empty());
        match hit {
            Some(v) => {
                changed = true;
                let leading_ws: String = sentence
                    .chars()
                    .take_while(|c| c.is_whitespace())
                    .collect();
                out.push_str(&leading_ws);
                match &grounded {
                    Some((object, position)) => {
                        applied.push(AppliedRule {
                            rule_id: format!("vague:grounded:{}", v.phrase),
                            span: (start, end),
                        });
                        out.push_str(
                            &v.template
                                .replace("{object}", object)
                                .replace("{position}", position),
                        );
                    }
                    None => {
                        applied.push(AppliedRule {
                            rule_id: format!("vague:ungrounded:{}", v.phrase),
                            span: (start, end),
                        });
                        out.push_str(&rules.ungrounded_text);
                    }
                }
            }
            None => out.push_str(sentence),
        }
    }
    out.push_str(&text[cursor..]);
    if changed {
        tidy(&out)
    } else {
        out
    }
}
