//! The 13-category safety taxonomy and the baseline keyword classifier.
//!
//! The built-in category set covers violent crimes, non-violent crimes,
//! sex-related crimes, child sexual exploitation, defamation, privacy,
//! indiscriminate weapons, hate, sexual content, suicide & self-harm, and
//! elections, padded to thirteen with specialized-advice and
//! intellectual-property. Classification is first-match-wins in category
//! order; within a category the reported evidence is the leftmost match in
//! the text, so shuffling a category's keyword list never changes a verdict.

use sightline_core::SafetyVerdict;

use crate::error::SafetyError;
use crate::text::{normalize_phrase, NormalizedText};

pub const CATEGORY_COUNT: usize = 13;

#[derive(Debug, Clone)]
pub struct Category {
    pub name: String,
    pub keywords: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SafetyTaxonomy {
    categories: Vec<Category>,
}

/// Replacement hook for the baseline keyword classifier. `None` falls back
/// to the baseline.
pub trait SafetyClassifier: Send + Sync {
    fn classify(&self, text: &str) -> Option<SafetyVerdict>;
}

impl SafetyTaxonomy {
    /// Exactly [`CATEGORY_COUNT`] uniquely named categories.
    pub fn new(categories: Vec<Category>) -> Result<Self, SafetyError> {
        if categories.len() != CATEGORY_COUNT {
            return Err(SafetyError::Taxonomy(format!(
                "need exactly {CATEGORY_COUNT} categories, got {}",
                categories.len()
            )));
        }
        let mut names: Vec<&str> = categories.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        if names.len() != CATEGORY_COUNT {
            return Err(SafetyError::Taxonomy("duplicate category names".into()));
        }
        let categories = categories
            .into_iter()
            .map(|c| Category {
                name: c.name,
                keywords: c.keywords.iter().map(|k| normalize_phrase(k)).collect(),
            })
            .collect();
        Ok(SafetyTaxonomy { categories })
    }

    pub fn builtin() -> Self {
        let cat = |name: &str, keywords: &[&str]| Category {
            name: name.to_string(),
            keywords: keywords.iter().map(|k| k.to_string()).collect(),
        };
        SafetyTaxonomy::new(vec![
            cat(
                "violent-crimes",
                &[
                    "kill someone",
                    "kill him",
                    "kill her",
                    "kill them",
                    "murder",
                    "beat up",
                    "stab",
                    "kidnap",
                    "hurt someone",
                    "attack a person",
                ],
            ),
            cat(
                "non-violent-crimes",
                &[
                    "steal",
                    "shoplift",
                    "pick a lock",
                    "break into",
                    "launder money",
                    "counterfeit",
                    "hack into",
                    "forge a signature",
                ],
            ),
            cat(
                "sex-related-crimes",
                &["sexual assault", "groom a", "trafficking", "non-consensual"],
            ),
            cat(
                "child-sexual-exploitation",
                &["child sexual", "sexualize a minor", "csam"],
            ),
            cat(
                "defamation",
                &["spread lies about", "ruin the reputation", "false rumor", "defame"],
            ),
            cat(
                "privacy",
                &[
                    "home address of",
                    "track someone",
                    "stalk",
                    "read private messages",
                    "spy on",
                ],
            ),
            cat(
                "indiscriminate-weapons",
                &[
                    "weapon",
                    "bomb",
                    "explosive",
                    "nerve agent",
                    "bioweapon",
                    "firearm",
                    "landmine",
                ],
            ),
            cat(
                "hate",
                &["hate speech", "racial slur", "inferior race", "ethnic cleansing"],
            ),
            cat(
                "sexual-content",
                &["explicit sexual", "pornographic", "nude photos"],
            ),
            cat(
                "suicide-self-harm",
                &["suicide", "kill myself", "self-harm", "hurt myself", "starve myself"],
            ),
            cat(
                "elections",
                &["rig the election", "voter fraud", "suppress votes", "fake ballots"],
            ),
            cat(
                "specialized-advice",
                &[
                    "without a doctor",
                    "skip my medication",
                    "evade taxes",
                    "insider trading",
                ],
            ),
            cat(
                "intellectual-property",
                &["pirate a", "pirated", "crack the drm", "bypass the license", "download copyrighted"],
            ),
        ])
        .expect("builtin taxonomy is well-formed")
    }

    pub fn categories(&self) -> &[Category] {
        &self.categories
    }
}

/// Classify `text` against the taxonomy: the first category (in taxonomy
/// order) with any keyword match wins; the evidence is that category's
/// leftmost match, longest on ties. Deterministic and pure.
pub fn classify_query(text: &str, taxonomy: &SafetyTaxonomy) -> SafetyVerdict {
    debug_assert!(!text.trim().is_empty(), "empty query violates the gate precondition");
    let norm = NormalizedText::new(text);
    for category in &taxonomy.categories {
        // leftmost match across all keywords; longer match wins position ties,
        // then lexicographic keyword for full determinism
        let mut best: Option<(usize, usize, &str)> = None;
        for keyword in &category.keywords {
            for (start, end) in norm.find(keyword) {
                let better = match best {
                    None => true,
                    Some((bs, be, bk)) => {
                        (start, std::cmp::Reverse(end)) < (bs, std::cmp::Reverse(be))
                            || (start == bs && end == be && keyword.as_str() < bk)
                    }
                };
                if better {
                    best = Some((start, end, keyword));
                }
            }
        }
        if let Some((_, _, keyword)) = best {
            return SafetyVerdict::Unsafe {
                category: category.name.clone(),
                matched_evidence: keyword.to_string(),
            };
        }
    }
    SafetyVerdict::Safe
}

/// [`classify_query`] with an optional external model that replaces the
/// baseline when it returns a verdict.
pub fn classify_query_with(
    text: &str,
    taxonomy: &SafetyTaxonomy,
    backend: Option<&dyn SafetyClassifier>,
) -> SafetyVerdict {
    if let Some(model) = backend {
        if let Some(verdict) = model.classify(text) {
            return verdict;
        }
    }
    classify_query(text, taxonomy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_has_thirteen_unique_categories() {
        let tax = SafetyTaxonomy::builtin();
        assert_eq!(tax.categories().len(), CATEGORY_COUNT);
    }

    #[test]
    fn benign_museum_queries_are_safe() {
        let tax = SafetyTaxonomy::builtin();
        assert_eq!(classify_query("What exhibits are in this hall?", &tax), SafetyVerdict::Safe);
        assert_eq!(classify_query("tell me about this painting", &tax), SafetyVerdict::Safe);
    }

    #[test]
    fn weapon_query_hits_indiscriminate_weapons() {
        let tax = SafetyTaxonomy::builtin();
        match classify_query("how to make an untraceable weapon", &tax) {
            SafetyVerdict::Unsafe { category, matched_evidence } => {
                assert_eq!(category, "indiscriminate-weapons");
                assert_eq!(matched_evidence, "weapon");
            }
            SafetyVerdict::Safe => panic!("expected unsafe"),
        }
    }

    #[test]
    fn self_harm_not_shadowed_by_violent_crimes() {
        let tax = SafetyTaxonomy::builtin();
        match classify_query("I want to kill myself", &tax) {
            SafetyVerdict::Unsafe { category, .. } => assert_eq!(category, "suicide-self-harm"),
            SafetyVerdict::Safe => panic!("expected unsafe"),
        }
    }

    #[test]
    fn verdict_is_stable_under_keyword_permutation() {
        let mut cats: Vec<Category> = SafetyTaxonomy::builtin().categories().to_vec();
        for c in &mut cats {
            c.keywords.reverse();
        }
        let permuted = SafetyTaxonomy::new(cats).unwrap();
        let original = SafetyTaxonomy::builtin();
        for text in [
            "how to make an untraceable weapon",
            "how do I break into a house and steal things",
            "tell me about this painting",
            "ways to spread lies about my neighbor",
        ] {
            assert_eq!(classify_query(text, &original), classify_query(text, &permuted), "{text}");
        }
    }

    #[test]
    fn rejects_wrong_count_or_duplicates() {
        let cats: Vec<Category> = SafetyTaxonomy::builtin().categories()[..12].to_vec();
        assert!(SafetyTaxonomy::new(cats).is_err());

        let mut dup: Vec<Category> = SafetyTaxonomy::builtin().categories().to_vec();
        dup[1].name = dup[0].name.clone();
        assert!(SafetyTaxonomy::new(dup).is_err());
    }

    struct AlwaysUnsafe;
    impl SafetyClassifier for AlwaysUnsafe {
        fn classify(&self, _text: &str) -> Option<SafetyVerdict> {
            Some(SafetyVerdict::Unsafe {
                category: "hate".into(),
                matched_evidence: "model".into(),
            })
        }
    }

    #[test]
    fn external_model_replaces_baseline() {
        let tax = SafetyTaxonomy::builtin();
        let v = classify_query_with("tell me about this painting", &tax, Some(&AlwaysUnsafe));
        assert!(matches!(v, SafetyVerdict::Unsafe { .. }));
    }
}
