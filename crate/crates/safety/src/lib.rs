//! Query gating and response rewriting.
//!
//! Two responsibilities, both rule-driven and deterministic:
//!
//! * the **safe query filter**: a 13-category keyword classifier gating
//!   under-18 queries before they reach any reasoning backend;
//! * the **response rewriter**: ordered passes that block offensive phrasing,
//!   strip visual-assumption language and color references, and ground vague
//!   position talk against the detected scene.
//!
//! Both baselines can be swapped for external models behind small traits
//! without touching the contracts.

pub mod error;
pub mod gate;
pub mod rewrite;
pub mod rules;
pub mod taxonomy;
pub mod text;

pub use error::SafetyError;
pub use gate::{gate_query, GateDecision};
pub use rewrite::{rewrite_response, AppliedRule, RewriteResult};
pub use rules::{load_rules, Pass, RuleSet, VaguePhrase, DEFAULT_RULES_TOML, PASS_ORDER};
pub use sightline_core::SafetyVerdict;
pub use taxonomy::{classify_query, classify_query_with, Category, SafetyClassifier, SafetyTaxonomy};
