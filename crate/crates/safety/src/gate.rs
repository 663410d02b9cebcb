//! The pre-reasoning query gate.
//!
//! Adults go straight through; under-18 queries pass the classifier first and
//! unsafe ones are blocked before any reasoning happens. An unresolved age is
//! a caller error: run the confirmation flow first.

use sightline_core::{AgeRange, SafetyVerdict};
use sightline_voiceid::AgeEstimate;

use crate::error::SafetyError;
use crate::taxonomy::{classify_query, SafetyTaxonomy};

#[derive(Debug, Clone, PartialEq)]
pub enum GateDecision {
    Forward(String),
    Block(SafetyVerdict),
}

pub fn gate_query(
    query_text: &str,
    age: &AgeEstimate,
    taxonomy: &SafetyTaxonomy,
) -> Result<GateDecision, SafetyError> {
    match age.range {
        AgeRange::Unknown => Err(SafetyError::AgeUnresolved),
        AgeRange::Over18 => Ok(GateDecision::Forward(query_text.to_string())),
        AgeRange::Under18 => match classify_query(query_text, taxonomy) {
            SafetyVerdict::Safe => Ok(GateDecision::Forward(query_text.to_string())),
            verdict @ SafetyVerdict::Unsafe { .. } => Ok(GateDecision::Block(verdict)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sightline_voiceid::confirm_age;
    use sightline_voiceid::PromptAnswer;

    fn estimate(range: AgeRange) -> AgeEstimate {
        AgeEstimate::declared(range)
    }

    #[test]
    fn adults_bypass_unconditionally() {
        let tax = SafetyTaxonomy::builtin();
        let decision =
            gate_query("how to make an untraceable weapon", &estimate(AgeRange::Over18), &tax).unwrap();
        assert!(matches!(decision, GateDecision::Forward(_)));
    }

    #[test]
    fn minors_get_unsafe_queries_blocked_with_category() {
        let tax = SafetyTaxonomy::builtin();
        let decision =
            gate_query("how to make an untraceable weapon", &estimate(AgeRange::Under18), &tax).unwrap();
        match decision {
            GateDecision::Block(SafetyVerdict::Unsafe { category, .. }) => {
                assert_eq!(category, "indiscriminate-weapons");
            }
            other => panic!("expected block, got {other:?}"),
        }
    }

    #[test]
    fn minors_safe_queries_pass() {
        let tax = SafetyTaxonomy::builtin();
        let decision =
            gate_query("tell me about this painting", &estimate(AgeRange::Under18), &tax).unwrap();
        assert_eq!(decision, GateDecision::Forward("tell me about this painting".into()));
    }

    #[test]
    fn unknown_age_routes_to_confirmation_flow() {
        let tax = SafetyTaxonomy::builtin();
        let err = gate_query("hello", &estimate(AgeRange::Unknown), &tax).unwrap_err();
        assert!(matches!(err, SafetyError::AgeUnresolved));

        // the documented recovery: confirm, then gate again
        let confirmed = confirm_age(PromptAnswer::NoAnswer);
        assert!(gate_query("hello", &confirmed, &tax).is_ok());
    }
}
