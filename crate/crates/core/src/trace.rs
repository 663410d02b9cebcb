//! Per-interaction execution trace: the audit and metrics backbone.
//!
//! One trace is written per interaction by a single writer. Stage timings are
//! integer milliseconds on the session clock, so sequential totals are exact
//! sums with no float drift.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;

/// Which reasoning route an interaction took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExecutionPath {
    /// Full multimodal reasoning over query plus frame.
    Multimodal,
    /// Scene text plus text-only reasoning, taken when the multimodal engine
    /// is predicted to be too slow (or no frame exists).
    TextFallback,
}

/// Outcome of classifying one query against the safety taxonomy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SafetyVerdict {
    Safe,
    Unsafe {
        category: String,
        matched_evidence: String,
    },
}

/// How the pre-reasoning query gate treated this interaction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateOutcome {
    /// Adult or private session: the filter never ran.
    Bypassed,
    /// The filter ran and produced this verdict.
    Filtered(SafetyVerdict),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub start_ms: u64,
    pub end_ms: u64,
}

impl StageTiming {
    pub fn duration_ms(&self) -> u64 {
        self.end_ms - self.start_ms
    }
}

/// Timing, routing, gating, and rewrite record for one interaction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecutionTrace {
    pub interaction_id: u64,
    pub stage_timings: Vec<StageTiming>,
    pub path: Option<ExecutionPath>,
    pub gate: GateOutcome,
    /// Identifiers of rewrite rules applied to the response, in order.
    pub rewrites: Vec<String>,
}

impl ExecutionTrace {
    pub fn new(interaction_id: u64) -> Self {
        ExecutionTrace {
            interaction_id,
            stage_timings: Vec::new(),
            path: None,
            gate: GateOutcome::Bypassed,
            rewrites: Vec::new(),
        }
    }

    /// Append a stage. Zero-length stages are fine; `end < start` is not.
    pub fn record_stage(
        &mut self,
        stage: impl Into<String>,
        start_ms: u64,
        end_ms: u64,
    ) -> Result<(), CoreError> {
        let stage = stage.into();
        if end_ms < start_ms {
            return Err(CoreError::StageEndsBeforeStart {
                stage,
                start_ms,
                end_ms,
            });
        }
        self.stage_timings.push(StageTiming {
            stage,
            start_ms,
            end_ms,
        });
        Ok(())
    }

    /// Sum of stage durations. Equals wall time for sequential stages.
    pub fn total_latency_ms(&self) -> u64 {
        self.stage_timings.iter().map(StageTiming::duration_ms).sum()
    }

    pub fn stage(&self, name: &str) -> Option<&StageTiming> {
        self.stage_timings.iter().find(|s| s.stage == name)
    }

    pub fn has_stage(&self, name: &str) -> bool {
        self.stage(name).is_some()
    }

    /// Stage names in recorded order.
    pub fn stage_names(&self) -> Vec<&str> {
        self.stage_timings.iter().map(|s| s.stage.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_stage_sum_is_exact() {
        // component averages measured on the reference deployment
        let mut trace = ExecutionTrace::new(1);
        trace.record_stage("stt", 0, 1_650).unwrap();
        trace.record_stage("reason", 1_650, 7_270).unwrap();
        trace.record_stage("rewrite", 7_270, 8_610).unwrap();
        assert_eq!(trace.total_latency_ms(), 8_610);
        assert_eq!(
            trace.stage("reason").unwrap().duration_ms(),
            5_620,
        );
    }

    #[test]
    fn empty_trace_totals_zero() {
        assert_eq!(ExecutionTrace::new(0).total_latency_ms(), 0);
    }

    #[test]
    fn zero_length_stage_is_accepted() {
        let mut trace = ExecutionTrace::new(2);
        trace.record_stage("route", 100, 100).unwrap();
        assert_eq!(trace.total_latency_ms(), 0);
        assert!(trace.has_stage("route"));
    }

    #[test]
    fn end_before_start_is_rejected() {
        let mut trace = ExecutionTrace::new(3);
        let err = trace.record_stage("bad", 50, 49).unwrap_err();
        assert!(matches!(err, CoreError::StageEndsBeforeStart { .. }));
        assert!(trace.stage_timings.is_empty());
    }

    #[test]
    fn trace_serialization_is_stable() {
        let mut trace = ExecutionTrace::new(9);
        trace.record_stage("route", 0, 0).unwrap();
        trace.path = Some(ExecutionPath::TextFallback);
        trace.rewrites.push("color:blue".into());
        let a = serde_json::to_string(&trace).unwrap();
        let b = serde_json::to_string(&trace).unwrap();
        assert_eq!(a, b);
        let back: ExecutionTrace = serde_json::from_str(&a).unwrap();
        assert_eq!(back, trace);
    }
}
