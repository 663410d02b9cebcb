//! The end-to-end answer pipeline: frame reservation, routing, reasoning,
//! latency feedback, and rewrite-before-delivery.

use std::collections::BTreeMap;

use sightline_core::{Clock, Config, ExecutionPath, ExecutionTrace, Frame, FusedInput};
use sightline_safety::{rewrite_response, RuleSet};

use crate::backend::BackendRegistry;
use crate::error::CognitionError;
use crate::latency::{select_path, update_latency, LatencyStats};
use crate::prompt::build_prompt;
use crate::scene::{scene_to_text, SceneDescription};

/// Stage names recorded by [`answer`], in order.
pub const STAGE_ROUTE: &str = "route";
pub const STAGE_REASON: &str = "reason";
pub const STAGE_REWRITE: &str = "rewrite";

/// Reserve the frame for a query: the one with the greatest timestamp at or
/// before the query start. `frames` must be ordered by timestamp. `None`
/// means a frame-less (kiosk) interaction.
pub fn reserve_frame(frames: &[Frame], query_start_ms: u64) -> Option<&Frame> {
    let idx = frames.partition_point(|f| f.timestamp_ms <= query_start_ms);
    idx.checked_sub(1).map(|i| &frames[i])
}

/// Everything [`answer`] needs besides the fused input itself.
pub struct AnswerContext<'a> {
    pub registry: &'a BackendRegistry,
    /// Per-backend latency stats, keyed by backend name. The multimodal
    /// backend's entry drives routing.
    pub stats: &'a mut BTreeMap<String, LatencyStats>,
    pub config: &'a Config,
    pub rules: &'a RuleSet,
    pub clock: &'a dyn Clock,
    /// Injected duration of the rewrite stage (simulation); zero live, where
    /// wall time passes on its own.
    pub rewrite_cost_ms: u64,
}

/// Run one interaction end to end.
///
/// Follows the routing decision made *before* invocation, feeds the measured
/// latency back into the invoked backend's stats, passes the raw response
/// through the rewrite rules, and records the route/reason/rewrite stages in
/// `trace`. The caller owns the trace, so on backend failure everything
/// recorded so far survives in it.
pub fn answer(
    fused: &FusedInput,
    ctx: &mut AnswerContext<'_>,
    trace: &mut ExecutionTrace,
) -> Result<String, CognitionError> {
    let (multimodal, text_only) = ctx.registry.require_both_routes()?;
    let clock = ctx.clock;

    // routing uses the multimodal engine's predicted response time
    let route_start = clock.now_ms();
    let predicted = ctx.stats.entry(multimodal.name().to_string()).or_default();
    let mut path = select_path(predicted, ctx.config.latency_threshold_ms);
    if fused.frame.is_none() {
        // nothing to attach: the text route is the only one that can answer
        path = ExecutionPath::TextFallback;
    }
    trace.path = Some(path);
    trace.record_stage(STAGE_ROUTE, route_start, clock.now_ms())?;

    // reasoning
    let reason_start = clock.now_ms();
    let invoked_name;
    let response = match path {
        ExecutionPath::Multimodal => {
            let prompt = build_prompt(fused, path, None)?;
            invoked_name = multimodal.name().to_string();
            multimodal.invoke(&prompt, fused.frame.as_ref())
        }
        ExecutionPath::TextFallback => {
            let scene: Option<SceneDescription> = match (&fused.frame, &fused.session.environment_notes) {
                (Some(frame), _) => Some(scene_to_text(
                    &frame.detections,
                    ctx.config.scene.near_area_fraction,
                )),
                (None, Some(notes)) => Some(SceneDescription::from_notes(notes)),
                (None, None) => None,
            };
            let prompt = build_prompt(fused, path, scene.as_ref())?;
            invoked_name = text_only.name().to_string();
            text_only.invoke(&prompt, None)
        }
    };
    let response = match response {
        Ok(r) => r,
        Err(source) => {
            // keep the trace honest about how far we got
            trace.record_stage(STAGE_REASON, reason_start, clock.now_ms())?;
            return Err(CognitionError::Backend {
                backend: invoked_name,
                message: source.to_string(),
            });
        }
    };
    clock.advance(response.latency_ms);
    trace.record_stage(STAGE_REASON, reason_start, clock.now_ms())?;
    update_latency(
        ctx.stats.entry(invoked_name).or_default(),
        response.latency_ms as f64,
        ctx.config.ewma_alpha,
    )?;

    // rewrite before delivery, grounding against the reserved frame's scene
    let rewrite_start = clock.now_ms();
    let scene_detections = fused.frame.as_ref().map(|f| &f.detections);
    let rewritten = rewrite_response(&response.text, ctx.rules, scene_detections);
    clock.advance(ctx.rewrite_cost_ms);
    trace.record_stage(STAGE_REWRITE, rewrite_start, clock.now_ms())?;
    trace.rewrites = rewritten.applied.iter().map(|a| a.rule_id.clone()).collect();

    Ok(rewritten.text)
}
