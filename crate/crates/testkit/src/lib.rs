//! Independent reference implementations ("oracles") and synthetic input
//! generators used by the test suites.
//!
//! Everything here is deliberately written the slow, obvious way — direct
//! formula translations, quadratic loops, full-history recomputation — and
//! shares no code with the production crates it checks. Only ever pull this
//! in as a dev-dependency.

pub mod mfcc_oracle;
pub mod novelty_oracle;
pub mod pitch_oracle;
pub mod signals;
pub mod stats;
