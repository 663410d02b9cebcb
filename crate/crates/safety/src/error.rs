use thiserror::Error;

#[derive(Debug, Error)]
pub enum SafetyError {
    #[error("age range unresolved: run the age confirmation flow before gating")]
    AgeUnresolved,

    #[error("taxonomy: {0}")]
    Taxonomy(String),

    #[error("rules: {0}")]
    Rules(String),

    #[error("rules file {path}: {reason}")]
    RulesIo { path: String, reason: String },

    #[error("rules parse: {0}")]
    RulesParse(#[from] toml::de::Error),
}
