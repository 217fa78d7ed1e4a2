//! Signature scoring, Cox proportional hazards, and preranked enrichment.
pub struct CoxResult<F> { pub beta: F }
