//! Feasibility analysis for the error-correction stage of reverse-reconciliation
//! continuous-variable quantum key distribution.
//!
//! The crate answers, for a losses-only Gaussian channel with a beamsplitter
//! eavesdropper, the questions that decide whether key distillation is
//! practical at a given distance:
//!
//! * [`channel`] — how much mutual information Alice/Bob and Eve/Bob share,
//!   and how much secret rate per key element survives;
//! * [`budget`] — how many binary digits each element must be quantized
//!   into, the per-digit bit error rate, the minimum error-correction block
//!   size, and how the resulting complexity scales with distance;
//! * [`montecarlo`] — seeded sampling of binomial error counts that checks
//!   the Gaussian block-size statistics against the exact binomial CDF.
//!
//! Everything rests on the special functions in [`numerics`]: binary entropy
//! and its inverse, the normal upper tail `Q` and its inverse, and the exact
//! binomial tail evaluated in log space.

pub mod budget;
pub mod channel;
pub mod montecarlo;
pub mod numerics;

pub use budget::{
    audit_worked_example, block_size_bound, block_size_from_rates, plan_quantization,
    relative_complexity, AuditReport, BlockBound, ComplexityEstimate, DigitPlan, ScalingMode,
};
pub use channel::{propagate, transmission_from_distance, ChannelPoint, InfoBudget};
pub use montecarlo::{
    beta_gaussian, merge_reports, simulate_error_counts, simulate_error_counts_parallel,
    MonteCarloReport,
};
pub use numerics::{
    binary_entropy, binomial_tail_exact, gaussian_tail, gaussian_tail_inverse, inv_binary_entropy,
    Bits, Probability,
};

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested quantity does not exist for these parameters.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// Two reports cannot be combined because their parameters differ.
    #[error("parameter mismatch: {0}")]
    Mismatch(String),
    /// A simulation request exceeds the configured work cap.
    #[error("work cap exceeded: {requested} sampled counts requested, cap is {cap}")]
    WorkCap { requested: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
