//! Chains of growing weighted games and numeric diagnostics for their
//! limit behaviour: power/weight ratio convergence, norm-1 errors,
//! distance-to-weights bounds, and per-voter limit estimates.

mod bounds;
mod chain;
mod diagnostics;

pub use bounds::{
    generic_bound_scan, nucleolus_bound_check, nucleolus_tightness_search, psi_bound, psi_game,
    psi_target, BoundCheck, BoundCheckConfig, GameSampler, NucleolusBoundVariant, PsiBound,
    ScanReport, ScanSample,
};
pub use chain::Chain;
pub use diagnostics::{
    atomic_limit_estimate, norm1_convergence, plt_ratios, regularity, ConvergenceReport,
    RegularityReport, StepRecord,
};

use crate::game::GameError;
use crate::indices::IndexError;

#[derive(Clone, Debug, thiserror::Error)]
pub enum LimitsError {
    #[error("invalid chain: {0}")]
    BadChain(String),
    #[error("index {0} does not satisfy the bound hypothesis (symmetric, positive, efficient)")]
    BoundHypothesis(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Index(#[from] IndexError),
}
