//! Exact-arithmetic toolkit for binary voting rules.
//!
//! Everything numeric in this crate is an exact rational unless a function
//! explicitly says otherwise (the only exceptions are fitted decay exponents
//! in convergence reports, which are least-squares estimates). The main
//! building blocks:
//!
//! - [`game`]: simple games as 2^n truth tables, weighted majority games,
//!   desirability, canonical relabeling.
//! - [`lp`]: a dense exact rational simplex solver (Bland's rule) with
//!   infeasibility certificates and lexicographic minimization.
//! - [`indices`]: Banzhaf, Shapley-Shubik, Public Good, Public Help,
//!   Johnston, p-binomial semivalues, the nucleolus and the minimum sum
//!   representation index, with truth-table and dynamic-programming paths.
//! - [`enumeration`]: exhaustive streams of simple / complete / weighted
//!   games, labeled or up to isomorphism.
//! - [`inverse`]: the inverse power index problem (exhaustive, local search,
//!   certified lower bounds).
//! - [`limits`]: chains of growing weighted games and diagnostics for limit
//!   behaviour (power/weight ratios, norm-1 errors, bound checks).

pub mod enumeration;
pub mod game;
pub mod indices;
pub mod inverse;
pub mod limits;
pub mod lp;
pub mod ratio;
pub mod verify;

pub use game::{Coalition, DesirabilityRelation, SimpleGame, WeightedGame};
pub use indices::{IndexKind, PowerVector, SwingVector};
pub use inverse::{InverseSolution, TargetDistribution};
pub use limits::Chain;
pub use ratio::Ratio;
