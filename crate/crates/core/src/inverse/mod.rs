//! The inverse power index problem: given a desired power distribution σ,
//! find a game whose index vector is as close to σ as possible — exactly by
//! exhaustive enumeration, heuristically by local search over integer
//! weights, and from below by certified Alon-Edelman bounds.

mod alon_edelman;
mod exhaustive;
mod local_search;

pub use alon_edelman::{alon_edelman_rhs, certified_lower_bound, AlonEdelmanVariant};
pub use exhaustive::solve_exhaustive;
pub use local_search::{solve_local_search, LocalSearchConfig};

use crate::enumeration::EnumError;
use crate::game::{GameError, GameSpec, WeightedGame};
use crate::indices::{compute, ComputeOptions, IndexError, IndexKind, PowerVector};
use crate::ratio::{l1_distance, l2_distance_squared, linf_distance, Ratio};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// A desired power distribution: nonnegative entries summing to one.
/// Entries are stored sorted descending with the original positions
/// retained, since symmetric indices make the sorted form canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetDistribution {
    sorted: Vec<Ratio>,
    /// `positions[k]` is the original index of the k-th largest entry.
    positions: Vec<usize>,
}

impl TargetDistribution {
    pub fn new(sigma: Vec<Ratio>) -> Result<Self, InverseError> {
        if sigma.is_empty() {
            return Err(InverseError::BadTarget("empty target".to_string()));
        }
        if let Some(bad) = sigma.iter().find(|v| v.is_negative()) {
            return Err(InverseError::BadTarget(format!(
                "negative entry {bad} in target"
            )));
        }
        let total: Ratio = sigma.iter().sum();
        if !total.is_one() {
            return Err(InverseError::BadTarget(format!(
                "target sums to {total}, expected 1"
            )));
        }
        let mut positions: Vec<usize> = (0..sigma.len()).collect();
        positions.sort_by(|&a, &b| sigma[b].cmp(&sigma[a]).then(a.cmp(&b)));
        let sorted = positions.iter().map(|&i| sigma[i].clone()).collect();
        Ok(TargetDistribution { sorted, positions })
    }

    /// Parses "a/b,c/d,..." (also integers and decimals).
    pub fn parse(text: &str) -> Result<Self, InverseError> {
        let entries: Result<Vec<Ratio>, _> = text
            .split(',')
            .map(|t| crate::ratio::parse_ratio(t).map_err(|e| InverseError::BadTarget(e.to_string())))
            .collect();
        Self::new(entries?)
    }

    pub fn player_count(&self) -> usize {
        self.sorted.len()
    }

    /// Entries sorted descending.
    pub fn sorted(&self) -> &[Ratio] {
        &self.sorted
    }

    /// Entries in their original order.
    pub fn original(&self) -> Vec<Ratio> {
        let mut out = vec![Ratio::zero(); self.sorted.len()];
        for (k, &pos) in self.positions.iter().enumerate() {
            out[pos] = self.sorted[k].clone();
        }
        out
    }

    /// Original position of the k-th largest entry.
    pub fn position_of_rank(&self, k: usize) -> usize {
        self.positions[k]
    }

    /// Sum of the entries beyond the k largest.
    pub fn tail(&self, k: usize) -> Ratio {
        self.sorted.iter().skip(k).sum()
    }
}

/// Distance norm. Quantitative results in this area are stated for the l1
/// norm, which is the default everywhere.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Norm {
    #[default]
    L1,
    /// Reported as the *squared* distance so values stay rational.
    L2,
    Linf,
}

impl Norm {
    /// Exact comparable distance (squared for l2).
    pub fn distance(&self, a: &[Ratio], b: &[Ratio]) -> Ratio {
        match self {
            Norm::L1 => l1_distance(a, b),
            Norm::L2 => l2_distance_squared(a, b),
            Norm::Linf => linf_distance(a, b),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Norm::L1 => write!(f, "l1"),
            Norm::L2 => write!(f, "l2"),
            Norm::Linf => write!(f, "linf"),
        }
    }
}

impl FromStr for Norm {
    type Err = InverseError;
    fn from_str(s: &str) -> Result<Self, InverseError> {
        match s {
            "l1" => Ok(Norm::L1),
            "l2" => Ok(Norm::L2),
            "linf" => Ok(Norm::Linf),
            other => Err(InverseError::BadTarget(format!("unknown norm {other:?}"))),
        }
    }
}

/// How the reported solution is certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Globally optimal over the searched class.
    ExactOptimal,
    /// Best found by local search; no optimality claim.
    Heuristic,
    /// Best found, with a proven lower bound on the optimal distance.
    HeuristicWithLowerBound(Ratio),
}

#[derive(Clone, Debug)]
pub struct InverseSolution {
    pub game: GameSpec,
    pub power: PowerVector,
    pub distance: Ratio,
    pub certificate: Certificate,
    pub norm: Norm,
}

impl InverseSolution {
    /// Builds a solution, recomputing the distance from scratch so the
    /// stored value never drifts from its inputs.
    pub fn checked(
        game: GameSpec,
        power: PowerVector,
        sigma: &[Ratio],
        certificate: Certificate,
        norm: Norm,
    ) -> Result<Self, InverseError> {
        let distance = norm.distance(&power.values, sigma);
        if let Certificate::HeuristicWithLowerBound(bound) = &certificate {
            if bound > &distance {
                return Err(InverseError::BadTarget(format!(
                    "lower bound {bound} exceeds achieved distance {distance}"
                )));
            }
        }
        Ok(InverseSolution {
            game,
            power,
            distance,
            certificate,
            norm,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let certificate = match &self.certificate {
            Certificate::ExactOptimal => serde_json::json!({"kind": "exact-optimal"}),
            Certificate::Heuristic => serde_json::json!({"kind": "heuristic"}),
            Certificate::HeuristicWithLowerBound(b) => serde_json::json!({
                "kind": "heuristic-with-lower-bound",
                "lower_bound": crate::ratio::format_ratio(b),
            }),
        };
        serde_json::json!({
            "game": self.game.to_json(),
            "power": self.power.to_json(),
            "distance": crate::ratio::format_ratio(&self.distance),
            "norm": self.norm.to_string(),
            "certificate": certificate,
        })
    }
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum InverseError {
    #[error("invalid target: {0}")]
    BadTarget(String),
    #[error("{0}")]
    Envelope(String),
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

/// Evaluates the naive design that uses σ itself as the weight vector with
/// relative quota q, reporting the achieved power and its distance to σ.
pub struct SigmaAsWeightsReport {
    pub game: WeightedGame,
    pub power: PowerVector,
    pub distance: Ratio,
}

pub fn sigma_as_weights_report(
    sigma: &TargetDistribution,
    kind: &IndexKind,
    q_rel: &Ratio,
) -> Result<SigmaAsWeightsReport, InverseError> {
    if !q_rel.is_positive() || q_rel > &Ratio::one() {
        return Err(InverseError::BadTarget(format!(
            "relative quota {q_rel} outside (0,1]"
        )));
    }
    let weights = sigma.original();
    // Σσ = 1, so the absolute quota equals the relative one.
    let game = WeightedGame::from_weights(q_rel.clone(), weights.clone())?;
    let power = compute(
        &GameSpec::Weighted(game.clone()),
        kind,
        &ComputeOptions::default(),
    )?;
    let distance = l1_distance(&power.values, &weights);
    Ok(SigmaAsWeightsReport {
        game,
        power,
        distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};

    #[test]
    fn target_sorts_and_restores() {
        let t = TargetDistribution::new(vec![rat(1, 4), rat(3, 4)]).unwrap();
        assert_eq!(t.sorted(), &[rat(3, 4), rat(1, 4)]);
        assert_eq!(t.original(), vec![rat(1, 4), rat(3, 4)]);
        assert_eq!(t.position_of_rank(0), 1);
        assert_eq!(t.tail(1), rat(1, 4));
    }

    #[test]
    fn target_validation() {
        assert!(TargetDistribution::new(vec![]).is_err());
        assert!(TargetDistribution::new(vec![rat(1, 2)]).is_err());
        assert!(TargetDistribution::new(vec![rat(3, 2), rat(-1, 2)]).is_err());
        assert!(TargetDistribution::parse("3/4,1/4,0,0,0").is_ok());
        assert!(TargetDistribution::parse("0.75,0.25").is_ok());
    }

    #[test]
    fn sigma_as_weights_examples() {
        // Uniform target with majority quota hits exactly.
        let t = TargetDistribution::parse("1/3,1/3,1/3").unwrap();
        let report =
            sigma_as_weights_report(&t, &IndexKind::Banzhaf, &rat(1, 2)).unwrap();
        assert_eq!(report.distance, int(0));

        // ψ³ = (2/5,2/5,1/5): all pairs win, so any symmetric index is
        // uniform and the error is 4/15.
        let t = TargetDistribution::parse("2/5,2/5,1/5").unwrap();
        let report =
            sigma_as_weights_report(&t, &IndexKind::ShapleyShubik, &rat(1, 2)).unwrap();
        assert_eq!(
            report.power.values,
            vec![rat(1, 3), rat(1, 3), rat(1, 3)]
        );
        assert_eq!(report.distance, rat(4, 15));

        // (3/4,1/4) with q = 1/2 makes player 1 a dictator.
        let t = TargetDistribution::parse("3/4,1/4").unwrap();
        let report = sigma_as_weights_report(&t, &IndexKind::Banzhaf, &rat(1, 2)).unwrap();
        assert_eq!(report.power.values, vec![int(1), int(0)]);
        assert_eq!(report.distance, rat(1, 2));
    }
}
