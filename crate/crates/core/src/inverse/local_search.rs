//! Steepest-descent local search over integer-weight representations.
//!
//! State is an integer (q, w); neighbors change one weight by ±1 or the
//! quota by ±1, with feasibility repair. Restarts come from the rounded
//! σ-proportional start (the "take the target as weights" design) and from
//! seeded random vectors, so a fixed seed reproduces the run exactly.

use super::{Certificate, InverseError, InverseSolution, Norm, TargetDistribution};
use crate::game::{GameSpec, WeightedGame};
use crate::indices::{compute, ComputeOptions, IndexKind, Method};
use crate::ratio::{int, Ratio};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct LocalSearchConfig {
    pub max_weight: u64,
    pub iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Consecutive equal-distance moves tolerated before a restart; swing
    /// counts are integers, so plateaus are the normal landscape.
    pub plateau_budget: usize,
}

impl Default for LocalSearchConfig {
    fn default() -> Self {
        LocalSearchConfig {
            max_weight: 20,
            iterations: 200,
            restarts: 4,
            seed: 1,
            plateau_budget: 8,
        }
    }
}

pub const MAX_LOCAL_SEARCH_DP: usize = 30;
pub const MAX_LOCAL_SEARCH_TABLE: usize = 14;

pub fn solve_local_search(
    sigma: &TargetDistribution,
    kind: &IndexKind,
    norm: Norm,
    config: &LocalSearchConfig,
) -> Result<InverseSolution, InverseError> {
    let n = sigma.player_count();
    let dp_capable = matches!(kind, IndexKind::Banzhaf | IndexKind::ShapleyShubik);
    let limit = if dp_capable {
        MAX_LOCAL_SEARCH_DP
    } else {
        MAX_LOCAL_SEARCH_TABLE
    };
    if n > limit {
        return Err(InverseError::Envelope(format!(
            "local search supports n ≤ {limit} for {kind} (got {n})"
        )));
    }
    let method = if dp_capable && n > MAX_LOCAL_SEARCH_TABLE {
        Method::Dp
    } else {
        Method::Table
    };
    let target = sigma.original();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut best: Option<(Ratio, State)> = None;

    for restart in 0..=config.restarts {
        let start = if restart == 0 {
            sigma_proportional_start(&target, config.max_weight)
        } else {
            random_start(n, config.max_weight, &mut rng)
        };
        let Some(start) = start else { continue };
        let outcome = descend(start, &target, kind, norm, method, config)?;
        let replace = match (&best, &outcome) {
            (None, Some(_)) => true,
            (Some((bd, bs)), Some((d, s))) => d < bd || (d == bd && s.key() < bs.key()),
            _ => false,
        };
        if replace {
            best = outcome;
        }
    }

    let (_, state) = best.ok_or_else(|| {
        InverseError::Envelope("local search found no feasible state".to_string())
    })?;
    let game = state.game()?;
    let power = compute(
        &GameSpec::Weighted(game.clone()),
        kind,
        &ComputeOptions {
            method,
            ..Default::default()
        },
    )?;
    InverseSolution::checked(
        GameSpec::Weighted(game),
        power,
        &target,
        Certificate::Heuristic,
        norm,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct State {
    quota: u64,
    weights: Vec<u64>,
}

impl State {
    fn key(&self) -> (u64, &[u64]) {
        (self.quota, &self.weights)
    }

    /// Clamp into validity: some positive weight, 1 ≤ q ≤ Σw.
    fn repaired(mut self) -> Option<State> {
        let total: u64 = self.weights.iter().sum();
        if total == 0 {
            return None;
        }
        self.quota = self.quota.clamp(1, total);
        Some(self)
    }

    fn game(&self) -> Result<WeightedGame, InverseError> {
        Ok(WeightedGame::from_weights(
            int(self.quota as i64),
            self.weights.iter().map(|&w| int(w as i64)).collect(),
        )?)
    }
}

fn sigma_proportional_start(target: &[Ratio], max_weight: u64) -> Option<State> {
    let scale = int(max_weight as i64);
    let weights: Vec<u64> = target
        .iter()
        .map(|t| {
            let scaled = t * &scale;
            // Round half up.
            let rounded: BigInt = (scaled + crate::ratio::rat(1, 2)).floor().to_integer();
            rounded.to_u64().unwrap_or(0)
        })
        .collect();
    let total: u64 = weights.iter().sum();
    State {
        quota: total.div_ceil(2).max(1),
        weights,
    }
    .repaired()
}

fn random_start(n: usize, max_weight: u64, rng: &mut ChaCha8Rng) -> Option<State> {
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max_weight)).collect();
    let total: u64 = weights.iter().sum();
    if total == 0 {
        return None;
    }
    State {
        quota: rng.gen_range(1..=total),
        weights,
    }
    .repaired()
}

fn distance_of(
    state: &State,
    target: &[Ratio],
    kind: &IndexKind,
    norm: Norm,
    method: Method,
) -> Result<Option<Ratio>, InverseError> {
    let game = match state.game() {
        Ok(g) => g,
        Err(_) => return Ok(None),
    };
    let power = match compute(
        &GameSpec::Weighted(game),
        kind,
        &ComputeOptions {
            method,
            ..Default::default()
        },
    ) {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };
    Ok(Some(norm.distance(&power.values, target)))
}

type SearchOutcome = Option<(Ratio, State)>;

fn descend(
    start: State,
    target: &[Ratio],
    kind: &IndexKind,
    norm: Norm,
    method: Method,
    config: &LocalSearchConfig,
) -> Result<SearchOutcome, InverseError> {
    let mut current = start;
    let Some(mut current_distance) = distance_of(&current, target, kind, norm, method)? else {
        return Ok(None);
    };
    let mut plateau = 0usize;
    for _ in 0..config.iterations {
        if current_distance.is_zero() {
            break;
        }
        let mut best_move: Option<(Ratio, State)> = None;
        for neighbor in neighbors(&current, config.max_weight) {
            let Some(d) = distance_of(&neighbor, target, kind, norm, method)? else {
                continue;
            };
            let better = match &best_move {
                None => true,
                Some((bd, bs)) => d < *bd || (d == *bd && neighbor.key() < bs.key()),
            };
            if better {
                best_move = Some((d, neighbor));
            }
        }
        let Some((d, state)) = best_move else { break };
        if d < current_distance {
            plateau = 0;
            current = state;
            current_distance = d;
        } else if d == current_distance && plateau < config.plateau_budget {
            // Sideways step to escape a flat region of the swing landscape.
            if state == current {
                break;
            }
            plateau += 1;
            current = state;
        } else {
            break;
        }
    }
    Ok(Some((current_distance, current)))
}

fn neighbors(state: &State, max_weight: u64) -> Vec<State> {
    let mut out = Vec::with_capacity(2 * state.weights.len() + 2);
    for i in 0..state.weights.len() {
        for delta in [1i64, -1] {
            let w = state.weights[i] as i64 + delta;
            if w < 0 || w as u64 > max_weight {
                continue;
            }
            let mut weights = state.weights.clone();
            weights[i] = w as u64;
            if let Some(s) = (State {
                quota: state.quota,
                weights,
            })
            .repaired()
            {
                out.push(s);
            }
        }
    }
    for delta in [1i64, -1] {
        let q = state.quota as i64 + delta;
        if q >= 1 {
            if let Some(s) = (State {
                quota: q as u64,
                weights: state.weights.clone(),
            })
            .repaired()
            {
                out.push(s);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_target_is_found_at_the_proportional_start() {
        let sigma = TargetDistribution::parse("1/3,1/3,1/3").unwrap();
        let solution = solve_local_search(
            &sigma,
            &IndexKind::Banzhaf,
            Norm::L1,
            &LocalSearchConfig::default(),
        )
        .unwrap();
        assert!(solution.distance.is_zero());
        assert!(matches!(solution.certificate, Certificate::Heuristic));
    }

    #[test]
    fn identical_seeds_reproduce_identical_solutions() {
        let sigma = TargetDistribution::parse("5/9,2/9,1/9,1/9").unwrap();
        let config = LocalSearchConfig {
            seed: 42,
            ..Default::default()
        };
        let a = solve_local_search(&sigma, &IndexKind::ShapleyShubik, Norm::L1, &config).unwrap();
        let b = solve_local_search(&sigma, &IndexKind::ShapleyShubik, Norm::L1, &config).unwrap();
        assert_eq!(a.distance, b.distance);
        assert_eq!(a.power.values, b.power.values);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn never_beats_the_exhaustive_optimum() {
        let targets = ["3/4,1/4,0", "1/2,1/4,1/4", "2/3,1/6,1/6", "1,0,0"];
        for text in targets {
            let sigma = TargetDistribution::parse(text).unwrap();
            let exact = crate::inverse::solve_exhaustive(
                &sigma,
                crate::enumeration::GameClass::Weighted,
                &IndexKind::Banzhaf,
                Norm::L1,
            )
            .unwrap();
            let local = solve_local_search(
                &sigma,
                &IndexKind::Banzhaf,
                Norm::L1,
                &LocalSearchConfig::default(),
            )
            .unwrap();
            assert!(
                exact.distance <= local.distance,
                "local search reported {} below the optimum {} on {text}",
                local.distance,
                exact.distance
            );
        }
    }
}
