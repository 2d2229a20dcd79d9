//! Distance-to-weights bound checks: the proven nucleolus bound
//! 2Δ/min(q,1−q), its conjectured sharper form Δ/min(q,1−q), the generic
//! c·Δ^α/min(q,1−q)^β template scan, and the ψ^n floor that no symmetric
//! positive efficient index can beat.

use super::LimitsError;
use crate::game::{GameSpec, WeightedGame};
use crate::indices::{compute, nucleolus, ComputeOptions, IndexKind, Method};
use crate::ratio::{int, rat, Ratio};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NucleolusBoundVariant {
    /// ‖Nuc − w‖₁ ≤ 2Δ/min(q,1−q), proven.
    Proven,
    /// ‖Nuc − w‖₁ ≤ Δ/min(q,1−q), conjectured and reportedly tight.
    Conjectured,
}

#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub lhs: Ratio,
    pub rhs: Ratio,
    pub holds: bool,
    pub slack: Ratio,
}

/// Normalizes the game's weights to sum one and checks the selected
/// nucleolus bound exactly.
pub fn nucleolus_bound_check(
    game: &WeightedGame,
    variant: NucleolusBoundVariant,
) -> Result<BoundCheck, LimitsError> {
    let weights = game.normalized_weights();
    let q = game.relative_quota();
    if !q.is_positive() || q >= Ratio::one() {
        return Err(LimitsError::BadChain(format!(
            "relative quota {q} outside (0,1)"
        )));
    }
    let normalized = WeightedGame::from_weights(q.clone(), weights.clone())?;
    let table = normalized.realize()?;
    let nuc = nucleolus(&table)?;
    let lhs = crate::ratio::l1_distance(&nuc.values, &weights);
    let delta = weights.iter().max().expect("nonempty weights").clone();
    let min_q = q.clone().min(Ratio::one() - &q);
    let factor = match variant {
        NucleolusBoundVariant::Proven => int(2),
        NucleolusBoundVariant::Conjectured => int(1),
    };
    let rhs = factor * delta / min_q;
    let holds = lhs <= rhs;
    let slack = &rhs - &lhs;
    Ok(BoundCheck {
        lhs,
        rhs,
        holds,
        slack,
    })
}

/// Configuration of the generic bound template c·Δ^α / min(q,1−q)^β.
/// Exponents are integral; the scan compares the observed ratio
/// lhs·min(q,1−q)^β / Δ^α against the candidate constant c.
#[derive(Clone, Debug)]
pub struct BoundCheckConfig {
    pub alpha: u32,
    pub beta: u32,
    pub c: Ratio,
    pub kind: IndexKind,
}

#[derive(Clone, Debug)]
pub enum GameSampler {
    /// Seeded random integer weights and rational quotas.
    Random {
        count: usize,
        n_min: usize,
        n_max: usize,
        max_weight: u64,
        seed: u64,
    },
    /// A base weight multiset replicated whole a growing number of times.
    Replicas {
        base: Vec<u64>,
        copies: Vec<usize>,
        q_rel: Ratio,
    },
}

#[derive(Clone, Debug)]
pub struct ScanSample {
    pub n: usize,
    pub q_rel: Ratio,
    pub lhs: Ratio,
    pub ratio: Ratio,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub samples: Vec<ScanSample>,
    /// Empirical supremum of the observed ratios: a candidate c.
    pub supremum: Ratio,
    /// Whether every sample stayed at or below the configured c.
    pub within_candidate: bool,
}

pub fn generic_bound_scan(
    config: &BoundCheckConfig,
    sampler: &GameSampler,
) -> Result<ScanReport, LimitsError> {
    if config.alpha == 0 || config.beta == 0 || !config.c.is_positive() {
        return Err(LimitsError::BadChain(
            "bound template needs α, β ≥ 1 and c > 0".to_string(),
        ));
    }
    let games = sample_games(sampler)?;
    let mut samples = Vec::new();
    let mut supremum = Ratio::zero();
    for game in games {
        let n = game.player_count();
        let q = game.relative_quota();
        let weights = game.normalized_weights();
        let normalized = WeightedGame::from_weights(q.clone(), weights.clone())?;
        let power = compute(
            &GameSpec::Weighted(normalized),
            &config.kind,
            &ComputeOptions {
                method: Method::Auto,
                ..Default::default()
            },
        )?;
        let lhs = crate::ratio::l1_distance(&power.values, &weights);
        let delta = weights.iter().max().expect("nonempty").clone();
        let min_q = q.clone().min(Ratio::one() - &q);
        if delta.is_zero() || min_q.is_zero() {
            continue;
        }
        let ratio = &lhs * pow(&min_q, config.beta) / pow(&delta, config.alpha);
        if ratio > supremum {
            supremum = ratio.clone();
        }
        samples.push(ScanSample {
            n,
            q_rel: q,
            lhs,
            ratio,
        });
    }
    let within_candidate = supremum <= config.c;
    Ok(ScanReport {
        samples,
        supremum,
        within_candidate,
    })
}

fn pow(base: &Ratio, exp: u32) -> Ratio {
    let mut out = Ratio::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

fn sample_games(sampler: &GameSampler) -> Result<Vec<WeightedGame>, LimitsError> {
    match sampler {
        GameSampler::Random {
            count,
            n_min,
            n_max,
            max_weight,
            seed,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut games = Vec::with_capacity(*count);
            while games.len() < *count {
                let n = rng.gen_range(*n_min..=*n_max);
                let weights: Vec<Ratio> =
                    (0..n).map(|_| int(rng.gen_range(0..=*max_weight) as i64)).collect();
                let total: Ratio = weights.iter().sum();
                if !total.is_positive() {
                    continue;
                }
                // Relative quota strictly inside (0,1).
                let q_num = rng.gen_range(1..100i64);
                let q = rat(q_num, 100) * &total;
                match WeightedGame::from_weights(q, weights) {
                    Ok(g) => games.push(g),
                    Err(_) => continue,
                }
            }
            Ok(games)
        }
        GameSampler::Replicas {
            base,
            copies,
            q_rel,
        } => {
            let mut games = Vec::new();
            for &m in copies {
                let mut weights = Vec::with_capacity(base.len() * m);
                for _ in 0..m {
                    weights.extend(base.iter().map(|&w| int(w as i64)));
                }
                let total: Ratio = weights.iter().sum();
                games.push(WeightedGame::from_weights(q_rel * &total, weights)?);
            }
            Ok(games)
        }
    }
}

/// The ψ^n = (2,...,2,1)/(2n−1) floor: for any symmetric, positive,
/// efficient index, ‖P([q; ψ^n]) − ψ^n‖₁ ≥ (2/(2n−1))·((n−1)/n).
#[derive(Clone, Debug)]
pub struct PsiBound {
    pub lhs: Ratio,
    pub floor: Ratio,
    pub ratio: Ratio,
    pub holds: bool,
}

pub fn psi_target(n: usize) -> Vec<Ratio> {
    let denom = 2 * n as i64 - 1;
    let mut target = vec![rat(2, denom); n - 1];
    target.push(rat(1, denom));
    target
}

pub fn psi_game(n: usize, q_rel: &Ratio) -> Result<WeightedGame, LimitsError> {
    let target = psi_target(n);
    Ok(WeightedGame::from_weights(q_rel.clone(), target)?)
}

pub fn psi_bound(n: usize, kind: &IndexKind, q_rel: &Ratio) -> Result<PsiBound, LimitsError> {
    if n < 2 {
        return Err(LimitsError::BadChain("ψ bound needs n ≥ 2".to_string()));
    }
    if !kind.is_efficient() || !kind.is_symmetric() {
        return Err(LimitsError::BoundHypothesis(kind.to_string()));
    }
    if !q_rel.is_positive() || q_rel >= &Ratio::one() {
        return Err(LimitsError::BadChain(format!(
            "relative quota {q_rel} outside (0,1)"
        )));
    }
    let target = psi_target(n);
    let game = psi_game(n, q_rel)?;
    let power = compute(
        &GameSpec::Weighted(game),
        kind,
        &ComputeOptions {
            method: Method::Auto,
            ..Default::default()
        },
    )?;
    let lhs = crate::ratio::l1_distance(&power.values, &target);
    let floor = rat(2, 2 * n as i64 - 1) * rat(n as i64 - 1, n as i64);
    let ratio = &lhs / &floor;
    let holds = lhs >= floor;
    Ok(PsiBound {
        lhs,
        floor,
        ratio,
        holds,
    })
}

/// Hill climb for weight vectors pushing the conjectured nucleolus bound
/// toward tightness: maximizes lhs·min(q,1−q)/Δ over integer weights at a
/// few quota values, reporting the best ratio found.
pub fn nucleolus_tightness_search(
    n: usize,
    max_weight: u64,
    iterations: usize,
    seed: u64,
) -> Result<(Ratio, WeightedGame), LimitsError> {
    let quotas = [rat(1, 3), rat(1, 2), rat(2, 3), rat(3, 4)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Ratio, WeightedGame)> = None;
    for q in &quotas {
        let mut weights: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_weight)).collect();
        let mut current = tightness_ratio(&weights, q)?;
        for _ in 0..iterations {
            let mut improved = false;
            'moves: for i in 0..n {
                for delta in [1i64, -1] {
                    let w = weights[i] as i64 + delta;
                    if w < 1 || w as u64 > max_weight {
                        continue;
                    }
                    let mut candidate = weights.clone();
                    candidate[i] = w as u64;
                    let ratio = tightness_ratio(&candidate, q)?;
                    if ratio > current {
                        weights = candidate;
                        current = ratio;
                        improved = true;
                        break 'moves;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        let game = integer_game(&weights, q)?;
        if best.as_ref().map_or(true, |(b, _)| current > *b) {
            best = Some((current, game));
        }
    }
    best.ok_or_else(|| LimitsError::BadChain("empty search".to_string()))
}

fn integer_game(weights: &[u64], q_rel: &Ratio) -> Result<WeightedGame, LimitsError> {
    let weights: Vec<Ratio> = weights.iter().map(|&w| int(w as i64)).collect();
    let total: Ratio = weights.iter().sum();
    Ok(WeightedGame::from_weights(q_rel * total, weights)?)
}

fn tightness_ratio(weights: &[u64], q_rel: &Ratio) -> Result<Ratio, LimitsError> {
    let game = integer_game(weights, q_rel)?;
    let check = nucleolus_bound_check(&game, NucleolusBoundVariant::Conjectured)?;
    // check.rhs = Δ/min(q,1−q), so lhs/rhs is the tightness ratio.
    Ok(&check.lhs / &check.rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_game_satisfies_both_variants_with_zero_lhs() {
        let game = WeightedGame::from_weights(
            rat(1, 2),
            vec![rat(1, 3), rat(1, 3), rat(1, 3)],
        )
        .unwrap();
        for variant in [NucleolusBoundVariant::Proven, NucleolusBoundVariant::Conjectured] {
            let check = nucleolus_bound_check(&game, variant).unwrap();
            assert!(check.lhs.is_zero());
            assert!(check.holds);
        }
    }

    #[test]
    fn veto_game_example() {
        // [3/4; 1/2,1/4,1/4]: nucleolus (1,0,0), lhs = 1, proven rhs = 4.
        let game = WeightedGame::from_weights(
            rat(3, 4),
            vec![rat(1, 2), rat(1, 4), rat(1, 4)],
        )
        .unwrap();
        let check = nucleolus_bound_check(&game, NucleolusBoundVariant::Proven).unwrap();
        assert_eq!(check.lhs, int(1));
        assert_eq!(check.rhs, int(4));
        assert!(check.holds);
        let check = nucleolus_bound_check(&game, NucleolusBoundVariant::Conjectured).unwrap();
        assert_eq!(check.rhs, int(2));
        assert!(check.holds);
    }

    #[test]
    fn psi_bound_is_tight_at_three_players_for_ssi() {
        let bound = psi_bound(3, &IndexKind::ShapleyShubik, &rat(1, 2)).unwrap();
        assert_eq!(bound.lhs, rat(4, 15));
        assert_eq!(bound.floor, rat(4, 15));
        assert_eq!(bound.ratio, int(1));
        assert!(bound.holds);
    }

    #[test]
    fn psi_bound_at_two_players() {
        // ψ² = (2/3,1/3), floor = (2/3)·(1/2) = 1/3.
        let bound = psi_bound(2, &IndexKind::Banzhaf, &rat(1, 2)).unwrap();
        assert_eq!(bound.floor, rat(1, 3));
        assert!(bound.holds);
    }

    #[test]
    fn psi_bound_refuses_raw_kinds() {
        assert!(matches!(
            psi_bound(3, &IndexKind::RawBanzhaf, &rat(1, 2)),
            Err(LimitsError::BoundHypothesis(_))
        ));
    }

    #[test]
    fn all_ones_banzhaf_ratio_is_zero() {
        let config = BoundCheckConfig {
            alpha: 1,
            beta: 1,
            c: int(2),
            kind: IndexKind::Banzhaf,
        };
        let sampler = GameSampler::Replicas {
            base: vec![1],
            copies: vec![3, 5, 7],
            q_rel: rat(1, 2),
        };
        let report = generic_bound_scan(&config, &sampler).unwrap();
        assert!(report.supremum.is_zero());
        assert!(report.within_candidate);
    }
}
