//! Finite-range diagnostics for the limit behaviour of power indices along
//! chains. Everything here is evidence over the tested steps, never a
//! proof about the infinite chain; reports say so explicitly.

use super::chain::Chain;
use super::LimitsError;
use crate::game::GameSpec;
use crate::indices::{compute, ComputeOptions, IndexKind, Method};
use crate::ratio::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

/// One measured quantity at one chain step.
#[derive(Clone, Debug)]
pub struct StepRecord {
    pub n: usize,
    pub quantity: String,
    pub value: Ratio,
}

/// Measurements over the chain steps plus an optional log-log decay fit.
/// `verdicts` are named finite-range checks; the `finite surrogate` flag is
/// part of every report.
#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub records: Vec<StepRecord>,
    /// (exponent, residual) of a least-squares fit of ln value against
    /// ln n, in floating point; the only non-exact numbers in this crate.
    pub fitted_decay: Option<(f64, f64)>,
    pub verdicts: Vec<(String, bool)>,
    pub finite_surrogate: bool,
}

fn index_options(chain: &Chain, kind: &IndexKind, n: usize) -> ComputeOptions {
    let _ = chain;
    let dp_capable = matches!(
        kind,
        IndexKind::Banzhaf | IndexKind::ShapleyShubik | IndexKind::RawBanzhaf
    );
    ComputeOptions {
        method: if dp_capable && n > 16 {
            Method::Dp
        } else {
            Method::Auto
        },
        ..Default::default()
    }
}

/// Power/weight ratio records for the given player pairs:
/// P_i / P_j against the constant target w_i / w_j per step.
pub fn plt_ratios(
    chain: &Chain,
    kind: &IndexKind,
    pairs: &[(usize, usize)],
    tolerance: &Ratio,
) -> Result<ConvergenceReport, LimitsError> {
    let mut records = Vec::new();
    let mut verdicts = Vec::new();
    let mut per_pair: Vec<Vec<Option<Ratio>>> = vec![Vec::new(); pairs.len()];
    for &n in &chain.steps {
        let game = chain.game_at(n)?;
        let power = compute(
            &GameSpec::Weighted(game),
            kind,
            &index_options(chain, kind, n),
        )?;
        for (pi, &(i, j)) in pairs.iter().enumerate() {
            if i >= n || j >= n {
                continue;
            }
            let quantity = format!("ratio_p{}_p{}", i + 1, j + 1);
            if power.values[j].is_zero() {
                // Undefined point, recorded as such rather than a crash.
                records.push(StepRecord {
                    n,
                    quantity: format!("{quantity}_undefined"),
                    value: Ratio::zero(),
                });
                per_pair[pi].push(None);
            } else {
                let ratio = &power.values[i] / &power.values[j];
                records.push(StepRecord {
                    n,
                    quantity,
                    value: ratio.clone(),
                });
                per_pair[pi].push(Some(ratio));
            }
        }
    }
    for (pi, &(i, j)) in pairs.iter().enumerate() {
        let wi = chain.weight_of(i);
        let wj = chain.weight_of(j);
        if wj.is_zero() {
            continue;
        }
        let target = wi / wj;
        let name = format!("pair_{}_{}_approaches_weight_ratio", i + 1, j + 1);
        let series = &per_pair[pi];
        let verdict = match (series.first(), series.last()) {
            (Some(Some(first)), Some(Some(last))) => {
                let gap_last = (last - &target).abs();
                let gap_first = (first - &target).abs();
                gap_last <= *tolerance && gap_last <= gap_first
            }
            _ => false,
        };
        verdicts.push((name, verdict));
    }
    Ok(ConvergenceReport {
        records,
        fitted_decay: None,
        verdicts,
        finite_surrogate: true,
    })
}

/// Per-step l1 distance between the index vector and the normalized
/// weights, with a fitted decay exponent.
pub fn norm1_convergence(chain: &Chain, kind: &IndexKind) -> Result<ConvergenceReport, LimitsError> {
    let mut records = Vec::new();
    for &n in &chain.steps {
        let game = chain.game_at(n)?;
        let weights = game.normalized_weights();
        let power = compute(
            &GameSpec::Weighted(game.clone()),
            kind,
            &index_options(chain, kind, n),
        )?;
        let value = crate::ratio::l1_distance(&power.values, &weights);
        records.push(StepRecord {
            n,
            quantity: "norm1_error".to_string(),
            value,
        });
    }
    let fitted_decay = fit_decay(&records);
    let decreasing = records
        .windows(2)
        .all(|w| w[1].value <= w[0].value);
    Ok(ConvergenceReport {
        records,
        fitted_decay,
        verdicts: vec![("norm1_error_nonincreasing".to_string(), decreasing)],
        finite_surrogate: true,
    })
}

/// The regularity quantity of one voter per step: the total relative
/// weight of that voter's weight class. The verdict is a finite surrogate:
/// a cleanly vanishing trend (monotone decrease to at most half the first
/// value) reads as irregular, anything else as regular with the minimum
/// over the range as witness ε.
pub struct RegularityReport {
    pub regular: bool,
    pub witness_epsilon: Ratio,
    pub values: Vec<(usize, Ratio)>,
    pub finite_surrogate: bool,
}

pub fn regularity(chain: &Chain, player: usize) -> Result<RegularityReport, LimitsError> {
    let mut values = Vec::new();
    for &n in &chain.steps {
        let game = chain.game_at(n)?;
        if player >= n {
            continue;
        }
        let weights = game.weights();
        let wi = &weights[player];
        let class_size = weights.iter().filter(|w| *w == wi).count();
        let quantity = Ratio::from_integer(class_size.into()) * wi / game.total_weight();
        values.push((n, quantity));
    }
    if values.is_empty() {
        return Err(LimitsError::BadChain(format!(
            "player {player} never present on the tested steps"
        )));
    }
    let strictly_decreasing = values.windows(2).all(|w| w[1].1 < w[0].1);
    let vanished = values.last().unwrap().1 <= values[0].1.clone() / crate::ratio::int(2);
    let min = values.iter().map(|(_, v)| v).min().unwrap().clone();
    Ok(RegularityReport {
        regular: !(strictly_decreasing && vanished),
        witness_epsilon: min,
        values,
        finite_surrogate: true,
    })
}

/// Per-persistent-voter power sequences with successive differences and a
/// decay check against O(1/n).
pub fn atomic_limit_estimate(
    chain: &Chain,
    kind: &IndexKind,
) -> Result<ConvergenceReport, LimitsError> {
    let atomic = chain.atomic_count();
    if atomic == 0 {
        return Ok(ConvergenceReport {
            records: Vec::new(),
            fitted_decay: None,
            verdicts: Vec::new(),
            finite_surrogate: true,
        });
    }
    let mut records = Vec::new();
    let mut per_player: Vec<Vec<(usize, Ratio)>> = vec![Vec::new(); atomic];
    for &n in &chain.steps {
        let game = chain.game_at(n)?;
        let power = compute(
            &GameSpec::Weighted(game),
            kind,
            &index_options(chain, kind, n),
        )?;
        for (i, seq) in per_player.iter_mut().enumerate() {
            records.push(StepRecord {
                n,
                quantity: format!("power_p{}", i + 1),
                value: power.values[i].clone(),
            });
            seq.push((n, power.values[i].clone()));
        }
    }
    let mut verdicts = Vec::new();
    let mut diff_records = Vec::new();
    for (i, seq) in per_player.iter().enumerate() {
        let mut diffs = Vec::new();
        for w in seq.windows(2) {
            let diff = (&w[1].1 - &w[0].1).abs();
            diff_records.push(StepRecord {
                n: w[1].0,
                quantity: format!("successive_diff_p{}", i + 1),
                value: diff.clone(),
            });
            diffs.push((w[1].0, diff));
        }
        // Consistent with O(1/n): scaled differences n·|Δ| stay bounded by
        // a small multiple of their first value.
        let consistent = if diffs.len() < 2 {
            true
        } else {
            let scaled: Vec<Ratio> = diffs
                .iter()
                .map(|(n, d)| d * Ratio::from_integer((*n).into()))
                .collect();
            let cap = scaled[0].clone().max(crate::ratio::rat(1, 1_000_000)) * crate::ratio::int(4);
            scaled.iter().all(|s| *s <= cap)
        };
        verdicts.push((format!("diff_decay_like_1_over_n_p{}", i + 1), consistent));
    }
    records.extend(diff_records);
    Ok(ConvergenceReport {
        records,
        fitted_decay: None,
        verdicts,
        finite_surrogate: true,
    })
}

/// Least-squares slope of ln(value) on ln(n); None when any value is zero.
fn fit_decay(records: &[StepRecord]) -> Option<(f64, f64)> {
    let points: Vec<(f64, f64)> = records
        .iter()
        .filter_map(|r| {
            let v = r.value.to_f64()?;
            if v <= 0.0 {
                None
            } else {
                Some(((r.n as f64).ln(), v.ln()))
            }
        })
        .collect();
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let residual: f64 = points
        .iter()
        .map(|p| {
            let e = p.1 - (slope * p.0 + intercept);
            e * e
        })
        .sum::<f64>()
        .sqrt();
    Some((slope, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};

    #[test]
    fn symmetric_chain_ratios_are_exactly_one() {
        let chain = Chain::replica(rat(1, 2), vec![3, 5, 7]).unwrap();
        let report = plt_ratios(&chain, &IndexKind::Banzhaf, &[(0, 1)], &rat(1, 100)).unwrap();
        for r in &report.records {
            assert_eq!(r.value, int(1));
        }
        assert!(report.verdicts.iter().all(|(_, v)| *v));
        assert!(report.finite_surrogate);
    }

    #[test]
    fn all_ones_majority_has_zero_norm1_error() {
        let chain = Chain::replica(rat(1, 2), vec![3, 5, 7]).unwrap();
        let report = norm1_convergence(&chain, &IndexKind::Banzhaf).unwrap();
        for r in &report.records {
            assert_eq!(r.value, int(0), "n = {}", r.n);
        }
    }

    #[test]
    fn regularity_examples() {
        // All-ones ocean: every voter's class is everything, ε = 1.
        let chain = Chain::replica(rat(1, 2), vec![4, 6, 8]).unwrap();
        let report = regularity(&chain, 0).unwrap();
        assert!(report.regular);
        assert_eq!(report.witness_epsilon, int(1));

        // The lone weight-1 voter among weight-2 voters vanishes.
        let chain = Chain::psi(rat(1, 2), vec![4, 8, 16, 32]).unwrap();
        let report = regularity(&chain, 0).unwrap();
        assert!(!report.regular);

        // A weight-2 voter in the same chain keeps mass ≥ 1/2.
        let report = regularity(&chain, 1).unwrap();
        assert!(report.regular);
        assert!(report.witness_epsilon >= rat(1, 2));
    }

    #[test]
    fn empty_atomic_set_gives_empty_report() {
        let chain = Chain::replica(rat(1, 2), vec![3, 5]).unwrap();
        let report = atomic_limit_estimate(&chain, &IndexKind::Banzhaf).unwrap();
        assert!(report.records.is_empty());
    }
}
