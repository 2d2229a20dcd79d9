//! Generating-function paths for Banzhaf and Shapley-Shubik on integer
//! weights: build coalition-weight counts once, then delete each player by
//! reversing the convolution. Exact, and polynomial in n·Σw instead of 2^n.

use super::{IndexError, IndexKind, PowerVector};
use crate::game::IntegerWeights;
use crate::ratio::Ratio;
use num_bigint::BigInt;
use num_traits::Zero;

/// Counts stay below 2^n, so u128 is exact for any game we accept.
pub const MAX_DP_PLAYERS: usize = 120;
const MAX_TOTAL_WEIGHT: u64 = 2_000_000;

fn check_envelope(form: &IntegerWeights, kind: &IndexKind) -> Result<(usize, usize), IndexError> {
    let n = form.weights.len();
    let total: u64 = form.weights.iter().sum();
    if n > MAX_DP_PLAYERS || total > MAX_TOTAL_WEIGHT {
        return Err(IndexError::Unsupported {
            kind: kind.to_string(),
            detail: format!(
                "dp path supports n ≤ {MAX_DP_PLAYERS} and total weight ≤ {MAX_TOTAL_WEIGHT} \
                 (got n = {n}, total = {total})"
            ),
        });
    }
    Ok((n, total as usize))
}

/// Per-player swing counts via weight-generating functions.
pub fn swing_counts_dp(form: &IntegerWeights) -> Result<Vec<BigInt>, IndexError> {
    let (n, total) = check_envelope(form, &IndexKind::Banzhaf)?;
    let threshold = form.threshold as usize;
    // counts[w] = number of coalitions (over all players) of weight w.
    let mut counts = vec![0u128; total + 1];
    counts[0] = 1;
    for &w in &form.weights {
        let w = w as usize;
        if w == 0 {
            for c in counts.iter_mut() {
                *c *= 2;
            }
            continue;
        }
        for weight in (w..=total).rev() {
            counts[weight] += counts[weight - w];
        }
    }
    let mut eta = Vec::with_capacity(n);
    let mut without = vec![0u128; total + 1];
    for &w in &form.weights {
        let w = w as usize;
        if w == 0 {
            // Zero-weight players are never swing players.
            eta.push(BigInt::zero());
            continue;
        }
        // Reverse the convolution with (1 + x^w).
        without[0] = counts[0];
        for weight in 1..=total {
            let sub = if weight >= w { without[weight - w] } else { 0 };
            without[weight] = counts[weight] - sub;
        }
        // Swings: coalitions without the player whose weight lands in
        // [threshold − w, threshold).
        let lo = threshold.saturating_sub(w);
        let hi = threshold.min(total + 1);
        let swings: u128 = without[lo..hi].iter().sum();
        eta.push(BigInt::from(swings));
    }
    Ok(eta)
}

pub fn banzhaf_dp(form: &IntegerWeights) -> Result<PowerVector, IndexError> {
    let eta = swing_counts_dp(form)?;
    let total: BigInt = eta.iter().sum();
    if total.is_zero() {
        return Err(IndexError::Internal(
            "no swings in a valid simple game".to_string(),
        ));
    }
    let total = Ratio::from_integer(total);
    Ok(PowerVector {
        kind: IndexKind::Banzhaf,
        values: eta
            .into_iter()
            .map(|c| Ratio::from_integer(c) / &total)
            .collect(),
    })
}

pub fn banzhaf_raw_dp(form: &IntegerWeights) -> Result<PowerVector, IndexError> {
    let eta = swing_counts_dp(form)?;
    let n = form.weights.len();
    let denom = Ratio::from_integer(BigInt::from(1u8) << (n - 1));
    Ok(PowerVector {
        kind: IndexKind::RawBanzhaf,
        values: eta
            .into_iter()
            .map(|c| Ratio::from_integer(c) / &denom)
            .collect(),
    })
}

pub fn shapley_shubik_dp(form: &IntegerWeights) -> Result<PowerVector, IndexError> {
    let (n, total) = check_envelope(form, &IndexKind::ShapleyShubik)?;
    let threshold = form.threshold as usize;
    let width = total + 1;
    // counts[s][w] = number of coalitions of size s and weight w.
    let mut counts = vec![0u128; (n + 1) * width];
    counts[0] = 1;
    for &w in &form.weights {
        let w = w as usize;
        for size in (0..n).rev() {
            for weight in (w..=total).rev() {
                let add = counts[size * width + weight - w];
                if add != 0 {
                    counts[(size + 1) * width + weight] += add;
                }
            }
        }
    }
    let mut factorial = vec![BigInt::from(1u8); n + 1];
    for i in 1..=n {
        factorial[i] = &factorial[i - 1] * i;
    }
    let mut values = Vec::with_capacity(n);
    let mut without = vec![0u128; n * width];
    for &w in &form.weights {
        let w = w as usize;
        if w == 0 {
            values.push(Ratio::zero());
            continue;
        }
        // without[s][·] = coalitions of the other players, size s.
        for size in 0..n {
            for weight in 0..width {
                let own = counts[size * width + weight];
                let carried = if size >= 1 && weight >= w {
                    without[(size - 1) * width + weight - w]
                } else {
                    0
                };
                without[size * width + weight] = own - carried;
            }
        }
        let lo = threshold.saturating_sub(w);
        let hi = threshold.min(total + 1);
        let mut numerator = BigInt::zero();
        for size in 0..n {
            let swings: u128 = without[size * width + lo..size * width + hi].iter().sum();
            if swings != 0 {
                numerator += &factorial[size] * &factorial[n - 1 - size] * BigInt::from(swings);
            }
        }
        values.push(Ratio::new(numerator, factorial[n].clone()));
    }
    Ok(PowerVector {
        kind: IndexKind::ShapleyShubik,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::WeightedGame;
    use crate::indices::{banzhaf, shapley_shubik};
    use crate::ratio::int;

    fn weighted(q: i64, w: &[i64]) -> WeightedGame {
        WeightedGame::from_weights(int(q), w.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn dp_matches_table_on_small_games() {
        for (q, w) in [
            (3i64, vec![2i64, 1, 1]),
            (5, vec![3, 2, 1, 1]),
            (1, vec![1, 0, 0]),
            (7, vec![4, 3, 2, 1, 1]),
            (4, vec![2, 2, 1, 1, 1]),
        ] {
            let game = weighted(q, &w);
            let form = game.integer_form().unwrap();
            let table = game.realize().unwrap();
            assert_eq!(banzhaf_dp(&form).unwrap().values, banzhaf(&table).values);
            assert_eq!(
                shapley_shubik_dp(&form).unwrap().values,
                shapley_shubik(&table).values
            );
        }
    }

    #[test]
    fn zero_weight_players_are_dummies() {
        let game = weighted(2, &[2, 1, 0]);
        let form = game.integer_form().unwrap();
        let bz = banzhaf_dp(&form).unwrap();
        assert_eq!(bz.values[2], int(0));
        let ssi = shapley_shubik_dp(&form).unwrap();
        assert_eq!(ssi.values[2], int(0));
    }

    #[test]
    fn large_symmetric_game_is_uniform() {
        let game = weighted(26, &vec![1; 51]);
        let form = game.integer_form().unwrap();
        let bz = banzhaf_dp(&form).unwrap();
        for v in &bz.values {
            assert_eq!(v, &crate::ratio::rat(1, 51));
        }
        let ssi = shapley_shubik_dp(&form).unwrap();
        for v in &ssi.values {
            assert_eq!(v, &crate::ratio::rat(1, 51));
        }
    }
}
