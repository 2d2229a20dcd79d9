//! Certified lower bounds for the inverse Banzhaf problem.
//!
//! The underlying dummy-reduction theorem: if the Banzhaf vector of a
//! simple game carries at most ε beyond its top k voters (ε < 1/(k+1)),
//! then some game with all but k players dummies has a Banzhaf vector
//! within rhs(ε) in the l1 norm, where
//!
//!   rhs(ε) = (2k+1)ε / (1 − (k+1)ε) + ε          (original form)
//!   rhs(ε) = (2k+2)ε                             (improved form)
//!
//! Contrapositive bound for a target σ (sorted descending, tail t₀ beyond
//! position k): a game at distance d from σ has Banzhaf tail ε with two
//! facts available. First, both vectors sum to one, so mass displaced into
//! the tail is paid twice: d ≥ 2|ε − t₀|. Second, the reduction and the
//! triangle inequality force d ≥ m + t₀ − rhs(ε), where m is the minimum
//! l1 distance between σ's top-k block and any k-voter Banzhaf vector
//! (sorted alignment is optimal for both sides). Minimizing the larger of
//! the two over feasible ε — plus the escape branch ε ≥ 1/(k+1), where the
//! theorem says nothing but d ≥ 2(1/(k+1) − t₀) outright — yields a bound
//! valid for every number of voters.

use super::{InverseError, TargetDistribution};
use crate::enumeration::{fold_games, GameClass, GameFold};
use crate::game::SimpleGame;
use crate::indices::swing_counts;
use crate::ratio::{int, rat, Ratio};
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlonEdelmanVariant {
    Original,
    Improved,
}

impl FromStr for AlonEdelmanVariant {
    type Err = InverseError;
    fn from_str(s: &str) -> Result<Self, InverseError> {
        match s {
            "original" => Ok(AlonEdelmanVariant::Original),
            "improved" => Ok(AlonEdelmanVariant::Improved),
            other => Err(InverseError::BadTarget(format!(
                "unknown bound variant {other:?} (original | improved)"
            ))),
        }
    }
}

/// Largest k for which the k-voter Banzhaf vector set can be enumerated
/// (the labeled stream caps at 6 players).
pub const MAX_BOUND_K: usize = 6;

/// The dummy-reduction right-hand side at tail mass ε.
pub fn alon_edelman_rhs(
    epsilon: &Ratio,
    k: usize,
    variant: AlonEdelmanVariant,
) -> Result<Ratio, InverseError> {
    if k == 0 {
        return Err(InverseError::BadTarget("k must be at least 1".to_string()));
    }
    let limit = rat(1, k as i64 + 1);
    if epsilon.is_negative() || epsilon >= &limit {
        return Err(InverseError::BadTarget(format!(
            "ε = {epsilon} outside [0, 1/{})",
            k + 1
        )));
    }
    Ok(match variant {
        AlonEdelmanVariant::Original => {
            let numer = int(2 * k as i64 + 1) * epsilon;
            let denom = Ratio::one() - int(k as i64 + 1) * epsilon;
            numer / denom + epsilon
        }
        AlonEdelmanVariant::Improved => int(2 * k as i64 + 2) * epsilon,
    })
}

/// A proven lower bound on min ‖Bz(v) − σ‖₁ over ALL simple games with any
/// number of voters. Returns 0 when the argument is vacuous.
pub fn certified_lower_bound(
    sigma: &TargetDistribution,
    k: usize,
    variant: AlonEdelmanVariant,
) -> Result<Ratio, InverseError> {
    if k == 0 || k > MAX_BOUND_K {
        return Err(InverseError::Envelope(format!(
            "bound computation needs 1 ≤ k ≤ {MAX_BOUND_K} (got {k})"
        )));
    }
    let tail = sigma.tail(k);
    let eps_limit = rat(1, k as i64 + 1);
    if tail >= eps_limit {
        return Ok(Ratio::zero());
    }
    let m = head_gap(sigma, k)?;
    if m.is_zero() {
        return Ok(Ratio::zero());
    }
    // Escape branch: tail mass at or beyond the theorem's reach.
    let escape = int(2) * (&eps_limit - &tail);

    // Applicable branch: inf over ε ∈ [t₀, 1/(k+1)) of
    //   max(2(ε − t₀), m + t₀ − rhs(ε)),
    // attained where the falling and rising sides cross.
    let condition = |eps: &Ratio| -> bool {
        match alon_edelman_rhs(eps, k, variant) {
            Ok(rhs) => &m + &tail - rhs <= int(2) * (eps - &tail),
            Err(_) => true, // past the pole the theorem is silent
        }
    };
    if condition(&tail) {
        return Ok(Ratio::zero());
    }
    let crossing = match variant {
        AlonEdelmanVariant::Improved => {
            // 2(ε − t₀) = m + t₀ − (2k+2)ε  ⟹  ε = (m + 3t₀) / (2k+4)
            Some((&m + int(3) * &tail) / int(2 * k as i64 + 4))
        }
        AlonEdelmanVariant::Original => {
            // Multiplying through by (1 − (k+1)ε) gives
            //   3(k+1)ε² − (3 + (k+1)(m+3t₀) + (2k+1))ε + (m+3t₀) = 0;
            // the crossing is the smaller root when it is rational,
            // otherwise exact bisection rounds the bound down.
            let c = int(k as i64 + 1);
            let cap = &m + int(3) * &tail;
            let a = int(3) * &c;
            let b = int(3) + &c * &cap + int(2 * k as i64 + 1);
            exact_smaller_root(&a, &b, &cap)
        }
    };
    let bound = match crossing {
        // No crossing inside the theorem's range: the applicable branch
        // never drops below the escape floor.
        Some(eps) if eps >= eps_limit => escape.clone(),
        Some(eps) if eps >= tail && condition(&eps) => int(2) * (&eps - &tail),
        _ => {
            // Bisection on the monotone condition, rounding down for
            // soundness; denominators capped at 10^6.
            let eps = bisect_condition(&tail, &eps_limit, &condition);
            round_down(&(int(2) * (&eps - &tail)), 1_000_000)
        }
    };
    Ok(bound.min(escape).max(Ratio::zero()))
}

/// min over k-voter simple games of ‖Bz(g) − σ_top-k‖₁, by enumeration.
/// The labeled stream covers every relabeling, so no sorting is needed.
fn head_gap(sigma: &TargetDistribution, k: usize) -> Result<Ratio, InverseError> {
    let mut head: Vec<Ratio> = sigma.sorted().iter().take(k).cloned().collect();
    while head.len() < k {
        head.push(Ratio::zero());
    }
    struct MinGap {
        head: Vec<Ratio>,
    }
    impl GameFold for MinGap {
        type Acc = Option<Ratio>;
        fn empty(&self) -> Self::Acc {
            None
        }
        fn absorb(&self, acc: &mut Self::Acc, game: &SimpleGame) {
            let eta = swing_counts(game);
            let total: u64 = eta.iter().sum();
            let mut distance = Ratio::zero();
            for (c, target) in eta.iter().zip(&self.head) {
                distance += (Ratio::new((*c).into(), total.into()) - target).abs();
            }
            if acc.as_ref().map_or(true, |best| &distance < best) {
                *acc = Some(distance);
            }
        }
        fn merge(&self, a: Self::Acc, b: Self::Acc) -> Self::Acc {
            match (a, b) {
                (None, x) | (x, None) => x,
                (Some(x), Some(y)) => Some(x.min(y)),
            }
        }
    }
    let (best, _) = fold_games(k, GameClass::Simple, false, &MinGap { head })?;
    best.ok_or_else(|| InverseError::Envelope("no games enumerated".to_string()))
}

/// Smaller root of aε² − bε + c = 0 when it is rational.
fn exact_smaller_root(a: &Ratio, b: &Ratio, c: &Ratio) -> Option<Ratio> {
    let disc = b * b - int(4) * a * c;
    if disc.is_negative() {
        return None;
    }
    let root = rational_sqrt(&disc)?;
    Some((b - root) / (int(2) * a))
}

/// √x when x is the square of a rational.
fn rational_sqrt(x: &Ratio) -> Option<Ratio> {
    if x.is_negative() {
        return None;
    }
    let numer = x.numer().sqrt();
    let denom = x.denom().sqrt();
    if &(&numer * &numer) == x.numer() && &(&denom * &denom) == x.denom() {
        Some(Ratio::new(numer, denom))
    } else {
        None
    }
}

/// Smallest ε (within 1/10^6) with `condition(ε)` true; the condition is
/// monotone (false below the crossing, true above).
fn bisect_condition(lo: &Ratio, hi_limit: &Ratio, condition: &impl Fn(&Ratio) -> bool) -> Ratio {
    let mut lo = lo.clone();
    // Walk up toward the limit until the condition holds.
    let mut hi = (&lo + hi_limit) / int(2);
    let mut guard = 0;
    while !condition(&hi) {
        hi = (&hi + hi_limit) / int(2);
        guard += 1;
        if guard > 64 {
            return lo; // bound degrades to 2(lo − t₀), still sound
        }
    }
    let precision = rat(1, 1_000_000);
    while &hi - &lo > precision {
        let mid = (&lo + &hi) / int(2);
        if condition(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

/// Largest multiple of 1/denominator at or below x.
fn round_down(x: &Ratio, denominator: i64) -> Ratio {
    let scaled = (x * int(denominator)).floor();
    scaled / int(denominator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhs_examples() {
        assert_eq!(
            alon_edelman_rhs(&int(0), 3, AlonEdelmanVariant::Original).unwrap(),
            int(0)
        );
        // (5·(1/10))/(7/10) + 1/10 = 57/70
        assert_eq!(
            alon_edelman_rhs(&rat(1, 10), 2, AlonEdelmanVariant::Original).unwrap(),
            rat(57, 70)
        );
        assert_eq!(
            alon_edelman_rhs(&rat(1, 10), 2, AlonEdelmanVariant::Improved).unwrap(),
            rat(3, 5)
        );
        assert!(alon_edelman_rhs(&rat(1, 3), 2, AlonEdelmanVariant::Original).is_err());
        assert!(alon_edelman_rhs(&rat(-1, 10), 2, AlonEdelmanVariant::Original).is_err());
    }

    #[test]
    fn improved_never_exceeds_original_in_range() {
        // (2k+2)ε ≤ (2k+1)ε/(1−(k+1)ε) + ε on the whole domain.
        for k in 1..=4usize {
            for step in 0..50i64 {
                let eps = rat(step, 50 * (k as i64 + 1) + 1);
                let original = alon_edelman_rhs(&eps, k, AlonEdelmanVariant::Original).unwrap();
                let improved = alon_edelman_rhs(&eps, k, AlonEdelmanVariant::Improved).unwrap();
                assert!(improved <= original, "k={k} ε={eps}");
            }
        }
    }

    #[test]
    fn flagship_target_bound_is_one_ninth() {
        let sigma = TargetDistribution::parse("3/4,1/4,0,0,0").unwrap();
        let bound = certified_lower_bound(&sigma, 2, AlonEdelmanVariant::Original).unwrap();
        assert_eq!(bound, rat(1, 9));
        // The improved reduction sharpens the same argument to 1/8.
        let bound = certified_lower_bound(&sigma, 2, AlonEdelmanVariant::Improved).unwrap();
        assert_eq!(bound, rat(1, 8));
    }

    #[test]
    fn achievable_heads_give_zero() {
        // (1/2,1/2) is the Banzhaf vector of a 2-voter game.
        let sigma = TargetDistribution::parse("1/2,1/2,0,0").unwrap();
        assert_eq!(
            certified_lower_bound(&sigma, 2, AlonEdelmanVariant::Original).unwrap(),
            int(0)
        );
    }

    #[test]
    fn heavy_tail_is_vacuous() {
        // tail(σ) = 1/2 ≥ 1/3.
        let sigma = TargetDistribution::parse("1/4,1/4,1/4,1/4").unwrap();
        assert_eq!(
            certified_lower_bound(&sigma, 2, AlonEdelmanVariant::Original).unwrap(),
            int(0)
        );
    }

    #[test]
    fn bound_never_undercuts_by_construction() {
        // Soundness against the 5-player exhaustive optimum is checked in
        // the acceptance suite; here: bounds are nonnegative and finite.
        for text in ["3/4,1/4,0,0", "4/5,1/5,0,0", "9/10,1/10,0,0,0"] {
            let sigma = TargetDistribution::parse(text).unwrap();
            for variant in [AlonEdelmanVariant::Original, AlonEdelmanVariant::Improved] {
                let bound = certified_lower_bound(&sigma, 2, variant).unwrap();
                assert!(!bound.is_negative());
                assert!(bound <= int(2));
            }
        }
    }
}
