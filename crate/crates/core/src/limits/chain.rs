use super::LimitsError;
use crate::game::WeightedGame;
use crate::ratio::Ratio;
use num_traits::{One, Signed};

/// A growing family of weighted majority games: a finite list of persistent
/// voters followed by "ocean" voters whose weights cycle through a base
/// multiset, with relative quota q at every step. Voter i keeps index i as
/// the chain grows, so per-player sequences are well defined.
#[derive(Clone, Debug)]
pub struct Chain {
    pub atomic_weights: Vec<Ratio>,
    pub ocean_base: Vec<Ratio>,
    pub q_rel: Ratio,
    pub steps: Vec<usize>,
}

impl Chain {
    pub fn new(
        atomic_weights: Vec<Ratio>,
        ocean_base: Vec<Ratio>,
        q_rel: Ratio,
        steps: Vec<usize>,
    ) -> Result<Self, LimitsError> {
        if !q_rel.is_positive() || q_rel >= Ratio::one() {
            return Err(LimitsError::BadChain(format!(
                "relative quota {q_rel} outside (0,1)"
            )));
        }
        if atomic_weights.iter().any(|w| w.is_negative())
            || ocean_base.iter().any(|w| !w.is_positive())
        {
            return Err(LimitsError::BadChain(
                "atomic weights must be ≥ 0 and ocean weights > 0".to_string(),
            ));
        }
        if ocean_base.is_empty() {
            return Err(LimitsError::BadChain(
                "a chain needs ocean voters to grow".to_string(),
            ));
        }
        if steps.is_empty() || steps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LimitsError::BadChain(
                "steps must be strictly increasing and nonempty".to_string(),
            ));
        }
        if steps[0] < atomic_weights.len().max(1) {
            return Err(LimitsError::BadChain(format!(
                "first step {} smaller than the persistent voter set",
                steps[0]
            )));
        }
        Ok(Chain {
            atomic_weights,
            ocean_base,
            q_rel,
            steps,
        })
    }

    /// The ψ-chain: one persistent weight-1 voter plus a growing ocean of
    /// weight-2 voters, so the normalized weights at n voters are
    /// (2,...,2,1)/(2n−1) up to voter order.
    pub fn psi(q_rel: Ratio, steps: Vec<usize>) -> Result<Self, LimitsError> {
        Chain::new(vec![Ratio::one()], vec![crate::ratio::int(2)], q_rel, steps)
    }

    /// All-ones ocean.
    pub fn replica(q_rel: Ratio, steps: Vec<usize>) -> Result<Self, LimitsError> {
        Chain::new(Vec::new(), vec![Ratio::one()], q_rel, steps)
    }

    pub fn atomic_count(&self) -> usize {
        self.atomic_weights.len()
    }

    /// Weight of voter `index` (stable across steps).
    pub fn weight_of(&self, index: usize) -> Ratio {
        let k = self.atomic_weights.len();
        if index < k {
            self.atomic_weights[index].clone()
        } else {
            self.ocean_base[(index - k) % self.ocean_base.len()].clone()
        }
    }

    /// The weighted game at `voters` players: quota q·Σw kept as an exact
    /// rational, so threshold ties resolve exactly as "meets or exceeds".
    pub fn game_at(&self, voters: usize) -> Result<WeightedGame, LimitsError> {
        let k = self.atomic_weights.len();
        if voters < k.max(1) {
            return Err(LimitsError::BadChain(format!(
                "step {voters} smaller than the persistent voter set"
            )));
        }
        let mut weights = Vec::with_capacity(voters);
        weights.extend(self.atomic_weights.iter().cloned());
        for i in 0..voters - k {
            weights.push(self.ocean_base[i % self.ocean_base.len()].clone());
        }
        let total: Ratio = weights.iter().sum();
        if !total.is_positive() {
            return Err(LimitsError::BadChain("zero total weight".to_string()));
        }
        let quota = &self.q_rel * &total;
        Ok(WeightedGame::from_weights(quota, weights)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};

    #[test]
    fn all_ones_ocean_is_a_relative_majority_game() {
        let chain = Chain::replica(rat(1, 2), vec![4, 8]).unwrap();
        let g = chain.game_at(4).unwrap();
        assert_eq!(g.weights(), &[int(1), int(1), int(1), int(1)]);
        assert_eq!(g.quota(), &int(2));
    }

    #[test]
    fn psi_chain_weights() {
        let chain = Chain::psi(rat(1, 3), vec![3, 5]).unwrap();
        let g = chain.game_at(3).unwrap();
        assert_eq!(g.weights(), &[int(1), int(2), int(2)]);
        assert_eq!(g.quota(), &rat(5, 3)); // q · Σw = (1/3)·5
        assert_eq!(chain.weight_of(0), int(1));
        assert_eq!(chain.weight_of(2), int(2));
    }

    #[test]
    fn atomic_voter_followed_by_ocean() {
        let chain = Chain::new(vec![int(5)], vec![int(1)], rat(1, 2), vec![6]).unwrap();
        let g = chain.game_at(6).unwrap();
        assert_eq!(g.weights()[0], int(5));
        assert_eq!(&g.weights()[1..], &[int(1), int(1), int(1), int(1), int(1)]);
        assert_eq!(g.quota(), &int(5)); // (5 + 5)/2
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Chain::psi(int(1), vec![3]).is_err());
        assert!(Chain::new(vec![], vec![], rat(1, 2), vec![3]).is_err());
        assert!(Chain::replica(rat(1, 2), vec![5, 5]).is_err());
        assert!(Chain::replica(rat(1, 2), vec![]).is_err());
    }
}
