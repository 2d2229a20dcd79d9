//! Power indices with exact rational values.
//!
//! Every index has a truth-table path; Banzhaf and Shapley-Shubik also have
//! a dynamic-programming path over integer weights for games too large to
//! tabulate. Raw per-player counts are integers throughout, so normalized
//! vectors are exact by construction.

mod counting;
mod dp;
mod msr;
mod nucleolus;

pub use counting::{banzhaf_raw, swing_counts, swing_counts_by_size, SwingVector};
pub use msr::msr_index;
pub use nucleolus::{nucleolus, sorted_excess_vector, MAX_NUCLEOLUS_PLAYERS};

use crate::game::{GameError, GameSpec, SimpleGame, WeightedGame, MAX_TABLE_PLAYERS};
use crate::lp::LpError;
use crate::ratio::{format_ratio, Ratio};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which power index a vector came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IndexKind {
    RawBanzhaf,
    Banzhaf,
    ShapleyShubik,
    PublicGood,
    PublicHelp,
    Johnston,
    Nucleolus,
    MinimumSum,
    /// p-binomial semivalue; raw (probabilistic) form unless normalized.
    Semivalue { p: Ratio, normalized: bool },
}

impl IndexKind {
    /// Normalized kinds sum to exactly one on every game.
    pub fn is_efficient(&self) -> bool {
        !matches!(
            self,
            IndexKind::RawBanzhaf
                | IndexKind::Semivalue {
                    normalized: false,
                    ..
                }
        )
    }

    /// All implemented indices treat equally desirable players equally.
    pub fn is_symmetric(&self) -> bool {
        true
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexKind::RawBanzhaf => write!(f, "raw-banzhaf"),
            IndexKind::Banzhaf => write!(f, "banzhaf"),
            IndexKind::ShapleyShubik => write!(f, "ssi"),
            IndexKind::PublicGood => write!(f, "pgi"),
            IndexKind::PublicHelp => write!(f, "phi"),
            IndexKind::Johnston => write!(f, "johnston"),
            IndexKind::Nucleolus => write!(f, "nucleolus"),
            IndexKind::MinimumSum => write!(f, "msr"),
            IndexKind::Semivalue { p, normalized } => {
                if *normalized {
                    write!(f, "semivalue-normalized({})", format_ratio(p))
                } else {
                    write!(f, "semivalue({})", format_ratio(p))
                }
            }
        }
    }
}

impl FromStr for IndexKind {
    type Err = IndexError;

    /// Parses CLI names; "semivalue(p)" takes a rational parameter and
    /// plain "semivalue" defaults to p = 1/2.
    fn from_str(s: &str) -> Result<Self, IndexError> {
        let s = s.trim();
        let semivalue = |p: &str, normalized: bool| {
            crate::ratio::parse_ratio(p)
                .map_err(|e| IndexError::UnknownKind(e.to_string()))
                .map(|p| IndexKind::Semivalue { p, normalized })
        };
        match s {
            "raw-banzhaf" => Ok(IndexKind::RawBanzhaf),
            "banzhaf" | "bz" => Ok(IndexKind::Banzhaf),
            "ssi" | "shapley-shubik" => Ok(IndexKind::ShapleyShubik),
            "pgi" | "public-good" => Ok(IndexKind::PublicGood),
            "phi" | "public-help" => Ok(IndexKind::PublicHelp),
            "johnston" => Ok(IndexKind::Johnston),
            "nucleolus" => Ok(IndexKind::Nucleolus),
            "msr" | "minimum-sum" => Ok(IndexKind::MinimumSum),
            "semivalue" => semivalue("1/2", false),
            other => {
                for (prefix, normalized) in
                    [("semivalue(", false), ("semivalue-normalized(", true)]
                {
                    if let Some(rest) = other.strip_prefix(prefix) {
                        if let Some(p) = rest.strip_suffix(')') {
                            return semivalue(p, normalized);
                        }
                    }
                }
                Err(IndexError::UnknownKind(other.to_string()))
            }
        }
    }
}

/// An exact per-player power vector tagged with its index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerVector {
    pub kind: IndexKind,
    pub values: Vec<Ratio>,
}

#[derive(Serialize, Deserialize)]
struct PowerVectorJson {
    kind: String,
    values: Vec<String>,
}

impl PowerVector {
    pub fn player_count(&self) -> usize {
        self.values.len()
    }

    pub fn sum(&self) -> Ratio {
        self.values.iter().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PowerVectorJson {
            kind: self.kind.to_string(),
            values: self.values.iter().map(format_ratio).collect(),
        })
        .expect("power vector serialization cannot fail")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<PowerVector, IndexError> {
        let json: PowerVectorJson = serde_json::from_value(value.clone())
            .map_err(|e| IndexError::UnknownKind(e.to_string()))?;
        let kind = json.kind.parse()?;
        let values: Result<Vec<Ratio>, _> = json
            .values
            .iter()
            .map(|v| {
                crate::ratio::parse_ratio(v).map_err(|e| IndexError::UnknownKind(e.to_string()))
            })
            .collect();
        Ok(PowerVector {
            kind,
            values: values?,
        })
    }
}

/// How to evaluate an index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    /// Table up to 20 players, dynamic programming beyond where available.
    #[default]
    Auto,
    Table,
    Dp,
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum IndexError {
    #[error("unknown index kind: {0}")]
    UnknownKind(String),
    #[error("{kind} unsupported for this input: {detail}")]
    Unsupported { kind: String, detail: String },
    #[error("semivalue parameter p = {p} outside (0,1)")]
    SemivalueParameter { p: Ratio },
    #[error("game is not a weighted majority game")]
    NotWeighted,
    #[error("no coalition has a critical player")]
    NoVulnerableCoalition,
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("lp failure: {0}")]
    Lp(#[from] LpError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

// ---------------------------------------------------------------------------
// Table-path indices.
// ---------------------------------------------------------------------------

fn normalized(kind: IndexKind, raw: Vec<Ratio>) -> PowerVector {
    let total: Ratio = raw.iter().sum();
    debug_assert!(total.is_positive());
    let values = raw.into_iter().map(|v| v / &total).collect();
    PowerVector { kind, values }
}

/// Banzhaf index: swing counts normalized to sum one.
pub fn banzhaf(game: &SimpleGame) -> PowerVector {
    let eta = swing_counts(game);
    normalized(
        IndexKind::Banzhaf,
        eta.into_iter()
            .map(|c| Ratio::from_integer(c.into()))
            .collect(),
    )
}

/// Raw (probabilistic) Banzhaf value η / 2^(n−1).
pub fn banzhaf_probabilistic(game: &SimpleGame) -> PowerVector {
    let eta = swing_counts(game);
    let denom = Ratio::from_integer(num_bigint::BigInt::from(1u64) << (game.player_count() - 1));
    PowerVector {
        kind: IndexKind::RawBanzhaf,
        values: eta
            .into_iter()
            .map(|c| Ratio::from_integer(c.into()) / &denom)
            .collect(),
    }
}

/// Shapley-Shubik index from swing counts stratified by coalition size.
pub fn shapley_shubik(game: &SimpleGame) -> PowerVector {
    let n = game.player_count();
    let by_size = swing_counts_by_size(game);
    // s!(n−1−s)! fits u128 comfortably for n ≤ 20, as does the weighted sum
    // (bounded by n!).
    let mut factorial = vec![1u128; n + 1];
    for i in 1..=n {
        factorial[i] = factorial[i - 1] * i as u128;
    }
    let values = by_size
        .iter()
        .map(|counts| {
            let mut numerator = 0u128;
            for (s, &c) in counts.iter().enumerate() {
                numerator += factorial[s] * factorial[n - 1 - s] * c as u128;
            }
            Ratio::new(numerator.into(), factorial[n].into())
        })
        .collect();
    PowerVector {
        kind: IndexKind::ShapleyShubik,
        values,
    }
}

/// Public Good index: membership counts in minimal winning coalitions.
pub fn public_good(game: &SimpleGame) -> PowerVector {
    let n = game.player_count();
    let mut counts = vec![0u64; n];
    for coalition in game.minimal_winning() {
        for p in coalition.players() {
            counts[p] += 1;
        }
    }
    normalized(
        IndexKind::PublicGood,
        counts
            .into_iter()
            .map(|c| Ratio::from_integer(c.into()))
            .collect(),
    )
}

/// Public Help index: membership counts in winning coalitions. Dummies get
/// positive power here, unlike under every other implemented index.
pub fn public_help(game: &SimpleGame) -> PowerVector {
    let n = game.player_count();
    let mut counts = vec![0u64; n];
    for mask in 1..(1u32 << n) {
        if !game.is_winning_mask(mask) {
            continue;
        }
        let mut rest = mask;
        while rest != 0 {
            counts[rest.trailing_zeros() as usize] += 1;
            rest &= rest - 1;
        }
    }
    normalized(
        IndexKind::PublicHelp,
        counts
            .into_iter()
            .map(|c| Ratio::from_integer(c.into()))
            .collect(),
    )
}

/// Johnston index: each winning coalition with at least one critical player
/// splits one unit of credit equally among its critical players.
pub fn johnston(game: &SimpleGame) -> Result<PowerVector, IndexError> {
    let n = game.player_count();
    // Scaling by lcm(1..n) keeps the shares integral.
    let scale: u128 = (1..=n as u128).fold(1, num_integer::lcm);
    let mut counts = vec![0u128; n];
    let mut vulnerable = false;
    for mask in 1..(1u32 << n) {
        if !game.is_winning_mask(mask) {
            continue;
        }
        let mut critical_mask = 0u32;
        let mut critical_count = 0u128;
        let mut rest = mask;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            if !game.is_winning_mask(mask & !(1 << p)) {
                critical_mask |= 1 << p;
                critical_count += 1;
            }
            rest &= rest - 1;
        }
        if critical_count == 0 {
            continue;
        }
        vulnerable = true;
        let share = scale / critical_count;
        while critical_mask != 0 {
            counts[critical_mask.trailing_zeros() as usize] += share;
            critical_mask &= critical_mask - 1;
        }
    }
    if !vulnerable {
        return Err(IndexError::NoVulnerableCoalition);
    }
    Ok(normalized(
        IndexKind::Johnston,
        counts
            .into_iter()
            .map(|c| Ratio::from_integer(c.into()))
            .collect(),
    ))
}

/// p-binomial semivalue, raw form:
/// ψ_i = Σ_{S ∌ i} p^|S| (1−p)^(n−1−|S|) (v(S∪i) − v(S)).
pub fn semivalue(game: &SimpleGame, p: &Ratio) -> Result<PowerVector, IndexError> {
    if !p.is_positive() || p >= &Ratio::one() {
        return Err(IndexError::SemivalueParameter { p: p.clone() });
    }
    let n = game.player_count();
    let by_size = swing_counts_by_size(game);
    let q = Ratio::one() - p;
    let mut p_pow = vec![Ratio::one(); n];
    let mut q_pow = vec![Ratio::one(); n];
    for s in 1..n {
        p_pow[s] = &p_pow[s - 1] * p;
        q_pow[s] = &q_pow[s - 1] * &q;
    }
    let values = by_size
        .iter()
        .map(|counts| {
            let mut total = Ratio::zero();
            for (s, &c) in counts.iter().enumerate() {
                if c != 0 {
                    total += &p_pow[s] * &q_pow[n - 1 - s] * Ratio::from_integer(c.into());
                }
            }
            total
        })
        .collect();
    Ok(PowerVector {
        kind: IndexKind::Semivalue {
            p: p.clone(),
            normalized: false,
        },
        values,
    })
}

// ---------------------------------------------------------------------------
// Dispatch.
// ---------------------------------------------------------------------------

/// Extra knobs for [`compute`].
#[derive(Clone, Debug, Default)]
pub struct ComputeOptions {
    pub method: Method,
    /// Normalize the semivalue to sum one (it is raw by default).
    pub normalize_semivalue: bool,
}

/// Uniform entry point used by the inverse and limits machinery.
pub fn compute(
    game: &GameSpec,
    kind: &IndexKind,
    options: &ComputeOptions,
) -> Result<PowerVector, IndexError> {
    let n = game.player_count();
    let use_dp = match options.method {
        Method::Dp => true,
        Method::Table => false,
        Method::Auto => {
            n > MAX_TABLE_PLAYERS
                && matches!(
                    kind,
                    IndexKind::Banzhaf | IndexKind::ShapleyShubik | IndexKind::RawBanzhaf
                )
        }
    };
    if use_dp {
        let weighted = game.as_weighted().ok_or(IndexError::NotWeighted)?;
        return dp_compute(weighted, kind);
    }
    if n > MAX_TABLE_PLAYERS {
        return Err(IndexError::Unsupported {
            kind: kind.to_string(),
            detail: format!(
                "table path supports at most {MAX_TABLE_PLAYERS} players (got {n}); \
                 banzhaf and ssi offer the dp method for integer-weight games"
            ),
        });
    }
    let table = game.to_simple()?;
    table_compute(&table, kind, options)
}

/// Table-path dispatch on an already realized game.
pub fn compute_on_table(
    table: &SimpleGame,
    kind: &IndexKind,
    options: &ComputeOptions,
) -> Result<PowerVector, IndexError> {
    table_compute(table, kind, options)
}

fn table_compute(
    table: &SimpleGame,
    kind: &IndexKind,
    options: &ComputeOptions,
) -> Result<PowerVector, IndexError> {
    match kind {
        IndexKind::RawBanzhaf => Ok(banzhaf_probabilistic(table)),
        IndexKind::Banzhaf => Ok(banzhaf(table)),
        IndexKind::ShapleyShubik => Ok(shapley_shubik(table)),
        IndexKind::PublicGood => Ok(public_good(table)),
        IndexKind::PublicHelp => Ok(public_help(table)),
        IndexKind::Johnston => johnston(table),
        IndexKind::Nucleolus => nucleolus(table),
        IndexKind::MinimumSum => msr_index(table),
        IndexKind::Semivalue { p, normalized } => {
            let mut vector = semivalue(table, p)?;
            if *normalized || options.normalize_semivalue {
                vector = normalized_semivalue(vector);
            }
            Ok(vector)
        }
    }
}

fn normalized_semivalue(raw: PowerVector) -> PowerVector {
    let kind = match raw.kind {
        IndexKind::Semivalue { p, .. } => IndexKind::Semivalue {
            p,
            normalized: true,
        },
        other => other,
    };
    normalized(kind, raw.values)
}

fn dp_compute(game: &WeightedGame, kind: &IndexKind) -> Result<PowerVector, IndexError> {
    let form = game.integer_form().ok_or_else(|| IndexError::Unsupported {
        kind: kind.to_string(),
        detail: "dp path requires integer-scalable weights within u64".to_string(),
    })?;
    match kind {
        IndexKind::Banzhaf => dp::banzhaf_dp(&form),
        IndexKind::RawBanzhaf => dp::banzhaf_raw_dp(&form),
        IndexKind::ShapleyShubik => dp::shapley_shubik_dp(&form),
        other => Err(IndexError::Unsupported {
            kind: other.to_string(),
            detail: "dp path implements banzhaf and ssi only".to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::WeightedGame;
    use crate::ratio::{int, rat};

    fn table(q: i64, w: &[i64]) -> SimpleGame {
        WeightedGame::from_weights(int(q), w.iter().map(|&x| int(x)).collect())
            .unwrap()
            .realize()
            .unwrap()
    }

    #[test]
    fn two_one_one_all_indices() {
        let g = table(3, &[2, 1, 1]);
        assert_eq!(banzhaf(&g).values, vec![rat(3, 5), rat(1, 5), rat(1, 5)]);
        assert_eq!(
            shapley_shubik(&g).values,
            vec![rat(2, 3), rat(1, 6), rat(1, 6)]
        );
        assert_eq!(
            public_good(&g).values,
            vec![rat(1, 2), rat(1, 4), rat(1, 4)]
        );
        assert_eq!(
            public_help(&g).values,
            vec![rat(3, 7), rat(2, 7), rat(2, 7)]
        );
        assert_eq!(
            johnston(&g).unwrap().values,
            vec![rat(2, 3), rat(1, 6), rat(1, 6)]
        );
        assert_eq!(
            semivalue(&g, &rat(1, 2)).unwrap().values,
            vec![rat(3, 4), rat(1, 4), rat(1, 4)]
        );
    }

    #[test]
    fn dictator_indices() {
        let g = table(1, &[1, 0, 0]);
        assert_eq!(banzhaf(&g).values, vec![int(1), int(0), int(0)]);
        assert_eq!(shapley_shubik(&g).values, vec![int(1), int(0), int(0)]);
        assert_eq!(public_good(&g).values, vec![int(1), int(0), int(0)]);
        // The Public Help index pays dummies: winning sets are the four
        // supersets of {1}, and each dummy sits in two of them.
        assert_eq!(
            public_help(&g).values,
            vec![rat(1, 2), rat(1, 4), rat(1, 4)]
        );
        assert_eq!(johnston(&g).unwrap().values, vec![int(1), int(0), int(0)]);
        for p in [rat(1, 4), rat(1, 2), rat(9, 10)] {
            assert_eq!(
                semivalue(&g, &p).unwrap().values,
                vec![int(1), int(0), int(0)]
            );
        }
    }

    #[test]
    fn symmetric_majority_is_uniform() {
        let g = table(2, &[1, 1, 1]);
        for v in [
            banzhaf(&g),
            shapley_shubik(&g),
            public_good(&g),
            public_help(&g),
            johnston(&g).unwrap(),
        ] {
            assert_eq!(v.values, vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
        }
    }

    #[test]
    fn semivalue_at_half_is_scaled_swings() {
        let g = table(4, &[3, 2, 1, 1]);
        let eta = swing_counts(&g);
        let psi = semivalue(&g, &rat(1, 2)).unwrap();
        for (c, v) in eta.iter().zip(&psi.values) {
            assert_eq!(v, &Ratio::new((*c).into(), 8.into()));
        }
        assert!(semivalue(&g, &int(1)).is_err());
        assert!(semivalue(&g, &int(0)).is_err());
    }

    #[test]
    fn efficiency_of_normalized_kinds() {
        let g = table(5, &[3, 2, 1, 1]);
        for v in [
            banzhaf(&g),
            shapley_shubik(&g),
            public_good(&g),
            public_help(&g),
            johnston(&g).unwrap(),
        ] {
            assert_eq!(v.sum(), int(1), "{} not efficient", v.kind);
        }
    }

    #[test]
    fn kind_strings_round_trip() {
        for kind in [
            IndexKind::RawBanzhaf,
            IndexKind::Banzhaf,
            IndexKind::ShapleyShubik,
            IndexKind::PublicGood,
            IndexKind::PublicHelp,
            IndexKind::Johnston,
            IndexKind::Nucleolus,
            IndexKind::MinimumSum,
            IndexKind::Semivalue {
                p: rat(1, 3),
                normalized: false,
            },
            IndexKind::Semivalue {
                p: rat(2, 5),
                normalized: true,
            },
        ] {
            let text = kind.to_string();
            assert_eq!(text.parse::<IndexKind>().unwrap(), kind, "{text}");
        }
    }
}
