use super::{Coalition, GameError, SimpleGame, WeightedGame};
use crate::ratio::{format_ratio, parse_ratio, Ratio};
use serde::{Deserialize, Serialize};

/// A game given either by a weighted representation or by its minimal
/// winning coalitions. This is the on-disk and CLI-facing form.
#[derive(Clone, Debug)]
pub enum GameSpec {
    Weighted(WeightedGame),
    Explicit(SimpleGame),
}

/// Wire schema: players in `min_winning` are 1-indexed.
#[derive(Serialize, Deserialize)]
struct GameJson {
    n: usize,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    quota: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_winning: Option<Vec<Vec<usize>>>,
}

impl GameSpec {
    pub fn player_count(&self) -> usize {
        match self {
            GameSpec::Weighted(g) => g.player_count(),
            GameSpec::Explicit(g) => g.player_count(),
        }
    }

    pub fn as_weighted(&self) -> Option<&WeightedGame> {
        match self {
            GameSpec::Weighted(g) => Some(g),
            GameSpec::Explicit(_) => None,
        }
    }

    /// Expands to a truth table (identity for explicit games).
    pub fn to_simple(&self) -> Result<SimpleGame, GameError> {
        match self {
            GameSpec::Weighted(g) => g.realize(),
            GameSpec::Explicit(g) => Ok(g.clone()),
        }
    }

    /// Parses the inline grammar "[q;w1,w2,...]" with rational entries.
    pub fn parse_inline(text: &str) -> Result<GameSpec, GameError> {
        let trimmed = text.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| GameError::Parse(format!("expected [q;w1,w2,...], got {text:?}")))?;
        let (quota_text, weights_text) = inner
            .split_once(';')
            .ok_or_else(|| GameError::Parse(format!("missing ';' in {text:?}")))?;
        let quota = parse_ratio(quota_text).map_err(|e| GameError::Parse(e.to_string()))?;
        let weights: Result<Vec<Ratio>, _> = weights_text
            .split(',')
            .map(|w| parse_ratio(w).map_err(|e| GameError::Parse(e.to_string())))
            .collect();
        Ok(GameSpec::Weighted(WeightedGame::from_weights(
            quota, weights?,
        )?))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let json = match self {
            GameSpec::Weighted(g) => GameJson {
                n: g.player_count(),
                kind: "weighted".to_string(),
                quota: Some(format_ratio(g.quota())),
                weights: Some(g.weights().iter().map(format_ratio).collect()),
                min_winning: None,
            },
            GameSpec::Explicit(g) => GameJson {
                n: g.player_count(),
                kind: "explicit".to_string(),
                quota: None,
                weights: None,
                min_winning: Some(
                    g.minimal_winning()
                        .iter()
                        .map(|c| c.players().map(|p| p + 1).collect())
                        .collect(),
                ),
            },
        };
        serde_json::to_value(json).expect("game serialization cannot fail")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<GameSpec, GameError> {
        let json: GameJson = serde_json::from_value(value.clone())
            .map_err(|e| GameError::Parse(e.to_string()))?;
        match json.kind.as_str() {
            "weighted" => {
                let quota = json
                    .quota
                    .ok_or_else(|| GameError::Parse("weighted game without quota".into()))?;
                let weights = json
                    .weights
                    .ok_or_else(|| GameError::Parse("weighted game without weights".into()))?;
                if weights.len() != json.n {
                    return Err(GameError::Parse(format!(
                        "n = {} but {} weights given",
                        json.n,
                        weights.len()
                    )));
                }
                let quota = parse_ratio(&quota).map_err(|e| GameError::Parse(e.to_string()))?;
                let weights: Result<Vec<Ratio>, _> = weights
                    .iter()
                    .map(|w| parse_ratio(w).map_err(|e| GameError::Parse(e.to_string())))
                    .collect();
                Ok(GameSpec::Weighted(WeightedGame::from_weights(
                    quota, weights?,
                )?))
            }
            "explicit" => {
                let min_winning = json
                    .min_winning
                    .ok_or_else(|| GameError::Parse("explicit game without min_winning".into()))?;
                let coalitions: Result<Vec<Coalition>, GameError> = min_winning
                    .iter()
                    .map(|players| {
                        let zero_indexed: Result<Vec<usize>, GameError> = players
                            .iter()
                            .map(|&p| {
                                if p == 0 || p > json.n {
                                    Err(GameError::Parse(format!(
                                        "player {p} out of range 1..={}",
                                        json.n
                                    )))
                                } else {
                                    Ok(p - 1)
                                }
                            })
                            .collect();
                        Ok(Coalition::from_players(&zero_indexed?, json.n))
                    })
                    .collect();
                Ok(GameSpec::Explicit(SimpleGame::from_min_winning(
                    json.n,
                    &coalitions?,
                )?))
            }
            other => Err(GameError::Parse(format!("unknown game kind {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::int;

    #[test]
    fn inline_grammar_round_trips() {
        let spec = GameSpec::parse_inline("[3;2,1,1]").unwrap();
        let g = spec.as_weighted().unwrap();
        assert_eq!(g.quota(), &int(3));
        assert_eq!(g.weights(), &[int(2), int(1), int(1)]);

        let spec = GameSpec::parse_inline("[1/2;3/4,1/4]").unwrap();
        assert_eq!(spec.as_weighted().unwrap().quota(), &crate::ratio::rat(1, 2));
        assert!(GameSpec::parse_inline("3;2,1").is_err());
        assert!(GameSpec::parse_inline("[3:2,1]").is_err());
    }

    #[test]
    fn json_round_trips_both_kinds() {
        let spec = GameSpec::parse_inline("[3;2,1,1]").unwrap();
        let json = spec.to_json();
        assert_eq!(json["kind"], "weighted");
        assert_eq!(json["quota"], "3");
        let back = GameSpec::from_json(&json).unwrap();
        assert_eq!(back.as_weighted().unwrap().weights(), spec.as_weighted().unwrap().weights());

        let table = spec.to_simple().unwrap();
        let explicit = GameSpec::Explicit(table.clone());
        let json = explicit.to_json();
        assert_eq!(json["min_winning"], serde_json::json!([[1, 2], [1, 3]]));
        let back = GameSpec::from_json(&json).unwrap().to_simple().unwrap();
        assert_eq!(back, table);
    }
}
