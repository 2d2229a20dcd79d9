pub mod enumerate;
pub mod inverse;
pub mod limits;
pub mod power;
pub mod verify;

use crate::manifest::ManifestBuilder;
use crate::CliError;
use std::path::{Path, PathBuf};
use votepower::game::GameSpec;
use votepower::indices::IndexKind;
use votepower::ratio::{approx_with_digits, format_ratio, Ratio};

/// Loads a game from the inline "[q;w1,w2,...]" grammar or a JSON file.
pub fn load_game(text: &str, manifest: &mut ManifestBuilder) -> Result<GameSpec, CliError> {
    if text.trim_start().starts_with('[') {
        return GameSpec::parse_inline(text).map_err(|e| CliError::Parse(e.to_string()));
    }
    let path = PathBuf::from(text);
    let contents = std::fs::read(&path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    manifest.input_file(&path, &contents);
    let value: serde_json::Value = serde_json::from_slice(&contents)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    GameSpec::from_json(&value).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn parse_index(text: &str) -> Result<IndexKind, CliError> {
    text.parse::<IndexKind>()
        .map_err(|e| CliError::Parse(e.to_string()))
}

pub fn parse_ratio_arg(text: &str, what: &str) -> Result<Ratio, CliError> {
    votepower::ratio::parse_ratio(text)
        .map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

/// "3/5 ≈ 0.600000000000 (12 digits)" — exact first, decimal annotated.
pub fn fraction_cell(value: &Ratio) -> String {
    format!("{} ≈ {}", format_ratio(value), approx_with_digits(value, 12))
}

pub fn write_output(
    manifest: &ManifestBuilder,
    out: &Option<PathBuf>,
    payload: &str,
) -> Result<(), CliError> {
    if let Some(path) = out {
        manifest
            .write_output(Path::new(path), payload.as_bytes())
            .map_err(|e| CliError::Other(e.into()))?;
    }
    Ok(())
}
