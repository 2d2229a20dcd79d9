use super::{fraction_cell, load_game, parse_index, write_output};
use crate::manifest::ManifestBuilder;
use crate::{CliError, CliResult, Outcome};
use clap::Args;
use std::path::PathBuf;
use votepower::indices::{compute, ComputeOptions, IndexError, Method};

#[derive(Args)]
pub struct PowerArgs {
    /// Inline "[q;w1,w2,...]" or a game JSON file.
    #[arg(long)]
    pub game: String,
    /// banzhaf | ssi | pgi | phi | johnston | nucleolus | msr |
    /// raw-banzhaf | semivalue(p)
    #[arg(long)]
    pub index: String,
    /// auto | table | dp
    #[arg(long, default_value = "auto")]
    pub method: String,
    /// Normalize the semivalue to sum one.
    #[arg(long, default_value_t = false)]
    pub normalize: bool,
    /// Write the power vector as JSON here (plus a run manifest).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &PowerArgs, invocation: &str) -> CliResult {
    let mut manifest = ManifestBuilder::new(invocation);
    let game = load_game(&args.game, &mut manifest)?;
    let kind = parse_index(&args.index)?;
    let method = match args.method.as_str() {
        "auto" => Method::Auto,
        "table" => Method::Table,
        "dp" => Method::Dp,
        other => return Err(CliError::Parse(format!("unknown method {other:?}"))),
    };
    let options = ComputeOptions {
        method,
        normalize_semivalue: args.normalize,
    };
    let power = compute(&game, &kind, &options).map_err(|e| match e {
        IndexError::Unsupported { .. } | IndexError::NotWeighted => {
            CliError::Unsupported(e.to_string())
        }
        other => CliError::Other(other.into()),
    })?;
    println!("index: {}", power.kind);
    for (i, value) in power.values.iter().enumerate() {
        println!("  player {:>2}: {}", i + 1, fraction_cell(value));
    }
    let payload = serde_json::to_string_pretty(&power.to_json()).expect("serializable");
    write_output(&manifest, &args.out, &payload)?;
    Ok(Outcome::Ok)
}
