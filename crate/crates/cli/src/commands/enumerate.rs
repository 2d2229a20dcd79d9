use super::write_output;
use crate::manifest::ManifestBuilder;
use crate::{CliError, CliResult, Outcome};
use clap::Args;
use std::path::PathBuf;
use votepower::enumeration::{count_games, EnumError, GameClass};

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    /// simple | complete | weighted
    #[arg(long, default_value = "simple")]
    pub class: String,
    /// One game per isomorphism class instead of all labelings.
    #[arg(long, default_value_t = false)]
    pub up_to_iso: bool,
    /// Write the CSV here (plus a run manifest).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &EnumerateArgs, invocation: &str) -> CliResult {
    let manifest = ManifestBuilder::new(invocation);
    let class: GameClass = args
        .class
        .parse()
        .map_err(|e: EnumError| CliError::Parse(e.to_string()))?;
    let report = count_games(args.n, class, args.up_to_iso).map_err(|e| match e {
        EnumError::Envelope { .. } => CliError::Unsupported(e.to_string()),
        other => CliError::Other(other.into()),
    })?;
    let mut csv = String::from("n,class,up_to_iso,count,seconds\n");
    csv.push_str(&format!(
        "{},{},{},{},{:.3}\n",
        report.n,
        report.class,
        report.up_to_iso,
        report.count,
        report.elapsed.as_secs_f64()
    ));
    print!("{csv}");
    write_output(&manifest, &args.out, &csv)?;
    Ok(Outcome::Ok)
}
