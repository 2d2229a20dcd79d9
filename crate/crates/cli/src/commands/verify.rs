use super::write_output;
use crate::manifest::ManifestBuilder;
use crate::{CliError, CliResult, Outcome};
use clap::Args;
use std::path::PathBuf;
use votepower::verify::{run as run_probe, Verdict, VerifyError, VerifyParams};

#[derive(Args)]
pub struct VerifyArgs {
    /// C1 | C3 | C5 | C7 | C8 | C9 | C10
    #[arg(long)]
    pub id: String,
    /// Player count override where the probe accepts one.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 400)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write the report JSON here (plus a run manifest). A counterexample
    /// artifact lands next to it as <out>.counterexample.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &VerifyArgs, invocation: &str) -> CliResult {
    let mut manifest = ManifestBuilder::new(invocation);
    manifest.seed(args.seed);
    let params = VerifyParams {
        n: args.n,
        samples: args.samples,
        seed: args.seed,
    };
    let report = run_probe(&args.id, &params).map_err(|e| match e {
        VerifyError::UnknownId(_) => CliError::Parse(e.to_string()),
        other => CliError::Other(other.into()),
    })?;

    println!("probe {}: {}", report.id, report.claim);
    println!("tested range: {}", report.tested_range);
    println!("beyond this range (untested): {}", report.beyond_scope);
    for (key, value) in &report.details {
        println!("  {key}: {value}");
    }
    let payload = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
    write_output(&manifest, &args.out, &payload)?;

    match report.verdict {
        Verdict::NoCounterexample => {
            println!("verdict: no counterexample in the tested range (evidence, not proof)");
            Ok(Outcome::Ok)
        }
        Verdict::CounterexampleFound => {
            println!("verdict: counterexample found");
            let artifact = report
                .counterexample
                .unwrap_or(serde_json::Value::Null);
            let artifact_path = args
                .out
                .as_ref()
                .map(|p| {
                    let mut name = p
                        .file_name()
                        .map(|n| n.to_string_lossy().into_owned())
                        .unwrap_or_else(|| "report".to_string());
                    name.push_str(".counterexample.json");
                    p.with_file_name(name)
                })
                .unwrap_or_else(|| PathBuf::from(format!("{}.counterexample.json", report.id)));
            let body = serde_json::to_string_pretty(&artifact).expect("serializable");
            manifest
                .write_output(&artifact_path, body.as_bytes())
                .map_err(|e| CliError::Other(e.into()))?;
            println!("artifact: {}", artifact_path.display());
            Ok(Outcome::Counterexample)
        }
    }
}
