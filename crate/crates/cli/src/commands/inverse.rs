use super::{fraction_cell, parse_index, write_output};
use crate::manifest::ManifestBuilder;
use crate::{CliError, CliResult, Outcome};
use clap::Args;
use std::path::PathBuf;
use votepower::enumeration::GameClass;
use votepower::inverse::{
    alon_edelman_rhs, certified_lower_bound, solve_exhaustive, solve_local_search,
    AlonEdelmanVariant, InverseError, InverseSolution, LocalSearchConfig, Norm,
    TargetDistribution,
};
use votepower::ratio::format_ratio;

#[derive(Args)]
pub struct InverseArgs {
    /// Inline "a/b,c/d,..." or a JSON file holding such a string or array.
    #[arg(long)]
    pub target: String,
    /// simple | complete | weighted (exhaustive method only)
    #[arg(long, default_value = "simple")]
    pub class: String,
    #[arg(long, default_value = "banzhaf")]
    pub index: String,
    /// l1 | l2 | linf (l2 distances are reported squared)
    #[arg(long, default_value = "l1")]
    pub norm: String,
    /// exhaustive | local | bound
    #[arg(long, default_value = "exhaustive")]
    pub method: String,
    /// Reduction size for --method bound.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// original | improved (bound variant).
    #[arg(long, default_value = "original")]
    pub variant: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Local search: weight ceiling, iterations, restarts.
    #[arg(long, default_value_t = 20)]
    pub max_weight: u64,
    #[arg(long, default_value_t = 200)]
    pub iterations: usize,
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    /// Write the solution JSON here (plus a run manifest).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &InverseArgs, invocation: &str) -> CliResult {
    let mut manifest = ManifestBuilder::new(invocation);
    manifest.seed(args.seed);
    let sigma = load_target(&args.target, &mut manifest)?;
    let kind = parse_index(&args.index)?;
    let norm: Norm = args
        .norm
        .parse()
        .map_err(|e: InverseError| CliError::Parse(e.to_string()))?;

    match args.method.as_str() {
        "exhaustive" => {
            let class: GameClass = args
                .class
                .parse()
                .map_err(|e: votepower::enumeration::EnumError| CliError::Parse(e.to_string()))?;
            let solution =
                solve_exhaustive(&sigma, class, &kind, norm).map_err(envelope_or_other)?;
            print_solution(&solution);
            let payload =
                serde_json::to_string_pretty(&solution.to_json()).expect("serializable");
            write_output(&manifest, &args.out, &payload)?;
            Ok(Outcome::Ok)
        }
        "local" => {
            let config = LocalSearchConfig {
                max_weight: args.max_weight,
                iterations: args.iterations,
                restarts: args.restarts,
                seed: args.seed,
                ..Default::default()
            };
            let solution =
                solve_local_search(&sigma, &kind, norm, &config).map_err(envelope_or_other)?;
            print_solution(&solution);
            let payload =
                serde_json::to_string_pretty(&solution.to_json()).expect("serializable");
            write_output(&manifest, &args.out, &payload)?;
            Ok(Outcome::Ok)
        }
        "bound" => {
            let variant: AlonEdelmanVariant = args
                .variant
                .parse()
                .map_err(|e: InverseError| CliError::Parse(e.to_string()))?;
            let bound =
                certified_lower_bound(&sigma, args.k, variant).map_err(envelope_or_other)?;
            println!(
                "certified lower bound on the optimal banzhaf l1 distance (any n): {}",
                fraction_cell(&bound)
            );
            // The reduction right-hand side at the crossing tail, for context.
            if let Ok(rhs) = alon_edelman_rhs(&(&bound / votepower::ratio::int(2)), args.k, variant)
            {
                println!("reduction rhs at tail = bound/2: {}", format_ratio(&rhs));
            }
            let payload = serde_json::to_string_pretty(&serde_json::json!({
                "bound": format_ratio(&bound),
                "k": args.k,
                "variant": args.variant,
                "norm": "l1",
            }))
            .expect("serializable");
            write_output(&manifest, &args.out, &payload)?;
            Ok(Outcome::Ok)
        }
        other => Err(CliError::Parse(format!(
            "unknown method {other:?} (exhaustive | local | bound)"
        ))),
    }
}

fn load_target(
    text: &str,
    manifest: &mut ManifestBuilder,
) -> Result<TargetDistribution, CliError> {
    let inline = text.contains(',') || text.contains('/');
    let source = if inline {
        text.to_string()
    } else {
        let path = PathBuf::from(text);
        let contents = std::fs::read(&path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        manifest.input_file(&path, &contents);
        let value: serde_json::Value = serde_json::from_slice(&contents)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        match value {
            serde_json::Value::String(s) => s,
            serde_json::Value::Array(entries) => entries
                .iter()
                .map(|v| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()))
                .collect::<Vec<_>>()
                .join(","),
            other => other.to_string(),
        }
    };
    TargetDistribution::parse(&source).map_err(|e| CliError::Parse(e.to_string()))
}

fn envelope_or_other(e: InverseError) -> CliError {
    match e {
        InverseError::Envelope(_) => CliError::Unsupported(e.to_string()),
        InverseError::Index(inner @ votepower::indices::IndexError::Unsupported { .. }) => {
            CliError::Unsupported(inner.to_string())
        }
        other => CliError::Other(other.into()),
    }
}

fn print_solution(solution: &InverseSolution) {
    println!("norm: {}", solution.norm);
    println!("distance: {}", fraction_cell(&solution.distance));
    println!("certificate: {:?}", solution.certificate);
    match &solution.game {
        votepower::game::GameSpec::Weighted(g) => println!("game: {g}"),
        votepower::game::GameSpec::Explicit(g) => println!("game: {g:?}"),
    }
    for (i, value) in solution.power.values.iter().enumerate() {
        println!("  player {:>2}: {}", i + 1, fraction_cell(value));
    }
}
