use super::{load_game, parse_index, parse_ratio_arg, write_output};
use crate::manifest::ManifestBuilder;
use crate::{CliError, CliResult, Outcome};
use clap::{Args, Subcommand};
use std::path::PathBuf;
use votepower::limits::{
    atomic_limit_estimate, generic_bound_scan, norm1_convergence, nucleolus_bound_check,
    plt_ratios, psi_bound, BoundCheckConfig, Chain, ConvergenceReport, GameSampler,
    NucleolusBoundVariant,
};
use votepower::ratio::{format_ratio, Ratio};

#[derive(Subcommand)]
pub enum LimitsCommand {
    /// Power/weight ratio convergence along a chain.
    Plt(PltArgs),
    /// l1 distance between index and normalized weights along a chain.
    Norm1(ChainArgs),
    /// Nucleolus distance bound check for one game.
    Nucbound(NucboundArgs),
    /// Empirical scan of the c·Δ^α/min(q,1−q)^β bound template.
    Scan(ScanArgs),
    /// The (2,…,2,1)/(2n−1) floor for symmetric efficient indices.
    Psi(PsiArgs),
    /// Per-persistent-voter power sequences and their decay.
    Atomic(ChainArgs),
}

#[derive(Args)]
pub struct ChainArgs {
    /// Persistent voter weights, e.g. "5" or "5,3" (may be empty).
    #[arg(long, default_value = "")]
    pub atomic: String,
    /// Ocean weight pattern cycled as the chain grows, e.g. "1" or "2,1".
    #[arg(long, default_value = "1")]
    pub ocean: String,
    /// Relative quota in (0,1).
    #[arg(long, default_value = "1/2")]
    pub q: String,
    /// Voter counts, e.g. "10,20,40".
    #[arg(long, default_value = "10,20,40")]
    pub steps: String,
    #[arg(long, default_value = "ssi")]
    pub index: String,
    /// Shorthand chain: psi = one weight-1 voter plus weight-2 ocean.
    #[arg(long)]
    pub chain: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct PltArgs {
    #[command(flatten)]
    pub chain: ChainArgs,
    /// 1-indexed voter pairs "i:j", comma separated.
    #[arg(long, default_value = "2:1")]
    pub pairs: String,
    /// Convergence tolerance on the last step.
    #[arg(long, default_value = "1/20")]
    pub tolerance: String,
}

#[derive(Args)]
pub struct NucboundArgs {
    /// Inline "[q;w1,w2,...]" or a game JSON file.
    #[arg(long)]
    pub game: String,
    /// proven | conjectured
    #[arg(long, default_value = "proven")]
    pub variant: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScanArgs {
    #[arg(long, default_value = "nucleolus")]
    pub index: String,
    #[arg(long, default_value_t = 1)]
    pub alpha: u32,
    #[arg(long, default_value_t = 1)]
    pub beta: u32,
    /// Candidate constant to compare the empirical supremum against.
    #[arg(long, default_value = "2")]
    pub c: String,
    /// random | replicas
    #[arg(long, default_value = "random")]
    pub sampler: String,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, default_value_t = 20)]
    pub max_weight: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Replica sampler: base weights and copy counts.
    #[arg(long, default_value = "2,1")]
    pub base: String,
    #[arg(long, default_value = "2,4,6")]
    pub copies: String,
    #[arg(long, default_value = "1/2")]
    pub q: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct PsiArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "ssi")]
    pub index: String,
    #[arg(long, default_value = "1/2")]
    pub q: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(command: &LimitsCommand, invocation: &str) -> CliResult {
    let manifest = ManifestBuilder::new(invocation);
    match command {
        LimitsCommand::Plt(args) => {
            let chain = build_chain(&args.chain)?;
            let kind = parse_index(&args.chain.index)?;
            let pairs = parse_pairs(&args.pairs)?;
            let tolerance = parse_ratio_arg(&args.tolerance, "tolerance")?;
            let report = plt_ratios(&chain, &kind, &pairs, &tolerance)
                .map_err(|e| CliError::Other(e.into()))?;
            emit_convergence(&manifest, &args.chain.out, &report)
        }
        LimitsCommand::Norm1(args) => {
            let chain = build_chain(args)?;
            let kind = parse_index(&args.index)?;
            let report =
                norm1_convergence(&chain, &kind).map_err(|e| CliError::Other(e.into()))?;
            emit_convergence(&manifest, &args.out, &report)
        }
        LimitsCommand::Atomic(args) => {
            let chain = build_chain(args)?;
            let kind = parse_index(&args.index)?;
            let report =
                atomic_limit_estimate(&chain, &kind).map_err(|e| CliError::Other(e.into()))?;
            emit_convergence(&manifest, &args.out, &report)
        }
        LimitsCommand::Nucbound(args) => {
            let mut manifest = ManifestBuilder::new(invocation);
            let game = load_game(&args.game, &mut manifest)?;
            let weighted = game
                .as_weighted()
                .ok_or_else(|| {
                    CliError::Unsupported("bound check needs a weighted game".to_string())
                })?
                .clone();
            let variant = match args.variant.as_str() {
                "proven" => NucleolusBoundVariant::Proven,
                "conjectured" => NucleolusBoundVariant::Conjectured,
                other => return Err(CliError::Parse(format!("unknown variant {other:?}"))),
            };
            let check = nucleolus_bound_check(&weighted, variant)
                .map_err(|e| CliError::Other(e.into()))?;
            println!(
                "lhs {} rhs {} holds {} slack {}",
                format_ratio(&check.lhs),
                format_ratio(&check.rhs),
                check.holds,
                format_ratio(&check.slack)
            );
            let payload = serde_json::to_string_pretty(&serde_json::json!({
                "variant": args.variant,
                "lhs": format_ratio(&check.lhs),
                "rhs": format_ratio(&check.rhs),
                "holds": check.holds,
                "slack": format_ratio(&check.slack),
            }))
            .expect("serializable");
            write_output(&manifest, &args.out, &payload)?;
            Ok(Outcome::Ok)
        }
        LimitsCommand::Scan(args) => {
            let mut manifest = ManifestBuilder::new(invocation);
            manifest.seed(args.seed);
            let config = BoundCheckConfig {
                alpha: args.alpha,
                beta: args.beta,
                c: parse_ratio_arg(&args.c, "c")?,
                kind: parse_index(&args.index)?,
            };
            let sampler = match args.sampler.as_str() {
                "random" => GameSampler::Random {
                    count: args.count,
                    n_min: args.n_min,
                    n_max: args.n_max,
                    max_weight: args.max_weight,
                    seed: args.seed,
                },
                "replicas" => GameSampler::Replicas {
                    base: parse_u64_list(&args.base)?,
                    copies: parse_usize_list(&args.copies)?,
                    q_rel: parse_ratio_arg(&args.q, "q")?,
                },
                other => return Err(CliError::Parse(format!("unknown sampler {other:?}"))),
            };
            let report =
                generic_bound_scan(&config, &sampler).map_err(|e| CliError::Other(e.into()))?;
            let mut csv = String::from("n,quantity,value_num,value_den,verdict\n");
            for s in &report.samples {
                push_csv_row(&mut csv, s.n, "bound_ratio", &s.ratio, "");
            }
            push_csv_row(
                &mut csv,
                0,
                "empirical_supremum",
                &report.supremum,
                if report.within_candidate { "pass" } else { "fail" },
            );
            print!("{csv}");
            println!(
                "empirical supremum {} vs candidate c = {} -> {}",
                format_ratio(&report.supremum),
                args.c,
                if report.within_candidate { "within" } else { "exceeded" }
            );
            write_output(&manifest, &args.out, &csv)?;
            Ok(Outcome::Ok)
        }
        LimitsCommand::Psi(args) => {
            let kind = parse_index(&args.index)?;
            let q = parse_ratio_arg(&args.q, "q")?;
            let bound = psi_bound(args.n, &kind, &q).map_err(|e| match e {
                votepower::limits::LimitsError::BoundHypothesis(_) => {
                    CliError::Unsupported(e.to_string())
                }
                other => CliError::Other(other.into()),
            })?;
            println!(
                "lhs {} floor {} ratio {} holds {}",
                format_ratio(&bound.lhs),
                format_ratio(&bound.floor),
                format_ratio(&bound.ratio),
                bound.holds
            );
            let mut csv = String::from("n,quantity,value_num,value_den,verdict\n");
            push_csv_row(&mut csv, args.n, "psi_lhs", &bound.lhs, "");
            push_csv_row(
                &mut csv,
                args.n,
                "psi_floor",
                &bound.floor,
                if bound.holds { "pass" } else { "fail" },
            );
            write_output(&manifest, &args.out, &csv)?;
            Ok(Outcome::Ok)
        }
    }
}

fn build_chain(args: &ChainArgs) -> Result<Chain, CliError> {
    let q = parse_ratio_arg(&args.q, "q")?;
    let steps = parse_usize_list(&args.steps)?;
    match args.chain.as_deref() {
        Some("psi") => Chain::psi(q, steps).map_err(|e| CliError::Parse(e.to_string())),
        Some("ones") => Chain::replica(q, steps).map_err(|e| CliError::Parse(e.to_string())),
        Some(other) => Err(CliError::Parse(format!(
            "unknown chain shorthand {other:?} (psi | ones)"
        ))),
        None => {
            let atomic = parse_ratio_list(&args.atomic)?;
            let ocean = parse_ratio_list(&args.ocean)?;
            Chain::new(atomic, ocean, q, steps).map_err(|e| CliError::Parse(e.to_string()))
        }
    }
}

fn emit_convergence(
    manifest: &ManifestBuilder,
    out: &Option<PathBuf>,
    report: &ConvergenceReport,
) -> CliResult {
    let mut csv = String::from("n,quantity,value_num,value_den,verdict\n");
    for record in &report.records {
        push_csv_row(&mut csv, record.n, &record.quantity, &record.value, "");
    }
    for (name, ok) in &report.verdicts {
        csv.push_str(&format!(
            "0,verdict_{name},{},1,{}\n",
            u8::from(*ok),
            if *ok { "pass" } else { "fail" }
        ));
    }
    print!("{csv}");
    if let Some((slope, residual)) = report.fitted_decay {
        println!("fitted decay exponent {slope:.4} (residual {residual:.4}, floating point)");
    }
    println!("finite-range surrogate: these are measurements, not limits");
    let summary = serde_json::json!({
        "records": report.records.iter().map(|r| serde_json::json!({
            "n": r.n,
            "quantity": r.quantity,
            "value": format_ratio(&r.value),
        })).collect::<Vec<_>>(),
        "verdicts": report.verdicts.iter()
            .map(|(k, v)| serde_json::json!({k: v})).collect::<Vec<_>>(),
        "fitted_decay_exponent": report.fitted_decay.map(|(s, _)| s),
        "fit_residual": report.fitted_decay.map(|(_, r)| r),
        "finite_surrogate": report.finite_surrogate,
    });
    let json_payload = serde_json::to_string_pretty(&summary).expect("serializable");
    if let Some(path) = out {
        // CSV to the named file, JSON summary next to it.
        write_output(manifest, &Some(path.clone()), &csv)?;
        let json_path = path.with_extension("summary.json");
        manifest
            .write_output(&json_path, json_payload.as_bytes())
            .map_err(|e| CliError::Other(e.into()))?;
    }
    Ok(Outcome::Ok)
}

fn push_csv_row(csv: &mut String, n: usize, quantity: &str, value: &Ratio, verdict: &str) {
    csv.push_str(&format!(
        "{n},{quantity},{},{},{verdict}\n",
        value.numer(),
        value.denom()
    ));
}

fn parse_ratio_list(text: &str) -> Result<Vec<Ratio>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| parse_ratio_arg(t, "weight"))
        .collect()
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| CliError::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| CliError::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(',')
        .map(|pair| {
            let (i, j) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Parse(format!("pair {pair:?} is not i:j")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| CliError::Parse(format!("bad 1-indexed voter {t:?}")))
            };
            Ok((parse(i)? - 1, parse(j)? - 1))
        })
        .collect()
}
