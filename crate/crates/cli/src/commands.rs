use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use occ_core::bounds::{bound_report, check_bad_set_gap, regret_lower_bound, KoChoice};
use occ_core::engine::{fuzz_decodability, FuzzConfig};
use occ_core::harness::{format_sig6, run_experiment, ExperimentConfig, RateMode};
use occ_core::model::{ingest_popularity_counts, read_counts_csv, write_ranked_csv};
use occ_core::{PolicyKind, SystemParams};

use crate::args::{BoundsArgs, Command, IngestArgs, LowerboundArgs, SimulateArgs, VerifyDecodeArgs};
use crate::dist::parse_distribution;
use crate::{Failure, UsageError};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Simulate(args) => simulate(args),
        Command::Bounds(args) => bounds(args),
        Command::Lowerbound(args) => lowerbound(args),
        Command::VerifyDecode(args) => verify_decode(args),
        Command::Ingest(args) => ingest(args),
    }
}

/// Opens `path` for writing, or stdout for `None` and `-`.
fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) if p != Path::new("-") => {
            let file = File::create(p).with_context(|| format!("cannot create {}", p.display()))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        _ => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn parse_policies(list: &str) -> Result<Vec<PolicyKind>> {
    let mut policies = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let kind: PolicyKind = name.parse()?;
        if !policies.contains(&kind) {
            policies.push(kind);
        }
    }
    Ok(policies)
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let popularity = parse_distribution(&args.instance.dist, args.instance.n)?;
    let params = SystemParams::new(popularity.n_files(), args.instance.k, args.instance.m, args.f)?;
    let mut config = ExperimentConfig::new(params, popularity, parse_policies(&args.policies)?);
    config.distribution_label = args.instance.dist.clone();
    config.horizon = args.horizon;
    config.trials = args.trials;
    config.seed = args.seed;
    config.subset_cap = args.cap;
    config.rate_mode = match args.rate_mode.as_deref() {
        Some(mode) => mode.parse()?,
        None if args.instance.k <= args.cap => RateMode::BitLevel,
        None => RateMode::Analytic,
    };
    config.ko_reference = args.ko.parse()?;
    config.miss_accounting = args.lfu_accounting.parse()?;

    let results = run_experiment(&config)?;
    let mut out = output(args.out.as_deref())?;
    occ_core::harness::write_results_csv(&results, &mut out)?;
    out.flush()?;
    Ok(())
}

fn bounds(args: BoundsArgs) -> Result<()> {
    let popularity = parse_distribution(&args.instance.dist, args.instance.n)?;
    let params =
        SystemParams::with_default_subpackets(popularity.n_files(), args.instance.k, args.instance.m)?;
    let ko = match args.ko.as_str() {
        "upper" => KoChoice::UpperBound,
        "lb" | "lower" => KoChoice::LowerBound,
        value => KoChoice::Value(
            value
                .parse()
                .map_err(|_| UsageError::new(format!("--ko `{value}`: expected upper, lb or a number")))?,
        ),
    };
    let report = bound_report(&popularity, &params, ko)?;
    let rows = [
        ("k_o_upper", report.k_o_upper),
        ("k_lb", report.k_lb),
        ("k_o_used", report.k_o_used),
        ("a", report.a),
        ("b", report.b),
        ("first_step", report.first_step),
        ("regret_bound", report.regret_bound),
        ("switch_bound", report.switch_bound),
    ];
    let mut out = output(None)?;
    match args.format.as_str() {
        "text" => {
            for (name, value) in rows {
                writeln!(out, "{name:<13} {}", format_sig6(value))?;
            }
        }
        "csv" => {
            let names: Vec<&str> = rows.iter().map(|r| r.0).collect();
            let values: Vec<String> = rows.iter().map(|r| format_sig6(r.1)).collect();
            writeln!(out, "{}", names.join(","))?;
            writeln!(out, "{}", values.join(","))?;
        }
        other => return Err(UsageError::new(format!("--format `{other}`: expected text or csv")).into()),
    }
    out.flush()?;
    Ok(())
}

fn lowerbound(args: LowerboundArgs) -> Result<()> {
    let params = SystemParams::with_default_subpackets(args.n, args.k, args.m)?;
    let report = regret_lower_bound(&params, args.a, args.b)?;
    let mut out = output(None)?;
    for (name, value) in [
        ("bound", report.bound),
        ("gap", report.gap),
        ("kl_per_slot", report.kl_per_slot),
        ("oracle_rate", report.oracle_rate),
        ("best_horizon", report.best_horizon),
        ("curve_max", report.curve_max),
    ] {
        writeln!(out, "{name:<13} {}", format_sig6(value))?;
    }
    if args.verify {
        let check = check_bad_set_gap(&params, args.a, args.b)?;
        writeln!(
            out,
            "verify: {} ({} subsets, {} bad pairs, {} violations, min margin {})",
            if check.holds() { "PASS" } else { "FAIL" },
            check.subsets,
            check.bad_pairs,
            check.violations.len(),
            format_sig6(check.min_margin),
        )?;
        out.flush()?;
        if !check.holds() {
            let (set, instance, excess) = &check.violations[0];
            return Err(Failure::new(format!(
                "bad set {set} under {instance:?} exceeds the oracle by only {}",
                format_sig6(*excess)
            ))
            .into());
        }
    }
    out.flush()?;
    Ok(())
}

fn verify_decode(args: VerifyDecodeArgs) -> Result<()> {
    let config = FuzzConfig {
        trials: args.trials,
        seed: args.seed,
        max_files: args.max_files,
        max_users: args.max_users,
        max_cache: args.max_cache,
        max_subpackets: args.max_subpackets,
        corrupt: args.corrupt,
    };
    if config.max_files == 0 || config.max_users == 0 || config.max_subpackets == 0 {
        return Err(UsageError::new("fuzz limits must be positive").into());
    }
    if config.max_cache.is_nan() || config.max_cache <= 0.0 {
        return Err(UsageError::new("--max-cache must be positive").into());
    }
    let report = fuzz_decodability(&config);
    println!(
        "decode fuzz{}: {} trials, {} failures: {}",
        if args.corrupt { " (corrupted caches)" } else { "" },
        report.trials,
        report.failures,
        if report.passed() { "PASS" } else { "FAIL" },
    );
    match report.first_failure {
        Some(first) if !report.passed() => Err(Failure::new(format!("decode failure: {first}")).into()),
        _ => Ok(()),
    }
}

fn ingest(args: IngestArgs) -> Result<()> {
    let file = File::open(&args.input).with_context(|| format!("cannot open {}", args.input.display()))?;
    let ranked = ingest_popularity_counts(&read_counts_csv(file)?)?;
    let mut out = output(args.out.as_deref())?;
    write_ranked_csv(&ranked, &mut out)?;
    out.flush()?;
    Ok(())
}
