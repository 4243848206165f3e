use std::fs::File;

use anyhow::{anyhow, Context, Result};
use occ_core::model::{ingest_popularity_counts, read_counts_csv};
use occ_core::PopularityDistribution;

use crate::UsageError;

/// Resolves a `--dist` spec into a pmf. `n` is the `--n` flag, if given.
pub fn parse_distribution(spec: &str, n: Option<usize>) -> Result<PopularityDistribution> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| UsageError::new(format!("--dist `{spec}`: expected KIND:ARGS")))?;
    let need_n = || n.ok_or_else(|| anyhow!(UsageError::new(format!("--dist {kind} needs --n"))));
    let dist = match kind {
        "zipf" => PopularityDistribution::zipf(need_n()?, parse_number(arg, "zipf exponent")?)?,
        "probs" => {
            let probs = arg.split(',').map(|p| parse_number(p, "probability")).collect::<Result<Vec<_>>>()?;
            PopularityDistribution::new(probs)?
        }
        "counts" => {
            let file = File::open(arg).with_context(|| format!("cannot open counts file {arg}"))?;
            ingest_popularity_counts(&read_counts_csv(file)?)?.popularity
        }
        "lbpair" => {
            let (a, b) = arg
                .split_once(',')
                .ok_or_else(|| UsageError::new(format!("lbpair `{arg}`: expected A,B")))?;
            let (a, b) = (parse_number(a, "a")?, parse_number(b, "b")?);
            PopularityDistribution::lower_bound_pair(need_n()?, a, b)?.0
        }
        other => return Err(UsageError::new(format!("unknown distribution kind `{other}`")).into()),
    };
    if let Some(n) = n {
        if dist.n_files() != n {
            return Err(UsageError::new(format!("--dist has {} files but --n is {n}", dist.n_files())).into());
        }
    }
    Ok(dist)
}

fn parse_number(text: &str, what: &str) -> Result<f64> {
    text.trim().parse().map_err(|_| UsageError::new(format!("{what}: `{text}` is not a number")).into())
}
