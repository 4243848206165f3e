use std::io::Write;

use crate::error::Result;

use super::experiment::ExperimentResults;

pub const CSV_HEADER: [&str; 6] =
    ["t", "policy", "mean_rate", "mean_cum_regret", "stderr_cum_regret", "mean_switches"];

/// Formats `x` with six significant digits in plain decimal notation.
pub fn format_sig6(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let rounded = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.999995 -> 10.00000).
    let rounded = match rounded.parse::<f64>() {
        Ok(r) if r.abs().log10().floor() as i32 > magnitude && decimals > 0 => {
            format!("{x:.*}", decimals - 1)
        }
        _ => rounded,
    };
    if rounded.contains('.') {
        let trimmed = rounded.trim_end_matches('0').trim_end_matches('.');
        if trimmed == "-0" {
            "0".into()
        } else {
            trimmed.into()
        }
    } else {
        rounded
    }
}

/// Writes a `# config:` comment line, the header, and one row per
/// `(t, policy)`.
pub fn write_results_csv<W: Write>(results: &ExperimentResults, mut writer: W) -> Result<()> {
    writeln!(writer, "# config: {}", results.config)?;
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(CSV_HEADER)?;
    let horizon = results.series.iter().map(|s| s.slots.len()).max().unwrap_or(0);
    for s in 0..horizon {
        for series in &results.series {
            let Some(stats) = series.slots.get(s) else {
                continue;
            };
            csv.write_record([
                stats.t.to_string(),
                series.policy.name().to_string(),
                format_sig6(stats.mean_rate),
                format_sig6(stats.mean_cum_regret),
                format_sig6(stats.stderr_cum_regret),
                format_sig6(stats.mean_switches),
            ])?;
        }
    }
    csv.flush()?;
    Ok(())
}

/// One parsed data row of a results CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub t: u64,
    pub policy: String,
    pub mean_rate: f64,
    pub mean_cum_regret: f64,
    pub stderr_cum_regret: f64,
    pub mean_switches: f64,
}

pub fn read_results_csv<R: std::io::Read>(reader: R) -> Result<Vec<ResultRow>> {
    let mut csv = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(reader);
    let mut rows = Vec::new();
    for record in csv.records() {
        let record = record?;
        let field = |i: usize| record.get(i).unwrap_or("");
        let num = |i: usize| {
            field(i).parse::<f64>().map_err(|_| {
                crate::Error::Ingest(format!("bad number `{}` in column {}", field(i), CSV_HEADER[i]))
            })
        };
        rows.push(ResultRow {
            t: field(0)
                .parse()
                .map_err(|_| crate::Error::Ingest(format!("bad slot index `{}`", field(0))))?,
            policy: field(1).to_string(),
            mean_rate: num(2)?,
            mean_cum_regret: num(3)?,
            stderr_cum_regret: num(4)?,
            mean_switches: num(5)?,
        });
    }
    Ok(rows)
}
