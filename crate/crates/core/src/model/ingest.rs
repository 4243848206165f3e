//! Popularity ingestion from `file_id,count` CSV.
//!
//! The header row is optional. Converting a ratings dataset into per-item
//! counts is a preprocessing step done outside this crate.

use std::collections::HashSet;
use std::io::{Read, Write};

use crate::error::{Error, Result};

use super::popularity::PopularityDistribution;

/// Ingested popularity: `popularity.prob(r)` is the pmf of the file ranked
/// `r` (0-based), and `original_ids[r]` is its id in the input.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedPopularity {
    pub popularity: PopularityDistribution,
    pub original_ids: Vec<u64>,
}

impl RankedPopularity {
    /// 1-based rank of an input id.
    pub fn rank_of(&self, file_id: u64) -> Option<usize> {
        self.original_ids.iter().position(|&id| id == file_id).map(|r| r + 1)
    }
}

/// Normalizes counts to a pmf sorted by descending count. Ties keep input
/// order.
pub fn ingest_popularity_counts(rows: &[(u64, u64)]) -> Result<RankedPopularity> {
    if rows.is_empty() {
        return Err(Error::Ingest("no rows".into()));
    }
    let mut seen = HashSet::with_capacity(rows.len());
    for &(id, _) in rows {
        if !seen.insert(id) {
            return Err(Error::Ingest(format!("duplicate file id {id}")));
        }
    }
    let total: u64 = rows.iter().map(|&(_, c)| c).sum();
    if total == 0 {
        return Err(Error::Ingest("all counts are zero".into()));
    }

    let mut ranked = rows.to_vec();
    ranked.sort_by_key(|&(_, count)| std::cmp::Reverse(count));
    let weights: Vec<f64> = ranked.iter().map(|&(_, c)| c as f64).collect();
    let popularity = PopularityDistribution::from_weights(&weights)?;
    let original_ids = ranked.into_iter().map(|(id, _)| id).collect();
    Ok(RankedPopularity { popularity, original_ids })
}

/// Parses `file_id,count` rows. A first row that does not parse as two
/// integers is taken as a header.
pub fn read_counts_csv<R: Read>(reader: R) -> Result<Vec<(u64, u64)>> {
    let mut csv = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(reader);
    let mut rows = Vec::new();
    for (line, record) in csv.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(Error::Ingest(format!(
                "line {}: expected 2 columns, found {}",
                line + 1,
                record.len()
            )));
        }
        let id = record[0].parse::<u64>();
        let count = record[1].parse::<u64>();
        match (id, count) {
            (Ok(id), Ok(count)) => rows.push((id, count)),
            _ if line == 0 => continue,
            _ => {
                return Err(Error::Ingest(format!(
                    "line {}: `{},{}` is not a file_id,count pair",
                    line + 1,
                    &record[0],
                    &record[1]
                )))
            }
        }
    }
    Ok(rows)
}

/// Writes `rank,prob,orig_id` rows (1-based ranks).
pub fn write_ranked_csv<W: Write>(ranked: &RankedPopularity, writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(["rank", "prob", "orig_id"])?;
    for (rank, (&prob, id)) in ranked.popularity.probs().iter().zip(&ranked.original_ids).enumerate() {
        csv.write_record([(rank + 1).to_string(), prob.to_string(), id.to_string()])?;
    }
    csv.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_by_count() {
        let ranked = ingest_popularity_counts(&[(7, 3), (2, 1)]).unwrap();
        assert_eq!(ranked.popularity.probs(), &[0.75, 0.25]);
        assert_eq!(ranked.original_ids, vec![7, 2]);
        assert_eq!(ranked.rank_of(7), Some(1));
        assert_eq!(ranked.rank_of(2), Some(2));
        assert_eq!(ranked.rank_of(3), None);

        let reordered = ingest_popularity_counts(&[(2, 1), (7, 3)]).unwrap();
        assert_eq!(reordered.original_ids, vec![7, 2]);
    }

    #[test]
    fn single_and_error_cases() {
        assert_eq!(ingest_popularity_counts(&[(1, 5)]).unwrap().popularity.probs(), &[1.0]);
        assert!(ingest_popularity_counts(&[(1, 0), (2, 0)]).is_err());
        assert!(ingest_popularity_counts(&[]).is_err());
        assert!(ingest_popularity_counts(&[(1, 2), (1, 3)]).is_err());
    }

    #[test]
    fn csv_with_and_without_header() {
        let with = read_counts_csv("file_id,count\n7,3\n2,1\n".as_bytes()).unwrap();
        let without = read_counts_csv("7,3\n2,1\n".as_bytes()).unwrap();
        assert_eq!(with, vec![(7, 3), (2, 1)]);
        assert_eq!(with, without);
        assert!(read_counts_csv("7,3\nx,1\n".as_bytes()).is_err());
        assert!(read_counts_csv("7,3,4\n".as_bytes()).is_err());
    }

    #[test]
    fn writes_ranked_rows() {
        let ranked = ingest_popularity_counts(&[(7, 3), (2, 1)]).unwrap();
        let mut out = Vec::new();
        write_ranked_csv(&ranked, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "rank,prob,orig_id\n1,0.75,7\n2,0.25,2\n");
    }
}
