use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::{run_pipeline, ExperimentConfig, PipelineReport};
use crate::error::Result;

/// First line of every sweep CSV; bump the version when columns change.
pub const CSV_HEADER_COMMENT: &str = "# twoopt-lab sweep v1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub seed: u64,
    pub instance_id: String,
    pub n: usize,
    pub n_prime: usize,
    pub length_t: f64,
    pub length_s: f64,
    pub ratio: f64,
    /// Largest ratio over this and all earlier rows.
    pub max_ratio: f64,
    pub crossings: usize,
    pub s1_prime: usize,
    pub s1_dprime: usize,
    pub s2_prime: usize,
    pub s2_dprime: usize,
    pub s3: usize,
    pub arborescences: usize,
    pub max_k: f64,
    pub s_simple: bool,
    pub all_passed: bool,
    pub failures: String,
}

impl SweepRow {
    pub fn from_report(r: &PipelineReport, max_ratio: f64) -> Self {
        let [s1p, s1d, s2p, s2d, s3] = r.partition_sizes;
        SweepRow {
            seed: r.seed,
            instance_id: r.instance_id.clone(),
            n: r.n,
            n_prime: r.n_prime,
            length_t: r.length_t,
            length_s: r.length_s,
            ratio: r.ratio,
            max_ratio,
            crossings: r.crossings,
            s1_prime: s1p,
            s1_dprime: s1d,
            s2_prime: s2p,
            s2_dprime: s2d,
            s3,
            arborescences: r.arborescences.len(),
            max_k: r.max_k().unwrap_or(0.0),
            s_simple: r.s_simple,
            all_passed: r.all_passed(),
            failures: r.failures.join(";"),
        }
    }
}

/// Runs the pipeline for every seed in parallel. Rows come back in seed
/// order whatever the scheduling.
pub fn sweep(
    base: &ExperimentConfig,
    seeds: impl IntoIterator<Item = u64>,
) -> Result<(Vec<PipelineReport>, Vec<SweepRow>)> {
    let seeds: Vec<u64> = seeds.into_iter().collect();
    let reports: Vec<PipelineReport> = seeds
        .par_iter()
        .map(|&seed| {
            run_pipeline(&ExperimentConfig {
                seed,
                ..base.clone()
            })
        })
        .collect::<Result<_>>()?;
    let mut max_ratio = f64::NEG_INFINITY;
    let rows = reports
        .iter()
        .map(|r| {
            max_ratio = max_ratio.max(r.ratio);
            SweepRow::from_report(r, max_ratio)
        })
        .collect();
    Ok((reports, rows))
}

pub fn write_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> Result<()> {
    writeln!(out, "{CSV_HEADER_COMMENT}")?;
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(std::io::Error::other)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_in_seed_order_with_running_max() {
        let base = ExperimentConfig::generated(0, 7);
        let (reports, rows) = sweep(&base, 1..=6).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.seed).collect::<Vec<_>>(),
            vec![1, 2, 3, 4, 5, 6]
        );
        for (i, row) in rows.iter().enumerate() {
            let expect = reports[..=i]
                .iter()
                .map(|r| r.ratio)
                .fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(row.max_ratio, expect);
        }
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER_COMMENT));
        assert!(lines
            .next()
            .unwrap()
            .starts_with("seed,instance_id,n,n_prime"));
        assert_eq!(lines.count(), 6);
    }
}
