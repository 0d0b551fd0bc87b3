//! Seed sweep with exact optima; writes the CSV to stdout and a summary to
//! stderr.
//!
//!     cargo run --release --example sweep_report -- [n] [seeds] > sweep.csv

use twoopt_lab::harness::{sweep, write_csv, ExperimentConfig};

fn main() -> twoopt_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(10);
    let seeds: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);

    let (reports, rows) = sweep(&ExperimentConfig::generated(0, n), 1..=seeds)?;
    write_csv(std::io::stdout().lock(), &rows)?;

    let failed: Vec<_> = reports
        .iter()
        .filter(|r| !r.all_passed())
        .map(|r| r.seed)
        .collect();
    let worst = reports
        .iter()
        .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
        .unwrap();
    eprintln!("n = {n}, {} runs, failing seeds {failed:?}", reports.len());
    eprintln!("worst ratio {:.5} at seed {}", worst.ratio, worst.seed);
    eprintln!(
        "largest k {:.3}",
        reports.iter().filter_map(|r| r.max_k()).fold(0.0, f64::max)
    );
    Ok(())
}
