//! Random arborescences built to satisfy the two local conditions, pushed
//! through every derived check and the bound certificate.
//!
//!     cargo run --release --example lemma_chain_synthetic -- [count]

use twoopt_lab::dual_arbor::{
    bound_certificate, check_all, synthetic_arborescence, Regime, SyntheticConfig, TOLERANCE,
};

fn main() -> twoopt_lab::Result<()> {
    let count: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1000);
    let cfg = SyntheticConfig::default();
    let (mut failures, mut max_k, mut max_edges) = (0, 0f64, 0);
    for seed in 0..count {
        let a = synthetic_arborescence(seed, &cfg);
        let bad: Vec<String> = check_all(&a, TOLERANCE)
            .into_iter()
            .filter(|r| !r.holds)
            .map(|r| r.condition.to_string())
            .collect();
        let cert = bound_certificate(&a, TOLERANCE)?;
        if !bad.is_empty() || !cert.holds() {
            failures += 1;
            println!("seed {seed}: {bad:?}");
        }
        assert_eq!(cert.regime, Regime::SmallK);
        max_k = max_k.max(cert.k);
        max_edges = max_edges.max(a.len());
    }
    println!(
        "{count} arborescences, {failures} failing, largest k {max_k:.3}, largest size {max_edges}"
    );
    Ok(())
}
