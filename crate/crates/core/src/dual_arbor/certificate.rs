//! The covering argument behind the `log / log log` bound on `c(A) / w(A)`.

use serde::{Deserialize, Serialize};

use super::lemmas::{
    check_combined_triangle, check_combined_two_opt, e_prime_set, e_r_set, radii, ratio_k, EdgeSet,
};
use super::WeightedArborescence;
use crate::error::{Error, Result};

/// Below this ratio the covering argument does not apply.
pub const MIN_K: f64 = 18.0;

/// Slack for float rounding when placing an edge in `E*` or in `E_{r_1}`,
/// whose upper end `w(A)` bounds every `c(e)` only up to rounding.
const COVER_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cover {
    pub k: f64,
    pub radii: Vec<f64>,
    pub e_prime: EdgeSet,
    pub e_r: Vec<EdgeSet>,
    pub e_star: EdgeSet,
    /// Edges with `c(e) <= e_star_threshold` form `E*`.
    pub e_star_threshold: f64,
}

/// Splits `E(A)` into `E'`, the `E_{r_i}` for `i = 1..=max(1, floor(k/6))`
/// and `E*`. Fails with [`Error::CoverGap`] if some edge lands in none.
pub fn cover_at(a: &WeightedArborescence, k: f64) -> Result<Cover> {
    let w = a.w_total();
    let radii = radii(a, k);
    let e_prime = e_prime_set(a, k);
    let mut e_r: Vec<EdgeSet> = radii.iter().map(|&r| e_r_set(a, k, r)).collect();
    let threshold = (4.0 / k).powi(radii.len() as i32) * w;
    let e_star = EdgeSet::from_filter(a, |i| a.edge(i).c <= threshold * (1.0 + COVER_SLACK));

    // An edge whose c exceeds w(A) by rounding alone still belongs to E_{r_1}.
    let r1 = radii[0];
    let mut top: Vec<usize> = Vec::new();
    for i in 0..a.len() {
        let c = a.edge(i).c;
        let in_any = e_prime.contains(i) || e_star.contains(i) || e_r.iter().any(|s| s.contains(i));
        if in_any {
            continue;
        }
        let small_children = a.children(i).iter().all(|&j| a.edge(j).c <= c / k);
        if small_children && c > r1 && c <= k / 4.0 * r1 * (1.0 + COVER_SLACK) {
            top.push(i);
        } else {
            return Err(Error::CoverGap(i));
        }
    }
    if !top.is_empty() {
        let first = &mut e_r[0];
        for i in top {
            first.edges.push(i);
            first.cost += a.edge(i).c;
        }
        first.edges.sort_unstable();
    }
    Ok(Cover {
        k,
        radii,
        e_prime,
        e_r,
        e_star,
        e_star_threshold: threshold,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `k < 18`: the bound `c(A) <= 18 w(A)` is immediate.
    SmallK,
    /// `k >= 18`: the size and ratio bounds are checked.
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub k: f64,
    pub c_total: f64,
    pub w_total: f64,
    pub edges: usize,
    pub regime: Regime,
    pub cover: Cover,
    /// `(k/6)^(k/6)`, the least edge count the cover forces when `k >= 18`.
    pub min_edges: Option<f64>,
    pub size_bound_holds: Option<bool>,
    /// `12 * ln|E| / ln ln|E| * w(A)`.
    pub ratio_bound: Option<f64>,
    pub ratio_bound_holds: Option<bool>,
    /// Set when the same bound with base-2 logarithms gives the other verdict.
    pub log2_disagrees: bool,
}

impl Certificate {
    /// True unless a checked bound failed.
    pub fn holds(&self) -> bool {
        self.size_bound_holds != Some(false) && self.ratio_bound_holds != Some(false)
    }
}

fn log_ratio(x: f64, log: impl Fn(f64) -> f64) -> f64 {
    log(x) / log(log(x))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioBounds {
    pub min_edges: f64,
    pub size_bound_holds: bool,
    pub ratio_bound: f64,
    pub ratio_bound_holds: bool,
    pub log2_disagrees: bool,
}

/// The two conclusions drawn when `k = c / w >= 18`: at least `(k/6)^(k/6)`
/// edges, and `c <= 12 ln m / ln ln m * w` for `m` edges.
pub fn size_and_ratio_bounds(m: usize, c_total: f64, w_total: f64, tolerance: f64) -> RatioBounds {
    let k = c_total / w_total;
    let mf = m as f64;
    let min_edges = (k / 6.0).powf(k / 6.0);
    let ratio_bound = 12.0 * log_ratio(mf, f64::ln) * w_total;
    let ratio_bound_holds = c_total <= ratio_bound * (1.0 + tolerance);
    let holds2 = c_total <= 12.0 * log_ratio(mf, f64::log2) * w_total * (1.0 + tolerance);
    RatioBounds {
        min_edges,
        size_bound_holds: mf >= min_edges * (1.0 - tolerance),
        ratio_bound,
        ratio_bound_holds,
        log2_disagrees: ratio_bound_holds != holds2,
    }
}

/// Certificate for an arborescence satisfying the combined triangle and
/// combined 2-opt conditions.
pub fn bound_certificate(a: &WeightedArborescence, tolerance: f64) -> Result<Certificate> {
    if a.is_empty() {
        return Err(Error::HypothesisViolated(
            "arborescence has no edges".into(),
        ));
    }
    for report in [
        check_combined_triangle(a, tolerance),
        check_combined_two_opt(a, tolerance),
    ] {
        if !report.holds {
            return Err(Error::HypothesisViolated(format!(
                "{} fails",
                report.condition
            )));
        }
    }
    let (c_total, w_total) = (a.c_total(), a.w_total());
    let k = ratio_k(a);
    let cover = cover_at(a, k)?;
    let mut cert = Certificate {
        k,
        c_total,
        w_total,
        edges: a.len(),
        regime: Regime::SmallK,
        cover,
        min_edges: None,
        size_bound_holds: None,
        ratio_bound: None,
        ratio_bound_holds: None,
        log2_disagrees: false,
    };
    if k < MIN_K {
        return Ok(cert);
    }
    cert.regime = Regime::Full;
    let b = size_and_ratio_bounds(a.len(), c_total, w_total, tolerance);
    cert.min_edges = Some(b.min_edges);
    cert.size_bound_holds = Some(b.size_bound_holds);
    cert.ratio_bound = Some(b.ratio_bound);
    cert.ratio_bound_holds = Some(b.ratio_bound_holds);
    cert.log2_disagrees = b.log2_disagrees;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual_arbor::ArborEdge;

    fn arb(edges: &[(usize, usize, f64, f64)]) -> WeightedArborescence {
        WeightedArborescence::new(
            0,
            edges
                .iter()
                .map(|&(from, to, c, w)| ArborEdge { from, to, c, w })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_k_regime() {
        let a = arb(&[(0, 1, 0.5, 1.0), (1, 2, 0.4, 1.0)]);
        let cert = bound_certificate(&a, 1e-9).unwrap();
        assert_eq!(cert.regime, Regime::SmallK);
        assert!((cert.k - 0.45).abs() < 1e-15);
        assert!(cert.holds());
    }

    #[test]
    fn cover_splits_edges() {
        let a = arb(&[
            (0, 1, 1.0, 1.0),
            (1, 2, 0.9, 1.0),
            (1, 3, 0.9, 1.0),
            (1, 4, 0.9, 1.0),
        ]);
        let k = 8.0;
        let cover = cover_at(&a, k).unwrap();
        // r_1 = w(A) / 2 = 2; E_{r_1} takes (2, 4]; E* everything up to 2.
        assert_eq!(cover.radii, vec![2.0]);
        assert_eq!(cover.e_prime.edges, vec![0]);
        assert_eq!(cover.e_star.edges, vec![0, 1, 2, 3]);
    }

    #[test]
    fn ratio_bounds_by_hand() {
        // k = 18 needs at least 3^3 = 27 edges.
        let ok = size_and_ratio_bounds(1000, 18.0, 1.0, 1e-9);
        assert!((ok.min_edges - 27.0).abs() < 1e-9);
        assert!(ok.size_bound_holds);
        // 12 ln 1000 / ln ln 1000 = 42.89...
        assert!((ok.ratio_bound - 42.8910).abs() < 1e-3);
        assert!(ok.ratio_bound_holds);
        let few = size_and_ratio_bounds(20, 18.0, 1.0, 1e-9);
        assert!(!few.size_bound_holds);
        // 12 ln 20 / ln ln 20 = 32.76 and 12 log2 20 / log2 log2 20 = 24.56 both hold.
        assert!(few.ratio_bound_holds && !few.log2_disagrees);
        // m = 10: the natural-log bound 33.13 holds at c = 30, the base-2 bound 23.02 does not.
        let split = size_and_ratio_bounds(10, 30.0, 1.0, 1e-9);
        assert!(split.ratio_bound_holds);
        assert!(split.log2_disagrees);
    }

    #[test]
    fn rejects_arborescence_failing_hypotheses() {
        let a = arb(&[(0, 1, 5.0, 3.0)]);
        assert!(matches!(
            bound_certificate(&a, 1e-9),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
